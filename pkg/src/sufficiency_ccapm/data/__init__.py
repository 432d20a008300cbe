"""Bundled statistics fixtures."""
