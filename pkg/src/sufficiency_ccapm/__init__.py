"""
Sufficiency CCAPM

A consumption capital asset pricing toolkit in which investors scale the
utility of uncertain wealth by a sufficiency factor: risk-behavior
classification, exact and first-order risk premia, lognormal equilibrium
pricing, calibration to economy-wide statistics and Monte Carlo checks.
"""

__version__ = "1.0.0"
__description__ = "Consumption CAPM with sufficiency factors"

from .server import main

__all__ = ["main", "__version__"]
