"""Number and table formatting for human-readable reports.

Formatting Standard
-------------------
All floating-point values in text output use 10 significant digits in
general ("g") notation. The calibration manifold differs from the printed
coefficients only in the sixth decimal place, so anything shorter hides
the degeneracy analysis.
"""

import math
from typing import Any, Iterable, List, Sequence

SIGNIFICANT_DIGITS = 10


def format_number(value: Any, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Format a scalar for text output.

    Args:
        value: A float, int, bool, None or string
        digits: Significant digits for floats

    Returns:
        The formatted string; 'N/A' for None
    """
    if value is None:
        return "N/A"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits}g}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_number(v, digits) for v in value) + "]"
    return str(value)


def render_key_values(title: str, rows: Iterable[Sequence[Any]]) -> str:
    """Render (key, value) pairs as an aligned two-column block."""
    pairs = [(str(k), format_number(v)) for k, v in rows]
    if not pairs:
        return f"{title}:\n  (none)"
    width = max(len(k) for k, _ in pairs)
    lines = [f"{title}:"]
    lines.extend(f"  {k.ljust(width)}  {v}" for k, v in pairs)
    return "\n".join(lines)


def render_table(title: str, headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render a multi-column table with right-aligned numbers."""
    body: List[List[str]] = [[format_number(c) for c in row] for row in rows]
    widths = [len(h) for h in headers]
    for row in body:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    header = "  ".join(h.rjust(widths[i]) for i, h in enumerate(headers))
    rule = "  ".join("-" * w for w in widths)
    lines = [f"{title}:", f"  {header}", f"  {rule}"]
    lines.extend("  " + "  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)) for row in body)
    return "\n".join(lines)


def truncate_text(text: str, max_length: int = 100) -> str:
    """Truncate text to a maximum length and add ellipsis if needed."""
    if not text or len(text) <= max_length:
        return text
    return text[:max_length - 3] + "..."
