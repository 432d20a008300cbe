"""Statistics-file ingestion.

Two equivalent formats are accepted:

* flat key-value text, one ``key = value`` per line, ``#`` starts a comment
* a JSON object with the same keys (selected by a ``.json`` extension)

Recognised keys are ``mean_equity_return``, ``mean_risk_free_rate``,
``mean_consumption_growth``, ``sd_consumption_growth`` and the optional
``beta`` (default 0.99). Unknown keys are ignored with a warning that
lists them.
"""

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from .core.errors import StatsFileError
from .models.calibration import DEFAULT_BETA, EconomyStatistics

logger = logging.getLogger(__name__)

REQUIRED_KEYS = (
    "mean_equity_return",
    "mean_risk_free_rate",
    "mean_consumption_growth",
    "sd_consumption_growth",
)
OPTIONAL_KEYS = ("beta",)
BUNDLED_TABLE1 = "table1.stats"
BUNDLED_TABLE1_JSON = "table1.json"


@dataclass(frozen=True)
class StatsFile:
    mean_equity_return: float
    mean_risk_free_rate: float
    mean_consumption_growth: float
    sd_consumption_growth: float
    beta: float = DEFAULT_BETA
    source: str = "<memory>"
    unknown_keys: Tuple[str, ...] = field(default=())

    def to_statistics(self, beta: Optional[float] = None) -> EconomyStatistics:
        """Convert to model statistics; ``beta`` overrides the file value."""
        return EconomyStatistics(
            mean_equity_return=self.mean_equity_return,
            mean_risk_free=self.mean_risk_free_rate,
            mean_growth=self.mean_consumption_growth,
            sd_growth=self.sd_consumption_growth,
            beta=self.beta if beta is None else beta,
        )

    def as_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("unknown_keys")
        return data


def _to_float(key: str, raw: Any, line: Optional[int]) -> float:
    if isinstance(raw, bool):
        raise StatsFileError(f"expected a number, got {raw!r}", field=key, line=line)
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise StatsFileError(f"expected a number, got {raw!r}", field=key, line=line) from None
    if not math.isfinite(value):
        raise StatsFileError(f"value must be finite, got {raw!r}", field=key, line=line)
    if value <= 0.0:
        raise StatsFileError(f"value must be positive, got {value}", field=key, line=line)
    if key == "beta" and value > 1.0:
        raise StatsFileError(f"beta must lie in (0, 1], got {value}", field=key, line=line)
    return value


def _build(entries: Dict[str, Tuple[Any, Optional[int]]], source: str) -> StatsFile:
    known = set(REQUIRED_KEYS) | set(OPTIONAL_KEYS)
    unknown = sorted(k for k in entries if k not in known)
    if unknown:
        logger.warning("%s: ignoring unknown keys: %s", source, ", ".join(unknown))

    for key in REQUIRED_KEYS:
        if key not in entries:
            raise StatsFileError("required field is missing", field=key)

    values = {key: _to_float(key, *entries[key]) for key in REQUIRED_KEYS + OPTIONAL_KEYS if key in entries}
    return StatsFile(source=source, unknown_keys=tuple(unknown), **values)


def parse_key_values(text: str, source: str = "<memory>") -> StatsFile:
    """Parse the ``key = value`` format.

    Raises:
        StatsFileError: naming the offending field and line
    """
    entries: Dict[str, Tuple[Any, Optional[int]]] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise StatsFileError(f"expected 'key = value', got {line!r}", line=number)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise StatsFileError("missing key before '='", line=number)
        if key in entries:
            raise StatsFileError(
                f"duplicate key (first given on line {entries[key][1]})", field=key, line=number
            )
        entries[key] = (value, number)
    return _build(entries, source)


def parse_json(text: str, source: str = "<memory>") -> StatsFile:
    """Parse the JSON format."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise StatsFileError(f"invalid JSON: {e.msg}", line=e.lineno) from None
    if not isinstance(data, dict):
        raise StatsFileError("top-level JSON value must be an object")
    return _build({str(k): (v, None) for k, v in data.items()}, source)


def load_stats_file(path: Union[str, Path]) -> StatsFile:
    """Read a statistics file, picking the format from its extension."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StatsFileError(f"cannot read {path}: {e.strerror or e}") from None
    if path.suffix.lower() == ".json":
        return parse_json(text, source=str(path))
    return parse_key_values(text, source=str(path))


def bundled_text(name: str = BUNDLED_TABLE1) -> str:
    return resources.files("sufficiency_ccapm.data").joinpath(name).read_text(encoding="utf-8")


def load_bundled(name: str = BUNDLED_TABLE1) -> StatsFile:
    """Load one of the fixtures shipped with the package."""
    text = bundled_text(name)
    source = f"bundled:{name}"
    if name.endswith(".json"):
        return parse_json(text, source=source)
    return parse_key_values(text, source=source)

