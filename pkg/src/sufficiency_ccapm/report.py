"""Reports emitted by the CLI and the MCP tools.

A report has a human-readable text form and a JSON form. The JSON form
re-parses to an equal ``Report``.
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .core.formatting import render_key_values, render_table


@dataclass
class Report:
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    seed: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Report":
        return cls(
            command=data["command"],
            inputs=dict(data.get("inputs", {})),
            outputs=dict(data.get("outputs", {})),
            diagnostics=dict(data.get("diagnostics", {})),
            version=data.get("version", __version__),
            seed=data.get("seed"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def render_text(self) -> str:
        header = f"sufficiency-ccapm {self.version} :: {self.command}"
        if self.seed is not None:
            header += f" (seed {self.seed})"
        blocks = [header]
        for title, section in (("Inputs", self.inputs), ("Outputs", self.outputs), ("Diagnostics", self.diagnostics)):
            if section:
                blocks.extend(_render_section(title, section))
        return "\n\n".join(blocks) + "\n"


def _is_row_list(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(row, dict) for row in value)


def _flatten(prefix: str, value: Dict[str, Any]) -> List[Tuple[str, Any]]:
    rows: List[Tuple[str, Any]] = []
    for key, item in value.items():
        name = f"{prefix}{key}"
        if isinstance(item, dict):
            rows.extend(_flatten(f"{name}.", item))
        else:
            rows.append((name, item))
    return rows


def _render_section(title: str, section: Dict[str, Any]) -> List[str]:
    scalars = {k: v for k, v in section.items() if not _is_row_list(v)}
    blocks = [render_key_values(title, _flatten("", scalars))] if scalars else []
    for key, rows in section.items():
        if _is_row_list(rows):
            headers = list(rows[0].keys())
            blocks.append(render_table(f"{title}: {key}", headers, [[row.get(h) for h in headers] for row in rows]))
    return blocks
