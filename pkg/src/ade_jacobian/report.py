"""Report assembly and rendering.

Both renderings are pure functions of the report contents, so identical
inputs always give identical bytes.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    status: str = "ok"

    def to_dict(self):
        return jsonable(
            {
                "command": self.command,
                "status": self.status,
                "inputs": self.inputs,
                "results": self.results,
                "notes": self.notes,
            }
        )


def jsonable(value):
    """Convert tuples, Fractions, numpy scalars and infinity to JSON-native values."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return value
    return value


def render_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _fmt(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_fmt(v)}" for k, v in value.items()) or "-"
    if isinstance(value, list):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    return str(value)


def _table(rows):
    columns = list(rows[0])
    for row in rows[1:]:
        columns += [c for c in row if c not in columns]
    cells = [[_fmt(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[k]) for r in cells)) for k, c in enumerate(columns)]
    out = ["  " + "  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in cells:
        out.append("  " + "  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return out


def _block(mapping, indent="  "):
    width = max((len(k) for k in mapping), default=0)
    return [f"{indent}{k.ljust(width)}  {_fmt(v)}" for k, v in mapping.items()]


def render_text(report):
    data = report.to_dict()
    lines = [f"{data['command']}: {data['status']}"]
    if data["inputs"]:
        lines.append("inputs:")
        lines += _block(data["inputs"])
    scalars = {}
    sections = []
    for key, value in data["results"].items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            sections.append((key, _table(value)))
        elif isinstance(value, dict) and value and any(isinstance(v, (dict, list)) for v in value.values()):
            sections.append((key, _block(value)))
        else:
            scalars[key] = value
    if scalars:
        lines.append("results:")
        lines += _block(scalars)
    for key, body in sections:
        lines.append(f"{key}:")
        lines += body
    for note in data["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def render(report, as_json=False):
    return render_json(report) if as_json else render_text(report)
