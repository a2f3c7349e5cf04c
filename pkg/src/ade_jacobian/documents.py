"""JSON input documents and the machine-readable report schema.

Documents are validated with pydantic before anything is computed; unknown
fields are rejected.  Vertex names must be the canonical ``v0, v1, ...``.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictInt, StrictStr, ValidationError

from .curve import make_curve
from .dynkin import build_graph
from .errors import DocumentError
from .polarisation import make_polarisation


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GraphSpec(_Strict):
    kind: Literal["A", "D", "E"]
    n: StrictInt


class CurveDocument(_Strict):
    graph: GraphSpec
    genera: Dict[str, StrictInt] = {}
    chi: Optional[StrictInt] = None
    polarisation: Optional[Dict[str, Union[StrictInt, StrictStr]]] = None


class MarkingDocument(_Strict):
    oChi: Dict[str, StrictInt]
    iSpecial: List[str] = []
    tSpecial: List[str] = []


class TorsionDocument(_Strict):
    orders: Dict[str, Union[StrictInt, Literal["inf"]]]


class PolarisationDocument(_Strict):
    polarisation: Dict[str, Union[StrictInt, StrictStr]]


class ReportDocument(_Strict):
    """Schema of every ``--json`` report."""

    command: str
    status: Literal["ok", "error"]
    inputs: Dict[str, object]
    results: Dict[str, object]
    notes: List[str]


def _read(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def _parse(model, data, path):
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise DocumentError(f"{path}: {where}: {first['msg']}") from None


def load(model, path):
    return _parse(model, _read(path), path)


def curve_from_document(doc):
    return make_curve(build_graph(doc.graph.kind, doc.graph.n), doc.genera)


def polarisation_from_mapping(curve, mapping):
    return make_polarisation(curve, dict(mapping))
