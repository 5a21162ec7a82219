"""Shared JSON document schemas used by the CLI, service and UI.

Signature document: {"d": int, "labels": [[int, ...], ...], "values": [float, ...]}
with labels in graded lexicographic order.  Weights: {"d": int, "w": [...]}.
Bounds report: {"targets": [...], "lower": [...], "upper": [...],
"vertices": [[...], ...]} (vertices optional).  Skeletal: {"d": int, "k": [...]}.
"""

from __future__ import annotations

import csv
import io
from typing import Any

import numpy as np

from .attainability import BoundsReport, PartialSignature, WeightPolytope
from .equiconcordant import SkeletalSignature
from .errors import SchemaError
from .signatures import EvenSignature, FullSignature, MixtureWeights


def _require(doc: Any, key: str, types) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError(f"expected a JSON object, got {type(doc).__name__}")
    if key not in doc:
        raise SchemaError(f"missing required key {key!r}")
    value = doc[key]
    if not isinstance(value, types):
        raise SchemaError(f"key {key!r} has wrong type {type(value).__name__}")
    return value


def _floats(values, key: str) -> list[float]:
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"{key} entries must be numbers")
        out.append(float(v))
    return out


def signature_to_json(sig: EvenSignature | FullSignature | PartialSignature) -> dict:
    if isinstance(sig, PartialSignature):
        labels = [list(s) for s in sig.labels.subsets]
        values = [float(v) for v in sig.values]
    else:
        labels = [list(s) for s in sig.labels]
        values = [float(v) for v in sig.values]
    return {"d": sig.d, "labels": labels, "values": values}


def partial_signature_from_json(doc: dict) -> PartialSignature:
    d = _require(doc, "d", int)
    labels = _require(doc, "labels", list)
    values = _floats(_require(doc, "values", list), "values")
    if len(labels) != len(values):
        raise SchemaError(
            f"{len(labels)} labels but {len(values)} values"
        )
    parsed = []
    for label in labels:
        if not isinstance(label, list):
            raise SchemaError("labels must be arrays of integers")
        parsed.append(tuple(int(m) for m in label))
    return PartialSignature.create(d, parsed, values)


def even_signature_from_json(doc: dict) -> EvenSignature:
    partial = partial_signature_from_json(doc)
    if not partial.is_complete():
        raise SchemaError(
            f"document labels do not cover the even power set for d={partial.d}"
        )
    return EvenSignature.create(partial.d, partial.values)


def weights_to_json(weights: MixtureWeights) -> dict:
    return {"d": weights.d, "w": [float(x) for x in weights.w]}


def weights_from_json(doc: dict) -> MixtureWeights:
    d = _require(doc, "d", int)
    w = _floats(_require(doc, "w", list), "w")
    return MixtureWeights.create(d, w)


def bounds_report_to_json(report: BoundsReport, polytope: WeightPolytope | None = None) -> dict:
    out = {
        "targets": [list(t) for t in report.targets],
        "lower": [float(x) for x in report.lower],
        "upper": [float(x) for x in report.upper],
        "argmin": [[float(x) for x in w.w] for w in report.argmin],
        "argmax": [[float(x) for x in w.w] for w in report.argmax],
    }
    if polytope is not None:
        out["vertices"] = [[float(x) for x in v.w] for v in polytope.vertices]
    return out


def polytope_to_json(polytope: WeightPolytope, projection: np.ndarray | None = None, targets=None) -> dict:
    out = {
        "d": polytope.d,
        "rank": polytope.rank,
        "vertices": [[float(x) for x in v.w] for v in polytope.vertices],
    }
    if projection is not None:
        out["projection"] = [[float(x) for x in row] for row in projection]
        out["targets"] = [list(t) for t in targets or []]
    return out


def skeletal_to_json(sk: SkeletalSignature) -> dict:
    return {"d": sk.d, "k": [float(x) for x in sk.k]}


def skeletal_from_json(doc: dict) -> SkeletalSignature:
    d = _require(doc, "d", int)
    k = _floats(_require(doc, "k", list), "k")
    return SkeletalSignature.create(d, k)


def matrix_from_json(doc) -> np.ndarray:
    if isinstance(doc, dict):
        doc = _require(doc, "matrix", list)
    if not isinstance(doc, list) or not doc:
        raise SchemaError("matrix must be a non-empty 2-D array")
    rows = []
    width = None
    for row in doc:
        if not isinstance(row, list):
            raise SchemaError("matrix rows must be arrays")
        vals = _floats(row, "matrix")
        if width is None:
            width = len(vals)
        elif len(vals) != width:
            raise SchemaError("matrix rows must have equal length")
        rows.append(vals)
    return np.array(rows, dtype=np.float64)


def matrix_to_json(M: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in np.asarray(M)]


def samples_to_csv(values: np.ndarray, header: list[str] | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(header)
    for row in np.asarray(values):
        writer.writerow([f"{x:.17g}" for x in row])
    return buf.getvalue()
