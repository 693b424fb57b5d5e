"""TensorFile serialization.

A tensor file is a single JSON document:

    {"dim": n, "mode": "float64" | "rational",
     "components": [... n^4 numbers, row-major (i, j, k, l) ...],
     "provenance": "..."}

Rational components are "p/q" strings (or plain integer strings) and
round-trip bit-exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .curvature import CurvatureTensor
from .linalg import FLOAT64, RATIONAL


class TensorFileError(ValueError):
    """Malformed tensor file; carries a byte offset when one is known."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def tensor_to_document(R: CurvatureTensor) -> dict:
    if R.mode == RATIONAL:
        comps = [str(Fraction(v)) for v in R.components.reshape(-1)]
    else:
        comps = [float(v) for v in R.components.reshape(-1)]
    return {"dim": R.dim, "mode": R.mode, "components": comps,
            "provenance": R.provenance}


def dump_tensor(R: CurvatureTensor, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tensor_to_document(R), fh)
        fh.write("\n")


def tensor_from_document(doc) -> CurvatureTensor:
    if not isinstance(doc, dict):
        raise TensorFileError("tensor file must hold a JSON object")
    try:
        dim = int(doc["dim"])
        mode = doc["mode"]
        comps = doc["components"]
        prov = str(doc.get("provenance", ""))
    except KeyError as e:
        raise TensorFileError(f"missing field {e}") from e
    if mode not in (FLOAT64, RATIONAL):
        raise TensorFileError(f"unknown mode {mode!r}")
    if len(comps) != dim**4:
        raise TensorFileError(
            f"expected {dim**4} components, found {len(comps)}")
    if mode == RATIONAL:
        try:
            arr = np.array([Fraction(str(v)) for v in comps],
                           dtype=object).reshape((dim,) * 4)
        except (ValueError, ZeroDivisionError) as e:
            raise TensorFileError(f"bad rational component: {e}") from e
    else:
        arr = np.asarray(comps, dtype=np.float64).reshape((dim,) * 4)
    return CurvatureTensor(dim, mode, arr, prov)


def load_tensor(path) -> CurvatureTensor:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise TensorFileError(f"invalid JSON: {e.msg}", offset=e.pos) from e
    return tensor_from_document(doc)


def dump_report(report, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
        fh.write("\n")
