"""Structured verdicts for property checkers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

ARTIFACT_VERSION = "0.1.0"


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "tolist"):
        return _jsonable(v.tolist())
    if hasattr(v, "item"):
        return v.item()
    return v


@dataclass
class CheckReport:
    """Outcome of one property checker run.

    ``verdict`` is "pass" iff ``worst_residual <= tolerance`` (exact zero
    required in rational mode when tolerance is 0).  The witness holds the
    sample achieving the worst residual, reproducible from (seed, index).
    """

    name: str
    verdict: str
    worst_residual: object
    witness: dict
    samples: int
    seed: int
    tolerance: object
    mode: str
    notes: str = ""
    provenance: str = field(default="")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self):
        return {
            "artifact_version": ARTIFACT_VERSION,
            "property": self.name,
            "verdict": self.verdict,
            "worst_residual": _jsonable(self.worst_residual),
            "witness": _jsonable(self.witness),
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": _jsonable(self.tolerance),
            "mode": self.mode,
            "notes": self.notes,
            "provenance": self.provenance,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


def make_report(name, worst, witness, samples, seed, tol, mode,
                notes="", provenance=""):
    if isinstance(worst, Fraction) or isinstance(tol, Fraction) or tol == 0:
        ok = worst == 0 if tol == 0 else worst <= tol
    else:
        ok = float(worst) <= float(tol)
    return CheckReport(
        name=name,
        verdict="pass" if ok else "fail",
        worst_residual=worst,
        witness=witness,
        samples=samples,
        seed=seed,
        tolerance=tol,
        mode=mode,
        notes=notes,
        provenance=provenance,
    )
