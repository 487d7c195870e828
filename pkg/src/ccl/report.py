"""Uniform pass/fail rows shared by the verification suites and the CLI."""

from __future__ import annotations

import dataclasses
import json
import math
from typing import Any


def jsonable(x: Any) -> Any:
    """Make a value JSON-serializable; infinities become the string "inf"."""
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if hasattr(x, "tolist"):  # numpy scalars and arrays
        return jsonable(x.tolist())
    return x


@dataclasses.dataclass(frozen=True)
class CheckResult:
    """One verified inequality or identity: ``lhs`` vs ``rhs`` within ``tol``."""

    name: str
    passed: bool
    lhs: float = math.nan
    rhs: float = math.nan
    tol: float = 0.0
    witness: Any = None

    def to_dict(self) -> dict:
        row = {
            "name": self.name,
            "pass": bool(self.passed),
            "lhs": jsonable(self.lhs),
            "rhs": jsonable(self.rhs),
            "tol": float(self.tol),
        }
        if self.witness is not None:
            row["witness"] = jsonable(self.witness)
        return row


def dump_report(rows: list[CheckResult], **extra: Any) -> str:
    """Serialize check rows (plus free-form metadata) as deterministic JSON."""
    payload = dict(extra)
    payload["checks"] = [r.to_dict() for r in rows]
    payload["passed"] = all(r.passed for r in rows)
    payload["n_checks"] = len(rows)
    payload["n_failed"] = sum(not r.passed for r in rows)
    return json.dumps(jsonable(payload), indent=2, sort_keys=True)
