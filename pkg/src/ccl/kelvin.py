"""Sphere inversion of a positive field and its comparison/oscillation scans.

The transform of w about the sphere of radius lam centered at y is

    w_{y,lam}(x) = (lam / |x - y|)^(n-2) * w(y + lam^2 (x - y)/|x - y|^2).

It is an involution, fixes the sphere pointwise, and for the fields built
here (constants, the fundamental profile |x|^(2-n) and positive
combinations, and singular translates centered outside the unit ball) the
transformed field never exceeds the original outside the inversion ball as
long as the ball avoids the singularity.  That domination is the engine
behind the moving-sphere arguments, and the scans in this module sample it
directly.  Fields are value-only callables; no derivatives are needed.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
from typing import Callable

import numpy as np
from scipy.stats import qmc

from .errors import DomainError
from .families import RadialFamily, eval_family

Field = Callable[[np.ndarray], float]


@dataclasses.dataclass(frozen=True)
class KelvinMap:
    """Inversion sphere: center y and radius lam > 0."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = np.array(self.center, dtype=float)
        if center.ndim != 1 or center.shape[0] < 3:
            raise ValueError(f"center must be an n-vector with n >= 3, got shape {center.shape}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be finite and positive, got {self.radius}")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)

    @property
    def n(self) -> int:
        return self.center.shape[0]


def reflect(map_: KelvinMap, x) -> np.ndarray:
    """Image of x under inversion about the sphere."""
    x = np.asarray(x, dtype=float)
    dx = x - map_.center
    d2 = float(dx @ dx)
    if d2 == 0.0:
        raise DomainError("cannot invert the sphere center")
    return map_.center + (map_.radius**2 / d2) * dx


def kelvin_transform(field: Field, map_: KelvinMap, x) -> float:
    """Value of the transformed field at x (x must differ from the center)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (map_.n,):
        raise DomainError(f"point must be an {map_.n}-vector, got shape {x.shape}")
    d = float(np.linalg.norm(x - map_.center))
    if d == 0.0:
        raise DomainError("cannot evaluate the transform at the sphere center")
    return (map_.radius / d) ** (map_.n - 2.0) * float(field(reflect(map_, x)))


def kelvin_involution_check(field: Field, map_: KelvinMap, samples) -> float:
    """Max relative residual of transforming twice versus the original field."""
    once = lambda z: kelvin_transform(field, map_, z)  # noqa: E731
    worst = 0.0
    for x in samples:
        x = np.asarray(x, dtype=float)
        direct = float(field(x))
        twice = kelvin_transform(once, map_, x)
        worst = max(worst, abs(twice - direct) / abs(direct))
    return worst


# --- reference fields ---------------------------------------------------------


def constant_field(value: float = 1.0) -> Field:
    if value <= 0.0:
        raise ValueError("field value must be positive")
    return lambda x: value


def fundamental_field(n: int, coefficient: float = 1.0) -> Field:
    """coefficient * |x|^(2-n), singular only at the origin."""

    def field(x: np.ndarray) -> float:
        r = float(np.linalg.norm(x))
        if r == 0.0:
            raise DomainError("fundamental profile is singular at the origin")
        return coefficient * r ** (2.0 - n)

    return field


def fundamental_plus_constant(n: int, c_sing: float = 1.0, c_const: float = 1.0) -> Field:
    base = fundamental_field(n, c_sing)
    return lambda x: base(x) + c_const


def singular_translate_field(n: int, center) -> Field:
    """|x - p|^(2-n) for a singularity at p; positive on the unit ball when
    p lies outside it."""
    p = np.asarray(center, dtype=float)

    def field(x: np.ndarray) -> float:
        d = float(np.linalg.norm(np.asarray(x, dtype=float) - p))
        if d == 0.0:
            raise DomainError("field is singular at its center")
        return d ** (2.0 - n)

    return field


def field_from_family(fam: RadialFamily) -> Field:
    return lambda x: eval_family(fam, float(np.linalg.norm(x))).u


# --- hypothesis scan -----------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class ScanRow:
    y: np.ndarray
    lam: float
    x: np.ndarray
    lhs: float
    rhs: float
    margin: float  # (rhs - lhs) / rhs; negative beyond slack is a violation


@dataclasses.dataclass(frozen=True)
class ScanReport:
    rows: list[ScanRow]
    worst_margin: float
    violations: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        n = self.rows[0].y.shape[0] if self.rows else 0
        header = [f"y{i}" for i in range(n)] + ["lambda"] + [f"x{i}" for i in range(n)]
        writer.writerow(header + ["lhs", "rhs", "margin"])
        for row in self.rows:
            writer.writerow(
                [f"{v:.17g}" for v in row.y]
                + [f"{row.lam:.17g}"]
                + [f"{v:.17g}" for v in row.x]
                + [f"{row.lhs:.17g}", f"{row.rhs:.17g}", f"{row.margin:.17g}"]
            )
        return buf.getvalue()


def kelvin_scan(
    field: Field,
    n: int,
    samples: int = 1000,
    seed: int = 0,
    slack: float = 1e-12,
) -> ScanReport:
    """Sample the domination hypothesis w_{y,lam}(x) <= w(x) on the unit ball.

    Inversion balls B_lam(y) are drawn inside the punctured unit ball
    (lam < |y| keeps them away from the field's singularity at the origin)
    and evaluation points x outside them, by a scrambled low-discrepancy
    sequence with rejection, so a fixed seed reproduces the scan exactly.
    """
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    if samples < 1:
        raise ValueError("need at least one sample")
    engine = qmc.Halton(d=2 * n + 1, scramble=True, seed=seed)
    rows: list[ScanRow] = []
    worst = math.inf
    violations = 0
    while len(rows) < samples:
        batch = engine.random(256)
        for point in batch:
            y = 2.0 * point[:n] - 1.0
            ynorm = float(np.linalg.norm(y))
            if not 1e-3 < ynorm < 1.0 - 1e-3:
                continue
            lam = (0.05 + 0.94 * point[n]) * min(ynorm, 1.0 - ynorm)
            x = 2.0 * point[n + 1 :] - 1.0
            xnorm = float(np.linalg.norm(x))
            if xnorm >= 1.0 or xnorm <= 1e-6:
                continue
            if float(np.linalg.norm(x - y)) <= lam * (1.0 + 1e-9):
                continue
            map_ = KelvinMap(center=y, radius=lam)
            lhs = kelvin_transform(field, map_, x)
            rhs = float(field(x))
            margin = (rhs - lhs) / rhs
            worst = min(worst, margin)
            if margin < -slack:
                violations += 1
            rows.append(ScanRow(y=y.copy(), lam=lam, x=x.copy(), lhs=lhs, rhs=rhs, margin=margin))
            if len(rows) >= samples:
                break
    return ScanReport(rows=rows, worst_margin=worst, violations=violations)


# --- oscillation on spheres -----------------------------------------------------


def _unit_directions(n: int, count: int, seed: int, include=()) -> np.ndarray:
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    extra = [np.asarray(d, dtype=float) / np.linalg.norm(d) for d in include]
    if extra:
        dirs = np.vstack([dirs, np.array(extra)])
    return dirs


def oscillation_scan(
    field: Field,
    n: int,
    radii,
    n_directions: int = 128,
    seed: int = 0,
    include_directions=(),
) -> dict:
    """Oscillation of ln w over sampled directions of each sphere |x| = R.

    Returns the oscillations, the per-radius slopes osc/R, and the max/min
    slope ratio; a ratio near 1 exhibits the linear-in-R oscillation bound.
    The same directions are reused at every radius so the comparison across
    radii is systematic.
    """
    dirs = _unit_directions(n, n_directions, seed, include=include_directions)
    radii = np.asarray(radii, dtype=float)
    osc = np.empty_like(radii)
    for i, radius in enumerate(radii):
        logs = np.array([math.log(float(field(radius * d))) for d in dirs])
        osc[i] = float(logs.max() - logs.min())
    slopes = osc / radii
    positive = slopes[slopes > 0.0]
    ratio = float(positive.max() / positive.min()) if positive.size else 1.0
    return {"radii": radii, "osc": osc, "slopes": slopes, "slope_ratio": ratio}
