"""Desk-scale checks of the structure theorems on constructed radial data.

The checks run on sampled closed-form solutions and finite pointwise minima
thereof (canonical supersolutions), never on PDE discretizations, so every
assertion is an exact identity up to floating-point tolerance:

* the leading coefficient a = lim r^(n-2) u(r) at an isolated singularity;
* the splitting of a singular solution into a fundamental-type part plus a
  remainder that is non-negative and, for radial data, constant;
* the Hölder exponent 1 - mu_plus of bounded solutions when mu_plus < 1;
* Harnack-type quotients and the scaled log-gradient;
* comparison and strong-maximum scans, and the two monotone quantities
  (u non-increasing, r^(n-2) u non-decreasing) of supersolutions.

Limits toward r = 0 are taken by Aitken extrapolation of the tail of the
sample sequence; on log-spaced grids the relevant sequences are geometric
and the extrapolation is exact to rounding.
"""

from __future__ import annotations

import csv
import dataclasses
import enum
import math

import numpy as np

from .cones import ConeProfile
from .errors import ExtrapolationError, TheoremViolation
from .families import Annulus, RadialFamily, eval_family, log_midpoints
from .report import CheckResult

_EPS = float(np.finfo(float).eps)
_MU_ONE_BAND = 1e-9


@dataclasses.dataclass(frozen=True)
class RadialProfile:
    """Sampled positive radial function: strictly increasing radii, values, dimension."""

    radii: np.ndarray
    values: np.ndarray
    n: int

    def __post_init__(self):
        radii = np.array(self.radii, dtype=float)
        values = np.array(self.values, dtype=float)
        if radii.ndim != 1 or radii.shape != values.shape:
            raise ValueError("radii and values must be 1-D arrays of equal length")
        if radii.shape[0] < 2:
            raise ValueError("profile needs at least two samples")
        if not np.all(np.isfinite(radii)) or not np.all(np.isfinite(values)):
            raise ValueError("profile entries must be finite")
        if radii[0] <= 0.0 or np.any(np.diff(radii) <= 0.0):
            raise ValueError("radii must be positive and strictly increasing")
        if np.any(values <= 0.0):
            raise ValueError("values must be positive")
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")
        radii.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)


def profile_from_family(
    fam: RadialFamily, lo: float, hi: float, m: int = 200
) -> RadialProfile:
    radii = log_midpoints(lo, hi, m)
    values = np.array([eval_family(fam, float(r)).u for r in radii])
    return RadialProfile(radii=radii, values=values, n=fam.n)


def pointwise_min_profile(
    fams: list[RadialFamily], lo: float, hi: float, m: int = 200
) -> RadialProfile:
    """Pointwise minimum of several families: the canonical supersolution."""
    if not fams:
        raise ValueError("need at least one family")
    n = fams[0].n
    if any(f.n != n for f in fams):
        raise ValueError("families must share dimension")
    radii = log_midpoints(lo, hi, m)
    values = np.array(
        [min(eval_family(f, float(r)).u for f in fams) for r in radii]
    )
    return RadialProfile(radii=radii, values=values, n=n)


def write_profile_csv(path, p: RadialProfile) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["r", "u"])
        for r, u in zip(p.radii, p.values):
            writer.writerow([f"{r:.17g}", f"{u:.17g}"])


def read_profile_csv(path, n: int) -> RadialProfile:
    rows = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or "r" not in reader.fieldnames or "u" not in reader.fieldnames:
            raise ValueError(f"profile CSV must have columns r,u; got {reader.fieldnames}")
        for row in reader:
            rows.append((float(row["r"]), float(row["u"])))
    rows.sort()
    return RadialProfile(
        radii=np.array([r for r, _ in rows]),
        values=np.array([u for _, u in rows]),
        n=n,
    )


# --- extrapolation helpers ---------------------------------------------------


def _aitken(x0: float, x1: float, x2: float) -> float:
    """Aitken delta-squared step; x0 is the term closest to the limit."""
    denom = x0 - 2.0 * x1 + x2
    if denom == 0.0:
        return x0
    return x0 - (x0 - x1) ** 2 / denom


def _tail_limit(seq: np.ndarray) -> tuple[float, float]:
    """Extrapolated limit of the first (innermost) terms plus a residual
    estimate from two overlapping Aitken triples."""
    if len(seq) < 4:
        raise ValueError("need at least 4 samples for extrapolation")
    est_a = _aitken(seq[0], seq[1], seq[2])
    est_b = _aitken(seq[1], seq[2], seq[3])
    return est_a, abs(est_a - est_b)


def singularity_coefficient(p: RadialProfile, rtol: float = 1e-6) -> float:
    """Limit of r^(n-2) u(r) as r -> 0, by tail extrapolation.

    Requires the radii to reach at least two decades below the outer edge.
    Raises ExtrapolationError (carrying the tail values) when the two
    overlapping extrapolations disagree beyond rtol.
    """
    r, u = p.radii, p.values
    if r[0] > 1e-2 * r[-1] * (1.0 + 1e-12):
        raise ValueError(
            f"radii must extend two decades toward 0: r_min={r[0]:g}, r_max={r[-1]:g}"
        )
    f = r ** (p.n - 2.0) * u
    est, resid = _tail_limit(f)
    a = max(est, 0.0)
    if resid > rtol * (1.0 + abs(a)):
        raise ExtrapolationError(
            f"r^(n-2) u did not converge: residual {resid:g} vs rtol {rtol:g}",
            tail=f[:6],
        )
    return a


# --- singular decomposition ---------------------------------------------------


class BocherCase(enum.Enum):
    MU_PLUS_GT_1 = "mu_plus_gt_1"
    MU_PLUS_EQ_1 = "mu_plus_eq_1"
    MU_PLUS_LT_1 = "mu_plus_lt_1"


@dataclasses.dataclass(frozen=True)
class BocherDecomposition:
    """Splitting at an isolated singularity: the singular coefficient a, the
    log-exponent alpha (only when mu_plus = 1), and the remainder samples."""

    n: int
    case: BocherCase
    a: float
    alpha: float | None
    ring_w: np.ndarray | None
    w_is_zero: bool

    def __post_init__(self):
        if self.a < 0.0:
            raise ValueError(f"singular coefficient must be >= 0, got {self.a}")
        if self.alpha is not None and not -1e-6 <= self.alpha <= self.n - 2.0 + 1e-6:
            raise ValueError(f"log-exponent must lie in [0, n-2], got {self.alpha}")
        if self.ring_w is not None:
            w = np.array(self.ring_w, dtype=float)
            w.setflags(write=False)
            object.__setattr__(self, "ring_w", w)


def _constancy_slack(tol: float, center: float, big: np.ndarray) -> np.ndarray:
    # big is the magnitude of the cancelled singular term; a few ulps of it
    # are unavoidable noise in the remainder at deep radii
    return tol * max(1.0, abs(center)) + 64.0 * _EPS * np.abs(big)


def _check_radial_envelope(w: np.ndarray, big: np.ndarray, tol: float, label: str) -> None:
    """Radial form of the sphere-max/min sandwich: the remainder is constant."""
    center = float(np.median(w))
    slack = _constancy_slack(tol, center, big)
    worst = np.max(np.abs(w - center) - slack)
    if worst > 0.0:
        raise TheoremViolation(
            f"{label} violates the radial max/min sandwich: deviation exceeds "
            f"tolerance by {worst:g}"
        )


def bocher_decompose(
    profile_cone: ConeProfile, p: RadialProfile, tol: float = 1e-9
) -> BocherDecomposition:
    """Decompose a sampled singular solution per the cone's plus-exponent.

    mu_plus > 1: u^q = a^q r^(1-mu) + w with q = (mu-1)/(n-2), a the infimum
    (= limit) of r^(n-2) u, and w >= 0; exactly one of w == 0 or min w > 0
    holds, and for radial data w is constant.  mu_plus = 1: ln u =
    -alpha ln r + w with alpha in [0, n-2] from the log-log slope; alpha =
    n-2 forces w constant.  mu_plus < 1: only the rigidity branch exists:
    either u is a multiple of r^(2-n) or it is bounded (Hölder continuity is
    checked by holder_exponent_fit, not here).

    Raises TheoremViolation when the input data breaks a property that
    constructed solutions satisfy exactly.
    """
    n = p.n
    if n != profile_cone.n:
        raise ValueError(f"dimension mismatch: profile n={n}, cone n={profile_cone.n}")
    mu = profile_cone.mu_plus
    r, u = p.radii, p.values

    if abs(mu - 1.0) < _MU_ONE_BAND:
        lr, lu = np.log(r), np.log(u)
        slopes = -np.diff(lu) / np.diff(lr)
        est, resid = _tail_limit(slopes)
        if resid > 1e-6 * (1.0 + abs(est)):
            raise ExtrapolationError(
                f"log-log slope did not converge: residual {resid:g}", tail=slopes[:6]
            )
        if est < -1e-6 or est > n - 2.0 + 1e-6:
            raise TheoremViolation(f"log-exponent {est:g} outside [0, n-2]")
        alpha = min(max(est, 0.0), n - 2.0)
        w = lu + alpha * lr
        _check_radial_envelope(w, alpha * np.abs(lr), tol, "log remainder")
        a = math.exp(float(np.median(w))) if alpha >= n - 2.0 - 1e-9 else 0.0
        return BocherDecomposition(
            n=n, case=BocherCase.MU_PLUS_EQ_1, a=a, alpha=alpha, ring_w=w, w_is_zero=False
        )

    if mu > 1.0:
        q = (mu - 1.0) / (n - 2.0)
        g = u**q * r ** (mu - 1.0)  # converges to a^q, geometrically on log grids
        est, resid = _tail_limit(g)
        aq = max(est, 0.0)
        if resid > 1e-8 * (1.0 + aq):
            raise ExtrapolationError(
                f"u^q r^(mu-1) did not converge: residual {resid:g}", tail=g[:6]
            )
        sing = aq * r ** (1.0 - mu)
        w = u**q - sing
        floor = _constancy_slack(tol, 0.0, sing) + tol * np.abs(u**q)
        if np.any(w < -floor):
            raise TheoremViolation("remainder is negative; data is not a singular solution")
        if np.all(np.abs(w) <= floor):
            return BocherDecomposition(
                n=n, case=BocherCase.MU_PLUS_GT_1, a=aq ** (1.0 / q), alpha=None,
                ring_w=w, w_is_zero=True,
            )
        _check_radial_envelope(w, sing, tol, "remainder")
        if np.min(w) <= 0.0 and np.min(w + floor) <= 0.0:
            raise TheoremViolation(
                "remainder neither vanishes nor stays positive; dichotomy broken"
            )
        return BocherDecomposition(
            n=n, case=BocherCase.MU_PLUS_GT_1, a=aq ** (1.0 / q), alpha=None,
            ring_w=w, w_is_zero=False,
        )

    # mu_plus < 1: rigidity branch
    a = singularity_coefficient(p)
    f = r ** (n - 2.0) * u
    singular = a > 1e-6 * float(np.max(f))
    if singular:
        rel = np.abs(f / a - 1.0)
        if np.max(rel) > 1e-8:
            raise TheoremViolation(
                "singular data with mu_plus < 1 must be an exact multiple of "
                f"r^(2-n); max relative deviation {np.max(rel):g}"
            )
        w = f * 0.0
        return BocherDecomposition(
            n=n, case=BocherCase.MU_PLUS_LT_1, a=a, alpha=None, ring_w=w, w_is_zero=True
        )
    q = (mu - 1.0) / (n - 2.0)
    return BocherDecomposition(
        n=n, case=BocherCase.MU_PLUS_LT_1, a=0.0, alpha=None, ring_w=u**q, w_is_zero=False
    )


def reassemble(dec: BocherDecomposition, profile_cone: ConeProfile, radii) -> np.ndarray:
    """Rebuild u from a decomposition; inverse of bocher_decompose on its grid."""
    r = np.asarray(radii, dtype=float)
    n = dec.n
    mu = profile_cone.mu_plus
    if dec.case is BocherCase.MU_PLUS_EQ_1:
        return np.exp(dec.ring_w - dec.alpha * np.log(r))
    q = (mu - 1.0) / (n - 2.0)
    if dec.case is BocherCase.MU_PLUS_GT_1:
        return (dec.a**q * r ** (1.0 - mu) + dec.ring_w) ** (1.0 / q)
    if dec.w_is_zero:
        return dec.a * r ** (2.0 - n)
    return dec.ring_w ** (1.0 / q)


# --- Hölder exponent ----------------------------------------------------------


def holder_exponent_fit(p: RadialProfile, mu_plus: float) -> float:
    """Log-log slope s of |u^q(r) - u^q(0+)| ~ r^s near zero, q = (mu-1)/(n-2).

    Only meaningful for bounded profiles with mu_plus < 1; a constant profile
    has identically zero modulus and returns the infinity sentinel.  Raises
    when fewer than four sample points carry a usable modulus.
    """
    if mu_plus >= 1.0 - 1e-12:
        raise ValueError(f"Hölder fit requires mu_plus < 1, got {mu_plus}")
    q = (mu_plus - 1.0) / (p.n - 2.0)
    w = p.values**q
    limit, resid = _tail_limit(w)
    if resid > 1e-6 * (1.0 + abs(limit)):
        raise ValueError("profile limit at 0+ did not converge; is the data bounded?")
    modulus = np.abs(w - limit)
    floor = 1e-12 * (1.0 + abs(limit))
    usable = modulus > floor
    if int(np.count_nonzero(usable)) < 4:
        if np.all(modulus <= floor):
            return math.inf
        raise ValueError("fewer than 4 usable points for the log-log fit")
    slope, _ = np.polyfit(np.log(p.radii[usable]), np.log(modulus[usable]), 1)
    return float(slope)


# --- Harnack surrogate ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class HarnackReport:
    """Oscillation diagnostics on the epsilon-interior of the profile domain."""

    sup_over_inf: float
    max_scaled_log_gradient: float

    def __post_init__(self):
        if self.sup_over_inf < 1.0:
            raise ValueError("sup/inf quotient cannot be below 1")


def harnack_report(p: RadialProfile, epsilon: float) -> HarnackReport:
    """Sup/inf quotient and the discrete max of |d ln u / d ln r| on the
    interior r <= (1 - epsilon) * r_max.

    The log-log difference quotient is the radial surrogate for the scaled
    gradient |x| |grad ln u|; no constant is asserted here, the caller
    compares reports across a family to exhibit a uniform bound.
    """
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    cutoff = (1.0 - epsilon) * p.radii[-1] * (1.0 + 1e-12)
    mask = p.radii <= cutoff
    if int(np.count_nonzero(mask)) < 2:
        raise ValueError("profile does not cover the requested interior region")
    r, u = p.radii[mask], p.values[mask]
    grad = np.abs(np.diff(np.log(u)) / np.diff(np.log(r)))
    return HarnackReport(
        sup_over_inf=float(np.max(u) / np.min(u)),
        max_scaled_log_gradient=float(np.max(grad)),
    )


# --- comparison and monotonicity scans -----------------------------------------


_REL_SLACK = 1e-12


def _common_mask(sub: RadialProfile, super_: RadialProfile, ann: Annulus) -> np.ndarray:
    if sub.radii.shape != super_.radii.shape or not np.allclose(
        sub.radii, super_.radii, rtol=1e-12, atol=0.0
    ):
        raise ValueError("profiles must share a common radii grid")
    mask = (sub.radii >= ann.a) & (sub.radii <= ann.b)
    if int(np.count_nonzero(mask)) < 2:
        raise ValueError("annulus selects fewer than two grid points")
    return mask


def comparison_scan(sub: RadialProfile, super_: RadialProfile, ann: Annulus) -> CheckResult:
    """Pass iff sub <= super at every grid radius in the annulus (relative slack).

    Endpoint ordering is part of the check: data violating it is flagged as
    a failure with the first offending radius as witness, since ordered
    boundary data is exactly what the comparison principle needs.
    """
    mask = _common_mask(sub, super_, ann)
    s, S = sub.values[mask], super_.values[mask]
    bad = s > S * (1.0 + _REL_SLACK)
    if not np.any(bad):
        margin = float(np.min(S - s))
        return CheckResult("comparison", True, lhs=margin, rhs=0.0, tol=_REL_SLACK)
    idx = int(np.argmax(bad))
    return CheckResult(
        "comparison", False, lhs=float(s[idx]), rhs=float(S[idx]), tol=_REL_SLACK,
        witness=float(sub.radii[mask][idx]),
    )


def shooting_scan(sol: RadialProfile, supersol: RadialProfile, ann: Annulus) -> CheckResult:
    """Once a supersolution dips below a solution, it stays below inward.

    Requires supersol >= sol at the outer end; finds the largest interior
    radius d where supersol <= sol and verifies supersol <= sol on (a, d].
    Trivially passes when no dip exists.
    """
    mask = _common_mask(sol, supersol, ann)
    r = sol.radii[mask]
    s, S = sol.values[mask], supersol.values[mask]
    if S[-1] < s[-1] * (1.0 - _REL_SLACK):
        raise ValueError("supersolution must dominate the solution at the outer end")
    below = S <= s * (1.0 + _REL_SLACK)
    interior = below[:-1]
    if not np.any(interior):
        return CheckResult("shooting_comparison", True, lhs=math.nan, rhs=0.0, tol=_REL_SLACK)
    d_idx = int(np.max(np.nonzero(interior)[0]))
    ok = bool(np.all(below[: d_idx + 1]))
    witness = None if ok else float(r[int(np.argmin(below[: d_idx + 1]))])
    return CheckResult(
        "shooting_comparison", ok, lhs=float(r[d_idx]), rhs=0.0, tol=_REL_SLACK,
        witness=witness,
    )


def supersolution_bounds(p: RadialProfile) -> CheckResult:
    """u non-increasing and r^(n-2) u non-decreasing, with relative slack."""
    u = p.values
    f = p.radii ** (p.n - 2.0) * u
    dec_ok = bool(np.all(u[1:] <= u[:-1] * (1.0 + _REL_SLACK)))
    inc_ok = bool(np.all(f[1:] >= f[:-1] * (1.0 - _REL_SLACK)))
    worst = min(
        float(np.min(u[:-1] * (1.0 + _REL_SLACK) - u[1:])),
        float(np.min(f[1:] - f[:-1] * (1.0 - _REL_SLACK))),
    )
    return CheckResult("supersolution_bounds", dec_ok and inc_ok, lhs=worst, rhs=0.0,
                       tol=_REL_SLACK)


def fundamental_deficit_bound(p: RadialProfile, mu_minus: float, tol: float = 1e-9) -> CheckResult:
    """Lower bound at a singularity when the cone's minus-exponent is finite.

    With z = (mu_minus - 1)/(n - 2) and a the limit of r^(n-2) u, the
    deficit a^z r^(1-mu) - u^z is non-negative, and u stays above
    [a^z r^(1-mu) - max deficit]^(1/z) wherever the base is positive; for a
    sampled closed-form singular family both hold with equality up to
    rounding.
    """
    if not (math.isfinite(mu_minus) and mu_minus > 1.0):
        raise ValueError(f"mu_minus must be finite and > 1, got {mu_minus}")
    n = p.n
    z = (mu_minus - 1.0) / (n - 2.0)
    r, u = p.radii, p.values
    g = u**z * r ** (mu_minus - 1.0)  # -> a^z
    az, resid = _tail_limit(g)
    if resid > 1e-8 * (1.0 + abs(az)):
        raise ExtrapolationError(f"a^z extrapolation residual {resid:g}", tail=g[:6])
    sing = az * r ** (1.0 - mu_minus)
    deficit = sing - u**z
    slack = _constancy_slack(tol, float(np.median(deficit)), sing)
    if np.any(deficit < -slack):
        return CheckResult("fundamental_deficit_nonnegative", False,
                           lhs=float(np.min(deficit)), rhs=0.0, tol=tol)
    base = sing - float(np.max(deficit))
    mask = base > 0.0
    gap = u[mask] ** z - base[mask]
    worst = float(np.min(gap + slack[mask]))
    return CheckResult("fundamental_deficit_bound", worst >= 0.0, lhs=worst, rhs=0.0, tol=tol)
