"""Closed-form radial solution families, their validation against a cone,
and the two-point radial boundary value problem.

Every continuous positive radial function whose hat conformal Hessian has
its eigenvalue tuple on a cone boundary belongs to one of four closed
families (power laws when mu_plus = 1; a power substitution in
r^(1-mu_plus) otherwise; two mirror families in r^(1-mu_minus) when
mu_minus is finite).  A fifth family solves the degenerate equation
sigma_k(eigenvalues) = 0 with no sign restrictions on its constants.

The boundary value problem u(a) = alpha, u(b) = beta on a finite annulus is
solvable exactly when either the cone's minus-exponent is finite (always
solvable) or the log ratio ln(alpha/beta) lies in [0, (n-2) ln(b/a)]; the
solution is unique.  Two independent solver paths are provided: a direct
linear solve in the substituted variable, and bisection shooting on the
family constants.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .cones import Cone, cone_profile
from .conformal import Branch, RadialJet, branch_classify, radial_eigs
from .errors import DomainError
from .report import CheckResult

_MU_ONE_BAND = 1e-9  # exponents this close to 1 route to the logarithmic family
_CONSTRAINT_SLACK = 1e-12


@dataclasses.dataclass(frozen=True)
class Annulus:
    """Open annulus {a < |x| < b}; a may be 0 and b may be inf."""

    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b):
            raise ValueError(f"annulus requires 0 <= a < b, got a={self.a}, b={self.b}")

    @property
    def finite(self) -> bool:
        return self.a > 0.0 and math.isfinite(self.b)


def log_midpoints(lo: float, hi: float, m: int) -> np.ndarray:
    """m log-equispaced cell midpoints strictly inside (lo, hi)."""
    if m < 2:
        raise ValueError(f"grid must have at least 2 points, got {m}")
    if not (0.0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got ({lo}, {hi})")
    edges = np.log(lo) + (np.log(hi) - np.log(lo)) * (np.arange(m) + 0.5) / m
    return np.exp(edges)


def _effective_interval(ann: Annulus, inner_decades: float = 8.0) -> tuple[float, float]:
    """Clip an annulus with a=0 or b=inf to a finite working interval."""
    a, b = ann.a, ann.b
    if a == 0.0 and math.isinf(b):
        return 10.0**-inner_decades, 10.0**inner_decades
    if a == 0.0:
        return b * 10.0**-inner_decades, b
    if math.isinf(b):
        return a, a * 10.0**inner_decades
    return a, b


# --- family variants ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class RadialFamily:
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")

    def domain(self) -> tuple[float, float]:
        """Open interval of radii on which the family is positive."""
        raise NotImplementedError

    def jet(self, r: float) -> RadialJet:
        raise NotImplementedError


def _positive_base_interval(A: float, B: float, s: float) -> tuple[float, float]:
    """Open interval where A * r^s + B > 0, for s != 0."""
    if A <= 0.0 and B <= 0.0:
        return (math.inf, math.inf)  # empty
    if A >= 0.0 and B >= 0.0:
        return (0.0, math.inf)
    edge = (-B / A) ** (1.0 / s)  # opposite signs here, so the ratio is positive
    if (A > 0.0) == (s > 0.0):  # the A r^s term grows with r
        return (edge, math.inf)
    return (0.0, edge)


def _power_jet(c1: float, c2: float, n: int, r: float) -> RadialJet:
    u = c1 * r**-c2
    up = -c2 * c1 * r ** (-c2 - 1.0)
    upp = c2 * (c2 + 1.0) * c1 * r ** (-c2 - 2.0)
    return RadialJet(r=r, u=u, uprime=up, udoubleprime=upp, n=n)


def _substitution_jet(A: float, B: float, mu: float, n: int, r: float) -> RadialJet:
    """Jet of u = (A * r^(1-mu) + B)^((n-2)/(mu-1)) where the base is positive."""
    w = A * r ** (1.0 - mu) + B
    if w <= 0.0:
        raise DomainError(f"family base non-positive at r={r}: {w}")
    p = (n - 2.0) / (mu - 1.0)
    wp = (1.0 - mu) * A * r**-mu
    wpp = -mu * (1.0 - mu) * A * r ** (-mu - 1.0)
    u = w**p
    up = p * w ** (p - 1.0) * wp
    upp = p * (p - 1.0) * w ** (p - 2.0) * wp * wp + p * w ** (p - 1.0) * wpp
    return RadialJet(r=r, u=u, uprime=up, udoubleprime=upp, n=n)


@dataclasses.dataclass(frozen=True)
class PowerLaw(RadialFamily):
    """u = c1 * r^(-c2).  The exponent range [0, n-2] is a theorem
    constraint checked by validate_family, not a type invariant, so the
    degenerate sigma_k classification can reuse this shape."""

    c1: float
    c2: float

    def __post_init__(self):
        super().__post_init__()
        if not (math.isfinite(self.c1) and self.c1 > 0.0):
            raise ValueError(f"c1 must be positive, got {self.c1}")
        if not math.isfinite(self.c2):
            raise ValueError("c2 must be finite")

    def domain(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def jet(self, r: float) -> RadialJet:
        return _power_jet(self.c1, self.c2, self.n, r)


@dataclasses.dataclass(frozen=True)
class PlusFamily(RadialFamily):
    """u = (c3 * r^(1-mu) + c4)^((n-2)/(mu-1)) with c3, c4 >= 0, mu != 1."""

    c3: float
    c4: float
    mu_plus: float

    def __post_init__(self):
        super().__post_init__()
        if self.c3 < 0.0 or self.c4 < 0.0 or self.c3 + self.c4 <= 0.0:
            raise ValueError(
                f"need c3 >= 0, c4 >= 0, c3 + c4 > 0; got ({self.c3}, {self.c4})"
            )
        if abs(self.mu_plus - 1.0) < _MU_ONE_BAND:
            raise ValueError("exponent too close to 1; use the PowerLaw family")

    def domain(self) -> tuple[float, float]:
        return (0.0, math.inf)

    def jet(self, r: float) -> RadialJet:
        return _substitution_jet(self.c3, self.c4, self.mu_plus, self.n, r)


@dataclasses.dataclass(frozen=True)
class MinusFamilyC(RadialFamily):
    """u = (c5 * r^(1-mu) - c6)^((n-2)/(mu-1)) with c5 > 0, c6 >= 0; positive
    near the origin, dies at a finite radius when c6 > 0."""

    c5: float
    c6: float
    mu_minus: float

    def __post_init__(self):
        super().__post_init__()
        if not self.c5 > 0.0:
            raise ValueError(f"c5 must be positive, got {self.c5}")
        if self.c6 < 0.0:
            raise ValueError(f"c6 must be >= 0, got {self.c6}")
        if not (math.isfinite(self.mu_minus) and self.mu_minus > 1.0):
            raise ValueError(f"mu_minus must be finite and > 1, got {self.mu_minus}")

    def domain(self) -> tuple[float, float]:
        return _positive_base_interval(self.c5, -self.c6, 1.0 - self.mu_minus)

    def jet(self, r: float) -> RadialJet:
        return _substitution_jet(self.c5, -self.c6, self.mu_minus, self.n, r)


@dataclasses.dataclass(frozen=True)
class MinusFamilyD(RadialFamily):
    """u = (-c7 * r^(1-mu) + c8)^((n-2)/(mu-1)) with c7 >= 0, c8 > 0; positive
    for large radii, dies at a positive radius when c7 > 0."""

    c7: float
    c8: float
    mu_minus: float

    def __post_init__(self):
        super().__post_init__()
        if self.c7 < 0.0:
            raise ValueError(f"c7 must be >= 0, got {self.c7}")
        if not self.c8 > 0.0:
            raise ValueError(f"c8 must be positive, got {self.c8}")
        if not (math.isfinite(self.mu_minus) and self.mu_minus > 1.0):
            raise ValueError(f"mu_minus must be finite and > 1, got {self.mu_minus}")

    def domain(self) -> tuple[float, float]:
        return _positive_base_interval(-self.c7, self.c8, 1.0 - self.mu_minus)

    def jet(self, r: float) -> RadialJet:
        return _substitution_jet(-self.c7, self.c8, self.mu_minus, self.n, r)


@dataclasses.dataclass(frozen=True)
class SigmaKNull(RadialFamily):
    """Radial solutions of sigma_k(eigenvalues of hat matrix) = 0.

    For n = 2k this is coef_a * r^(-coef_b) with coef_a > 0 and coef_b free;
    otherwise (coef_a * r^(-(n-2k)/k) + coef_b)^((n-2)k/(n-2k)) with both
    constants free subject only to positivity of the base.  No cone
    membership is implied.
    """

    k: int
    coef_a: float
    coef_b: float

    def __post_init__(self):
        super().__post_init__()
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 1 <= k <= n={self.n}, got {self.k}")
        if self.n == 2 * self.k and self.coef_a <= 0.0:
            raise ValueError("n = 2k branch needs a positive prefactor")

    @property
    def mu_k(self) -> float:
        return (self.n - self.k) / self.k

    def domain(self) -> tuple[float, float]:
        if self.n == 2 * self.k:
            return (0.0, math.inf)
        return _positive_base_interval(self.coef_a, self.coef_b, 1.0 - self.mu_k)

    def jet(self, r: float) -> RadialJet:
        if self.n == 2 * self.k:
            return _power_jet(self.coef_a, self.coef_b, self.n, r)
        return _substitution_jet(self.coef_a, self.coef_b, self.mu_k, self.n, r)


def eval_family(fam: RadialFamily, r: float) -> RadialJet:
    """Closed-form (u, u', u'') of a family at radius r."""
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"radius must be finite and positive, got {r}")
    lo, hi = fam.domain()
    if not lo < r < hi:
        raise DomainError(f"r={r} outside the family's positivity interval ({lo}, {hi})")
    return fam.jet(r)


# --- validation against a cone -----------------------------------------------


@dataclasses.dataclass(frozen=True)
class FamilyValidation:
    passed: bool
    checks: list[CheckResult]
    max_residual: float
    branch_counts: dict[str, int]

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _structure_checks(prof, fam: RadialFamily, ann: Annulus) -> list[CheckResult]:
    """Constant constraints of the classification for this cone profile."""
    n = fam.n
    rows = []
    mu_is_one = abs(prof.mu_plus - 1.0) < _MU_ONE_BAND
    if isinstance(fam, PowerLaw):
        rows.append(
            CheckResult("exponent_is_one", mu_is_one, lhs=prof.mu_plus, rhs=1.0, tol=_MU_ONE_BAND)
        )
        in_range = -_CONSTRAINT_SLACK <= fam.c2 <= n - 2.0 + _CONSTRAINT_SLACK
        rows.append(
            CheckResult("power_exponent_range", in_range, lhs=fam.c2, rhs=n - 2.0,
                        tol=_CONSTRAINT_SLACK)
        )
    elif isinstance(fam, PlusFamily):
        rows.append(
            CheckResult("exponent_is_not_one", not mu_is_one, lhs=prof.mu_plus, rhs=1.0,
                        tol=_MU_ONE_BAND)
        )
        match = abs(fam.mu_plus - prof.mu_plus) <= 1e-9 * (1.0 + abs(prof.mu_plus))
        rows.append(
            CheckResult("plus_exponent_matches_cone", match, lhs=fam.mu_plus,
                        rhs=prof.mu_plus, tol=1e-9)
        )
    elif isinstance(fam, (MinusFamilyC, MinusFamilyD)):
        rows.append(
            CheckResult("cone_minus_exponent_finite", not prof.axis_on_boundary,
                        lhs=prof.mu_minus, rhs=math.inf)
        )
        if not prof.axis_on_boundary:
            match = abs(fam.mu_minus - prof.mu_minus) <= 1e-9 * (1.0 + abs(prof.mu_minus))
            rows.append(
                CheckResult("minus_exponent_matches_cone", match, lhs=fam.mu_minus,
                            rhs=prof.mu_minus, tol=1e-9)
            )
        if isinstance(fam, MinusFamilyC):
            # outer-limit constraint: lim_{r->b} c5 r^(1-mu) - c6 >= 0
            lim = -fam.c6 if math.isinf(ann.b) else fam.c5 * ann.b ** (1.0 - fam.mu_minus) - fam.c6
            rows.append(
                CheckResult("outer_limit_nonnegative",
                            lim >= -_CONSTRAINT_SLACK * (1.0 + fam.c5 + fam.c6),
                            lhs=lim, rhs=0.0, tol=_CONSTRAINT_SLACK)
            )
        else:
            # inner-limit constraint: -lim_{r->a} c7 r^(1-mu) + c8 >= 0
            if ann.a == 0.0:
                lim = math.inf if fam.c7 == 0.0 else -math.inf
            else:
                lim = -fam.c7 * ann.a ** (1.0 - fam.mu_minus) + fam.c8
            rows.append(
                CheckResult("inner_limit_nonnegative",
                            lim >= -_CONSTRAINT_SLACK * (1.0 + fam.c7 + fam.c8),
                            lhs=lim, rhs=0.0, tol=_CONSTRAINT_SLACK)
            )
    elif isinstance(fam, SigmaKNull):
        rows.append(
            CheckResult("family_solves_cone_boundary_problem", False,
                        witness="degenerate sigma_k family carries no cone membership")
        )
    return rows


def validate_family(
    cone: Cone, fam: RadialFamily, ann: Annulus, grid: int = 200, tol: float = 1e-8
) -> FamilyValidation:
    """Check a family against a cone on a log grid over the annulus.

    Passes when every grid point lands on the branch structure dictated by
    the cone profile (no violations) and the classification's constant
    constraints hold.  A profile/family mismatch is reported, not raised.
    """
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    if fam.n != cone.n:
        raise ValueError(f"dimension mismatch: family n={fam.n}, cone n={cone.n}")
    prof = cone_profile(cone)
    checks = _structure_checks(prof, fam, ann)

    lo, hi = _effective_interval(ann)
    dlo, dhi = fam.domain()
    lo, hi = max(lo, dlo), min(hi, dhi)
    counts = {b.value: 0 for b in Branch}
    max_residual = 0.0
    if not lo < hi:
        checks.append(CheckResult("annulus_meets_positivity_domain", False, lhs=lo, rhs=hi))
    else:
        checks.append(CheckResult("annulus_meets_positivity_domain", True, lhs=lo, rhs=hi))
        for r in log_midpoints(lo, hi, grid):
            eigs = radial_eigs(fam.jet(float(r)))
            branch = branch_classify(prof, eigs, tol=tol)
            counts[branch.value] += 1
            scale = abs(eigs.V) + abs(eigs.v) + 1e-30
            if branch is Branch.PLUS:
                max_residual = max(max_residual, abs(eigs.V + prof.mu_plus * eigs.v) / scale)
            elif branch is Branch.MINUS:
                max_residual = max(max_residual, abs(eigs.V + prof.mu_minus * eigs.v) / scale)
        checks.append(
            CheckResult("no_branch_violations", counts["violation"] == 0,
                        lhs=counts["violation"], rhs=0.0, tol=0.0)
        )
    return FamilyValidation(
        passed=all(c.passed for c in checks),
        checks=checks,
        max_residual=max_residual,
        branch_counts=counts,
    )


# --- two-point boundary value problem ----------------------------------------


@dataclasses.dataclass(frozen=True)
class Infeasible:
    """Witness of a violated feasibility inequality for the radial BVP.

    ``side`` is "lower" when ln(alpha/beta) < 0 and "upper" when it exceeds
    (n-2) ln(b/a).
    """

    side: str
    lhs: float
    rhs: float

    @property
    def message(self) -> str:
        if self.side == "lower":
            return (
                f"infeasible: ln(alpha/beta) = {self.lhs:.6g} < 0; feasibility "
                "requires 0 <= ln(alpha/beta) <= (n-2) ln(b/a)"
            )
        return (
            f"infeasible: ln(alpha/beta) = {self.lhs:.6g} exceeds "
            f"(n-2) ln(b/a) = {self.rhs:.6g}; feasibility requires "
            "0 <= ln(alpha/beta) <= (n-2) ln(b/a)"
        )


def _clamp_small_negative(x: float, scale: float) -> float | None:
    """Round tiny negatives (linear-solve roundoff) up to zero; None if truly negative."""
    if x >= 0.0:
        return x
    if x >= -1e-11 * (1.0 + abs(scale)):
        return 0.0
    return None


def _bvp_inputs(ann: Annulus, alpha: float, beta: float) -> tuple[float, float]:
    if not ann.finite:
        raise ValueError("the boundary value problem needs a finite annulus with a > 0")
    if not (alpha > 0.0 and beta > 0.0 and math.isfinite(alpha) and math.isfinite(beta)):
        raise ValueError(f"boundary values must be finite and positive, got {alpha}, {beta}")
    lhs = math.log(alpha) - math.log(beta)
    logba = math.log(ann.b) - math.log(ann.a)
    return lhs, logba


def solve_radial_bvp(cone: Cone, ann: Annulus, alpha: float, beta: float):
    """Unique radial solution with u(a) = alpha, u(b) = beta, or Infeasible.

    When the axis sits on the cone boundary the problem is solvable exactly
    when 0 <= ln(alpha/beta) <= (n-2) ln(b/a); otherwise it is always
    solvable, falling back to the minus-exponent substitution when the
    plus-side sign constraints fail.  Infeasible is returned, never raised.
    """
    n = cone.n
    lhs, logba = _bvp_inputs(ann, alpha, beta)
    rhs = (n - 2.0) * logba
    prof = cone_profile(cone)
    if prof.axis_on_boundary:
        if lhs < 0.0:
            return Infeasible("lower", lhs=lhs, rhs=rhs)
        if lhs > rhs:
            return Infeasible("upper", lhs=lhs, rhs=rhs)
    fam = _solve_plus_branch(prof, n, ann, alpha, beta, lhs, logba)
    if fam is not None:
        return fam
    return _solve_minus_branch(prof, n, ann, alpha, beta)


def _solve_plus_branch(prof, n, ann, alpha, beta, lhs, logba):
    a, b = ann.a, ann.b
    mu = prof.mu_plus
    if abs(mu - 1.0) < _MU_ONE_BAND:
        c2 = lhs / logba
        if c2 < -1e-11 or c2 > n - 2.0 + 1e-11:
            return None
        c2 = min(max(c2, 0.0), n - 2.0)
        return PowerLaw(n, c1=alpha * a**c2, c2=c2)
    q = (mu - 1.0) / (n - 2.0)
    wa, wb = alpha**q, beta**q
    ra, rb = a ** (1.0 - mu), b ** (1.0 - mu)
    c3 = (wa - wb) / (ra - rb)
    c4 = wa - c3 * ra
    c3 = _clamp_small_negative(c3, abs(wa) + abs(wb))
    c4 = _clamp_small_negative(c4, abs(wa) + abs(wb))
    if c3 is None or c4 is None:
        return None
    return PlusFamily(n, c3=c3, c4=c4, mu_plus=mu)


def _solve_minus_branch(prof, n, ann, alpha, beta):
    a, b = ann.a, ann.b
    mu = prof.mu_minus
    z = (mu - 1.0) / (n - 2.0)
    za, zb = alpha**z, beta**z
    ra, rb = a ** (1.0 - mu), b ** (1.0 - mu)
    d5 = (za - zb) / (ra - rb)
    d6 = za - d5 * ra
    if d6 < 0.0:
        return MinusFamilyC(n, c5=d5, c6=-d6, mu_minus=mu)
    return MinusFamilyD(n, c7=max(-d5, 0.0), c8=d6, mu_minus=mu)


def _bisect(fn, lo: float, hi: float, iters: int = 200, xtol: float = 1e-15):
    """Bisection on a sign change of fn over [lo, hi]; returns the midpoint."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        return None
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
        if hi - lo <= xtol * (1.0 + abs(lo) + abs(hi)):
            break
    return 0.5 * (lo + hi)


def solve_radial_bvp_shooting(cone: Cone, ann: Annulus, alpha: float, beta: float):
    """Independent BVP path: bisection shooting on the family constants.

    Pins the inner boundary value exactly and bisects the singular-part
    constant until the outer value matches.  Exists to cross-check the
    linear-solve path; the two must agree (uniqueness).
    """
    n = cone.n
    lhs, logba = _bvp_inputs(ann, alpha, beta)
    rhs = (n - 2.0) * logba
    prof = cone_profile(cone)
    a, b = ann.a, ann.b
    if prof.axis_on_boundary:
        if lhs < 0.0:
            return Infeasible("lower", lhs=lhs, rhs=rhs)
        if lhs > rhs:
            return Infeasible("upper", lhs=lhs, rhs=rhs)

    mu = prof.mu_plus
    if abs(mu - 1.0) < _MU_ONE_BAND:
        def miss(c2):
            return alpha * (a / b) ** c2 - beta

        root = _bisect(miss, 0.0, n - 2.0)
        if root is not None:
            return PowerLaw(n, c1=alpha * a**root, c2=root)
    else:
        q = (mu - 1.0) / (n - 2.0)
        wa, wb = alpha**q, beta**q
        ra, rb = a ** (1.0 - mu), b ** (1.0 - mu)
        c3_max = wa / ra

        def miss(c3):
            return c3 * (rb - ra) + wa - wb

        root = _bisect(miss, 0.0, c3_max)
        if root is not None:
            c4 = wa - root * ra
            return PlusFamily(n, c3=root, c4=max(c4, 0.0), mu_plus=mu)

    mu = prof.mu_minus
    z = (mu - 1.0) / (n - 2.0)
    za, zb = alpha**z, beta**z
    ra, rb = a ** (1.0 - mu), b ** (1.0 - mu)

    def miss(d5):
        return d5 * (rb - ra) + za - zb

    width = 1.0 + abs(za) + abs(zb)
    while miss(-width) * miss(width) > 0.0:
        width *= 2.0
        if width > 1e30:
            raise RuntimeError("shooting bracket expansion failed")
    d5 = _bisect(miss, -width, width)
    d6 = za - d5 * ra
    if d6 < 0.0:
        return MinusFamilyC(n, c5=d5, c6=-d6, mu_minus=mu)
    return MinusFamilyD(n, c7=max(-d5, 0.0), c8=d6, mu_minus=mu)


# --- monotone quantity -------------------------------------------------------


def psi_profile(
    samples, r0: float, mu_plus: float, n: int
) -> list[tuple[float, float]]:
    """The normalized boundary-quotient Psi_{r0}(r) at each sample radius r < r0.

    Log quotient when mu_plus = 1, power quotient otherwise.  For an exact
    closed-form solution Psi is constant (the singular-part constant); for a
    radial supersolution it is non-decreasing in r.  Monotonicity is the
    caller's check, this only evaluates the quantity.
    """
    pts = sorted((float(r), float(u)) for r, u in samples)
    radii = [r for r, _ in pts]
    if len(set(radii)) != len(radii):
        raise ValueError("duplicate radii in samples")
    if any(u <= 0.0 or r <= 0.0 for r, u in pts):
        raise ValueError("samples must have positive radii and values")
    u0 = None
    for r, u in pts:
        if r == r0 or abs(r - r0) <= 1e-12 * r0:
            u0 = u
            break
    if u0 is None:
        raise ValueError(f"reference radius r0={r0} not present in samples")

    out = []
    if abs(mu_plus - 1.0) < _MU_ONE_BAND:
        for r, u in pts:
            if r < r0 and abs(r - r0) > 1e-12 * r0:
                out.append((r, (math.log(u) - math.log(u0)) / (math.log(r0) - math.log(r))))
        return out
    q = (mu_plus - 1.0) / (n - 2.0)
    for r, u in pts:
        if r < r0 and abs(r - r0) > 1e-12 * r0:
            out.append((r, (u**q - u0**q) / (r ** (1.0 - mu_plus) - r0 ** (1.0 - mu_plus))))
    return out


# --- comparison barriers -----------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Xi:
    """Steep sub-barrier u(c) (c/r)^(n-2) exp[-eps (ln r/c)^mu / (ln d/c)^(mu-1)].

    Interpolates boundary data whose log slope is (n-2) + eps with eps > 0;
    its multiplicity-(n-1) eigenvalue is negative strictly inside (c, d),
    which is what expels its eigenvalue tuple from an axis-on-boundary cone.
    """

    n: int
    c: float
    d: float
    eps: float
    mu: float
    u_at_c: float

    def __post_init__(self):
        if not 0.0 < self.c < self.d:
            raise ValueError(f"need 0 < c < d, got ({self.c}, {self.d})")
        if not self.eps > 0.0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not self.mu > 1.0:
            raise ValueError(f"mu must exceed 1, got {self.mu}")
        if not self.u_at_c > 0.0:
            raise ValueError("anchor value must be positive")
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")

    @property
    def u_at_d(self) -> float:
        L = math.log(self.d / self.c)
        return self.u_at_c * math.exp(-(self.n - 2.0 + self.eps) * L)


@dataclasses.dataclass(frozen=True)
class XiHat:
    """Anchored barrier u(d) exp[m (ln d/r)^mu / (ln d/c)^(mu-1)] with free slope m."""

    n: int
    c: float
    d: float
    m: float
    mu: float
    u_at_d: float

    def __post_init__(self):
        if not 0.0 < self.c < self.d:
            raise ValueError(f"need 0 < c < d, got ({self.c}, {self.d})")
        if not self.mu > 1.0:
            raise ValueError(f"mu must exceed 1, got {self.mu}")
        if not self.u_at_d > 0.0:
            raise ValueError("anchor value must be positive")
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")

    @property
    def u_at_c(self) -> float:
        return self.u_at_d * math.exp(self.m * math.log(self.d / self.c))


def barrier_eval(bar, r: float) -> RadialJet:
    """Closed-form jet of a barrier at radius r in [c, d]."""
    if not bar.c <= r <= bar.d:
        raise DomainError(f"r={r} outside the barrier interval [{bar.c}, {bar.d}]")
    L = math.log(bar.d / bar.c)
    if isinstance(bar, Xi):
        s = math.log(r / bar.c)
        value = bar.u_at_c * (bar.c / r) ** (bar.n - 2.0) * math.exp(
            -bar.eps * s**bar.mu / L ** (bar.mu - 1.0)
        )
        h = -(bar.n - 2.0) - bar.eps * bar.mu * s ** (bar.mu - 1.0) / L ** (bar.mu - 1.0)
        hp_r = -bar.eps * bar.mu * (bar.mu - 1.0) * s ** (bar.mu - 2.0) / L ** (bar.mu - 1.0)
    elif isinstance(bar, XiHat):
        t = math.log(bar.d / r)
        value = bar.u_at_d * math.exp(bar.m * t**bar.mu / L ** (bar.mu - 1.0))
        h = -bar.m * bar.mu * t ** (bar.mu - 1.0) / L ** (bar.mu - 1.0)
        hp_r = bar.m * bar.mu * (bar.mu - 1.0) * t ** (bar.mu - 2.0) / L ** (bar.mu - 1.0)
    else:
        raise TypeError(f"unknown barrier type {type(bar).__name__}")
    # u'/u = h/r and u''/u = (h' r - h + h^2)/r^2, with h' r = hp_r here
    up = value * h / r
    upp = value * (hp_r - h + h * h) / r**2
    return RadialJet(r=r, u=value, uprime=up, udoubleprime=upp, n=bar.n)


# --- serialization -----------------------------------------------------------

_FAMILY_FIELDS = {
    "power_law": (PowerLaw, ("c1", "c2")),
    "plus": (PlusFamily, ("c3", "c4", "mu_plus")),
    "minus_c": (MinusFamilyC, ("c5", "c6", "mu_minus")),
    "minus_d": (MinusFamilyD, ("c7", "c8", "mu_minus")),
    "sigma_k_null": (SigmaKNull, ("k", "coef_a", "coef_b")),
}


def family_to_spec(fam: RadialFamily) -> dict:
    for name, (cls, fields) in _FAMILY_FIELDS.items():
        if type(fam) is cls:
            spec = {"variant": name, "n": fam.n}
            spec.update({f: getattr(fam, f) for f in fields})
            return spec
    raise ValueError(f"cannot serialize family of type {type(fam).__name__}")


def family_from_spec(spec: dict) -> RadialFamily:
    if not isinstance(spec, dict):
        raise ValueError(f"family spec must be a JSON object, got {type(spec).__name__}")
    variant = spec.get("variant")
    if variant not in _FAMILY_FIELDS:
        raise ValueError(f"unknown family variant {variant!r}")
    cls, fields = _FAMILY_FIELDS[variant]
    missing = [f for f in ("n", *fields) if f not in spec]
    if missing:
        raise ValueError(f"family spec for {variant!r} missing {missing}")
    kwargs = {"n": int(spec["n"])}
    for f in fields:
        kwargs[f] = int(spec[f]) if f == "k" else float(spec[f])
    return cls(**kwargs)
