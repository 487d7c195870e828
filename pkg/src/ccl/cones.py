"""Symmetric cones pinched between the positive orthant and the half-space
``{sum(lambda) > 0}``, together with their critical exponents.

Every cone here is an open convex cone, invariant under coordinate
permutations, with vertex at the origin.  Each variant exposes a signed
defining function ``depth`` with

    depth(lam) > 0  <=>  lam interior,
    depth(lam) = 0  <=>  lam on the boundary,

homogeneous of degree one and permutation invariant.  Two scalars govern the
radial analysis downstream:

* ``mu_plus``: the unique t with ``(-t, 1, ..., 1)`` on the boundary;
* ``mu_minus``: infinite exactly when ``(1, 0, ..., 0)`` lies on the
  boundary, otherwise the unique t >= n-1 with ``(t, -1, ..., -1)`` on the
  boundary.

Both are computed by bisection on the membership predicate, which is
monotone in t because ``e_1 = (1, 0, ..., 0)`` belongs to the closed cone
and adding a closure vector to an interior point stays interior.  Closed
forms, where they exist, are used as cross-checks in the test suite, never
as the primary path.
"""

from __future__ import annotations

import dataclasses
import enum
import functools
import math

import numpy as np

from .errors import InvariantViolation
from .report import CheckResult

MU_BISECTION_TOL = 1e-12
MU_MINUS_CAP = 1e8
LEMMA_SLACK = 1e-9


def as_eigen_tuple(lam, n: int | None = None) -> np.ndarray:
    """Validate an eigenvalue tuple: 1-D, finite, optionally of length n."""
    arr = np.asarray(lam, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"eigenvalue tuple must be 1-D, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"dimension mismatch: expected n={n}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("eigenvalue tuple must be finite")
    return arr


def elementary_symmetric(lam, k: int) -> list[float]:
    """First k elementary symmetric polynomials of lam via Newton's identities.

    O(n*k) on power sums; no subset enumeration.  Returns [e_1, ..., e_k].
    """
    arr = as_eigen_tuple(lam)
    n = arr.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n={n}, got {k}")
    powers = [float(np.sum(arr**j)) for j in range(1, k + 1)]
    e = [1.0]
    for j in range(1, k + 1):
        acc = 0.0
        for i in range(1, j + 1):
            acc += (-1.0) ** (i - 1) * e[j - i] * powers[i - 1]
        e.append(acc / j)
    return e[1:]


def sigma_k(lam, k: int) -> float:
    """k-th elementary symmetric polynomial of the eigenvalue tuple."""
    return elementary_symmetric(lam, k)[-1]


def _signed_root(x: float, j: int) -> float:
    """sign(x) * |x|^(1/j); degree-one rescaling of a degree-j quantity."""
    if x == 0.0:
        return 0.0
    return math.copysign(abs(x) ** (1.0 / j), x)


@dataclasses.dataclass(frozen=True)
class Cone:
    """Base class; subclasses provide the signed defining function."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"dimension n must be an integer >= 3, got {self.n}")

    def depth(self, lam) -> float:
        raise NotImplementedError

    def contains(self, lam) -> bool:
        return self.depth(lam) > 0.0


@dataclasses.dataclass(frozen=True)
class GammaK(Cone):
    """Gårding cone of the k-th elementary symmetric polynomial.

    Membership uses the classical characterization: all of e_1, ..., e_k
    positive.  The defining function is the minimum of the degree-normalized
    signed roots of those polynomials.
    """

    k: int

    def __post_init__(self):
        super().__post_init__()
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 1 <= k <= n={self.n}, got {self.k}")

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        sigmas = elementary_symmetric(arr, self.k)
        return min(_signed_root(s, j) for j, s in enumerate(sigmas, start=1))


@dataclasses.dataclass(frozen=True)
class SigmaTheta(Cone):
    """theta-convex cone: every lambda_i + theta * sum(lambda) positive."""

    theta: float

    def __post_init__(self):
        super().__post_init__()
        if not (math.isfinite(self.theta) and self.theta >= 0.0):
            raise ValueError(f"theta must be finite and >= 0, got {self.theta}")

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        return float(arr.min() + self.theta * arr.sum())


@dataclasses.dataclass(frozen=True)
class GammaOne(Cone):
    """The half-space cone {sum(lambda) > 0}."""

    def depth(self, lam) -> float:
        return float(as_eigen_tuple(lam, self.n).sum())


def _check_mu_plus_range(n: int, mu: float) -> None:
    if not (-1.0 < mu < n - 1.0):
        raise ValueError(f"mu must lie in (-1, n-1) = (-1, {n - 1}), got {mu}")


def _check_mu_minus_range(n: int, mu: float) -> None:
    if not (mu > n - 1.0):  # math.inf allowed
        raise ValueError(f"mu must lie in (n-1, inf] = ({n - 1}, inf], got {mu}")


@dataclasses.dataclass(frozen=True)
class UGammaPlus(Cone):
    """Largest cone inside the half-space whose plus-exponent equals mu:
    every lambda_i + mu/(n-1-mu) * sum(lambda) positive."""

    mu: float

    def __post_init__(self):
        super().__post_init__()
        _check_mu_plus_range(self.n, self.mu)

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        c = self.mu / (self.n - 1.0 - self.mu)
        return float(arr.min() + c * arr.sum())


@dataclasses.dataclass(frozen=True)
class LGammaPlus(Cone):
    """Smallest cone with plus-exponent mu: the cone over the convex hull of
    the permutations of (-mu, 1, ..., 1); every lambda_i below
    sum(lambda)/(n-1-mu)."""

    mu: float

    def __post_init__(self):
        super().__post_init__()
        _check_mu_plus_range(self.n, self.mu)

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        d = 1.0 / (self.n - 1.0 - self.mu)
        return float(d * arr.sum() - arr.max())


@dataclasses.dataclass(frozen=True)
class UGammaMinus(Cone):
    """Largest cone whose minus-exponent equals mu (mu may be inf)."""

    mu: float

    def __post_init__(self):
        super().__post_init__()
        _check_mu_minus_range(self.n, self.mu)

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        c = 1.0 if math.isinf(self.mu) else self.mu / (self.mu - (self.n - 1.0))
        return float(c * arr.sum() - arr.max())


@dataclasses.dataclass(frozen=True)
class LGammaMinus(Cone):
    """Smallest cone whose minus-exponent equals mu; degenerates to the
    positive orthant at mu = inf."""

    mu: float

    def __post_init__(self):
        super().__post_init__()
        _check_mu_minus_range(self.n, self.mu)

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        c = 0.0 if math.isinf(self.mu) else 1.0 / (self.mu - (self.n - 1.0))
        return float(arr.min() + c * arr.sum())


@dataclasses.dataclass(frozen=True)
class GammaT(Cone):
    """Interpolating family {lam : t*lam + (1-t)*sum(lam)*e in base}.

    t=1 reproduces the base cone; t=0 degenerates to a positive multiple of
    sum(lambda), i.e. the half-space cone (handled explicitly so the signed
    function stays degree-one homogeneous).
    """

    base: Cone
    t: float

    def __post_init__(self):
        super().__post_init__()
        if not isinstance(self.base, Cone):
            raise ValueError("base must be a Cone")
        if self.n != self.base.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs base.n={self.base.n}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")

    def depth(self, lam) -> float:
        arr = as_eigen_tuple(lam, self.n)
        s1 = float(arr.sum())
        if self.t == 0.0:
            return s1 * self.base.depth(np.ones(self.n)) / self.n
        return self.base.depth(self.t * arr + (1.0 - self.t) * s1 * np.ones(self.n))


def gamma_t(base: Cone, t: float) -> GammaT:
    """Convenience constructor inferring the dimension from the base cone."""
    return GammaT(base.n, base, t)


class Region(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def cone_depth(cone: Cone, lam) -> float:
    """Signed defining function of the cone at lam (positive = interior)."""
    return cone.depth(lam)


def classify_point(cone: Cone, lam, tol: float = 1e-10) -> Region:
    """Interior/Boundary/Exterior with a boundary band relative to |lam|.

    The band is ``|depth| <= tol * (1 + |lam|)``; an absolute band would
    break under the degree-one scaling of the defining function.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    arr = as_eigen_tuple(lam, cone.n)
    g = cone.depth(arr)
    if abs(g) <= tol * (1.0 + float(np.linalg.norm(arr))):
        return Region.BOUNDARY
    return Region.INTERIOR if g > 0.0 else Region.EXTERIOR


def _axis_vector(n: int) -> np.ndarray:
    e1 = np.zeros(n)
    e1[0] = 1.0
    return e1


@functools.lru_cache(maxsize=None)
def mu_plus(cone: Cone) -> float:
    """Unique t with (-t, 1, ..., 1) on the cone boundary, by bisection."""
    n = cone.n

    def member(t: float) -> bool:
        probe = np.ones(n)
        probe[0] = -t
        return cone.depth(probe) > 0.0

    lo, hi = -1.0, float(n - 1)
    if not member(lo):
        raise InvariantViolation(
            "the all-ones vector is not interior; the cone oracle is inconsistent"
        )
    if member(hi):
        raise InvariantViolation(
            "(-(n-1), 1, ..., 1) is interior; the cone is not inside the half-space"
        )
    while hi - lo > MU_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if member(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@functools.lru_cache(maxsize=None)
def mu_minus(cone: Cone) -> float:
    """Inf exactly when e_1 is not interior; otherwise the unique t >= n-1
    with (t, -1, ..., -1) on the boundary, by bisection with doubling."""
    n = cone.n
    if cone.depth(_axis_vector(n)) <= 0.0:
        return math.inf

    def member(t: float) -> bool:
        probe = -np.ones(n)
        probe[0] = t
        return cone.depth(probe) > 0.0

    lo = float(n - 1)
    if member(lo):
        raise InvariantViolation(
            "(n-1, -1, ..., -1) is interior; the cone is not inside the half-space"
        )
    hi = 2.0 * n
    while not member(hi):
        hi *= 2.0
        if hi > MU_MINUS_CAP:
            raise InvariantViolation(
                f"no boundary crossing below {MU_MINUS_CAP} although the axis "
                "vector is interior; the cone oracle is inconsistent"
            )
    while hi - lo > MU_BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if member(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclasses.dataclass(frozen=True)
class ConeProfile:
    """Derived invariants of a cone: the two critical exponents and whether
    the coordinate axis sits on the boundary (equivalently mu_minus = inf)."""

    n: int
    mu_plus: float
    mu_minus: float
    axis_on_boundary: bool

    def __post_init__(self):
        if self.axis_on_boundary != math.isinf(self.mu_minus):
            raise InvariantViolation(
                "axis_on_boundary must hold exactly when mu_minus is infinite"
            )
        if self.axis_on_boundary and self.mu_plus > self.n - 2.0 + LEMMA_SLACK:
            raise InvariantViolation(
                f"axis on boundary forces mu_plus <= n-2, got {self.mu_plus}"
            )
        if not math.isinf(self.mu_minus) and self.mu_minus < self.n - 1.0 - LEMMA_SLACK:
            raise InvariantViolation(f"finite mu_minus must be >= n-1, got {self.mu_minus}")


def cone_profile(cone: Cone) -> ConeProfile:
    mm = mu_minus(cone)
    return ConeProfile(
        n=cone.n,
        mu_plus=mu_plus(cone),
        mu_minus=mm,
        axis_on_boundary=math.isinf(mm),
    )


def _nested_neighbor(cone: Cone) -> Cone | None:
    """A canonical strictly smaller cone of the same variant, when one exists."""
    if isinstance(cone, GammaK) and cone.k < cone.n:
        return GammaK(cone.n, cone.k + 1)
    if isinstance(cone, SigmaTheta) and cone.theta > 0.0:
        return SigmaTheta(cone.n, cone.theta / 2.0)
    return None


def lemma21_report(cone: Cone, slack: float = LEMMA_SLACK) -> list[CheckResult]:
    """Exponent inequalities for a single cone, one pass/fail row per item.

    Checks the two-sided bound linking the exponents, the axis restriction
    on mu_plus, and (when a canonical nested neighbor of the same variant
    exists) monotonicity of both exponents under cone inclusion.
    """
    prof = cone_profile(cone)
    n, mp, mm = prof.n, prof.mu_plus, prof.mu_minus
    rows = []

    lower = math.inf if mp <= 0.0 else (n - 2.0) + (n - 1.0) / mp
    lower_ok = (lower <= mm + slack) or (math.isinf(lower) and math.isinf(mm))
    rows.append(CheckResult("exponent_lower_bound", lower_ok, lhs=lower, rhs=mm, tol=slack))

    if mp > n - 2.0:
        upper = (n - 1.0) / (mp - (n - 2.0))
        rows.append(
            CheckResult("exponent_upper_bound", mm <= upper + slack, lhs=mm, rhs=upper, tol=slack)
        )
    else:
        rows.append(CheckResult("exponent_upper_bound", True, lhs=mm, rhs=math.inf, tol=slack))

    if prof.axis_on_boundary:
        rows.append(
            CheckResult(
                "axis_bounds_mu_plus", mp <= n - 2.0 + slack, lhs=mp, rhs=n - 2.0, tol=slack
            )
        )
    else:
        rows.append(CheckResult("axis_bounds_mu_plus", True, lhs=mp, rhs=math.inf, tol=slack))

    sub = _nested_neighbor(cone)
    if sub is not None:
        sub_prof = cone_profile(sub)
        mono_plus = sub_prof.mu_plus <= mp + slack
        mono_minus = math.isinf(sub_prof.mu_minus) or sub_prof.mu_minus >= mm - slack
        rows.append(
            CheckResult(
                "mu_plus_monotone_in_cone", mono_plus, lhs=sub_prof.mu_plus, rhs=mp, tol=slack
            )
        )
        rows.append(
            CheckResult(
                "mu_minus_antitone_in_cone", mono_minus, lhs=sub_prof.mu_minus, rhs=mm, tol=slack
            )
        )
    return rows


# --- JSON cone specs ---------------------------------------------------------

_SIMPLE_VARIANTS = {
    "gamma_k": (GammaK, ("k",)),
    "sigma_theta": (SigmaTheta, ("theta",)),
    "u_gamma_plus": (UGammaPlus, ("mu",)),
    "l_gamma_plus": (LGammaPlus, ("mu",)),
    "u_gamma_minus": (UGammaMinus, ("mu",)),
    "l_gamma_minus": (LGammaMinus, ("mu",)),
    "gamma_one": (GammaOne, ()),
}


def _parse_number(value):
    if isinstance(value, str):
        if value in ("inf", "Infinity", "+inf"):
            return math.inf
        return float(value)
    return float(value)


def cone_from_spec(spec: dict) -> Cone:
    """Build a cone from a JSON-style dict, e.g. {"variant": "gamma_k", "n": 4, "k": 2}."""
    if not isinstance(spec, dict):
        raise ValueError(f"cone spec must be a JSON object, got {type(spec).__name__}")
    variant = spec.get("variant")
    if variant == "gamma_t":
        if "base" not in spec or "t" not in spec:
            raise ValueError("gamma_t spec requires 'base' and 't'")
        base = cone_from_spec(spec["base"])
        return GammaT(base.n, base, _parse_number(spec["t"]))
    if variant not in _SIMPLE_VARIANTS:
        raise ValueError(f"unknown cone variant {variant!r}")
    cls, params = _SIMPLE_VARIANTS[variant]
    if "n" not in spec:
        raise ValueError(f"cone spec for {variant!r} requires 'n'")
    kwargs = {"n": int(spec["n"])}
    for p in params:
        if p not in spec:
            raise ValueError(f"cone spec for {variant!r} requires {p!r}")
        kwargs[p] = int(spec[p]) if p == "k" else _parse_number(spec[p])
    return cls(**kwargs)


def cone_to_spec(cone: Cone) -> dict:
    """Inverse of cone_from_spec."""
    if isinstance(cone, GammaT):
        return {"variant": "gamma_t", "base": cone_to_spec(cone.base), "t": cone.t}
    for name, (cls, params) in _SIMPLE_VARIANTS.items():
        if type(cone) is cls:
            spec = {"variant": name, "n": cone.n}
            for p in params:
                value = getattr(cone, p)
                spec[p] = "inf" if isinstance(value, float) and math.isinf(value) else value
            return spec
    raise ValueError(f"cannot serialize cone of type {type(cone).__name__}")
