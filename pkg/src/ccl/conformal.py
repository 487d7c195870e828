"""Conformal Hessian of a positive function and its radial eigenvalue structure.

For second-order data (u, grad u, hess u) of a positive function on flat
space, the rescaled conformal Hessian is

    hat_A = -u * hess + n/(n-2) * grad (x) grad - 1/(n-2) * |grad|^2 * I.

The un-rescaled matrix is A = 2/(n-2) * u^(-2n/(n-2)) * hat_A.  Because the
prefactor is positive and every cone here is scale invariant, classification
of the eigenvalue tuple against a cone is identical for A and hat_A; the
library treats this scaling relation as the defining one and works with
hat_A throughout.

For radial u(r) the eigenvalues of hat_A collapse to a simple eigenvalue

    V = -u u'' + (n-1)/(n-2) (u')^2

and an eigenvalue of multiplicity n-1

    v = -(1/r) u u' - 1/(n-2) (u')^2.

Boundary membership of (V, v, ..., v) then reduces to one of three branches:
v = 0, or v > 0 with V + mu_plus v = 0, or v < 0 with finite mu_minus and
V + mu_minus v = 0.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from typing import NamedTuple

import numpy as np

from .cones import ConeProfile, as_eigen_tuple

_SYM_TOL = 1e-14
_BRANCH_FLOOR = 1e-30


@dataclasses.dataclass(frozen=True)
class Jet2:
    """Second-order data (value, gradient, Hessian) of a positive function."""

    u: float
    grad: np.ndarray
    hess: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.u) and self.u > 0.0):
            raise ValueError(f"function value must be finite and positive, got {self.u}")
        grad = np.array(self.grad, dtype=float)
        hess = np.array(self.hess, dtype=float)
        if grad.ndim != 1 or grad.shape[0] < 3:
            raise ValueError(f"gradient must be an n-vector with n >= 3, got shape {grad.shape}")
        n = grad.shape[0]
        if hess.shape != (n, n):
            raise ValueError(f"Hessian must be {n}x{n}, got shape {hess.shape}")
        if not (np.all(np.isfinite(grad)) and np.all(np.isfinite(hess))):
            raise ValueError("jet entries must be finite")
        asym = float(np.max(np.abs(hess - hess.T)))
        if asym > _SYM_TOL * (1.0 + float(np.max(np.abs(hess)))):
            raise ValueError(f"Hessian asymmetry {asym:g} exceeds tolerance")
        grad.setflags(write=False)
        hess.setflags(write=False)
        object.__setattr__(self, "grad", grad)
        object.__setattr__(self, "hess", hess)

    @property
    def n(self) -> int:
        return self.grad.shape[0]


@dataclasses.dataclass(frozen=True)
class RadialJet:
    """Radial second-order data (u, u', u'') at radius r in dimension n."""

    r: float
    u: float
    uprime: float
    udoubleprime: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0.0):
            raise ValueError(f"radius must be finite and positive, got {self.r}")
        if not (math.isfinite(self.u) and self.u > 0.0):
            raise ValueError(f"function value must be finite and positive, got {self.u}")
        if self.n < 3:
            raise ValueError(f"dimension must be >= 3, got {self.n}")


class RadialEigenvalues(NamedTuple):
    V: float  # simple eigenvalue
    v: float  # eigenvalue of multiplicity n-1


def hat_conformal_hessian(jet: Jet2) -> np.ndarray:
    """Rescaled conformal Hessian -u*H + n/(n-2)*g(x)g - |g|^2/(n-2)*I."""
    n = jet.n
    g = jet.grad
    return (
        -jet.u * jet.hess
        + (n / (n - 2.0)) * np.outer(g, g)
        - (float(g @ g) / (n - 2.0)) * np.eye(n)
    )


def conformal_hessian(jet: Jet2) -> np.ndarray:
    """Un-rescaled conformal Hessian; same cone classification as the hat matrix."""
    n = jet.n
    return (2.0 / (n - 2.0)) * jet.u ** (-2.0 * n / (n - 2.0)) * hat_conformal_hessian(jet)


def sym_eigenvalues(m, tol: float = 1e-12) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix (LAPACK symmetric solver)."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square, got shape {arr.shape}")
    asym = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
    scale = float(np.max(np.abs(arr))) if arr.size else 0.0
    if asym > tol * (1.0 + scale):
        raise ValueError(f"matrix asymmetry {asym:g} exceeds tolerance {tol:g}")
    return np.linalg.eigvalsh(0.5 * (arr + arr.T))


def radial_eigs(jet: RadialJet) -> RadialEigenvalues:
    """Eigenvalues (V simple, v of multiplicity n-1) of the hat matrix of a radial jet."""
    n = jet.n
    u, up, upp = jet.u, jet.uprime, jet.udoubleprime
    V = -u * upp + (n - 1.0) / (n - 2.0) * up * up
    v = -(u * up) / jet.r - up * up / (n - 2.0)
    return RadialEigenvalues(V=V, v=v)


def radial_to_jet2(jet: RadialJet, direction=None) -> Jet2:
    """Embed a radial jet as full second-order data at x = r * direction.

    The gradient points along the unit direction and the Hessian splits into
    u'' on the radial line and u'/r on the orthogonal complement.
    """
    n = jet.n
    if direction is None:
        direction = np.zeros(n)
        direction[0] = 1.0
    d = np.asarray(direction, dtype=float)
    if d.shape != (n,):
        raise ValueError(f"direction must be an {n}-vector")
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        raise ValueError("direction must be nonzero")
    d = d / norm
    proj = np.outer(d, d)
    hess = jet.udoubleprime * proj + (jet.uprime / jet.r) * (np.eye(n) - proj)
    return Jet2(u=jet.u, grad=jet.uprime * d, hess=hess)


class Branch(enum.Enum):
    NULL = "null"
    PLUS = "plus"
    MINUS = "minus"
    VIOLATION = "violation"


def branch_classify(
    profile: ConeProfile, eigs: RadialEigenvalues, tol: float = 1e-8
) -> Branch:
    """Which boundary branch (if any) the radial eigenvalue pair realizes.

    The residuals are measured relative to |V| + |v| with a tiny floor so an
    exactly flat point never divides by zero.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    V, v = eigs.V, eigs.v
    scale = abs(V) + abs(v) + _BRANCH_FLOOR
    if abs(v) <= tol * scale:
        return Branch.NULL
    if v > 0.0 and abs(V + profile.mu_plus * v) <= tol * scale:
        return Branch.PLUS
    if v < 0.0 and not math.isinf(profile.mu_minus):
        if abs(V + profile.mu_minus * v) <= tol * scale:
            return Branch.MINUS
    return Branch.VIOLATION


def hat_eigen_tuple(jet: RadialJet) -> np.ndarray:
    """Full eigenvalue tuple (V, v, ..., v) of the hat matrix, ascending."""
    V, v = radial_eigs(jet)
    lam = np.full(jet.n, v)
    lam[0] = V
    lam.sort()
    return as_eigen_tuple(lam, jet.n)
