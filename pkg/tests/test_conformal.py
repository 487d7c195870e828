"""Conformal Hessian assembly, eigenvalues, and radial branch structure."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ccl import (
    Branch,
    GammaK,
    Jet2,
    PlusFamily,
    PowerLaw,
    RadialJet,
    branch_classify,
    classify_point,
    cone_profile,
    conformal_hessian,
    eval_family,
    hat_conformal_hessian,
    radial_eigs,
    radial_to_jet2,
    sym_eigenvalues,
)


def fundamental_jet(n, r):
    """Analytic jet of r^(2-n) embedded at r * e_1."""
    u = r ** (2.0 - n)
    up = (2.0 - n) * r ** (1.0 - n)
    upp = (2.0 - n) * (1.0 - n) * r**-n
    return radial_to_jet2(RadialJet(r=r, u=u, uprime=up, udoubleprime=upp, n=n))


def test_constant_jet_is_flat():
    n = 4
    jet = Jet2(u=2.5, grad=np.zeros(n), hess=np.zeros((n, n)))
    assert np.allclose(hat_conformal_hessian(jet), 0.0)
    assert np.allclose(conformal_hessian(jet), 0.0)


def test_fundamental_profile_is_flat():
    for n in (3, 4, 6):
        for r in (0.3, 1.0, 2.7):
            m = hat_conformal_hessian(fundamental_jet(n, r))
            assert np.max(np.abs(m)) <= 1e-10 * r ** (2 * (2 - n))


def test_radial_fast_path_matches_full_matrix():
    # u = 1/r at n = 4, r = 1: (V, v) = (-1/2, 1/2)
    jet = RadialJet(r=1.0, u=1.0, uprime=-1.0, udoubleprime=2.0, n=4)
    eigs = radial_eigs(jet)
    assert eigs.V == pytest.approx(-0.5, abs=1e-14)
    assert eigs.v == pytest.approx(0.5, abs=1e-14)
    lam = sym_eigenvalues(hat_conformal_hessian(radial_to_jet2(jet)))
    assert lam == pytest.approx([-0.5, 0.5, 0.5, 0.5], abs=1e-12)


def test_power_law_multiplicity_eigenvalue_formula():
    # v = c1^2 (c2 - c2^2/(n-2)) r^(-2 c2 - 2)
    rng = np.random.default_rng(8)
    for _ in range(50):
        n = int(rng.integers(3, 8))
        c1 = float(rng.uniform(0.2, 3.0))
        c2 = float(rng.uniform(-1.0, n - 1.0))
        r = float(10 ** rng.uniform(-1, 1))
        jet = eval_family(PowerLaw(n, c1, c2), r)
        expected = c1**2 * (c2 - c2**2 / (n - 2)) * r ** (-2 * c2 - 2)
        assert radial_eigs(jet).v == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_sym_eigenvalues_examples():
    assert sym_eigenvalues(np.eye(3)) == pytest.approx([1.0, 1.0, 1.0])
    assert np.allclose(sym_eigenvalues(np.zeros((4, 4))), 0.0)
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    m = q @ np.diag([-2.0, 1.0, 5.0]) @ q.T
    assert sym_eigenvalues(m) == pytest.approx([-2.0, 1.0, 5.0], abs=1e-11)


def test_sym_eigenvalues_reconstruction_residual():
    rng = np.random.default_rng(4)
    for _ in range(30):
        n = int(rng.integers(3, 9))
        m = rng.standard_normal((n, n))
        m = m + m.T
        vals = sym_eigenvalues(m)
        w, q = np.linalg.eigh(m)
        assert np.allclose(np.sort(w), vals)
        resid = np.max(np.abs(m - q @ np.diag(w) @ q.T))
        assert resid <= 1e-11 * (1 + np.max(np.abs(m)))


def test_sym_eigenvalues_rejects_asymmetry():
    m = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    with pytest.raises(ValueError):
        sym_eigenvalues(m)


def test_jet_validation():
    with pytest.raises(ValueError):
        Jet2(u=-1.0, grad=np.zeros(3), hess=np.zeros((3, 3)))
    with pytest.raises(ValueError):
        Jet2(u=1.0, grad=np.zeros(3), hess=np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0.0]]))
    with pytest.raises(ValueError):
        RadialJet(r=0.0, u=1.0, uprime=0.0, udoubleprime=0.0, n=4)


@given(st.integers(3, 7), st.data())
@settings(max_examples=300, deadline=None)
def test_path_equivalence_random_jets(n, data):
    jet = RadialJet(
        r=data.draw(st.floats(0.1, 10.0)),
        u=data.draw(st.floats(0.1, 10.0)),
        uprime=data.draw(st.floats(-3.0, 3.0)),
        udoubleprime=data.draw(st.floats(-3.0, 3.0)),
        n=n,
    )
    V, v = radial_eigs(jet)
    direction = np.array(data.draw(
        st.lists(st.floats(-1.0, 1.0), min_size=n, max_size=n)
    ))
    if np.linalg.norm(direction) < 1e-3:
        direction = np.ones(n)
    lam = sym_eigenvalues(hat_conformal_hessian(radial_to_jet2(jet, direction)))
    expected = np.sort([V] + [v] * (n - 1))
    scale = 1.0 + np.max(np.abs(expected))
    assert np.max(np.abs(lam - expected)) <= 1e-9 * scale


def test_hat_scale_covariance():
    rng = np.random.default_rng(10)
    for _ in range(200):
        n = int(rng.integers(3, 7))
        base = radial_to_jet2(RadialJet(
            r=float(10 ** rng.uniform(-1, 1)), u=float(10 ** rng.uniform(-1, 1)),
            uprime=float(rng.standard_normal()), udoubleprime=float(rng.standard_normal()),
            n=n,
        ))
        c = float(10 ** rng.uniform(-1.5, 1.5))
        scaled = Jet2(u=c * base.u, grad=c * base.grad, hess=c * base.hess)
        assert np.allclose(
            hat_conformal_hessian(scaled), c * c * hat_conformal_hessian(base),
            rtol=1e-12, atol=1e-12,
        )


def test_classification_agrees_between_scalings():
    cone = GammaK(4, 2)
    rng = np.random.default_rng(21)
    for _ in range(300):
        jet = radial_to_jet2(RadialJet(
            r=float(10 ** rng.uniform(-1, 1)), u=float(10 ** rng.uniform(-1, 1)),
            uprime=float(rng.standard_normal()), udoubleprime=float(rng.standard_normal()),
            n=4,
        ))
        lam_hat = sym_eigenvalues(hat_conformal_hessian(jet))
        lam_a = sym_eigenvalues(conformal_hessian(jet))
        assert classify_point(cone, lam_hat, tol=1e-12) == classify_point(cone, lam_a, tol=1e-12)


def test_finite_difference_hessian_oracle():
    # central differences at h = 1e-4 must reproduce the analytic jet to 1e-6
    h = 1e-4
    for fam in (PowerLaw(4, 1.3, 1.1), PlusFamily(5, 0.8, 1.2, 2.0),
                PlusFamily(4, 1.0, 0.5, 3.0)):
        n = fam.n

        def u_of(x):
            return eval_family(fam, float(np.linalg.norm(x))).u

        x = np.full(n, 0.9 / math.sqrt(n))
        grad = np.zeros(n)
        hess = np.zeros((n, n))
        for i in range(n):
            ei = np.zeros(n); ei[i] = h
            grad[i] = (u_of(x + ei) - u_of(x - ei)) / (2 * h)
            hess[i, i] = (u_of(x + ei) - 2 * u_of(x) + u_of(x - ei)) / h**2
            for j in range(i + 1, n):
                ej = np.zeros(n); ej[j] = h
                hess[i, j] = hess[j, i] = (
                    u_of(x + ei + ej) - u_of(x + ei - ej)
                    - u_of(x - ei + ej) + u_of(x - ei - ej)
                ) / (4 * h**2)
        exact = radial_to_jet2(eval_family(fam, float(np.linalg.norm(x))), x)
        scale = 1.0 + np.max(np.abs(exact.hess))
        assert np.max(np.abs(hess - exact.hess)) <= 1e-6 * scale
        assert np.max(np.abs(grad - exact.grad)) <= 1e-6 * scale


# --- branch classification -----------------------------------------------------


def test_branch_null():
    prof = cone_profile(GammaK(4, 2))
    from ccl import RadialEigenvalues

    assert branch_classify(prof, RadialEigenvalues(0.0, 0.0)) is Branch.NULL


def test_branch_plus_from_power_law():
    prof = cone_profile(GammaK(4, 2))  # mu_plus = 1
    from ccl import RadialEigenvalues

    assert branch_classify(prof, RadialEigenvalues(-0.5, 0.5)) is Branch.PLUS


def test_branch_violation_when_axis_on_boundary():
    prof = cone_profile(GammaK(4, 2))
    from ccl import RadialEigenvalues

    assert branch_classify(prof, RadialEigenvalues(5.0, -1.0)) is Branch.VIOLATION


def test_branch_minus_for_finite_exponent():
    from ccl import RadialEigenvalues, SigmaTheta

    prof = cone_profile(SigmaTheta(3, 1.0))  # mu_minus = 3
    assert branch_classify(prof, RadialEigenvalues(3.0, -1.0)) is Branch.MINUS
    assert branch_classify(prof, RadialEigenvalues(4.0, -1.0)) is Branch.VIOLATION
