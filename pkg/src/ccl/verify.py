"""Seeded verification suites over every module, aggregated into one report.

Each suite returns uniform check rows; ``run_verification`` bundles them
with the configuration into a JSON-ready dict.  A fixed seed makes the
report byte-identical across runs (apart from the timestamp field).
Sample counts here are sized for an interactive run; the acceptance test
module re-runs the same checks at their full published sizes.
"""

from __future__ import annotations

import dataclasses
import datetime
import math
import zlib

import numpy as np

from . import analysis, families, kelvin
from .cones import (
    Cone,
    GammaK,
    GammaOne,
    LGammaMinus,
    LGammaPlus,
    Region,
    SigmaTheta,
    UGammaMinus,
    UGammaPlus,
    classify_point,
    cone_from_spec,
    cone_profile,
    cone_to_spec,
    gamma_t,
    lemma21_report,
    mu_minus,
    mu_plus,
)
from .conformal import (
    Jet2,
    RadialJet,
    branch_classify,
    hat_conformal_hessian,
    radial_eigs,
    radial_to_jet2,
    sym_eigenvalues,
)
from .report import CheckResult

DEFAULT_CONE_SPECS = [
    {"variant": "gamma_k", "n": 4, "k": 2},
    {"variant": "gamma_k", "n": 6, "k": 2},
    {"variant": "gamma_k", "n": 4, "k": 3},
    {"variant": "gamma_one", "n": 3},
    {"variant": "sigma_theta", "n": 3, "theta": 1.0},
    {"variant": "sigma_theta", "n": 5, "theta": 0.25},
    {"variant": "u_gamma_plus", "n": 5, "mu": 2.5},
    {"variant": "l_gamma_minus", "n": 4, "mu": 7.0},
]


@dataclasses.dataclass
class SuiteConfig:
    """What to verify: cones, dimensions, seed, grid/sample sizes, tolerances."""

    cones: list[dict] = dataclasses.field(default_factory=lambda: list(DEFAULT_CONE_SPECS))
    dims: list[int] = dataclasses.field(default_factory=lambda: [3, 4, 5, 6])
    seed: int = 7
    grid: int = 120
    samples: int = 400
    branch_tol: float = 1e-8
    boundary_tol: float = 1e-10
    out: str | None = None
    family_checks: list[dict] = dataclasses.field(default_factory=list)

    def validate(self) -> None:
        if not self.cones:
            raise ValueError("config needs a non-empty cone list")
        if not self.dims:
            raise ValueError("config needs a non-empty dimension list")
        if any(d < 3 for d in self.dims):
            raise ValueError("dimensions must be >= 3")
        if self.branch_tol <= 0.0 or self.boundary_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.grid < 2 or self.samples < 1:
            raise ValueError("grid and samples must be positive")


def config_from_dict(raw: dict) -> SuiteConfig:
    known = {f.name for f in dataclasses.fields(SuiteConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg = SuiteConfig(**raw)
    cfg.validate()
    return cfg


# --- draw helpers --------------------------------------------------------------


def _random_lambda(rng, n: int) -> np.ndarray:
    return rng.standard_normal(n) * rng.choice([0.3, 1.0, 5.0])


def random_sandwiched_cone(rng, dims) -> Cone:
    """A random cone satisfying the orthant/half-space sandwich."""
    n = int(rng.choice(dims))
    kind = int(rng.integers(0, 7))
    if kind == 0:
        return GammaK(n, int(rng.integers(1, n + 1)))
    if kind == 1:
        return SigmaTheta(n, float(10.0 ** rng.uniform(-1.5, 1.0)))
    if kind == 2:
        return UGammaPlus(n, float(rng.uniform(0.0, n - 1.0 - 1e-3)))
    if kind == 3:
        return LGammaPlus(n, float(rng.uniform(n - 2.0 + 1e-3, n - 1.0 - 1e-3)))
    if kind == 4:
        return UGammaMinus(n, float(n - 1.0 + 10.0 ** rng.uniform(-2.0, 3.0)))
    if kind == 5:
        return LGammaMinus(n, float(n - 1.0 + 10.0 ** rng.uniform(-2.0, 3.0)))
    return gamma_t(GammaK(n, int(rng.integers(1, n + 1))), float(rng.uniform(0.05, 1.0)))


def permitted_families(prof, rng, ann: families.Annulus) -> list[families.RadialFamily]:
    """One random draw of each family variant the classification permits."""
    n = prof.n
    fams: list[families.RadialFamily] = []
    if abs(prof.mu_plus - 1.0) < 1e-9:
        fams.append(families.PowerLaw(n, c1=float(rng.uniform(0.2, 3.0)),
                                      c2=float(rng.uniform(0.0, n - 2.0))))
    else:
        fams.append(families.PlusFamily(n, c3=float(rng.uniform(0.1, 3.0)),
                                        c4=float(rng.uniform(0.1, 3.0)),
                                        mu_plus=prof.mu_plus))
    if not prof.axis_on_boundary:
        mu = prof.mu_minus
        c5 = float(rng.uniform(0.5, 3.0))
        # keep the positivity edge outside the annulus
        c6_cap = c5 * ann.b ** (1.0 - mu) if math.isfinite(ann.b) else 0.0
        fams.append(families.MinusFamilyC(n, c5=c5, c6=float(rng.uniform(0.0, c6_cap)),
                                          mu_minus=mu))
        c8 = float(rng.uniform(0.5, 3.0))
        c7_cap = c8 * ann.a ** (mu - 1.0) if ann.a > 0.0 else 0.0
        fams.append(families.MinusFamilyD(n, c7=float(rng.uniform(0.0, c7_cap)),
                                          c8=c8, mu_minus=mu))
    return fams


def forbidden_families(prof, rng) -> list[families.RadialFamily]:
    """Family draws the classification forbids for this cone profile."""
    n = prof.n
    out: list[families.RadialFamily] = []
    if abs(prof.mu_plus - 1.0) < 1e-9:
        out.append(families.PowerLaw(n, c1=1.0, c2=n - 1.0))  # exponent beyond n-2
        out.append(families.PlusFamily(n, c3=1.0, c4=1.0, mu_plus=prof.mu_plus + 0.7))
    else:
        out.append(families.PowerLaw(n, c1=1.0, c2=1.0))
        wrong = prof.mu_plus + (0.5 if prof.mu_plus < n - 1.5 else -0.5)
        if abs(wrong - 1.0) > 1e-3:
            out.append(families.PlusFamily(n, c3=1.0, c4=1.0, mu_plus=wrong))
    if prof.axis_on_boundary:
        out.append(families.MinusFamilyC(n, c5=1.0, c6=0.5, mu_minus=n + 1.0))
    else:
        out.append(families.MinusFamilyC(n, c5=1.0, c6=0.5, mu_minus=prof.mu_minus + 1.0))
    return out


def _random_radial_jet(rng, n: int) -> RadialJet:
    return RadialJet(
        r=float(10.0 ** rng.uniform(-1.0, 1.0)),
        u=float(10.0 ** rng.uniform(-1.0, 1.0)),
        uprime=float(rng.standard_normal()),
        udoubleprime=float(rng.standard_normal()),
        n=n,
    )


# --- suites ---------------------------------------------------------------------


def suite_cone_geometry(cfg: SuiteConfig, rng) -> list[CheckResult]:
    rows: list[CheckResult] = []
    cones = [cone_from_spec(s) for s in cfg.cones]

    worst_h = 0.0
    worst_p = 0.0
    sandwich_bad = 0
    convex_bad = 0
    for cone in cones:
        for _ in range(max(cfg.samples // 8, 20)):
            lam = _random_lambda(rng, cone.n)
            t = float(10.0 ** rng.uniform(-2.0, 2.0))
            g = cone.depth(lam)
            worst_h = max(worst_h, abs(cone.depth(t * lam) - t * g) / (1.0 + abs(t * g)))
            perm = rng.permutation(cone.n)
            worst_p = max(worst_p, abs(cone.depth(lam[perm]) - g) / (1.0 + abs(g)))
            pos = np.abs(rng.standard_normal(cone.n)) + 1e-6
            if classify_point(cone, pos) is not Region.INTERIOR:
                sandwich_bad += 1
            neg = rng.standard_normal(cone.n)
            neg -= (neg.sum() / cone.n) + abs(rng.standard_normal()) + 1e-6
            if classify_point(cone, neg) is not Region.EXTERIOR:
                sandwich_bad += 1
        interior = []
        attempts = 0
        while len(interior) < 2 * max(cfg.samples // 16, 8) and attempts < 100_000:
            attempts += 1
            lam = _random_lambda(rng, cone.n)
            if cone.depth(lam) > 1e-8 * (1.0 + float(np.linalg.norm(lam))):
                interior.append(lam)
        for x, y in zip(interior[0::2], interior[1::2]):
            if cone.depth(0.5 * (x + y)) <= 0.0:
                convex_bad += 1
    rows.append(CheckResult("depth_homogeneous_degree_one", worst_h <= 1e-12,
                            lhs=worst_h, rhs=0.0, tol=1e-12))
    rows.append(CheckResult("depth_permutation_invariant", worst_p <= 1e-12,
                            lhs=worst_p, rhs=0.0, tol=1e-12))
    rows.append(CheckResult("orthant_halfspace_sandwich", sandwich_bad == 0,
                            lhs=sandwich_bad, rhs=0.0))
    rows.append(CheckResult("interior_midpoint_convexity", convex_bad == 0,
                            lhs=convex_bad, rhs=0.0))

    worst = 0.0
    for n in cfg.dims:
        for k in range(1, n + 1):
            worst = max(worst, abs(mu_plus(GammaK(n, k)) - (n - k) / k))
        for theta in (0.0, 0.1, 0.5, 1.0, 5.0):
            worst = max(worst, abs(mu_plus(SigmaTheta(n, theta)) - (n - 1) * theta / (1 + theta)))
    rows.append(CheckResult("mu_plus_closed_forms", worst <= 1e-10, lhs=worst, rhs=0.0, tol=1e-10))

    worst = 0.0
    axis_bad = 0
    for n in cfg.dims:
        for k in range(2, n + 1):
            if not math.isinf(mu_minus(GammaK(n, k))):
                axis_bad += 1
        worst = max(worst, abs(mu_minus(GammaK(n, 1)) - (n - 1.0)))
        for theta in (0.1, 0.5, 1.0, 5.0):
            worst = max(worst, abs(mu_minus(SigmaTheta(n, theta)) - ((n - 1.0) + 1.0 / theta)))
    rows.append(CheckResult("mu_minus_closed_forms", worst <= 1e-10 and axis_bad == 0,
                            lhs=worst, rhs=0.0, tol=1e-10))

    # membership agreement between the theta-convex cone and the extremal
    # plus-cone with the matching exponent
    disagreements = 0
    for n in cfg.dims:
        for theta in (0.1, 0.5, 1.0, 5.0):
            sig = SigmaTheta(n, theta)
            ext = UGammaPlus(n, (n - 1.0) * theta / (1.0 + theta))
            for _ in range(max(cfg.samples // 4, 50)):
                lam = _random_lambda(rng, n)
                band = cfg.boundary_tol * (1.0 + float(np.linalg.norm(lam)))
                gs, ge = sig.depth(lam), ext.depth(lam)
                if abs(gs) <= band or abs(ge) <= band:
                    continue
                if (gs > 0.0) != (ge > 0.0):
                    disagreements += 1
    rows.append(CheckResult("theta_convex_extremal_identity", disagreements == 0,
                            lhs=disagreements, rhs=0.0))

    bad = 0
    for _ in range(min(cfg.samples, 200)):
        cone = random_sandwiched_cone(rng, cfg.dims)
        if not all(c.passed for c in lemma21_report(cone)):
            bad += 1
    rows.append(CheckResult("exponent_inequalities_random_cones", bad == 0, lhs=bad, rhs=0.0))

    # extremal containment: L-cone inside the constructed cone inside U-cone
    containment_bad = 0
    for n in cfg.dims:
        for cone in (GammaK(n, 2), SigmaTheta(n, 0.5)):
            mp = mu_plus(cone)
            if not -1.0 + 1e-6 < mp < n - 1.0 - 1e-6:
                continue
            lower, upper = LGammaPlus(n, mp), UGammaPlus(n, mp)
            for _ in range(max(cfg.samples // 8, 25)):
                lam = _random_lambda(rng, n)
                band = 1e-8 * (1.0 + float(np.linalg.norm(lam)))
                if lower.depth(lam) > band and cone.depth(lam) < -band:
                    containment_bad += 1
                if cone.depth(lam) > band and upper.depth(lam) < -band:
                    containment_bad += 1
    rows.append(CheckResult("extremal_cone_containment", containment_bad == 0,
                            lhs=containment_bad, rhs=0.0))

    worst = math.inf
    for _ in range(min(cfg.samples, 100)):
        worst = min(worst, mu_plus(random_sandwiched_cone(rng, cfg.dims)))
    rows.append(CheckResult("mu_plus_above_minus_one", worst > -1.0, lhs=worst, rhs=-1.0))

    # interpolating family endpoints
    gt_bad = 0
    for n in cfg.dims:
        base = GammaK(n, 2)
        at_one = gamma_t(base, 1.0)
        near_zero = gamma_t(base, 1e-4)
        half = GammaOne(n)
        for _ in range(max(cfg.samples // 8, 25)):
            lam = _random_lambda(rng, n)
            band = 1e-8 * (1.0 + float(np.linalg.norm(lam)))
            if abs(base.depth(lam)) > band and (
                (at_one.depth(lam) > 0.0) != (base.depth(lam) > 0.0)
            ):
                gt_bad += 1
            if abs(half.depth(lam)) > 0.1 * (1.0 + float(np.linalg.norm(lam))) and (
                (near_zero.depth(lam) > 0.0) != (half.depth(lam) > 0.0)
            ):
                gt_bad += 1
    rows.append(CheckResult("interpolating_family_endpoints", gt_bad == 0, lhs=gt_bad, rhs=0.0))

    for spec, cone in zip(cfg.cones, cones):
        for item in lemma21_report(cone):
            rows.append(dataclasses.replace(item, name=f"{spec['variant']}.{item.name}"))
    return rows


def suite_conformal(cfg: SuiteConfig, rng) -> list[CheckResult]:
    rows: list[CheckResult] = []
    worst = 0.0
    for _ in range(cfg.samples):
        n = int(rng.choice(cfg.dims))
        jet = _random_radial_jet(rng, n)
        V, v = radial_eigs(jet)
        direction = rng.standard_normal(n)
        lam = sym_eigenvalues(hat_conformal_hessian(radial_to_jet2(jet, direction)))
        expected = np.sort(np.array([V] + [v] * (n - 1)))
        scale = 1.0 + float(np.max(np.abs(expected)))
        worst = max(worst, float(np.max(np.abs(lam - expected))) / scale)
    rows.append(CheckResult("radial_full_matrix_path_equivalence", worst <= 1e-9,
                            lhs=worst, rhs=0.0, tol=1e-9))

    cone = cone_from_spec(cfg.cones[0])
    mismatches = 0
    for _ in range(cfg.samples // 2):
        jet = _random_radial_jet(rng, cone.n)
        full = radial_to_jet2(jet)
        lam_hat = sym_eigenvalues(hat_conformal_hessian(full))
        lam_a = sym_eigenvalues(
            (2.0 / (cone.n - 2.0)) * full.u ** (-2.0 * cone.n / (cone.n - 2.0))
            * hat_conformal_hessian(full)
        )
        if classify_point(cone, lam_hat, tol=1e-13) != classify_point(cone, lam_a, tol=1e-13):
            mismatches += 1
    rows.append(CheckResult("classification_scale_invariance", mismatches == 0,
                            lhs=mismatches, rhs=0.0))

    worst = 0.0
    for _ in range(cfg.samples // 4):
        n = int(rng.choice(cfg.dims))
        jet = _random_radial_jet(rng, n)
        c = float(10.0 ** rng.uniform(-1.0, 1.0))
        scaled = Jet2(u=c * jet.u, grad=c * radial_to_jet2(jet).grad,
                      hess=c * radial_to_jet2(jet).hess)
        m1 = hat_conformal_hessian(scaled)
        m2 = c * c * hat_conformal_hessian(radial_to_jet2(jet))
        worst = max(worst, float(np.max(np.abs(m1 - m2))) / (1.0 + float(np.max(np.abs(m2)))))
    rows.append(CheckResult("hat_matrix_scale_covariance", worst <= 1e-12,
                            lhs=worst, rhs=0.0, tol=1e-12))

    worst = 0.0
    for fam in (
        families.PowerLaw(4, c1=1.3, c2=1.1),
        families.PlusFamily(5, c3=0.8, c4=1.2, mu_plus=2.0),
    ):
        def u_of_x(x, fam=fam):
            return families.eval_family(fam, float(np.linalg.norm(x))).u

        x = np.full(fam.n, 0.9 / math.sqrt(fam.n))
        h = 1e-4
        grad = np.zeros(fam.n)
        hess = np.zeros((fam.n, fam.n))
        for i in range(fam.n):
            ei = np.zeros(fam.n)
            ei[i] = h
            grad[i] = (u_of_x(x + ei) - u_of_x(x - ei)) / (2 * h)
            hess[i, i] = (u_of_x(x + ei) - 2 * u_of_x(x) + u_of_x(x - ei)) / h**2
            for j in range(i + 1, fam.n):
                ej = np.zeros(fam.n)
                ej[j] = h
                mixed = (
                    u_of_x(x + ei + ej) - u_of_x(x + ei - ej)
                    - u_of_x(x - ei + ej) + u_of_x(x - ei - ej)
                ) / (4 * h**2)
                hess[i, j] = hess[j, i] = mixed
        jet = families.eval_family(fam, float(np.linalg.norm(x)))
        exact = radial_to_jet2(jet, x)
        scale = 1.0 + float(np.max(np.abs(exact.hess)))
        worst = max(worst, float(np.max(np.abs(hess - exact.hess))) / scale,
                    float(np.max(np.abs(grad - exact.grad))) / scale)
    rows.append(CheckResult("finite_difference_jet_oracle", worst <= 1e-6,
                            lhs=worst, rhs=0.0, tol=1e-6))
    return rows


def suite_families(cfg: SuiteConfig, rng) -> list[CheckResult]:
    rows: list[CheckResult] = []
    cones = [cone_from_spec(s) for s in cfg.cones]
    ann = families.Annulus(0.05, 2.0)

    bad_pass, bad_fail, worst_resid = 0, 0, 0.0
    for cone in cones:
        prof = cone_profile(cone)
        for _ in range(6):
            for fam in permitted_families(prof, rng, ann):
                res = families.validate_family(cone, fam, ann, grid=cfg.grid,
                                               tol=cfg.branch_tol)
                worst_resid = max(worst_resid, res.max_residual)
                if not res.passed:
                    bad_pass += 1
        for fam in forbidden_families(prof, rng):
            if families.validate_family(cone, fam, ann, grid=cfg.grid,
                                        tol=cfg.branch_tol).passed:
                bad_fail += 1
    rows.append(CheckResult("permitted_families_validate", bad_pass == 0, lhs=bad_pass, rhs=0.0))
    rows.append(CheckResult("forbidden_families_rejected", bad_fail == 0, lhs=bad_fail, rhs=0.0))
    rows.append(CheckResult("branch_residual_bound", worst_resid <= cfg.branch_tol,
                            lhs=worst_resid, rhs=0.0, tol=cfg.branch_tol))

    worst_rt, bad_feas, worst_uni = 0.0, 0, 0.0
    for i in range(cfg.samples):
        cone = cones[i % len(cones)]
        a = float(10.0 ** rng.uniform(-1.5, 0.0))
        b = a * float(10.0 ** rng.uniform(0.2, 1.5))
        beta = float(10.0 ** rng.uniform(-1.0, 1.0))
        span = (cone.n - 2.0) * math.log(b / a)
        axis = cone_profile(cone).axis_on_boundary
        frac = rng.uniform(0.0, 1.0) if axis else rng.uniform(-0.6, 1.6)
        alpha = beta * math.exp(frac * span)
        bvp = families.Annulus(a, b)
        sol = families.solve_radial_bvp(cone, bvp, alpha, beta)
        if isinstance(sol, families.Infeasible):
            bad_feas += 1
            continue
        ja, jb = families.eval_family(sol, a), families.eval_family(sol, b)
        worst_rt = max(worst_rt, abs(ja.u - alpha) / alpha, abs(jb.u - beta) / beta)
        if i % 4 == 0:
            other = families.solve_radial_bvp_shooting(cone, bvp, alpha, beta)
            for r in log_probe_radii(a, b):
                u1 = families.eval_family(sol, r).u
                u2 = families.eval_family(other, r).u
                worst_uni = max(worst_uni, abs(u1 - u2) / u1)
    rows.append(CheckResult("bvp_round_trip", worst_rt <= 1e-10, lhs=worst_rt, rhs=0.0, tol=1e-10))
    rows.append(CheckResult("bvp_always_feasible_when_expected", bad_feas == 0,
                            lhs=bad_feas, rhs=0.0))
    rows.append(CheckResult("bvp_solver_paths_agree", worst_uni <= 1e-8,
                            lhs=worst_uni, rhs=0.0, tol=1e-8))

    mismatches = 0
    axis_cones = [c for c in cones if cone_profile(c).axis_on_boundary]
    if not axis_cones:
        axis_cones = [GammaK(4, 2)]
    for i in range(cfg.samples):
        cone = axis_cones[i % len(axis_cones)]
        a, b = 0.5, 2.0
        beta = 1.0
        span = (cone.n - 2.0) * math.log(b / a)
        frac = float(rng.choice([-1e-3, -1e-9, 0.0, 0.5, 1.0, 1.0 + 1e-9, 1.0 + 1e-3]))
        alpha = beta * math.exp(frac * span)
        expected = 0.0 <= math.log(alpha / beta) <= span
        got = not isinstance(
            families.solve_radial_bvp(cone, families.Annulus(a, b), alpha, beta),
            families.Infeasible,
        )
        if expected != got:
            mismatches += 1
    rows.append(CheckResult("bvp_feasibility_matches_inequality", mismatches == 0,
                            lhs=mismatches, rhs=0.0))

    from .cones import sigma_k as esym_k

    worst = 0.0
    for _ in range(cfg.samples // 8):
        n = int(rng.choice(cfg.dims))
        k = int(rng.integers(1, n + 1))
        if n == 2 * k:
            fam = families.SigmaKNull(n, k=k, coef_a=float(rng.uniform(0.2, 2.0)),
                                      coef_b=float(rng.uniform(-2.0, n)))
        else:
            fam = families.SigmaKNull(n, k=k, coef_a=float(rng.uniform(-2.0, 2.0)),
                                      coef_b=float(rng.uniform(0.5, 2.0)))
        lo, hi = fam.domain()
        lo, hi = max(lo * 1.3 + 1e-3, 0.01), min(hi * 0.7, 10.0)
        if not lo < hi:
            continue
        for r in families.log_midpoints(lo, hi, 40):
            eigs = radial_eigs(families.eval_family(fam, float(r)))
            lam = np.full(n, eigs.v)
            lam[0] = eigs.V
            val = esym_k(lam, k)
            mag = abs(eigs.V) + abs(eigs.v) + 1e-30
            worst = max(worst, abs(val) / mag**k)
    rows.append(CheckResult("sigma_k_null_families", worst <= 1e-9, lhs=worst, rhs=0.0, tol=1e-9))

    worst = -math.inf
    for _ in range(cfg.samples // 8):
        n = int(rng.choice(cfg.dims))
        c = float(10.0 ** rng.uniform(-1.0, 0.0))
        d = c * float(10.0 ** rng.uniform(0.3, 1.0))
        bar = families.Xi(n=n, c=c, d=d, eps=float(rng.uniform(0.1, 3.0)),
                          mu=float(rng.uniform(1.5, 6.0)), u_at_c=float(rng.uniform(0.5, 2.0)))
        for r in families.log_midpoints(c * 1.001, d, 25):
            eigs = radial_eigs(families.barrier_eval(bar, float(r)))
            worst = max(worst, eigs.v)
    rows.append(CheckResult("steep_barrier_second_eigenvalue_negative", worst < 0.0,
                            lhs=worst, rhs=0.0))
    return rows


def log_probe_radii(a: float, b: float, m: int = 7) -> np.ndarray:
    return families.log_midpoints(a, b, m)


def suite_analysis(cfg: SuiteConfig, rng) -> list[CheckResult]:
    rows: list[CheckResult] = []
    gt1 = [cone_from_spec(s) for s in cfg.cones
           if cone_profile(cone_from_spec(s)).mu_plus > 1.0 + 1e-9]
    if not gt1:
        gt1 = [GammaK(6, 2)]

    worst_re, worst_cw, bad_dich = 0.0, 0.0, 0
    for i in range(cfg.samples // 2):
        cone = gt1[i % len(gt1)]
        prof = cone_profile(cone)
        mu = prof.mu_plus
        rmin = min(max(10.0 ** (-5.0 / (mu - 1.0)), 1e-12), 1e-2)
        fam = families.PlusFamily(cone.n, c3=float(rng.uniform(0.1, 3.0)),
                                  c4=float(rng.uniform(0.1, 3.0)), mu_plus=mu)
        p = analysis.profile_from_family(fam, rmin, 1.0, m=60)
        dec = analysis.bocher_decompose(prof, p)
        if dec.w_is_zero:
            bad_dich += 1
            continue
        rebuilt = analysis.reassemble(dec, prof, p.radii)
        worst_re = max(worst_re, float(np.max(np.abs(rebuilt / p.values - 1.0))))
        worst_cw = max(worst_cw, float(np.max(np.abs(dec.ring_w - np.median(dec.ring_w)))))
    rows.append(CheckResult("singular_decomposition_reassembly", worst_re <= 1e-9,
                            lhs=worst_re, rhs=0.0, tol=1e-9))
    rows.append(CheckResult("remainder_constant_for_solutions", worst_cw <= 1e-9,
                            lhs=worst_cw, rhs=0.0, tol=1e-9))
    rows.append(CheckResult("remainder_dichotomy", bad_dich == 0, lhs=bad_dich, rhs=0.0))

    axis_k_cones = [GammaK(n, k) for n in cfg.dims for k in range(2, n + 1)]
    bad_mono = 0
    worst_psi = 0.0
    for i in range(cfg.samples // 2):
        cone = axis_k_cones[i % len(axis_k_cones)]
        prof = cone_profile(cone)
        n = cone.n
        count = int(rng.integers(1, 4))
        fams: list[families.RadialFamily] = []
        for _ in range(count):
            if abs(prof.mu_plus - 1.0) < 1e-9:
                fams.append(families.PowerLaw(n, c1=float(rng.uniform(0.3, 3.0)),
                                              c2=float(rng.uniform(0.0, n - 2.0))))
            else:
                fams.append(families.PlusFamily(n, c3=float(rng.uniform(0.0, 2.0)),
                                                c4=float(rng.uniform(0.1, 2.0)),
                                                mu_plus=prof.mu_plus))
        p = analysis.pointwise_min_profile(fams, 0.05, 1.0, m=80)
        if not analysis.supersolution_bounds(p).passed:
            bad_mono += 1
        psi = analysis.psi_profile(list(zip(p.radii, p.values)), float(p.radii[-1]),
                                   prof.mu_plus, n)
        vals = np.array([v for _, v in psi])
        scale = 1.0 + float(np.max(np.abs(vals)))
        worst_psi = max(worst_psi, float(np.max(np.maximum(vals[:-1] - vals[1:], 0.0))) / scale)
    rows.append(CheckResult("supersolution_monotone_bounds", bad_mono == 0,
                            lhs=bad_mono, rhs=0.0))
    rows.append(CheckResult("boundary_quotient_non_decreasing", worst_psi <= 1e-10,
                            lhs=worst_psi, rhs=0.0, tol=1e-10))

    worst = 0.0
    for mu in (0.0, 0.25, 0.5, 0.75):
        fam = families.PlusFamily(4, c3=1.0, c4=2.0, mu_plus=mu)
        p = analysis.profile_from_family(fam, 1e-6, 1.0, m=120)
        s = analysis.holder_exponent_fit(p, mu)
        worst = max(worst, abs(s - (1.0 - mu)))
    rows.append(CheckResult("holder_exponent_fit", worst <= 0.02, lhs=worst, rhs=0.0, tol=0.02))

    worst = 0.0
    for c2 in np.linspace(0.0, 2.0, 21):
        fam = families.PowerLaw(4, c1=1.0, c2=float(c2))
        p = analysis.profile_from_family(fam, 1e-3, 1.0, m=60)
        rep = analysis.harnack_report(p, epsilon=1.0 / 8.0)
        worst = max(worst, rep.max_scaled_log_gradient)
    rows.append(CheckResult("harnack_uniform_log_gradient", worst <= 2.0 + 0.01,
                            lhs=worst, rhs=2.01, tol=0.01))

    sig = SigmaTheta(4, 0.4)
    prof = cone_profile(sig)
    fam = families.MinusFamilyC(4, c5=1.0, c6=0.5, mu_minus=prof.mu_minus)
    p = analysis.profile_from_family(fam, 1e-4, 1.0, m=80)
    rows.append(dataclasses.replace(analysis.fundamental_deficit_bound(p, prof.mu_minus),
                                    name="fundamental_deficit_bound"))

    bad = 0
    lt1 = SigmaTheta(5, 0.1)
    prof = cone_profile(lt1)
    for _ in range(20):
        c4 = float(rng.choice([0.0, rng.uniform(0.2, 2.0)]))
        fam = families.PlusFamily(5, c3=float(rng.uniform(0.2, 2.0)), c4=c4,
                                  mu_plus=prof.mu_plus)
        p = analysis.profile_from_family(fam, 1e-5, 1.0, m=60)
        a = analysis.singularity_coefficient(p)
        singular = a > 1e-6
        if singular != (c4 == 0.0):
            bad += 1
    rows.append(CheckResult("singular_members_are_pure_fundamental", bad == 0,
                            lhs=bad, rhs=0.0))
    return rows


def suite_kelvin(cfg: SuiteConfig, rng) -> list[CheckResult]:
    rows: list[CheckResult] = []
    n = 4
    worst = 0.0
    for field in (kelvin.constant_field(), kelvin.fundamental_field(n),
                  kelvin.fundamental_plus_constant(n)):
        for _ in range(max(cfg.samples // 4, 50)):
            y = rng.standard_normal(n)
            y *= rng.uniform(0.2, 0.8) / float(np.linalg.norm(y))
            lam = rng.uniform(0.2, 0.9) * min(float(np.linalg.norm(y)),
                                              1.0 - float(np.linalg.norm(y)))
            map_ = kelvin.KelvinMap(center=y, radius=lam)
            x = rng.standard_normal(n)
            x *= rng.uniform(0.05, 0.95) / float(np.linalg.norm(x))
            if float(np.linalg.norm(x - y)) <= lam * 1.01:
                continue
            worst = max(worst, kelvin.kelvin_involution_check(field, map_, [x]))
    rows.append(CheckResult("inversion_involution", worst <= 1e-12, lhs=worst, rhs=0.0, tol=1e-12))

    for name, field in (
        ("constant", kelvin.constant_field()),
        ("fundamental", kelvin.fundamental_field(n)),
        ("fundamental_plus_constant", kelvin.fundamental_plus_constant(3)),
    ):
        dim = 3 if name == "fundamental_plus_constant" else n
        rep = kelvin.kelvin_scan(field, dim, samples=max(cfg.samples // 2, 100), seed=cfg.seed)
        rows.append(CheckResult(f"domination_scan_{name}", rep.violations == 0,
                                lhs=rep.worst_margin, rhs=0.0, tol=1e-12))

    center = np.zeros(n)
    center[0] = 1.25
    field = kelvin.singular_translate_field(n, center)
    radii = np.geomspace(1e-3, 0.5, 12)
    scan = kelvin.oscillation_scan(field, n, radii, seed=cfg.seed,
                                   include_directions=[center, -center])
    rows.append(CheckResult("oscillation_linear_in_radius", scan["slope_ratio"] <= 1.1,
                            lhs=scan["slope_ratio"], rhs=1.1, tol=0.0))
    return rows


def suite_config_families(cfg: SuiteConfig) -> list[CheckResult]:
    rows: list[CheckResult] = []
    for i, item in enumerate(cfg.family_checks):
        cone = cone_from_spec(item["cone"])
        fam = families.family_from_spec(item["family"])
        a, b = item.get("annulus", [0.05, 2.0])
        res = families.validate_family(cone, fam, families.Annulus(float(a), float(b)),
                                       grid=cfg.grid, tol=cfg.branch_tol)
        rows.append(CheckResult(f"family_check_{i}", res.passed,
                                lhs=res.max_residual, rhs=0.0, tol=cfg.branch_tol,
                                witness=res.failures() or None))
    return rows


SUITES = {
    "cone_geometry": suite_cone_geometry,
    "conformal_hessian": suite_conformal,
    "radial_families": suite_families,
    "analysis": suite_analysis,
    "kelvin": suite_kelvin,
}


def run_verification(cfg: SuiteConfig) -> dict:
    """Run every suite under the configured seed and bundle a JSON-ready report."""
    cfg.validate()
    suites: dict[str, list[dict]] = {}
    all_pass = True
    counts = {"checks": 0, "failed": 0}
    for name, fn in SUITES.items():
        rng = np.random.default_rng(cfg.seed + zlib.crc32(name.encode()) % 1000)
        rows = fn(cfg, rng)
        suites[name] = [r.to_dict() for r in rows]
        counts["checks"] += len(rows)
        counts["failed"] += sum(not r.passed for r in rows)
        all_pass = all_pass and all(r.passed for r in rows)
    extra = suite_config_families(cfg)
    if extra:
        suites["configured_family_checks"] = [r.to_dict() for r in extra]
        counts["checks"] += len(extra)
        counts["failed"] += sum(not r.passed for r in extra)
        all_pass = all_pass and all(r.passed for r in extra)
    return {
        "config": {
            "cones": cfg.cones,
            "dims": cfg.dims,
            "seed": cfg.seed,
            "grid": cfg.grid,
            "samples": cfg.samples,
            "branch_tol": cfg.branch_tol,
            "boundary_tol": cfg.boundary_tol,
        },
        "suites": suites,
        "passed": all_pass,
        "counts": counts,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
