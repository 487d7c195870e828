"""Cone classification lab.

Geometry of symmetric cones pinched between the positive orthant and the
half-space, the conformal Hessian of positive functions, the closed-form
classification of radial boundary solutions, singular decompositions and
oscillation diagnostics, and sphere-inversion scans.
"""

from .analysis import (
    BocherCase,
    BocherDecomposition,
    HarnackReport,
    RadialProfile,
    bocher_decompose,
    comparison_scan,
    fundamental_deficit_bound,
    harnack_report,
    holder_exponent_fit,
    pointwise_min_profile,
    profile_from_family,
    reassemble,
    shooting_scan,
    singularity_coefficient,
    supersolution_bounds,
)
from .cones import (
    Cone,
    ConeProfile,
    GammaK,
    GammaOne,
    GammaT,
    LGammaMinus,
    LGammaPlus,
    Region,
    SigmaTheta,
    UGammaMinus,
    UGammaPlus,
    classify_point,
    cone_depth,
    cone_from_spec,
    cone_profile,
    cone_to_spec,
    elementary_symmetric,
    gamma_t,
    lemma21_report,
    mu_minus,
    mu_plus,
    sigma_k,
)
from .conformal import (
    Branch,
    Jet2,
    RadialEigenvalues,
    RadialJet,
    branch_classify,
    conformal_hessian,
    hat_conformal_hessian,
    radial_eigs,
    radial_to_jet2,
    sym_eigenvalues,
)
from .errors import DomainError, ExtrapolationError, InvariantViolation, TheoremViolation
from .families import (
    Annulus,
    Infeasible,
    MinusFamilyC,
    MinusFamilyD,
    PlusFamily,
    PowerLaw,
    RadialFamily,
    SigmaKNull,
    Xi,
    XiHat,
    barrier_eval,
    eval_family,
    family_from_spec,
    family_to_spec,
    log_midpoints,
    psi_profile,
    solve_radial_bvp,
    solve_radial_bvp_shooting,
    validate_family,
)
from .kelvin import (
    KelvinMap,
    constant_field,
    field_from_family,
    fundamental_field,
    fundamental_plus_constant,
    kelvin_involution_check,
    kelvin_scan,
    kelvin_transform,
    oscillation_scan,
    reflect,
    singular_translate_field,
)
from .report import CheckResult
from .verify import SuiteConfig, run_verification

__version__ = "0.1.0"
