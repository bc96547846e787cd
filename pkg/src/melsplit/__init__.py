"""Transversality of parabolic invariant manifolds in planar restricted
N-body problems whose primaries form a central configuration.

The packages builds configurations, extracts the harmonic content of the
gravitational perturbation, evaluates the oscillatory splitting integrals,
runs the transversality decision tree, and cross-checks everything against
direct integration of the near-infinity flow and against closed-form
asymptotics.
"""
from .config import (
    CentralConfiguration,
    CentralityReport,
    ConfigError,
    DegenerateConfigurationError,
    NewtonConvergenceError,
    NotCentralError,
    PrimaryBody,
    build_equilateral,
    build_polygon,
    build_rhomboid,
    build_rp3bp,
    cc_residual,
    lambda_of,
    load_configuration,
    normalize_omega,
    solve_collinear_equal,
    solve_collinear_equidistant,
)
from .harmonics import (
    CoefficientSet,
    HarmonicTable,
    LegendreCosExpansion,
    c_coeffs,
    coefficient_set,
    d_coeffs,
    d_l,
    harmonic_table,
    legendre_cos_coeffs,
)
from .quadrature import (
    CubicPhaseIntegrand,
    QuadratureBudgetError,
    QuadratureResult,
    eval_F4,
    eval_F61,
    eval_F62,
    eval_Fpoly,
    eval_Ik,
    eval_Jk,
    eval_oscillatory,
    eval_via_ikjk,
    find_zeros,
    polygon_numerators,
    polygon_prefactor,
)
from .melnikov import (
    M4,
    M6,
    M_poly,
    MelnikovEvaluation,
    SignBranch,
    TransversalityVerdict,
    Witness,
    assemble_melnikov,
    classify,
    simple_zeros,
    verdict_to_dict,
)
from .dynamics import (
    ConvergenceRegionError,
    FlowParams,
    IntegrationError,
    McGeheeState,
    PoincareReturnError,
    PolarState,
    duffing_rhs,
    hd_value,
    homoclinic,
    integrate,
    integrate_mcgehee,
    jacobi_constant,
    poincare_numeric,
    rhs_mcgehee_t,
    s_closed_form,
    splitting_measure,
    theta_from_jacobi,
)
from .asymptotics import (
    FourierEstimate,
    fourier_estimate,
    ik_asymptotic,
    jk_from_ik,
    m4_leading,
    m6_leading,
    sanders_lipschitz,
    sanders_threshold,
)

__version__ = "0.1.0"
