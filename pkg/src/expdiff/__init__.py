"""Numerical laboratory for doubly degenerate diffusion with exponential
radial weights: admissible weight classes, explicit functional-inequality
constants, decay/support envelopes, and a conservative radial
finite-volume solver."""

from .weights import (
    EquationParams,
    WeightSpec,
    big_g,
    check_monotone_quantities,
    check_structural_conditions,
    invert_g,
    lambda_,
    lambda_prime,
    make_custom_weight,
    make_power_weight,
    make_unweighted,
    make_zygmund_weight,
    validate_envelope,
    zygmund_inverse_asymptotics,
)
from .measure import RadialMeasure, cell_weighted_volumes, integrate, mass, sphere_area
from .inequalities import (
    HardyPair,
    InequalityReport,
    bounded_sobolev_constant,
    gamma_constant,
    hardy_criterion_sup,
    k_qp,
    poincare_constant,
    verify_inequality,
)
from .envelopes import EnvelopeParams, sup_envelope, support_envelope, zygmund_envelopes
from .solver import (
    RadialGrid,
    SolverConfig,
    SolverState,
    Trajectory,
    fit_rates,
    initial_state,
    run,
    step,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
