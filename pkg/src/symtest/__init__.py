"""Finite-size numerics for binary quantum state discrimination restricted
to group-invariant measurements: twirled states, power-trace curves and
their transforms, optimal tests, and the inequality battery tying them
together."""

from .errors import ConvergenceError, DimensionError, ScenarioError, SymtestError
from .linalg import (
    DensityOperator,
    HermitianOperator,
    Spectrum,
    abs_power_trace,
    eig,
    kron,
    kron_power,
    mpow,
    support_projection,
    trace_norm,
)
from .groups import (
    Block,
    BlockStructure,
    GroupAction,
    block_structure,
    dim_growth,
    pinching_map,
    tensor_power,
    twirl,
    twirled_pair,
    weyl_twirl,
)
from .divergences import (
    DivergenceReport,
    NEG_INF,
    PsiCurve,
    PsiEvaluator,
    chernoff_distance,
    default_s_grid,
    fidelity,
    hoeffding_distance,
    lf_transform,
    lieb_bound_check,
    phi,
    phi_tilde,
    psi,
    psi_curve,
    relative_entropy,
    renyi,
)
from .discrimination import (
    ErrorPair,
    TestOperator,
    average_error,
    beta_eps,
    error_pair,
    np_test,
    p_min,
    pmin_bounds_check,
    strong_converse_bound,
)
from .asymptotics import (
    ConvergenceTable,
    Scenario,
    binomial_power_sum,
    binomial_power_sum_limit,
    closed_form_curve,
    closed_form_psi,
    convergence_table,
    half_binomial_sum,
    half_binomial_sum_limit,
    make_scenario,
    mean_quantities,
    solve_branch_crossover,
    solve_flat_chernoff_alpha,
)
from .verify import run_verify, verify_ok

__version__ = "0.1.0"
