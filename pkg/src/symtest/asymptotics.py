"""Closed-form psi curves for the built-in two-level scenarios, convergence
diagnostics for the per-copy curves, root solvers for the crossover points,
and the binomial-sum limit formulas the closed forms rest on."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .divergences import (
    DivergenceReport,
    NEG_INF,
    PsiCurve,
    PsiEvaluator,
    chernoff_distance,
    default_s_grid,
    fidelity,
    hoeffding_distance,
    relative_entropy,
    richardson_derivative,
)
from .groups import GroupAction, block_structure, pinching_map, twirled_pair
from .linalg import DensityOperator, asmatrix, kron_power, spectral_projections
from .oracle import _log_binom, _logsumexp, _xlog
from .reports import CheckReport

Z2_COMMUTING = "Z2Commuting"
TORUS_PURE_VS_MIXED = "TorusPureVsMixed"
TORUS_TWO_PURE = "TorusTwoPure"


def sigma_state(lam: float) -> DensityOperator:
    """Mixture of the two Hadamard-basis projectors with weight lam."""
    off = lam - 0.5
    return DensityOperator.from_matrix([[0.5, off], [off, 0.5]])


def pure_qubit(lam: float) -> DensityOperator:
    root = math.sqrt(lam * (1.0 - lam))
    return DensityOperator.from_matrix([[lam, root], [root, 1.0 - lam]])


def diag_qubit(alpha: float) -> DensityOperator:
    return DensityOperator.from_matrix([[alpha, 0.0], [0.0, 1.0 - alpha]])


def z2_action() -> GroupAction:
    return GroupAction.finite([np.eye(2), np.diag([1.0, -1.0])])


def torus_action() -> GroupAction:
    return GroupAction.torus([0, 1])


@dataclass(frozen=True)
class Scenario:
    """A named discrimination problem: two states, an action, and a copy budget."""

    name: str
    rho0: DensityOperator
    rho1: DensityOperator
    action: GroupAction
    n_max: int = 8
    params: dict = field(default_factory=dict)
    kind: str | None = None

    def __post_init__(self):
        if self.rho0.dim != self.rho1.dim or self.rho0.dim != self.action.dim:
            raise ValueError("scenario states and action must share a dimension")
        if self.n_max < 1:
            raise ValueError("n_max must be positive")


def make_scenario(kind: str, n_max: int = 8, **params) -> Scenario:
    if kind == Z2_COMMUTING:
        lam, mu = params["lam"], params["mu"]
        return Scenario(
            name=f"z2-commuting(lam={lam:g},mu={mu:g})",
            rho0=sigma_state(lam), rho1=sigma_state(mu),
            action=z2_action(), n_max=n_max, params={"lam": lam, "mu": mu}, kind=kind,
        )
    if kind == TORUS_PURE_VS_MIXED:
        alpha = params["alpha"]
        return Scenario(
            name=f"torus-pure-vs-mixed(alpha={alpha:g})",
            rho0=pure_qubit(0.5), rho1=diag_qubit(alpha),
            action=torus_action(), n_max=n_max, params={"alpha": alpha}, kind=kind,
        )
    if kind == TORUS_TWO_PURE:
        lam, mu = params["lam"], params["mu"]
        return Scenario(
            name=f"torus-two-pure(lam={lam:g},mu={mu:g})",
            rho0=pure_qubit(lam), rho1=pure_qubit(mu),
            action=torus_action(), n_max=n_max, params={"lam": lam, "mu": mu}, kind=kind,
        )
    raise ValueError(f"unknown scenario kind {kind!r}")


def _require_interior(value: float, name: str) -> None:
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name}={value!r} must lie strictly inside (0, 1)")


def _two_pure_psi(lam: float, mu: float, s: float) -> float:
    t1 = s * _xlog(lam) + (1.0 - s) * _xlog(mu)
    t2 = s * _xlog(1.0 - lam) + (1.0 - s) * _xlog(1.0 - mu)
    return _logsumexp([t1, t2])


def _pure_vs_mixed_psi(alpha: float, s: float) -> float:
    if s <= 0.0:
        return (1.0 - s) * math.log(max(alpha, 1.0 - alpha)) - s * math.log(2.0)
    expo = (1.0 - s) / s
    return s * _logsumexp([expo * math.log(alpha), expo * math.log(1.0 - alpha)]) - s * math.log(2.0)


def _z2_psi_normalized(a: float, b: float, s: float) -> float:
    # requires 0 <= a < b <= 1/2
    if a <= 0.0:
        return (1.0 - s) * math.log(1.0 - b)
    s_star = solve_branch_crossover(a, b)
    if s >= s_star:
        return _two_pure_psi(a, b, s)
    return (s / 2.0) * math.log(a * (1.0 - a)) + ((1.0 - s) / 2.0) * math.log(b * (1.0 - b)) + math.log(2.0)


def closed_form_psi(kind: str, params: dict, s: float) -> float:
    """Exact limit of (1/n) psi_n(s) for the built-in scenario kinds."""
    if kind == TORUS_TWO_PURE:
        lam, mu = params["lam"], params["mu"]
        _require_interior(lam, "lam")
        _require_interior(mu, "mu")
        return _two_pure_psi(lam, mu, s)
    if kind == TORUS_PURE_VS_MIXED:
        alpha = params["alpha"]
        _require_interior(alpha, "alpha")
        return _pure_vs_mixed_psi(alpha, s)
    if kind == Z2_COMMUTING:
        lam, mu = params["lam"], params["mu"]
        if not (0.0 <= lam <= 1.0 and 0.0 <= mu <= 1.0):
            raise ValueError("lam and mu must lie in [0, 1]")
        # the twirled problem only sees {lam, 1-lam} and {mu, 1-mu}
        a = min(lam, 1.0 - lam)
        b = min(mu, 1.0 - mu)
        if abs(a - b) <= 1e-15:
            return 0.0  # identical twirled states
        if a < b:
            return _z2_psi_normalized(a, b, s)
        return _z2_psi_normalized(b, a, 1.0 - s)
    raise ValueError(f"no closed form for scenario kind {kind!r}")


def closed_form_curve(kind: str, params: dict, grid=None, label: str | None = None) -> PsiCurve:
    if grid is None:
        grid = default_s_grid()
    grid = np.asarray(grid, dtype=float)
    values = np.array([closed_form_psi(kind, params, float(s)) for s in grid])
    return PsiCurve(grid, values, n=0, label=label or kind,
                    fn=lambda s: closed_form_psi(kind, params, s))


def unrestricted_curve(rho0, rho1, grid=None, label: str = "unrestricted") -> PsiCurve:
    """Single-copy psi of the raw pair, before any twirl."""
    if grid is None:
        grid = default_s_grid()
    grid = np.asarray(grid, dtype=float)
    ev = PsiEvaluator(rho0, rho1)
    return PsiCurve(grid, np.array([ev.psi(float(s)) for s in grid]),
                    n=1, label=label, fn=ev.psi)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    s: float
    value: float  # (1/n) psi_n(s)
    closed_form: float
    gap: float
    monotone: bool


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[ConvergenceRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if 0.0 <= row.s <= 1.0 and not (row.gap >= -1e-8 or row.gap == NEG_INF):
                raise ValueError(
                    f"normalized curve dipped below its limit at n={row.n}, s={row.s:g} "
                    f"(gap {row.gap:.3e})"
                )

    def to_csv(self) -> str:
        lines = ["n,s,value,closed_form,gap,monotone"]
        for r in self.rows:
            lines.append(
                f"{r.n},{r.s:.17g},{r.value:.17g},{r.closed_form:.17g},{r.gap:.17g},{int(r.monotone)}"
            )
        return "\n".join(lines) + "\n"


def convergence_table(scenario: Scenario, s_grid=None, n_max: int | None = None) -> ConvergenceTable:
    """Per-(n, s) gaps of (1/n) psi_n against the scenario's closed form."""
    if scenario.kind is None:
        raise ValueError("convergence_table needs a scenario with a closed-form kind")
    if s_grid is None:
        s_grid = default_s_grid()
    s_grid = np.asarray(s_grid, dtype=float)
    n_max = n_max or scenario.n_max
    values = np.empty((n_max, s_grid.size))
    for n in range(1, n_max + 1):
        ev = PsiEvaluator(*twirled_pair(scenario.rho0, scenario.rho1, scenario.action, n))
        values[n - 1] = [ev.psi(float(s)) / n for s in s_grid]
    closed = np.array([closed_form_psi(scenario.kind, scenario.params, float(s)) for s in s_grid])
    monotone = [bool(np.all(np.diff(values[:, j]) <= 1e-10)) for j in range(s_grid.size)]
    rows = []
    for n in range(1, n_max + 1):
        for j, s in enumerate(s_grid):
            v, c = float(values[n - 1, j]), float(closed[j])
            gap = v - c if not (v == NEG_INF and c == NEG_INF) else 0.0
            rows.append(ConvergenceRow(n, float(s), v, c, gap, monotone[j]))
    return ConvergenceTable(tuple(rows))


def solve_branch_crossover(lam: float, mu: float, xtol: float = 1e-12) -> float:
    """The nonpositive s where the dominant-pairing and half-sum branches of
    the commuting-pair curve meet; solved by bisection.

    Requires 0 < lam < mu <= 1/2.
    """
    if not 0.0 < lam < mu <= 0.5:
        raise ValueError("need 0 < lam < mu <= 1/2")
    slope = math.log((1.0 - lam) * mu / (lam * (1.0 - mu)))
    target = math.log(mu / (1.0 - mu))

    def f(s: float) -> float:
        return s * slope - target

    lo, hi = -1.0, 0.0
    while f(lo) > 0.0:
        lo *= 2.0
        if lo < -1e6:
            raise ValueError("failed to bracket the crossover point")
    # f is increasing in s, so keep f(lo) <= 0 <= f(hi)
    while hi - lo > xtol:
        mid = (lo + hi) / 2.0
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def solve_flat_chernoff_alpha(xtol: float = 1e-12) -> float:
    """The mixing weight at which the twirled pure-vs-mixed curve has a flat
    minimum at s = 1/2, so the restricted Chernoff distance is exactly half
    the unrestricted one.  Root of 2*H(alpha) = log 2 on (0, 1/2)."""

    def f(alpha: float) -> float:
        return -2.0 * (alpha * math.log(alpha) + (1.0 - alpha) * math.log(1.0 - alpha)) - math.log(2.0)

    lo, hi = 1e-12, 0.5
    while hi - lo > xtol:
        mid = (lo + hi) / 2.0
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    root = (lo + hi) / 2.0
    if not 0.10 <= root <= 0.12:
        raise ArithmeticError(f"flat-minimum weight {root!r} outside the expected window")
    return root


def binomial_power_sum_limit(a: float, b: float, s: float) -> float:
    """lim of (sum_i C(n,i)^s a^i b^(n-i))^(1/n): (a^(1/s)+b^(1/s))^s for s>0,
    max(a, b) for s <= 0."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    if s <= 0.0:
        return max(a, b)
    if a == 0.0 and b == 0.0:
        return 0.0
    return math.exp(s * _logsumexp([_xlog(a) / s, _xlog(b) / s]))


def binomial_power_sum(a: float, b: float, s: float, n: int) -> float:
    """Finite-n companion (sum_i C(n,i)^s a^i b^(n-i))^(1/n), in log space."""
    logs = []
    for i in range(n + 1):
        la = i * _xlog(a)
        lb = (n - i) * _xlog(b)
        if la == NEG_INF or lb == NEG_INF:
            continue
        logs.append(s * _log_binom(n, i) + la + lb)
    total = _logsumexp(logs)
    return 0.0 if total == NEG_INF else math.exp(total / n)


def half_binomial_sum_limit(a: float, b: float) -> float:
    """lim of (sum_{i <= n/2} C(n,i) a^i b^(n-i))^(1/n): a+b if a <= b, else 2 sqrt(ab)."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    return a + b if a <= b else 2.0 * math.sqrt(a * b)


def half_binomial_sum(a: float, b: float, n: int) -> float:
    logs = []
    for i in range(n // 2 + 1):
        la = i * _xlog(a)
        lb = (n - i) * _xlog(b)
        if la == NEG_INF or lb == NEG_INF:
            continue
        logs.append(_log_binom(n, i) + la + lb)
    total = _logsumexp(logs)
    return 0.0 if total == NEG_INF else math.exp(total / n)


def _supports_nested(rho0n, rho1n) -> bool:
    return relative_entropy(rho0n, rho1n) != math.inf


def mean_quantities(scenario: Scenario, r_grid=None,
                    alphas=(0.0, 0.25, 0.5, 0.75)) -> DivergenceReport:
    """Mean (per-copy limit) distance measures of a scenario.

    With a closed-form kind the values are exact; otherwise they are the
    best-n normalized quantities, flagged as estimates, with the
    subadditivity direction recorded in the note.
    """
    if r_grid is None:
        r_grid = (0.0, 0.05, 0.1, 0.2, 0.4)
    estimated = scenario.kind is None
    if not estimated:
        curve = closed_form_curve(scenario.kind, scenario.params)
        note = ""
    else:
        n = scenario.n_max
        ev = PsiEvaluator(*twirled_pair(scenario.rho0, scenario.rho1, scenario.action, n))
        grid = default_s_grid()
        curve = PsiCurve(grid, np.array([ev.psi(float(s)) / n for s in grid]),
                         n=n, label="best-n", fn=lambda s: ev.psi(s) / n)
        note = (f"values from (1/n) psi_n at n={n}; upper estimates of the limit on "
                "[0,1], lower on [1,2] under invariant support")
    pair1 = twirled_pair(scenario.rho0, scenario.rho1, scenario.action, 1)
    if _supports_nested(*pair1):
        mean_rel = richardson_derivative(curve.evaluate, 1.0, side="left")
    else:
        mean_rel = math.inf
    renyi_map = {}
    for alpha in alphas:
        v = curve.evaluate(alpha)
        renyi_map[alpha] = math.inf if v == NEG_INF and alpha < 1 else v / (alpha - 1.0)
    return DivergenceReport(
        renyi_alpha=renyi_map,
        relative_entropy=mean_rel,
        fidelity=fidelity(scenario.rho0, scenario.rho1),
        chernoff=chernoff_distance(curve),
        hoeffding={float(r): hoeffding_distance(curve, float(r)) for r in r_grid},
        label=scenario.name,
        estimated=estimated,
        unrestricted_relative_entropy=relative_entropy(scenario.rho0, scenario.rho1),
        note=note,
    )


def stein_gap_check(scenario: Scenario, n: int, tol: float = 1e-8) -> CheckReport:
    """Finite-n relative-entropy accounting for an invariant alternative.

    The pinched classical value sits below n*S(rho0||rho1) by monotonicity
    and above it minus d*log(n+1) + 2*log(sum_i d_i), so the twirled problem
    loses nothing per copy in the Stein regime.
    """
    report = CheckReport(f"stein gap (n={n})")
    s_single = relative_entropy(scenario.rho0, scenario.rho1)
    if s_single == math.inf:
        report.note("single-copy relative entropy infinite; nothing to check")
        return report
    rho0n, rho1n = twirled_pair(scenario.rho0, scenario.rho1, scenario.action, n)
    report.check_leq("S(twirled)/n <= S(rho0||rho1)",
                     relative_entropy(rho0n, rho1n) / n, s_single, tol, n=n)
    rho1_pow = kron_power(asmatrix(scenario.rho1), n)
    projections = [p for _, p in spectral_projections(rho1_pow)]
    from .groups import tensor_power  # local import keeps module deps one-way

    powered = tensor_power(scenario.action, n)
    pinched = pinching_map(kron_power(asmatrix(scenario.rho0), n), powered, projections)
    s_pinched = relative_entropy(DensityOperator.from_matrix(pinched), rho1_pow)
    allowance = scenario.rho0.dim * math.log(n + 1.0) + 2.0 * math.log(
        block_structure(scenario.action, n).sum_irrep_dims()
    )
    report.check_leq("pinched relative entropy <= n*S", s_pinched, n * s_single, tol, n=n)
    report.check_leq("n*S - pinched <= rank allowance",
                     n * s_single - s_pinched, allowance, tol, n=n)
    return report
