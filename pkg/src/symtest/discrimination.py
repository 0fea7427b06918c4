"""Optimal binary tests and error probabilities.

The optimal family is the threshold tests {rho0 - t*rho1 > 0}; everything
else here (minimal combined error, constrained type-II error, converse
bounds) is computed from it.  Commuting pairs take an exact likelihood-ratio
path; the general case falls back to a threshold sweep with interpolation
across frontier jumps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divergences import PsiCurve, PsiEvaluator, _golden_min, richardson_derivative
from .errors import DimensionError
from .linalg import HermitianOperator, asmatrix, eig, rank_cut, trace_norm
from .reports import CheckReport


@dataclass(frozen=True)
class TestOperator:
    """A binary POVM effect: Hermitian with spectrum in [0, 1]."""

    __test__ = False  # keep pytest from collecting the type

    op: HermitianOperator

    def __post_init__(self):
        if not isinstance(self.op, HermitianOperator):
            object.__setattr__(self, "op", HermitianOperator(asmatrix(self.op)))
        w = np.linalg.eigvalsh(self.op.mat)
        if w[0] < -1e-9 or w[-1] > 1.0 + 1e-9:
            raise ValueError(f"test spectrum [{w[0]:.3e}, {w[-1]:.3e}] outside [0, 1]")
        if w[0] < 0.0 or w[-1] > 1.0:
            spec = eig(self.op)
            clipped = np.clip(spec.eigenvalues, 0.0, 1.0)
            m = (spec.eigenvectors * clipped) @ spec.eigenvectors.conj().T
            object.__setattr__(self, "op", HermitianOperator(m))

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat


@dataclass(frozen=True)
class ErrorPair:
    beta0: float  # reject the null although it holds
    beta1: float  # accept the null although the alternative holds

    def __post_init__(self):
        for name, value in (("beta0", self.beta0), ("beta1", self.beta1)):
            if not (-1e-9 <= value <= 1.0 + 1e-9):
                raise ValueError(f"{name}={value!r} outside [0, 1]")
        object.__setattr__(self, "beta0", float(min(max(self.beta0, 0.0), 1.0)))
        object.__setattr__(self, "beta1", float(min(max(self.beta1, 0.0), 1.0)))


def error_pair(test, rho0n, rho1n) -> ErrorPair:
    """Type-I and type-II error probabilities of a test."""
    t = test.mat if isinstance(test, TestOperator) else asmatrix(test)
    m0, m1 = asmatrix(rho0n), asmatrix(rho1n)
    if t.shape != m0.shape or m0.shape != m1.shape:
        raise DimensionError("test and states must share a dimension")
    beta0 = 1.0 - float(np.trace(m0 @ t).real)
    beta1 = float(np.trace(m1 @ t).real)
    return ErrorPair(beta0, beta1)


def _positive_part_projection(delta: np.ndarray) -> np.ndarray:
    spec = eig(delta)
    cut = rank_cut(np.abs(spec.eigenvalues), delta.shape[0])
    v = spec.eigenvectors[:, spec.eigenvalues > cut]
    p = v @ v.conj().T
    return (p + p.conj().T) / 2.0


def np_test(rho0n, rho1n, a: float, n: int = 1) -> TestOperator:
    """Spectral projection of exp(-n*a)*rho0n - rho1n onto its positive part."""
    m0, m1 = asmatrix(rho0n), asmatrix(rho1n)
    if m0.shape != m1.shape:
        raise DimensionError("states must share a dimension")
    delta = math.exp(-n * a) * m0 - m1
    return TestOperator(HermitianOperator(_positive_part_projection(delta)))


def p_min(rho0n, rho1n, a: float = 0.0, n: int = 1) -> float:
    """Minimal weighted error (1 + e^{-na})/2 - ||e^{-na} rho0n - rho1n||_1 / 2.

    This is the minimum of e^{-na} beta0(T) + beta1(T) over all tests; at
    a = 0 it equals twice the equal-priors symmetric error probability.
    """
    m0, m1 = asmatrix(rho0n), asmatrix(rho1n)
    weight = math.exp(-n * a)
    return (1.0 + weight) / 2.0 - trace_norm(weight * m0 - m1) / 2.0


def average_error(rho0n, rho1n) -> float:
    """Equal-priors symmetric error probability: 1/2 - ||rho0n - rho1n||_1 / 4."""
    return p_min(rho0n, rho1n, 0.0, 1) / 2.0


def pmin_bounds_check(rho0n, rho1n, a: float, n: int = 1, tol: float = 1e-9) -> CheckReport:
    """Power-trace sandwich around the minimal error.

    Upper: p_min(a) <= min over s in [0,1] of e^{-nas} Tr rho0n^s rho1n^(1-s).
    Lower: p_min(a) >= e^{-na}/(1 + e^{-na}) * (Tr rho0n^(1/2) rho1n^(1/2))^2.
    """
    ev = PsiEvaluator(rho0n, rho1n)

    def upper_objective(s: float) -> float:
        t = ev.trace_power(s)
        return math.exp(-n * a * s) * t

    grid = np.linspace(0.0, 1.0, 41)
    vals = [upper_objective(float(s)) for s in grid]
    k = int(np.argmin(vals))
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, grid.size - 1)])
    _, upper = _golden_min(upper_objective, lo, hi)
    upper = min(upper, min(vals))

    weight = math.exp(-n * a)
    half_trace = ev.trace_power(0.5)
    lower = weight / (1.0 + weight) * half_trace**2

    value = p_min(rho0n, rho1n, a, n)
    report = CheckReport(f"p_min power-trace bounds (a={a:g}, n={n})")
    report.check_leq("p_min <= weighted trace min", value, upper, tol, a=a, n=n)
    report.check_leq("fidelity-type lower bound <= p_min", lower, value, tol, a=a, n=n)
    return report


def _common_eigenbasis(m0: np.ndarray, m1: np.ndarray,
                       comm_tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray] | None:
    """Simultaneous eigenbasis weights (p_k, q_k) for commuting PSD matrices."""
    scale = max(1.0, float(np.max(np.abs(m0))), float(np.max(np.abs(m1))))
    if float(np.max(np.abs(m0 @ m1 - m1 @ m0))) > comm_tol * scale:
        return None
    w1, v = np.linalg.eigh((m1 + m1.conj().T) / 2.0)
    # rotate within each eigenspace of m1 to diagonalize m0 there
    tol = 1e-10 * max(1.0, float(np.max(np.abs(w1))))
    splits = np.nonzero(np.diff(w1) > tol)[0] + 1
    starts = [0, *splits.tolist()]
    stops = [*splits.tolist(), w1.size]
    basis = v.copy()
    for a, b in zip(starts, stops):
        sub = basis[:, a:b]
        block = sub.conj().T @ m0 @ sub
        _, u = np.linalg.eigh((block + block.conj().T) / 2.0)
        basis[:, a:b] = sub @ u
    p = np.einsum("ij,jk,ki->i", basis.conj().T, m0, basis).real
    q = np.einsum("ij,jk,ki->i", basis.conj().T, m1, basis).real
    off0 = basis.conj().T @ m0 @ basis - np.diag(p)
    off1 = basis.conj().T @ m1 @ basis - np.diag(q)
    if max(float(np.max(np.abs(off0))), float(np.max(np.abs(off1)))) > 1e-8 * scale:
        return None
    return np.maximum(p, 0.0), np.maximum(q, 0.0)


def _classical_beta(p: np.ndarray, q: np.ndarray, eps: float) -> float:
    """Exact randomized likelihood-ratio optimum for atom weights (p, q)."""
    atoms = [(pk, qk) for pk, qk in zip(p, q) if pk > 0.0 or qk > 0.0]

    def ratio(pk, qk):
        return math.inf if qk <= 0.0 else pk / qk

    atoms.sort(key=lambda a: -ratio(*a))
    groups: list[list[float]] = []
    for pk, qk in atoms:
        r = ratio(pk, qk)
        if groups:
            r_prev = ratio(groups[-1][0], groups[-1][1])
            same = (math.isinf(r) and math.isinf(r_prev)) or (
                math.isfinite(r)
                and math.isfinite(r_prev)
                and abs(r - r_prev) <= 1e-12 * max(1.0, abs(r_prev))
            )
            if same:
                groups[-1][0] += pk
                groups[-1][1] += qk
                continue
        groups.append([pk, qk])
    target = 1.0 - eps
    accepted_p = 0.0
    beta1 = 0.0
    for gp, gq in groups:
        if gp <= 0.0:
            continue  # accepting mass the null never sees only costs beta1
        if accepted_p + gp <= target:
            accepted_p += gp
            beta1 += gq
            if accepted_p >= target:
                break
        else:
            gamma = (target - accepted_p) / gp
            beta1 += gamma * gq
            accepted_p = target
            break
    return float(min(max(beta1, 0.0), 1.0))


def _threshold_point(m0: np.ndarray, m1: np.ndarray, t: float):
    """Errors of the threshold test at t plus the zero-eigenspace masses."""
    delta = m0 - t * m1
    spec = eig(delta)
    w = spec.eigenvalues
    ztol = rank_cut(np.abs(w), w.size)
    vpos = spec.eigenvectors[:, w > ztol]
    vzero = spec.eigenvectors[:, np.abs(w) <= ztol]
    ppos = vpos @ vpos.conj().T
    beta0 = 1.0 - float(np.trace(m0 @ ppos).real)
    beta1 = float(np.trace(m1 @ ppos).real)
    z0 = z1 = 0.0
    if vzero.shape[1]:
        pz = vzero @ vzero.conj().T
        z0 = float(np.trace(m0 @ pz).real)
        z1 = float(np.trace(m1 @ pz).real)
    return beta0, beta1, z0, z1


def _beta_eps_general(m0: np.ndarray, m1: np.ndarray, eps: float) -> float:
    """Threshold sweep with zero-space randomization / frontier interpolation."""
    candidates: list[float] = []

    def consider(t: float):
        beta0, beta1, z0, z1 = _threshold_point(m0, m1, t)
        if beta0 <= eps + 1e-12:
            candidates.append(beta1)
        # mixing the zero eigenspace walks beta0 down from beta0 to beta0 - z0
        if z0 > 0.0 and beta0 - z0 <= eps <= beta0:
            gamma = (beta0 - eps) / z0
            candidates.append(beta1 + gamma * z1)
        return beta0, beta1

    t_lo, (b0_lo, b1_lo) = 0.0, consider(0.0)
    t_hi = 1.0
    b0_hi, b1_hi = consider(t_hi)
    grow = 0
    while b0_hi < eps and grow < 64:
        t_hi *= 4.0
        b0_hi, b1_hi = consider(t_hi)
        grow += 1
    if b0_hi < eps:
        return min(candidates) if candidates else 0.0
    for t in np.geomspace(max(t_lo, 1e-9), t_hi, 512):
        consider(float(t))
    for _ in range(200):
        mid = (t_lo + t_hi) / 2.0
        b0_mid, _ = consider(mid)
        if b0_mid <= eps:
            t_lo = mid
        else:
            t_hi = mid
    b0_lo, b1_lo, _, _ = _threshold_point(m0, m1, t_lo)
    b0_hi, b1_hi, _, _ = _threshold_point(m0, m1, t_hi)
    if b0_hi > b0_lo + 1e-15 and b0_lo <= eps <= b0_hi:
        theta = (b0_hi - eps) / (b0_hi - b0_lo)
        candidates.append(theta * b1_lo + (1.0 - theta) * b1_hi)
    return float(min(max(min(candidates), 0.0), 1.0)) if candidates else 1.0


def beta_eps(rho0n, rho1n, eps: float) -> float:
    """Minimal type-II error subject to type-I error at most eps (exact)."""
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie strictly between 0 and 1")
    m0, m1 = asmatrix(rho0n), asmatrix(rho1n)
    if m0.shape != m1.shape:
        raise DimensionError("states must share a dimension")
    pq = _common_eigenbasis(m0, m1)
    if pq is not None:
        return _classical_beta(*pq, eps)
    return _beta_eps_general(m0, m1, eps)


def strong_converse_bound(rho0n, rho1n, eps: float, a: float, n: int,
                          evaluator: PsiEvaluator | None = None) -> float:
    """Converse floor e^{-na} (1 - eps - e^{-max over [1,3/2] of {na(s-1) - psi_n(s)}}).

    Nonpositive values mean the bound is vacuous at this rate.  Assumes the
    caller has checked that supp rho1 is invariant where that matters.
    Pass a prebuilt evaluator when sweeping many rates over one state pair.
    """
    ev = evaluator if evaluator is not None else PsiEvaluator(rho0n, rho1n)

    def neg_objective(s: float) -> float:
        return ev.psi(s) - n * a * (s - 1.0)

    grid = np.linspace(1.0, 1.5, 21)
    vals = [neg_objective(float(s)) for s in grid]
    k = int(np.argmin(vals))
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, grid.size - 1)])
    _, vmin = _golden_min(neg_objective, lo, hi)
    phi_tilde_n = -min(vmin, min(vals))
    return math.exp(-n * a) * (1.0 - eps - math.exp(-phi_tilde_n))


def stein_a_grid(curve: PsiCurve, points: int = 21) -> np.ndarray:
    """Rate grid spanning the one-sided slopes of the curve at s = 1."""
    left = richardson_derivative(curve.evaluate, 1.0, side="left")
    right = richardson_derivative(curve.evaluate, 1.0, side="right")
    return np.linspace(left - 0.5, right + 0.5, points)


def fidelity_pmin_check(rho0n, rho1n, tol: float = 1e-9) -> CheckReport:
    """Fidelity sandwich around the equal-priors symmetric error."""
    from .divergences import fidelity  # local to avoid a cycle at import time

    f = fidelity(rho0n, rho1n)
    value = average_error(rho0n, rho1n)
    lower = (1.0 - math.sqrt(max(1.0 - f * f, 0.0))) / 2.0
    report = CheckReport("fidelity sandwich for the symmetric error")
    report.check_leq("(1 - sqrt(1 - F^2))/2 <= avg error", lower, value, tol)
    report.check_leq("avg error <= F/2", value, f / 2.0, tol)
    return report
