"""Statistical distance measures between density operators.

Everything here is driven by the two-parameter trace functional
Tr rho0**s rho1**(1-s): the log of that trace as a function of s, its
Legendre-Fenchel transforms, and the Renyi, relative-entropy, fidelity,
Chernoff and Hoeffding quantities built from it.  Orthogonal supports are a
legitimate regime and are represented by the IEEE sentinel NEG_INF, which
propagates through sums with finite numbers the way the math requires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError
from .groups import GroupAction, is_support_invariant, twirled_pair
from .linalg import (
    asmatrix,
    abs_power_trace,
    eig,
    rank_cut,
)
from .reports import CheckReport

NEG_INF = float("-inf")
POS_INF = float("inf")
UNDERFLOW = 1e-300

GOLDEN_XTOL = 1e-10
RICHARDSON_STEPS = (1e-3, 5e-4, 2.5e-4)


def default_s_grid() -> np.ndarray:
    """201 uniform points on [-0.5, 2]; covers every window used downstream."""
    return np.linspace(-0.5, 2.0, 201)


class PsiEvaluator:
    """Spectral engine for s -> log Tr rho0**s rho1**(1-s).

    Both spectra are computed once; each evaluation is then a weighted sum
    over the support-restricted eigenvalue pairs, so sweeping a grid of s
    values costs one matrix product total.
    """

    def __init__(self, rho0, rho1, cut_scale: float = 1.0):
        m0, m1 = asmatrix(rho0), asmatrix(rho1)
        if m0.shape != m1.shape:
            raise DimensionError("states must share a dimension")
        s0, s1 = eig(m0), eig(m1)
        cut0 = rank_cut(s0.eigenvalues, m0.shape[0]) * cut_scale
        cut1 = rank_cut(s1.eigenvalues, m1.shape[0]) * cut_scale
        keep0 = s0.eigenvalues > cut0
        keep1 = s1.eigenvalues > cut1
        self._log0 = np.log(s0.eigenvalues[keep0])
        self._log1 = np.log(s1.eigenvalues[keep1])
        v0 = s0.eigenvectors[:, keep0]
        v1 = s1.eigenvectors[:, keep1]
        overlap = np.abs(v0.conj().T @ v1) ** 2
        # overlaps below eigenvector accuracy are roundoff ghosts of exact zeros
        floor = (16.0 * m0.shape[0] * float(np.finfo(float).eps)) ** 2
        overlap[overlap < floor] = 0.0
        self._overlap = overlap

    def trace_power(self, s: float) -> float:
        if self._log0.size == 0 or self._log1.size == 0:
            return 0.0
        a = np.exp(s * self._log0)
        b = np.exp((1.0 - s) * self._log1)
        return float(max(a @ self._overlap @ b, 0.0))

    def psi(self, s: float) -> float:
        t = self.trace_power(s)
        return math.log(t) if t > UNDERFLOW else NEG_INF


def psi(rho0, rho1, s: float) -> float:
    """log Tr rho0**s rho1**(1-s); NEG_INF for orthogonal supports."""
    return PsiEvaluator(rho0, rho1).psi(s)


@dataclass(frozen=True)
class PsiCurve:
    """A sampled s -> psi(s) map.

    ``n`` is the number of copies behind the curve, with 0 reserved for
    closed-form/asymptotic curves.  ``fn`` is an optional exact evaluator
    used by the optimizers to refine beyond the grid; it does not survive
    CSV serialization.
    """

    s_grid: np.ndarray
    values: np.ndarray
    n: int = 1
    label: str = ""
    fn: Callable[[float], float] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        grid = np.asarray(self.s_grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or grid.shape != vals.shape or grid.size < 2:
            raise ValueError("grid and values must be matching 1-d arrays")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("s grid must be strictly ascending")
        finite = np.isfinite(vals)
        if np.any(np.isnan(vals)) or np.any(vals == POS_INF):
            raise ValueError("curve values must be finite or -inf")
        scale = max(1.0, float(np.max(np.abs(vals[finite]))) if finite.any() else 1.0)
        for k in range(grid.size - 2):
            window = vals[k : k + 3]
            if not np.all(np.isfinite(window)):
                continue
            left = (window[1] - window[0]) / (grid[k + 1] - grid[k])
            right = (window[2] - window[1]) / (grid[k + 2] - grid[k + 1])
            if right - left < -1e-7 * scale:
                raise ValueError(
                    f"curve is not convex near s={grid[k + 1]:g} (slope drop {right - left:.3e})"
                )
        grid.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "s_grid", grid)
        object.__setattr__(self, "values", vals)

    def evaluate(self, s: float) -> float:
        if self.fn is not None:
            return float(self.fn(float(s)))
        if s < self.s_grid[0] - 1e-12 or s > self.s_grid[-1] + 1e-12:
            raise ValueError(f"s={s:g} outside the sampled range")
        return float(np.interp(s, self.s_grid, self.values))

    def covers(self, lo: float, hi: float) -> bool:
        return self.s_grid[0] <= lo + 1e-12 and self.s_grid[-1] >= hi - 1e-12

    def rows(self) -> list[tuple[float, float, int, str]]:
        return [
            (float(s), float(v), self.n, self.label)
            for s, v in zip(self.s_grid, self.values)
        ]

    def to_csv(self) -> str:
        lines = ["s,value,n,label"]
        for s, v, n, label in self.rows():
            lines.append(f"{s:.17g},{v:.17g},{n},{label}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "PsiCurve":
        rows = [line.split(",") for line in text.strip().splitlines()[1:]]
        grid = np.array([float(r[0]) for r in rows])
        vals = np.array([float(r[1]) for r in rows])
        n = int(rows[0][2]) if rows else 0
        label = rows[0][3] if rows and len(rows[0]) > 3 else ""
        return cls(grid, vals, n=n, label=label)


def psi_curve(rho0, rho1, grid=None, n: int = 1, label: str = "") -> PsiCurve:
    """Sample psi on a grid, keeping an exact evaluator attached for refinement."""
    if grid is None:
        grid = default_s_grid()
    grid = np.asarray(grid, dtype=float)
    ev = PsiEvaluator(rho0, rho1)
    values = np.array([ev.psi(float(s)) for s in grid])
    return PsiCurve(grid, values, n=n, label=label, fn=ev.psi)


def renyi(rho0, rho1, alpha: float) -> float:
    """Renyi relative entropy of order alpha != 1 built on the same trace."""
    if abs(alpha - 1.0) < 1e-12:
        raise ValueError("order 1 is the relative entropy; call relative_entropy instead")
    t = PsiEvaluator(rho0, rho1).trace_power(alpha)
    if t <= UNDERFLOW:
        return POS_INF
    return math.log(t) / (alpha - 1.0)


def renyi_entropy(rho, alpha: float) -> float:
    """Renyi entropy of order alpha != 1 of a single state."""
    if abs(alpha - 1.0) < 1e-12:
        raise ValueError("order 1 is the von Neumann entropy")
    spec = eig(asmatrix(rho))
    w = spec.eigenvalues
    w = w[w > rank_cut(w, w.size)]
    return math.log(float(np.sum(w**alpha))) / (1.0 - alpha)


def relative_entropy(rho0, rho1, support_tol: float = 1e-7) -> float:
    """Tr rho0 (log rho0 - log rho1) when supp rho0 <= supp rho1, else +inf."""
    m0, m1 = asmatrix(rho0), asmatrix(rho1)
    if m0.shape != m1.shape:
        raise DimensionError("states must share a dimension")
    s0, s1 = eig(m0), eig(m1)
    cut0 = rank_cut(s0.eigenvalues, m0.shape[0])
    cut1 = rank_cut(s1.eigenvalues, m1.shape[0])
    keep0 = s0.eigenvalues > cut0
    keep1 = s1.eigenvalues > cut1
    v0 = s0.eigenvectors[:, keep0]
    v1 = s1.eigenvectors[:, keep1]
    resid = v0 - v1 @ (v1.conj().T @ v0)
    if float(np.linalg.norm(resid)) > support_tol:
        return POS_INF
    w0 = s0.eigenvalues[keep0]
    term0 = float(np.sum(w0 * np.log(w0)))
    weights = np.einsum("ij,jk,ki->i", v1.conj().T, m0, v1).real
    term1 = float(np.sum(np.log(s1.eigenvalues[keep1]) * weights))
    return term0 - term1


def fidelity(rho, sigma) -> float:
    """Tr |rho**(1/2) sigma**(1/2)|, clipped into [0, 1]."""
    f = abs_power_trace(rho, sigma, 0.5)
    return float(min(max(f, 0.0), 1.0))


def _golden_min(fn, a: float, b: float, xtol: float = GOLDEN_XTOL) -> tuple[float, float]:
    """Deterministic golden-section minimum; ties resolve toward smaller s."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    candidates = [(a, fn(a)), ((a + b) / 2.0, fn((a + b) / 2.0)), (b, fn(b))]
    best = min(candidates, key=lambda p: (p[1], p[0]))
    return best


def _grid_in(curve: PsiCurve, lo: float, hi: float) -> np.ndarray:
    pts = curve.s_grid[(curve.s_grid >= lo - 1e-12) & (curve.s_grid <= hi + 1e-12)]
    pts = np.unique(np.concatenate([pts, [lo, hi]]))
    return pts[(pts >= lo) & (pts <= hi)]


def _refine_min(curve: PsiCurve, objective, lo: float, hi: float) -> tuple[float, float]:
    """Grid scan then golden-section refinement of a scalar objective."""
    pts = _grid_in(curve, lo, hi)
    vals = np.array([objective(float(s)) for s in pts])
    k = int(np.argmin(vals))
    best_s, best_v = float(pts[k]), float(vals[k])
    if best_v == NEG_INF:
        return best_s, NEG_INF
    if curve.fn is None:
        return best_s, best_v
    a = float(pts[max(k - 1, 0)])
    b = float(pts[min(k + 1, pts.size - 1)])
    if b > a:
        s_ref, v_ref = _golden_min(objective, a, b)
        if v_ref < best_v or (v_ref == best_v and s_ref < best_s):
            best_s, best_v = s_ref, v_ref
    return best_s, best_v


def chernoff_distance(curve: PsiCurve) -> float:
    """-min over [0, 1] of the curve; +inf for orthogonal supports."""
    if not curve.covers(0.0, 1.0):
        raise ValueError("curve does not cover [0, 1]")
    _, vmin = _refine_min(curve, curve.evaluate, 0.0, 1.0)
    if vmin == NEG_INF:
        return POS_INF
    return -vmin


def richardson_derivative(f, x: float, side: str = "central",
                          hs: tuple[float, ...] = RICHARDSON_STEPS) -> float:
    """Richardson-extrapolated finite difference; one-sided variants use only
    nodes on the requested side of x."""
    h0, h1, h2 = hs
    if side == "central":
        def diff(h):
            return (f(x + h) - f(x - h)) / (2.0 * h)
        c0, c1 = diff(h0), diff(h1)
        r0 = (4.0 * c1 - c0) / 3.0
        c2 = diff(h2)
        r1 = (4.0 * c2 - c1) / 3.0
        return (16.0 * r1 - r0) / 15.0
    sign = -1.0 if side == "left" else 1.0

    def diff(h):
        return sign * (f(x + sign * h) - f(x)) / h

    d0, d1, d2 = diff(h0), diff(h1), diff(h2)
    return (8.0 * d2 - 6.0 * d1 + d0) / 3.0


def hoeffding_distance(curve: PsiCurve, r: float) -> float:
    """sup over t in [0, 1) of (-t*r - psi(t)) / (1 - t); +inf when r < -psi(1)."""
    if r < 0:
        raise ValueError("rate parameter r must be nonnegative")
    if not curve.covers(0.0, 1.0):
        raise ValueError("curve does not cover [0, 1)")
    psi1 = curve.evaluate(1.0)
    if psi1 == NEG_INF:
        return POS_INF
    boundary_tol = 1e-9
    if r + psi1 < -boundary_tol:
        return POS_INF

    def objective(t: float) -> float:
        v = curve.evaluate(t)
        if v == NEG_INF:
            return POS_INF
        return (-t * r - v) / (1.0 - t)

    hi = 1.0 - 1e-7
    _, neg_best = _refine_min(curve, lambda t: -objective(t), 0.0, hi)
    best = -neg_best
    if best == POS_INF:
        return POS_INF
    if abs(r + psi1) <= boundary_tol and curve.fn is not None:
        boundary = r + richardson_derivative(curve.evaluate, 1.0, side="left")
        best = max(best, boundary)
    return best


def lf_transform(curve: PsiCurve, a: float, window: tuple[float, float] = (0.0, 1.0)) -> float:
    """max over the window of a*s - psi(s), refined past the grid when possible."""
    lo, hi = window
    if not curve.covers(lo, hi):
        raise ValueError(f"curve does not cover the window [{lo:g}, {hi:g}]")

    def neg_objective(s: float) -> float:
        v = curve.evaluate(s)
        if v == NEG_INF:
            return NEG_INF
        return v - a * s

    _, vmin = _refine_min(curve, neg_objective, lo, hi)
    if vmin == NEG_INF:
        return POS_INF
    return -vmin


def phi(curve: PsiCurve, a: float) -> float:
    """Legendre-Fenchel transform over [0, 1]; phi(0) is the Chernoff distance."""
    return lf_transform(curve, a, (0.0, 1.0))


def phi_tilde(curve: PsiCurve, a: float) -> float:
    """Strong-converse window transform: max over [1, 3/2] of a(s-1) - psi(s)."""
    return lf_transform(curve, a, (1.0, 1.5)) - a


def lieb_bound_check(rho0, rho1, action: GroupAction, n: int,
                     s_grid=None, tol: float = 1e-8) -> CheckReport:
    """Sandwich of the n-copy twirled psi between the scaled unrestricted and
    single-copy twirled curves: on [0, 1] it sits above n*psi_unrestricted and
    below n*psi_1; on [1, 2] both bounds flip when supp rho1 is invariant."""
    if s_grid is None:
        s_grid = default_s_grid()
    s_grid = np.asarray(s_grid, dtype=float)
    pair_n = twirled_pair(rho0, rho1, action, n)
    pair_1 = twirled_pair(rho0, rho1, action, 1)
    ev_n = PsiEvaluator(*pair_n)
    ev_1 = PsiEvaluator(*pair_1)
    ev_0 = PsiEvaluator(rho0, rho1)
    report = CheckReport(f"psi sandwich (n={n})")
    invariant = is_support_invariant(rho1, action)
    report.note("supp rho1 invariant", value=float(invariant))
    for s in s_grid[(s_grid >= 0.0) & (s_grid <= 1.0)]:
        s = float(s)
        pn, p1, p0 = ev_n.psi(s), ev_1.psi(s), ev_0.psi(s)
        report.check_leq(f"n*psi_unres <= psi_n at s={s:g}", n * p0, pn, tol, s=s)
        report.check_leq(f"psi_n <= n*psi_1 at s={s:g}", pn, n * p1, tol, s=s)
    if invariant:
        for s in s_grid[(s_grid >= 1.0) & (s_grid <= 2.0)]:
            s = float(s)
            pn, p1, p0 = ev_n.psi(s), ev_1.psi(s), ev_0.psi(s)
            report.check_leq(f"psi_n <= n*psi_unres at s={s:g}", pn, n * p0, tol, s=s)
            report.check_leq(f"n*psi_1 <= psi_n at s={s:g}", n * p1, pn, tol, s=s)
    return report


@dataclass
class DivergenceReport:
    """Summary of the distance measures for one discrimination problem."""

    renyi_alpha: dict[float, float]
    relative_entropy: float
    fidelity: float
    chernoff: float
    hoeffding: dict[float, float]
    label: str = ""
    estimated: bool = False
    unrestricted_relative_entropy: float | None = None
    note: str = ""

    def __post_init__(self):
        if not (-1e-9 <= self.fidelity <= 1.0 + 1e-9):
            raise ValueError(f"fidelity {self.fidelity!r} outside [0, 1]")
        if self.chernoff < -1e-9:
            raise ValueError(f"negative Chernoff distance {self.chernoff!r}")
