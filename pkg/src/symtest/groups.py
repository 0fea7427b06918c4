"""Group actions, tensor powers, and the conditional expectation (twirl)
onto the commutant of a tensor-power representation.

Two kinds of action are supported: an explicit finite list of unitaries
closed under multiplication, and the diagonal torus acting with integer
weights.  The torus twirl is exact pinching by total weight, never a
numerical Haar integral.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionError
from .linalg import (
    DensityOperator,
    HermitianOperator,
    asmatrix,
    dim_cap,
    frob,
    kron_power,
    support_projection,
)

FINITE = "finite"
TORUS = "torus"


@dataclass(frozen=True)
class GroupAction:
    """A unitary representation given either as an explicit finite list of
    unitaries or as a torus weight vector (the diagonal exponents)."""

    kind: str
    unitaries: tuple[np.ndarray, ...] | None = None
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in (FINITE, TORUS):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.kind == FINITE:
            if not self.unitaries:
                raise ValueError("finite action needs at least one unitary")
        else:
            w = np.asarray(self.weights)
            if w.ndim != 1 or w.size == 0:
                raise ValueError("torus action needs a nonempty weight vector")
            if not np.all(w == np.round(w)):
                raise ValueError("torus weights must be integers")
            w = w.astype(np.int64)
            w.setflags(write=False)
            object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        if self.kind == FINITE:
            return self.unitaries[0].shape[0]
        return int(self.weights.size)

    @property
    def order(self) -> int | None:
        return len(self.unitaries) if self.kind == FINITE else None

    @staticmethod
    def finite(mats, unitary_tol: float = 1e-9, closure_tol: float = 1e-8) -> "GroupAction":
        """Validated finite action: identity present, unitary elements, closed
        under multiplication.  A failed closure check is an error, never
        silently completed."""
        us = [asmatrix(u) for u in mats]
        d = us[0].shape[0]
        eye = np.eye(d)
        for u in us:
            if u.shape[0] != d:
                raise DimensionError("all group unitaries must share one dimension")
            if float(np.max(np.abs(u.conj().T @ u - eye))) > unitary_tol:
                raise ValueError(f"group element is not unitary within {unitary_tol:g}")
        if not any(float(np.max(np.abs(u - eye))) <= unitary_tol for u in us):
            raise ValueError("finite group list must contain the identity")
        for a in us:
            for b in us:
                p = a @ b
                if min(float(np.max(np.abs(p - u))) for u in us) > closure_tol:
                    raise ValueError(
                        f"finite group list is not closed under multiplication within {closure_tol:g}"
                    )
        frozen = []
        for u in us:
            u = u.copy()
            u.setflags(write=False)
            frozen.append(u)
        return GroupAction(FINITE, unitaries=tuple(frozen))

    @staticmethod
    def torus(weights) -> "GroupAction":
        return GroupAction(TORUS, weights=np.asarray(weights))

    @staticmethod
    def trivial(dim: int) -> "GroupAction":
        return GroupAction(FINITE, unitaries=(np.eye(dim, dtype=complex),))


def tensor_power(action: GroupAction, n: int) -> GroupAction:
    """The n-fold tensor power of an action, on dimension dim**n."""
    if n < 1:
        raise ValueError("tensor power exponent must be >= 1")
    out_dim = action.dim**n
    cap = dim_cap()
    if out_dim > cap:
        raise DimensionError(f"tensor power dimension {out_dim} exceeds cap {cap}")
    if n == 1:
        return action
    if action.kind == TORUS:
        w = action.weights
        acc = w
        for _ in range(n - 1):
            acc = np.add.outer(acc, w).ravel()
        return GroupAction(TORUS, weights=acc)
    powered = tuple(kron_power(u, n) for u in action.unitaries)
    return GroupAction(FINITE, unitaries=powered)


def _average_conjugations(m: np.ndarray, unitaries) -> np.ndarray:
    acc = np.zeros_like(m)
    for u in unitaries:
        acc += u @ m @ u.conj().T
    return acc / len(unitaries)


def twirl(x, action: GroupAction):
    """Project onto the commutant of the action: group-average for a finite
    list, exact pinching by total weight for the torus.

    Returns the same flavour as the input (DensityOperator, HermitianOperator
    or plain ndarray).
    """
    m = asmatrix(x)
    if m.shape[0] != action.dim:
        raise DimensionError(
            f"operator dimension {m.shape[0]} does not match action dimension {action.dim}"
        )
    if action.kind == TORUS:
        w = action.weights
        out = np.where(w[:, None] == w[None, :], m, 0.0)
    else:
        out = _average_conjugations(m, action.unitaries)
    if isinstance(x, DensityOperator):
        return DensityOperator.from_matrix(out)
    if isinstance(x, HermitianOperator):
        return HermitianOperator(out)
    return out


def twirled_pair(rho0, rho1, action: GroupAction, n: int) -> tuple[DensityOperator, DensityOperator]:
    """Tensor-power both states n times and twirl them under the powered action."""
    powered = tensor_power(action, n)
    out = []
    for rho in (rho0, rho1):
        mat = kron_power(asmatrix(rho), n)
        out.append(DensityOperator.from_matrix(twirl(mat, powered)))
    return out[0], out[1]


def is_support_invariant(rho1, action: GroupAction, tol: float = 1e-8) -> bool:
    """Whether the support projection of rho1 is fixed by the action."""
    p = support_projection(asmatrix(rho1)).mat
    return float(np.max(np.abs(twirl(p, action) - p))) <= tol


@dataclass(frozen=True)
class Block:
    """One isotypic block of the commutant: a copy of M_m tensor I_d."""

    multiplicity: int
    irrep_dim: int
    basis: np.ndarray  # dim x (multiplicity * irrep_dim) isometry

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)


@dataclass(frozen=True)
class BlockStructure:
    blocks: tuple[Block, ...]
    total_dim: int

    def __post_init__(self):
        total = sum(b.multiplicity * b.irrep_dim for b in self.blocks)
        if total != self.total_dim:
            raise ConvergenceError(
                f"block dimensions sum to {total}, expected {self.total_dim}"
            )
        for i, bi in enumerate(self.blocks):
            for j, bj in enumerate(self.blocks):
                gram = bi.basis.conj().T @ bj.basis
                target = np.eye(gram.shape[0], gram.shape[1]) if i == j else 0.0
                if float(np.max(np.abs(gram - target))) > 1e-8:
                    raise ConvergenceError("block bases are not orthonormal isometries")

    def sum_irrep_dims(self) -> int:
        return sum(b.irrep_dim for b in self.blocks)

    def shape(self) -> list[tuple[int, int]]:
        """Sorted multiset of (multiplicity, irrep_dim) pairs."""
        return sorted((b.multiplicity, b.irrep_dim) for b in self.blocks)


def _random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2.0


def _finite_blocks(unitaries, dim: int) -> list[Block]:
    """Numerical isotypic decomposition of the commutant of a finite action.

    A generic twirled Hermitian probe has eigenvalue clusters of size d_i,
    m_i of them per block; a second twirled probe connects clusters that sit
    in the same block.  Run twice and require the (m, d) multiset to agree.
    """

    def attempt(tag: int):
        rng = np.random.default_rng([0x5EED, dim, len(unitaries), tag])
        t1 = _average_conjugations(_random_hermitian(rng, dim), unitaries)
        t2 = _average_conjugations(_random_hermitian(rng, dim), unitaries)
        w, v = np.linalg.eigh((t1 + t1.conj().T) / 2.0)
        scale = max(1.0, float(np.max(np.abs(w))))
        splits = np.nonzero(np.diff(w) > 1e-8 * scale)[0] + 1
        starts = [0, *splits.tolist()]
        stops = [*splits.tolist(), dim]
        bases = [v[:, a:b] for a, b in zip(starts, stops)]
        k = len(bases)

        parent = list(range(k))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        conn_tol = 1e-8 * max(1.0, frob(t2))
        for i in range(k):
            for j in range(i + 1, k):
                if frob(bases[i].conj().T @ t2 @ bases[j]) > conn_tol:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[rj] = ri
        comps: dict[int, list[int]] = {}
        for i in range(k):
            comps.setdefault(find(i), []).append(i)

        blocks = []
        for members in comps.values():
            ranks = {bases[i].shape[1] for i in members}
            if len(ranks) != 1:
                return None  # an accidental eigenvalue collision merged blocks
            d = ranks.pop()
            basis = np.hstack([bases[i] for i in sorted(members)])
            blocks.append((len(members), d, basis, min(members)))
        blocks.sort(key=lambda b: b[3])
        return blocks

    first = attempt(1)
    second = attempt(2)
    if first is None or second is None:
        raise ConvergenceError(
            f"block extraction failed for dimension {dim}: degenerate probe spectrum"
        )
    shape1 = sorted((m, d) for m, d, _, _ in first)
    shape2 = sorted((m, d) for m, d, _, _ in second)
    if shape1 != shape2:
        raise ConvergenceError(
            f"block extraction did not stabilize across probes: {shape1} vs {shape2}"
        )
    if sum(m * d for m, d, _, _ in first) != dim:
        raise ConvergenceError(
            f"block extraction lost dimensions: {shape1} does not fill {dim}"
        )
    return [Block(m, d, basis) for m, d, basis, _ in first]


def block_structure(action: GroupAction, n: int = 1) -> BlockStructure:
    """Block decomposition of the commutant of the n-fold powered action."""
    powered = tensor_power(action, n)
    dim = powered.dim
    if powered.kind == TORUS:
        w = powered.weights
        eye = np.eye(dim, dtype=complex)
        blocks = []
        for value in np.unique(w):
            idx = np.nonzero(w == value)[0]
            blocks.append(Block(int(idx.size), 1, eye[:, idx]))
        return BlockStructure(tuple(blocks), dim)
    return BlockStructure(tuple(_finite_blocks(powered.unitaries, dim)), dim)


def dim_growth(action: GroupAction, n_max: int) -> list[float]:
    """(1/n) log sum_i d_i for n = 1..n_max; decays to zero for compact groups."""
    out = []
    for n in range(1, n_max + 1):
        total = block_structure(action, n).sum_irrep_dims()
        out.append(float(np.log(total)) / n)
    return out


def _weyl_unitaries(d: int) -> list[np.ndarray]:
    """The d**2 discrete Weyl (shift/clock) unitaries on dimension d."""
    if d == 1:
        return [np.eye(1, dtype=complex)]
    shift = np.zeros((d, d), dtype=complex)
    for j in range(d):
        shift[(j + 1) % d, j] = 1.0
    omega = np.exp(2j * np.pi / d)
    clock = np.diag(omega ** np.arange(d))
    ops = []
    for k1 in range(d):
        vk = np.linalg.matrix_power(clock, k1)
        for k2 in range(d):
            phase = np.exp(-1j * np.pi * k1 * k2 / d)
            ops.append(phase * vk @ np.linalg.matrix_power(shift, k2))
    return ops


def weyl_twirl(a, m: int, d: int):
    """Average of A under I_m tensor W_k over all d**2 Weyl unitaries W_k.

    Realizes the conditional expectation from M_m tensor M_d onto
    M_m tensor I_d, i.e. the partial trace over the d factor divided by d,
    re-embedded as ... tensor I_d.
    """
    mat = asmatrix(a)
    if mat.shape[0] != m * d:
        raise DimensionError(
            f"dimension {mat.shape[0]} is not factorable as m*d = {m}*{d}"
        )
    eye_m = np.eye(m, dtype=complex)
    acc = np.zeros_like(mat)
    for w in _weyl_unitaries(d):
        u = np.kron(eye_m, w)
        acc += u @ mat @ u.conj().T
    out = acc / (d * d)
    if isinstance(a, DensityOperator):
        return DensityOperator.from_matrix(out)
    if isinstance(a, HermitianOperator):
        return HermitianOperator(out)
    return out


def pinching_map(x, action: GroupAction, projections):
    """Twirl, then pinch by the given family of mutually orthogonal projections."""
    projs = [asmatrix(p) for p in projections]
    for i, pi in enumerate(projs):
        for pj in projs[i + 1 :]:
            if float(np.max(np.abs(pi @ pj))) > 1e-8:
                raise ValueError("pinching projections are not orthogonal within 1e-8")
    t = asmatrix(twirl(x, action))
    out = np.zeros_like(t)
    for p in projs:
        out += p @ t @ p
    if isinstance(x, DensityOperator):
        return DensityOperator.from_matrix(out)
    if isinstance(x, HermitianOperator):
        return HermitianOperator(out)
    return out
