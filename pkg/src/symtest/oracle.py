"""Independent brute-force reference computations.

Everything in this module is deliberately written against plain numpy so the
main pipeline and its oracle share no code path: twirls by literal averaging,
power traces by scalar block sums in log space, and optimality batteries over
random tests.  Slow is fine here.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_SEED = 0x5EED
TORUS_SAMPLES = 4096


@dataclass(frozen=True)
class OracleRecord:
    """A frozen reference value: reproducible given identical inputs."""

    id: str
    inputs: dict
    value: object
    method: str

    def to_json(self) -> str:
        payload = {
            "id": self.id,
            "inputs": self.inputs,
            "method": self.method,
            "value": self.value,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "OracleRecord":
        doc = json.loads(text)
        return OracleRecord(doc["id"], doc["inputs"], doc["value"], doc["method"])


def random_density(dim: int, rank: int | None = None,
                   rng: np.random.Generator | None = None) -> np.ndarray:
    """Ginibre-induced random density matrix of the given rank."""
    if rng is None:
        rng = np.random.default_rng(DEFAULT_SEED)
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def dense_twirl_oracle(x, unitaries=None, weights=None,
                       samples: int = TORUS_SAMPLES) -> np.ndarray:
    """Group average by literal summation.

    Finite lists are averaged exactly; the torus is averaged over `samples`
    equispaced phases, which is exact whenever every weight gap divides the
    sample count (phase sums cancel exactly in that case).
    """
    m = np.asarray(x, dtype=complex)
    if unitaries is not None:
        acc = np.zeros_like(m)
        for u in unitaries:
            u = np.asarray(u, dtype=complex)
            acc += u @ m @ u.conj().T
        return acc / len(unitaries)
    if weights is None:
        raise ValueError("need either a unitary list or torus weights")
    w = np.asarray(weights, dtype=np.int64)
    acc = np.zeros_like(m)
    for k in range(samples):
        phase = np.exp(2j * np.pi * k * w / samples)
        acc += (phase[:, None] * m) * phase.conj()[None, :]
    return acc / samples


def ptrace_oracle(mat, m: int, d: int) -> np.ndarray:
    """Partial trace over the second (d-dimensional) factor by index contraction."""
    a = np.asarray(mat, dtype=complex).reshape(m, d, m, d)
    return np.einsum("ijkj->ik", a)


def _logsumexp(terms) -> float:
    terms = [t for t in terms if t != float("-inf")]
    if not terms:
        return float("-inf")
    top = max(terms)
    return top + math.log(sum(math.exp(t - top) for t in terms))


def _log_binom(n: int, i: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1)


def _xlog(c: float) -> float:
    return math.log(c) if c > 1e-300 else float("-inf")


def block_scalar_oracle(kind: str, params: dict, n: int, s: float) -> float:
    """Tr rho0n^s rho1n^(1-s) from the closed block data; no matrices built.

    Terms whose rho0 or rho1 block weight vanishes are dropped, matching the
    0**s = 0 support convention of the matrix pipeline.
    """
    logs = []
    if kind == "TorusPureVsMixed":
        alpha = params["alpha"]
        for i in range(n + 1):
            l0 = _log_binom(n, i) - n * math.log(2.0)
            l1 = i * _xlog(alpha) + (n - i) * _xlog(1.0 - alpha)
            if l0 == float("-inf") or l1 == float("-inf"):
                continue
            logs.append(s * l0 + (1.0 - s) * l1)
    elif kind == "TorusTwoPure":
        lam, mu = params["lam"], params["mu"]
        t1 = s * _xlog(lam) + (1.0 - s) * _xlog(mu)
        t2 = s * _xlog(1.0 - lam) + (1.0 - s) * _xlog(1.0 - mu)
        return math.exp(n * _logsumexp([t1, t2]))
    elif kind == "Z2Commuting":
        lam, mu = params["lam"], params["mu"]

        def log_avg(p: float, i: int) -> float:
            t1 = i * _xlog(p) + (n - i) * _xlog(1.0 - p)
            t2 = (n - i) * _xlog(p) + i * _xlog(1.0 - p)
            return _logsumexp([t1, t2]) - math.log(2.0)

        for i in range(n + 1):
            l0, l1 = log_avg(lam, i), log_avg(mu, i)
            if l0 == float("-inf") or l1 == float("-inf"):
                continue
            logs.append(_log_binom(n, i) + s * l0 + (1.0 - s) * l1)
    else:
        raise ValueError(f"no scalar block data for scenario kind {kind!r}")
    total = _logsumexp(logs)
    return 0.0 if total == float("-inf") else math.exp(total)


def _pmin_reference(m0: np.ndarray, m1: np.ndarray, a: float, n: int) -> float:
    weight = math.exp(-n * a)
    w = np.linalg.eigvalsh(weight * m0 - m1)
    return (1.0 + weight) / 2.0 - float(np.sum(np.abs(w))) / 2.0


def pmin_random_battery(rho0n, rho1n, a: float, count: int, seed: int = DEFAULT_SEED,
                        n: int = 1) -> OracleRecord:
    """Weighted error of `count` random tests versus the closed-form optimum.

    Random tests are Hermitian matrices with spectrum clipped into [0, 1].
    The record value holds (battery minimum, reference p_min).
    """
    m0 = np.asarray(getattr(rho0n, "mat", rho0n), dtype=complex)
    m1 = np.asarray(getattr(rho1n, "mat", rho1n), dtype=complex)
    rng = np.random.default_rng(seed)
    weight = math.exp(-n * a)
    best = math.inf
    for _ in range(count):
        g = rng.standard_normal(m0.shape) + 1j * rng.standard_normal(m0.shape)
        h = (g + g.conj().T) / 2.0
        w, v = np.linalg.eigh(h)
        t = (v * np.clip(w, 0.0, 1.0)) @ v.conj().T
        combined = weight * (1.0 - np.trace(m0 @ t).real) + np.trace(m1 @ t).real
        best = min(best, float(combined))
    reference = _pmin_reference(m0, m1, a, n)
    return OracleRecord(
        id=f"pmin-battery-a{a:g}-n{n}-count{count}",
        inputs={"a": a, "n": n, "count": count, "seed": seed, "dim": int(m0.shape[0])},
        value=[best if count else None, reference],
        method="random clipped-Hermitian tests vs closed-form minimal error",
    )
