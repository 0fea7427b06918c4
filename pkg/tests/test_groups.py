import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from symtest.asymptotics import diag_qubit, pure_qubit, sigma_state, torus_action, z2_action
from symtest.errors import DimensionError
from symtest.groups import (
    GroupAction,
    block_structure,
    dim_growth,
    is_support_invariant,
    pinching_map,
    tensor_power,
    twirl,
    twirled_pair,
    weyl_twirl,
)
from symtest.linalg import DensityOperator, kron_power, spectral_projections
from symtest.oracle import ptrace_oracle, random_density


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


class TestGroupAction:
    def test_finite_requires_identity(self):
        x = np.array([[0.0, 1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="identity"):
            GroupAction.finite([x])

    def test_finite_requires_unitaries(self):
        with pytest.raises(ValueError, match="unitary"):
            GroupAction.finite([np.eye(2), np.diag([1.0, 2.0])])

    def test_finite_requires_closure(self):
        # a quarter rotation without its square is not a group
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        with pytest.raises(ValueError, match="closed"):
            GroupAction.finite([np.eye(2), rot])

    def test_torus_requires_integers(self):
        with pytest.raises(ValueError, match="integer"):
            GroupAction.torus([0.0, 0.5])

    def test_dims(self):
        assert z2_action().dim == 2
        assert torus_action().dim == 2
        assert GroupAction.trivial(3).dim == 3


class TestTensorPower:
    def test_identity_power(self):
        action = z2_action()
        assert tensor_power(action, 1) is action

    def test_z2_square(self):
        powered = tensor_power(z2_action(), 2)
        assert len(powered.unitaries) == 2
        assert_allclose(powered.unitaries[0], np.eye(4))
        assert_allclose(powered.unitaries[1], np.diag([1.0, -1.0, -1.0, 1.0]))

    def test_torus_weight_sums(self):
        powered = tensor_power(torus_action(), 3)
        assert list(powered.weights) == [0, 1, 1, 2, 1, 2, 2, 3]

    def test_cap(self, monkeypatch):
        monkeypatch.setenv("SYMTEST_DIM_CAP", "4")
        with pytest.raises(DimensionError, match="cap"):
            tensor_power(torus_action(), 3)


class TestTwirl:
    def test_fixed_point(self):
        rho = diag_qubit(0.3)
        assert_allclose(twirl(rho, torus_action()).mat, rho.mat, atol=1e-14)

    def test_two_term_average(self, rng):
        # the order-two group average is the half sum of the two conjugations
        n = 3
        action = tensor_power(z2_action(), n)
        mat = kron_power(sigma_state(0.2).mat, n)
        u = action.unitaries[1]
        expected = (mat + u @ mat @ u.conj().T) / 2
        assert_allclose(twirl(mat, action), expected, atol=1e-14)

    def test_torus_pinch_weight_pairs(self):
        # all-ones state on two qubits keeps its diagonal plus the one
        # off-diagonal pair inside the middle weight block
        n = 2
        action = tensor_power(torus_action(), n)
        mat = kron_power(pure_qubit(0.5).mat, n)
        out = twirl(mat, action)
        expected = np.zeros((4, 4), dtype=complex)
        w = [0, 1, 1, 2]
        for i in range(4):
            for j in range(4):
                if w[i] == w[j]:
                    expected[i, j] = 0.25
        assert_allclose(out, expected, atol=1e-14)

    def test_idempotent_unital_trace_preserving(self, rng):
        for action in (z2_action(), torus_action()):
            x = random_hermitian(rng, 2)
            once = twirl(x, action)
            assert_allclose(twirl(once, action), once, atol=1e-9)
            assert np.trace(once) == pytest.approx(np.trace(x).real, abs=1e-12)
            assert_allclose(twirl(np.eye(2), action), np.eye(2), atol=1e-14)

    def test_positivity_and_commutation(self, rng):
        action = tensor_power(z2_action(), 2)
        rho = DensityOperator.from_matrix(random_density(4, rng=rng))
        out = twirl(rho, action)
        assert np.linalg.eigvalsh(out.mat)[0] >= -1e-10
        for u in action.unitaries:
            assert np.linalg.norm(out.mat @ u - u @ out.mat) <= 1e-8

    def test_product_action_factorizes(self, rng):
        # conditional expectation onto the product algebra acts factorwise
        n, m = 1, 2
        an = tensor_power(z2_action(), n)
        am = tensor_power(z2_action(), m)
        pair_action = GroupAction.finite(
            [np.kron(u, v) for u in an.unitaries for v in am.unitaries]
        )
        a = random_hermitian(rng, 2**n)
        b = random_hermitian(rng, 2**m)
        lhs = twirl(np.kron(a, b), pair_action)
        rhs = np.kron(twirl(a, an), twirl(b, am))
        assert_allclose(lhs, rhs, atol=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            twirl(np.eye(3), z2_action())


class TestBlockStructure:
    def test_torus_binomial_multiplicities(self):
        for n in (1, 3, 5):
            bs = block_structure(torus_action(), n)
            expected = sorted((math.comb(n, i), 1) for i in range(n + 1))
            assert bs.shape() == expected
            assert bs.total_dim == 2**n

    def test_z2_two_half_blocks(self):
        for n in (2, 3, 4):
            bs = block_structure(z2_action(), n)
            assert bs.shape() == [(2 ** (n - 1), 1), (2 ** (n - 1), 1)]

    def test_trivial_group_single_block(self):
        bs = block_structure(GroupAction.trivial(2), 3)
        assert bs.shape() == [(8, 1)]

    def test_single_qubit_pauli_blocks(self):
        # the full one-qubit Pauli group (with phases) has scalar commutant
        paulis = [
            np.eye(2),
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]]),
            np.diag([1.0, -1.0]).astype(complex),
        ]
        mats = [phase * p for phase in (1, 1j, -1, -1j) for p in paulis]
        action = GroupAction.finite(mats)
        assert block_structure(action, 1).shape() == [(1, 2)]
        # two copies: the generators commute, so four one-dimensional blocks
        # (the Bell basis)
        assert block_structure(action, 2).shape() == [(1, 1)] * 4
        # three copies: X^3 and Z^3 anticommute, which forces a single block
        # with a two-dimensional irrep of multiplicity four
        assert block_structure(action, 3).shape() == [(4, 2)]

    def test_block_count_sums(self):
        for action, n in ((z2_action(), 4), (torus_action(), 4)):
            bs = block_structure(action, n)
            assert sum(m * d for m, d in bs.shape()) == 2**n


class TestDimGrowth:
    def test_torus_values(self):
        values = dim_growth(torus_action(), 9)
        for n, v in enumerate(values, start=1):
            assert v == pytest.approx(math.log(n + 1) / n, abs=1e-12)
        assert values[8] == pytest.approx(math.log(10) / 9, abs=1e-12)

    def test_trivial_group_zero(self):
        assert dim_growth(GroupAction.trivial(2), 3) == pytest.approx([0.0, 0.0, 0.0])

    def test_z2_decays(self):
        values = dim_growth(z2_action(), 5)
        for n, v in enumerate(values, start=1):
            assert v == pytest.approx(math.log(2) / n, abs=1e-12)


class TestWeylTwirl:
    def test_d_one_identity(self, rng):
        x = random_hermitian(rng, 3)
        assert_allclose(weyl_twirl(x, 3, 1), x, atol=1e-12)

    def test_product_input(self, rng):
        b = random_hermitian(rng, 2)
        c = random_density(3, rng=rng)
        out = weyl_twirl(np.kron(b, c), 2, 3)
        assert_allclose(out, np.kron(b, np.eye(3) / 3), atol=1e-9)

    def test_matches_partial_trace(self, rng):
        x = random_hermitian(rng, 6)
        out = weyl_twirl(x, 2, 3)
        expected = np.kron(ptrace_oracle(x, 2, 3) / 3, np.eye(3))
        assert_allclose(out, expected, atol=1e-9)

    def test_dimension_check(self):
        with pytest.raises(DimensionError, match="factorable"):
            weyl_twirl(np.eye(5), 2, 3)


class TestPinching:
    def test_identity_projection_is_plain_twirl(self, rng):
        action = tensor_power(torus_action(), 2)
        x = random_hermitian(rng, 4)
        assert_allclose(pinching_map(x, action, [np.eye(4)]), twirl(x, action), atol=1e-12)

    def test_invariant_input_unchanged(self):
        action = tensor_power(torus_action(), 2)
        rho1 = kron_power(diag_qubit(0.3).mat, 2)
        projs = [p for _, p in spectral_projections(rho1)]
        assert_allclose(pinching_map(rho1, action, projs), rho1, atol=1e-12)

    def test_pure_vs_mixed_two_copies(self):
        # the alternative's spectral blocks are the weight blocks, so the
        # pinch leaves the twirl untouched (middle off-diagonal pair included)
        action = tensor_power(torus_action(), 2)
        rho0 = kron_power(pure_qubit(0.5).mat, 2)
        rho1 = kron_power(diag_qubit(0.3).mat, 2)
        projs = [p for _, p in spectral_projections(rho1)]
        assert_allclose(pinching_map(rho0, action, projs), twirl(rho0, action), atol=1e-12)

    def test_rejects_nonorthogonal_projections(self):
        action = torus_action()
        p = np.diag([1.0, 0.0])
        with pytest.raises(ValueError, match="orthogonal"):
            pinching_map(np.eye(2), action, [p, np.eye(2)])


def test_support_invariance_flags():
    assert is_support_invariant(diag_qubit(0.3), torus_action())
    assert not is_support_invariant(pure_qubit(0.3), torus_action())
    # faithful alternatives are always invariant in support
    assert is_support_invariant(sigma_state(0.7), z2_action())
    assert not is_support_invariant(sigma_state(1.0), z2_action())


def test_twirled_pair_shapes():
    rho0n, rho1n = twirled_pair(pure_qubit(0.5), diag_qubit(0.3), torus_action(), 3)
    assert rho0n.dim == 8 and rho1n.dim == 8
    assert np.trace(rho0n.mat) == pytest.approx(1.0, abs=1e-12)
