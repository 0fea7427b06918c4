import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from symtest.asymptotics import (
    ConvergenceTable,
    Scenario,
    binomial_power_sum,
    binomial_power_sum_limit,
    closed_form_curve,
    closed_form_psi,
    convergence_table,
    diag_qubit,
    half_binomial_sum,
    half_binomial_sum_limit,
    make_scenario,
    mean_quantities,
    pure_qubit,
    sigma_state,
    solve_branch_crossover,
    solve_flat_chernoff_alpha,
    stein_gap_check,
    torus_action,
    unrestricted_curve,
    z2_action,
)
from symtest.divergences import (
    PsiEvaluator,
    chernoff_distance,
    fidelity,
    richardson_derivative,
)
from symtest.groups import twirled_pair
from symtest.linalg import DensityOperator
from symtest.oracle import random_density

LOG2 = math.log(2.0)


class TestClosedForms:
    def test_pure_vs_maximally_mixed_line(self):
        for s in (0.0, 0.2, 0.5, 1.0, 1.7):
            assert closed_form_psi("TorusPureVsMixed", {"alpha": 0.5}, s) == pytest.approx(
                -(1 - s) * LOG2, abs=1e-12
            )

    def test_half_point_universal(self):
        for alpha in (0.11, 0.3, 0.5, 0.8):
            assert closed_form_psi("TorusPureVsMixed", {"alpha": alpha}, 0.5) == pytest.approx(
                -LOG2 / 2, abs=1e-12
            )

    def test_pure_vs_mixed_continuous_at_zero(self):
        params = {"alpha": 0.3}
        left = closed_form_psi("TorusPureVsMixed", params, 0.0)
        right = closed_form_psi("TorusPureVsMixed", params, 1e-9)
        assert right == pytest.approx(left, abs=1e-7)

    def test_commuting_opposite_sides_uses_flipped_pairing(self):
        # when the two mixtures straddle the balanced point, the relevant
        # unrestricted pairing is against the conjugated alternative
        lam, mu = 0.2, 0.7
        for s in (0.0, 0.3, 0.6, 1.0):
            expected = math.log(
                lam**s * (1 - mu) ** (1 - s) + (1 - lam) ** s * mu ** (1 - s)
            )
            assert closed_form_psi("Z2Commuting", {"lam": lam, "mu": mu}, s) == pytest.approx(
                expected, abs=1e-12
            )

    def test_commuting_same_side_keeps_pairing(self):
        lam, mu = 0.2, 0.4
        for s in (0.0, 0.5, 1.0):
            expected = math.log(lam**s * mu ** (1 - s) + (1 - lam) ** s * (1 - mu) ** (1 - s))
            assert closed_form_psi("Z2Commuting", {"lam": lam, "mu": mu}, s) == pytest.approx(
                expected, abs=1e-12
            )

    def test_commuting_relabel_symmetry(self):
        params = {"lam": 0.2, "mu": 0.7}
        flipped = {"lam": 0.8, "mu": 0.3}
        for s in (-0.5, 0.0, 0.5, 1.3):
            assert closed_form_psi("Z2Commuting", params, s) == pytest.approx(
                closed_form_psi("Z2Commuting", flipped, s), abs=1e-12
            )

    def test_two_pure_formula(self):
        lam, mu = 0.3, 0.6
        for s in (-0.5, 0.0, 0.5, 1.5, 2.0):
            expected = math.log(lam**s * mu ** (1 - s) + (1 - lam) ** s * (1 - mu) ** (1 - s))
            assert closed_form_psi("TorusTwoPure", {"lam": lam, "mu": mu}, s) == pytest.approx(
                expected, abs=1e-12
            )

    def test_interior_params_required(self):
        with pytest.raises(ValueError, match="inside"):
            closed_form_psi("TorusTwoPure", {"lam": 0.0, "mu": 0.5}, 0.5)
        with pytest.raises(ValueError, match="inside"):
            closed_form_psi("TorusPureVsMixed", {"alpha": 1.0}, 0.5)


class TestBranchCrossover:
    def test_balanced_alternative_crosses_at_zero(self):
        assert solve_branch_crossover(0.2, 0.5) == pytest.approx(0.0, abs=1e-10)

    def test_closed_form_agreement(self):
        got = solve_branch_crossover(0.2, 0.4)
        expected = math.log(2 / 3) / math.log(8 / 3)
        assert got == pytest.approx(expected, abs=1e-12)
        # the defining balance equation holds at the root
        assert ((0.8 * 0.4) / (0.2 * 0.6)) ** got == pytest.approx(0.4 / 0.6, abs=1e-12)

    def test_curve_differentiable_at_crossover(self):
        lam, mu = 0.2, 0.4
        s_star = solve_branch_crossover(lam, mu)
        fn = lambda s: closed_form_psi("Z2Commuting", {"lam": lam, "mu": mu}, s)
        left = richardson_derivative(fn, s_star, side="left")
        right = richardson_derivative(fn, s_star, side="right")
        assert left == pytest.approx(right, abs=1e-6)

    def test_parameter_ordering_enforced(self):
        with pytest.raises(ValueError):
            solve_branch_crossover(0.4, 0.2)
        with pytest.raises(ValueError):
            solve_branch_crossover(0.3, 0.3)


class TestFlatChernoffAlpha:
    def test_value_window(self):
        alpha = solve_flat_chernoff_alpha()
        assert 0.10 <= alpha <= 0.12
        assert alpha == pytest.approx(0.11, abs=0.01)

    def test_slope_vanishes_at_half(self):
        alpha = solve_flat_chernoff_alpha()
        curve = closed_form_curve("TorusPureVsMixed", {"alpha": alpha})
        slope = richardson_derivative(curve.evaluate, 0.5, side="central")
        assert abs(slope) <= 1e-8

    def test_chernoff_is_half_log_two(self):
        alpha = solve_flat_chernoff_alpha()
        curve = closed_form_curve("TorusPureVsMixed", {"alpha": alpha})
        assert chernoff_distance(curve) == pytest.approx(LOG2 / 2, abs=1e-8)


class TestConvergence:
    def test_two_pure_gap_zero(self):
        sc = make_scenario("TorusTwoPure", n_max=4, lam=0.3, mu=0.6)
        table = convergence_table(sc, s_grid=np.linspace(-0.5, 2.0, 11))
        for row in table.rows:
            assert abs(row.gap) < 1e-9

    def test_commuting_gap_within_log2_over_n(self):
        sc = make_scenario("Z2Commuting", n_max=5, lam=0.2, mu=0.7)
        table = convergence_table(sc, s_grid=np.linspace(0.0, 1.0, 5))
        for row in table.rows:
            assert -1e-12 <= row.gap <= LOG2 / row.n + 1e-12

    def test_pure_vs_mixed_multiplicity_envelope(self):
        sc = make_scenario("TorusPureVsMixed", n_max=8, alpha=0.3)
        table = convergence_table(sc, s_grid=np.array([0.5]))
        for row in table.rows:
            assert 0.0 <= row.gap <= math.log(row.n + 1) / row.n + 1e-12
        last = [r for r in table.rows if r.n == 8][0]
        assert last.gap <= math.log(9.0) / 8.0

    def test_gap_invariant_enforced(self):
        from symtest.asymptotics import ConvergenceRow

        with pytest.raises(ValueError, match="below"):
            ConvergenceTable((ConvergenceRow(1, 0.5, -1.0, 0.0, -1.0, True),))

    def test_csv_shape(self):
        sc = make_scenario("TorusTwoPure", n_max=2, lam=0.3, mu=0.6)
        table = convergence_table(sc, s_grid=np.array([0.0, 0.5, 1.0]))
        text = table.to_csv()
        lines = text.strip().splitlines()
        assert lines[0] == "n,s,value,closed_form,gap,monotone"
        assert len(lines) == 1 + 2 * 3


class TestLimitFormulas:
    def test_power_sum_linear_case(self):
        # the power-one case collapses to the plain binomial theorem
        assert binomial_power_sum_limit(0.4, 0.6, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert binomial_power_sum(0.4, 0.6, 1.0, 50) == pytest.approx(1.0, abs=1e-10)

    def test_power_sum_nonpositive_power_max(self):
        assert binomial_power_sum_limit(0.3, 0.3, -1.0) == pytest.approx(0.3)
        assert binomial_power_sum_limit(0.2, 0.7, 0.0) == pytest.approx(0.7)

    def test_power_sum_convergence(self):
        a, b, s = 0.3, 0.7, 0.5
        limit = binomial_power_sum_limit(a, b, s)
        assert limit == pytest.approx(math.sqrt(a**2 + b**2), abs=1e-12)
        assert abs(binomial_power_sum(a, b, s, 200) - limit) < 0.02
        assert abs(binomial_power_sum(a, b, s, 400) - limit) < 0.02

    def test_half_sum_branches(self):
        assert half_binomial_sum_limit(0.3, 0.3) == pytest.approx(0.6)
        assert half_binomial_sum_limit(0.2, 0.8) == pytest.approx(1.0)
        assert half_binomial_sum_limit(0.8, 0.2) == pytest.approx(0.8)

    def test_half_sum_convergence(self):
        limit = half_binomial_sum_limit(0.8, 0.2)
        assert abs(half_binomial_sum(0.8, 0.2, 400) - limit) < 0.02


class TestStrongConverseWindow:
    def test_normalized_curve_below_limit_with_invariant_support(self):
        # on [1, 2] the per-copy curve climbs toward its limit from below
        # whenever the alternative's support is invariant
        for kind, params in (
            ("TorusPureVsMixed", {"alpha": 0.3}),
            ("Z2Commuting", {"lam": 0.2, "mu": 0.7}),
        ):
            sc = make_scenario(kind, **params)
            for n in (1, 2, 4):
                ev = PsiEvaluator(*twirled_pair(sc.rho0, sc.rho1, sc.action, n))
                for s in (1.0, 1.25, 1.5, 2.0):
                    limit = closed_form_psi(kind, params, s)
                    assert ev.psi(s) / n <= limit + 1e-8

    def test_scalar_oracle_climbs_to_limit(self):
        from symtest.oracle import block_scalar_oracle

        params = {"lam": 0.2, "mu": 0.7}
        limit = closed_form_psi("Z2Commuting", params, 1.7)
        values = [
            math.log(block_scalar_oracle("Z2Commuting", params, n, 1.7)) / n
            for n in (2, 8, 64, 512)
        ]
        for previous, current in zip(values, values[1:]):
            assert current >= previous - 1e-12
        assert values[-1] == pytest.approx(limit, abs=1e-6)


class TestMeanQuantities:
    def test_pure_vs_mixed_entropy_rate(self):
        sc = make_scenario("TorusPureVsMixed", alpha=0.3)
        report = mean_quantities(sc)
        assert report.relative_entropy == pytest.approx(
            -(math.log(0.3) + math.log(0.7)) / 2, abs=1e-6
        )
        assert not report.estimated

    def test_two_pure_entropy_rate_with_infinite_unrestricted(self):
        sc = make_scenario("TorusTwoPure", lam=0.3, mu=0.6)
        report = mean_quantities(sc)
        expected = 0.3 * math.log(0.3 / 0.6) + 0.7 * math.log(0.7 / 0.4)
        assert report.relative_entropy == pytest.approx(expected, abs=1e-6)
        assert report.unrestricted_relative_entropy == math.inf

    def test_commuting_chernoff_is_min_over_pairings(self):
        sc = make_scenario("Z2Commuting", lam=0.2, mu=0.7)
        report = mean_quantities(sc)
        c_same = chernoff_distance(unrestricted_curve(sigma_state(0.2), sigma_state(0.7)))
        c_flip = chernoff_distance(unrestricted_curve(sigma_state(0.2), sigma_state(0.3)))
        assert report.chernoff == pytest.approx(min(c_same, c_flip), abs=1e-8)
        assert report.chernoff < c_same - 1e-6

    def test_generic_scenario_flagged_as_estimate(self, rng):
        sc = Scenario(
            name="generic",
            rho0=DensityOperator.from_matrix(random_density(2, rng=rng)),
            rho1=DensityOperator.from_matrix(random_density(2, rng=rng)),
            action=z2_action(),
            n_max=4,
        )
        report = mean_quantities(sc)
        assert report.estimated
        assert "n=4" in report.note
        assert report.chernoff >= -1e-9

    def test_renyi_map_consistent_with_curve(self):
        sc = make_scenario("TorusPureVsMixed", alpha=0.3)
        report = mean_quantities(sc)
        for alpha, value in report.renyi_alpha.items():
            if alpha == 1.0:
                continue
            expected = closed_form_psi(sc.kind, sc.params, alpha) / (alpha - 1.0)
            assert value == pytest.approx(expected, abs=1e-10)


class TestSteinGap:
    def test_pure_vs_mixed_accounting(self):
        sc = make_scenario("TorusPureVsMixed", alpha=0.3)
        for n in (1, 2, 4):
            report = stein_gap_check(sc, n)
            assert report.ok, report.summary()

    def test_infinite_single_copy_skipped(self):
        sc = make_scenario("TorusTwoPure", lam=0.3, mu=0.6)
        report = stein_gap_check(sc, 2)
        assert report.ok
        assert len(report.entries) == 1  # informational only


class TestFidelityFloor:
    def test_invariant_alternative_floor_and_doubling(self):
        sc = make_scenario("TorusPureVsMixed", alpha=0.3)
        floor = math.log(fidelity(sc.rho0, sc.rho1))
        values = {}
        for n in (1, 2, 4):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            values[n] = math.log(fidelity(*pair)) / n
            assert values[n] >= floor - 1e-9
        assert values[2] <= values[1] + 1e-9
        assert values[4] <= values[2] + 1e-9


class TestScenarioValidation:
    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="dimension"):
            Scenario(
                name="bad",
                rho0=diag_qubit(0.3),
                rho1=diag_qubit(0.4),
                action=torus_action(),
                n_max=2,
                params={},
                kind=None,
            ).__class__(
                name="bad",
                rho0=DensityOperator.from_matrix(np.eye(3) / 3),
                rho1=diag_qubit(0.4),
                action=torus_action(),
                n_max=2,
            )

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError, match="unknown scenario kind"):
            make_scenario("Nope", lam=0.1)

    def test_constructor_matrices(self):
        assert_allclose(sigma_state(0.2).mat,
                        np.array([[0.5, -0.3], [-0.3, 0.5]]), atol=1e-15)
        assert_allclose(pure_qubit(0.3).mat[0, 1], math.sqrt(0.21), atol=1e-15)
        assert np.trace(sigma_state(0.2).mat @ sigma_state(0.2).mat).real < 1.0
        assert_allclose(np.linalg.eigvalsh(sigma_state(0.2).mat), [0.2, 0.8], atol=1e-12)
