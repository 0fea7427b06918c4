"""The full inequality battery behind the `verify` command.

Each function returns a CheckReport; run_verify assembles the complete set
over the built-in scenarios plus seeded random instances.  A clean run is
the machine-checkable statement that every finite-size inequality this
package implements holds at its stated tolerance.
"""

from __future__ import annotations

import math

import numpy as np

from .asymptotics import (
    Scenario,
    TORUS_PURE_VS_MIXED,
    TORUS_TWO_PURE,
    Z2_COMMUTING,
    closed_form_curve,
    closed_form_psi,
    make_scenario,
    mean_quantities,
    sigma_state,
    stein_gap_check,
    unrestricted_curve,
    z2_action,
)
from .discrimination import (
    fidelity_pmin_check,
    p_min,
    pmin_bounds_check,
    stein_a_grid,
    strong_converse_bound,
    beta_eps,
)
from .divergences import (
    PsiEvaluator,
    chernoff_distance,
    fidelity,
    hoeffding_distance,
    lieb_bound_check,
    phi,
    psi,
    renyi,
    renyi_entropy,
)
from .groups import (
    GroupAction,
    block_structure,
    is_support_invariant,
    twirl,
    twirled_pair,
    weyl_twirl,
)
from .linalg import DensityOperator, abs_power_trace, asmatrix, kron_power
from .oracle import DEFAULT_SEED, pmin_random_battery, ptrace_oracle, random_density
from .reports import CheckReport


def builtin_scenarios(n_max: int = 6) -> dict[str, Scenario]:
    return {
        "two-commuting": make_scenario(Z2_COMMUTING, n_max=n_max, lam=0.2, mu=0.7),
        "two-commuting-extremal": make_scenario(Z2_COMMUTING, n_max=n_max, lam=0.0, mu=1.0),
        "pure-vs-mixed": make_scenario(TORUS_PURE_VS_MIXED, n_max=n_max, alpha=0.3),
        "pure-vs-maximally-mixed": make_scenario(TORUS_PURE_VS_MIXED, n_max=n_max, alpha=0.5),
        "two-pure": make_scenario(TORUS_TWO_PURE, n_max=n_max, lam=0.3, mu=0.6),
        "z2-invariant-alt": Scenario(
            name="z2-invariant-alt(lam=0.2,alpha=0.3)",
            rho0=sigma_state(0.2),
            rho1=DensityOperator.from_matrix([[0.3, 0.0], [0.0, 0.7]]),
            action=z2_action(),
            n_max=n_max,
            params={"lam": 0.2, "alpha": 0.3},
        ),
    }


def _random_pairs(count: int, dims=(2, 3), seed: int = DEFAULT_SEED):
    rng = np.random.default_rng(seed)
    pairs = []
    for k in range(count):
        dim = dims[k % len(dims)]
        pairs.append((random_density(dim, rng=rng), random_density(dim, rng=rng)))
    return pairs


def psi_sandwich_reports(scenarios, n_max: int) -> list[CheckReport]:
    sparse_grid = np.linspace(-0.5, 2.0, 26)
    out = []
    for key in ("two-commuting", "two-commuting-extremal", "pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        for n in range(1, n_max + 1):
            rep = lieb_bound_check(sc.rho0, sc.rho1, sc.action, n, s_grid=sparse_grid)
            rep.name = f"{key}: {rep.name}"
            out.append(rep)
    return out


def additivity_report(scenarios, tol: float = 1e-8) -> CheckReport:
    """psi subadditivity on [0,1] and Renyi superadditivity below order 1."""
    report = CheckReport("psi/Renyi additivity across copy counts")
    pairs = [(1, 1), (1, 2), (2, 2)]
    for key in ("two-commuting", "pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        cache = {
            n: twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            for n in (1, 2, 3, 4)
        }
        for n, m in pairs:
            for s in (0.25, 0.5, 0.75):
                lhs = psi(*cache[n + m], s)
                rhs = psi(*cache[n], s) + psi(*cache[m], s)
                report.check_leq(
                    f"{key}: psi_{n + m}({s:g}) <= psi_{n}+psi_{m}", lhs, rhs, tol)
            for alpha in (0.0, 0.3, 0.7):
                lhs = renyi(*cache[n], alpha) + renyi(*cache[m], alpha)
                rhs = renyi(*cache[n + m], alpha)
                report.check_leq(
                    f"{key}: S_{alpha:g}({n})+S_{alpha:g}({m}) <= S_{alpha:g}({n + m})",
                    lhs, rhs, tol)
    return report


def renyi_entropy_subadditivity_report(tol: float = 1e-8) -> CheckReport:
    """Against a maximally mixed alternative the twirled Renyi entropy is
    subadditive for orders below 1."""
    report = CheckReport("Renyi entropy subadditivity vs maximally mixed alternative")
    sc = make_scenario(TORUS_PURE_VS_MIXED, alpha=0.5)
    cache = {n: twirled_pair(sc.rho0, sc.rho1, sc.action, n)[0] for n in (1, 2, 3, 4)}
    for n, m in ((1, 1), (1, 2), (2, 2)):
        for alpha in (0.3, 0.7):
            lhs = renyi_entropy(cache[n + m], alpha)
            rhs = renyi_entropy(cache[n], alpha) + renyi_entropy(cache[m], alpha)
            report.check_leq(f"H_{alpha:g}({n + m}) <= H_{alpha:g}({n})+H_{alpha:g}({m})",
                             lhs, rhs, tol)
    return report


def pmin_bounds_reports(scenarios, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    out = []
    for key in ("two-commuting", "two-commuting-extremal", "pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        for n in (1, 2, 3):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            for a in (-0.2, 0.0, 0.3):
                rep = pmin_bounds_check(*pair, a=a, n=n)
                rep.name = f"{key}: {rep.name}"
                out.append(rep)
    merged = CheckReport("p_min bounds on 50 random qubit pairs")
    for rho0, rho1 in _random_pairs(50, dims=(2,), seed=seed):
        for a in (-0.2, 0.0, 0.3):
            rep = pmin_bounds_check(rho0, rho1, a=a, n=1)
            merged.entries.extend(rep.entries)
    out.append(merged)
    return out


def fidelity_reports(scenarios, n_max: int, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    out = []
    sandwich = CheckReport("fidelity sandwich on twirled pairs")
    power = CheckReport("fidelity never drops below its product-state power")
    for key, sc in scenarios.items():
        f_single = fidelity(sc.rho0, sc.rho1)
        for n in range(1, min(n_max, 4) + 1):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            rep = fidelity_pmin_check(*pair)
            for e in rep.entries:
                e.label = f"{key} n={n}: {e.label}"
            sandwich.entries.extend(rep.entries)
            power.check_leq(f"{key}: F(n={n}) >= F^n",
                            f_single**n, fidelity(*pair), 1e-9, n=n)
    out.append(sandwich)
    out.append(power)

    lemma = CheckReport("power trace dominates squared fidelity (50 random pairs)")
    for k, (rho0, rho1) in enumerate(_random_pairs(50, seed=seed)):
        f2 = fidelity(rho0, rho1) ** 2
        ev = PsiEvaluator(rho0, rho1)
        for s in (0.0, 0.25, 0.5, 0.75, 1.0):
            lemma.check_leq(f"pair {k}: Tr rho^{s:g} sigma^{1 - s:g} >= F^2",
                            f2, ev.trace_power(s), 1e-9, s=s)
    out.append(lemma)
    return out


def fidelity_floor_report(scenarios, tol: float = 1e-9) -> CheckReport:
    """For an invariant alternative the normalized log-fidelity decreases
    along doubling and never crosses its single-copy floor."""
    report = CheckReport("normalized log-fidelity floor (invariant alternative)")
    for key in ("pure-vs-mixed", "pure-vs-maximally-mixed", "z2-invariant-alt"):
        sc = scenarios[key]
        floor = math.log(fidelity(sc.rho0, sc.rho1))
        values = {}
        for n in (1, 2, 4):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            values[n] = math.log(fidelity(*pair)) / n
            report.check_leq(f"{key}: log F(n={n})/n >= log F", floor, values[n], tol, n=n)
        report.check_leq(f"{key}: doubling 1->2", values[2], values[1], tol)
        report.check_leq(f"{key}: doubling 2->4", values[4], values[2], tol)
    return report


def trace_norm_power_report(scenarios, n_max: int, tol: float = 1e-9) -> CheckReport:
    """Finite-n two-sided bound on Tr|rho0n^s rho1n^(1-s)| for invariant
    alternatives: the single-copy power to the n, with a (sum_i d_i)^2
    prefactor on the upper side."""
    report = CheckReport("absolute power-trace bounds (invariant alternative)")
    for key in ("pure-vs-mixed", "pure-vs-maximally-mixed", "z2-invariant-alt"):
        sc = scenarios[key]
        # these bounds need the alternative itself fixed by the action
        twirled = twirl(asmatrix(sc.rho1), sc.action)
        if float(np.max(np.abs(twirled - asmatrix(sc.rho1)))) > 1e-10:
            continue
        for n in range(1, min(n_max, 4) + 1):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            prefactor = block_structure(sc.action, n).sum_irrep_dims() ** 2
            for s in (0.5, 0.6, 0.75, 0.9, 1.0):
                lhs = abs_power_trace(*pair, s)
                rhs = prefactor * abs_power_trace(sc.rho0, sc.rho1, s) ** n
                report.check_leq(f"{key} n={n}: |trace| <= (sum d)^2 single^n at s={s:g}",
                                 lhs, rhs, tol, s=s, n=n)
            for s in (0.0, 0.1, 0.25, 0.4, 0.5):
                lhs = abs_power_trace(sc.rho0, sc.rho1, s) ** n
                rhs = abs_power_trace(*pair, s)
                report.check_leq(f"{key} n={n}: single^n <= |trace| at s={s:g}",
                                 lhs, rhs, tol, s=s, n=n)
    return report


def restricted_pmin_report(scenarios, n_max: int, tol: float = 1e-9) -> CheckReport:
    """Twirling both states can only raise the minimal symmetric error, and
    the half-power trace floors it."""
    report = CheckReport("restricted p_min monotone + half-power floor")
    for key, sc in scenarios.items():
        for n in range(1, min(n_max, 4) + 1):
            pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
            raw0 = kron_power(asmatrix(sc.rho0), n)
            raw1 = kron_power(asmatrix(sc.rho1), n)
            restricted = p_min(*pair)
            unrestricted = p_min(DensityOperator.from_matrix(raw0),
                                 DensityOperator.from_matrix(raw1))
            report.check_leq(f"{key} n={n}: p_min(untwirled) <= p_min(twirled)",
                             unrestricted, restricted, tol, n=n)
            floor = 2.0 * PsiEvaluator(*pair).psi(0.5) - math.log(2.0)
            report.check_leq(f"{key} n={n}: half-power floor on log p_min",
                             floor, math.log(restricted), tol, n=n)
    return report


def chernoff_band_report(tol: float = 1e-8) -> CheckReport:
    """Restricted mean Chernoff distance sits inside [C/2, C] for the
    pure-vs-mixed family (differentiable curve), hence inside [C/4, C]."""
    report = CheckReport("Chernoff band for the pure-vs-mixed family")
    for alpha in (0.11, 0.3, 0.5, 0.8):
        curve = closed_form_curve(TORUS_PURE_VS_MIXED, {"alpha": alpha})
        sc = make_scenario(TORUS_PURE_VS_MIXED, alpha=alpha)
        unres = chernoff_distance(unrestricted_curve(sc.rho0, sc.rho1))
        restricted = chernoff_distance(curve)
        report.check_leq(f"alpha={alpha:g}: C/4 <= C_M", unres / 4.0, restricted, tol)
        report.check_leq(f"alpha={alpha:g}: C/2 <= C_M", unres / 2.0, restricted, tol)
        report.check_leq(f"alpha={alpha:g}: C_M <= C", restricted, unres, tol)
    return report


def np_optimality_report(scenarios, seed: int = DEFAULT_SEED) -> CheckReport:
    """No random test beats the threshold test's weighted error."""
    report = CheckReport("threshold-test optimality vs random batteries")
    for key in ("pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, 2)
        for a in (-0.2, 0.0, 0.3):
            record = pmin_random_battery(*pair, a=a, count=100, seed=seed, n=2)
            battery_min, reference = record.value
            report.check_leq(f"{key} a={a:g}: p_min <= battery best",
                             reference, battery_min, 1e-9, a=a)
            report.check_close(f"{key} a={a:g}: closed form matches pipeline",
                               p_min(*pair, a=a, n=2), reference, 1e-10, a=a)
    return report


def stein_reports(scenarios, n_max: int) -> list[CheckReport]:
    sc = scenarios["pure-vs-mixed"]
    return [stein_gap_check(sc, n) for n in range(1, min(n_max, 5) + 1)]


def lf_identity_report(tol: float = 1e-6) -> CheckReport:
    """The two routes to the constrained-rate transform agree: chasing the
    transform along its own level set equals the direct sup of the Hoeffding
    objective."""
    report = CheckReport("Legendre-Fenchel level-set identity")
    curve = closed_form_curve(TORUS_PURE_VS_MIXED, {"alpha": 0.3})
    for r in (0.05, 0.2):
        lo, hi = -10.0, 10.0
        for _ in range(200):
            mid = (lo + hi) / 2.0
            if phi(curve, mid) - mid > r:
                lo = mid
            else:
                hi = mid
        lhs = phi(curve, lo)
        rhs = hoeffding_distance(curve, r)
        report.check_close(f"r={r:g}: sup phi over level set = Hoeffding sup", lhs, rhs, tol, r=r)
    return report


def weyl_report(tol: float = 1e-9, seed: int = DEFAULT_SEED) -> CheckReport:
    """The Weyl average equals embed(partial trace / d) on random inputs."""
    report = CheckReport("Weyl average realizes the partial trace")
    rng = np.random.default_rng(seed)
    cases = [(m, d) for m in (1, 2, 3) for d in (1, 2, 3)]
    k = 0
    while k < 20:
        m, d = cases[k % len(cases)]
        g = rng.standard_normal((m * d, m * d)) + 1j * rng.standard_normal((m * d, m * d))
        h = (g + g.conj().T) / 2.0
        averaged = weyl_twirl(h, m, d)
        expected = np.kron(ptrace_oracle(h, m, d) / d, np.eye(d))
        dev = float(np.max(np.abs(averaged - expected)))
        report.check_leq(f"instance {k} (m={m}, d={d})", dev, 0.0, tol)
        k += 1
    return report


def beta_eps_converse_report(scenarios, eps: float = 0.1) -> CheckReport:
    """The strong-converse floor never exceeds the exact constrained error."""
    report = CheckReport("beta_eps versus strong-converse floor")
    sc = scenarios["pure-vs-mixed"]
    curve = closed_form_curve(sc.kind, sc.params)
    for n in (4, 6):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        ev = PsiEvaluator(*pair)
        value = beta_eps(*pair, eps)
        for a in stein_a_grid(curve):
            bound = strong_converse_bound(*pair, eps=eps, a=float(a), n=n, evaluator=ev)
            report.check_leq(f"n={n}, a={a:.3f}: floor <= beta_eps", bound, value, 1e-9,
                             n=n, a=float(a))
    return report


def data_processing_report(seed: int = DEFAULT_SEED, tol: float = 1e-8) -> CheckReport:
    """Twirling raises the power trace on [0,1]; with a faithful alternative
    it lowers it on [1,2]."""
    report = CheckReport("data processing under the twirl")
    rng = np.random.default_rng(seed)
    actions = {
        2: GroupAction.finite([np.eye(2), np.diag([1.0, -1.0])]),
        3: GroupAction.torus([0, 1, 2]),
    }
    for k in range(12):
        dim = 2 if k % 2 == 0 else 3
        action = actions[dim]
        rho0 = random_density(dim, rng=rng)
        rho1 = random_density(dim, rng=rng)  # full rank a.s., so faithful
        t0, t1 = twirl(rho0, action), twirl(rho1, action)
        ev_raw = PsiEvaluator(rho0, rho1)
        ev_tw = PsiEvaluator(t0, t1)
        for s in (0.0, 0.3, 0.5, 0.8, 1.0):
            report.check_leq(f"pair {k}: psi_tw >= psi at s={s:g}",
                             ev_raw.psi(s), ev_tw.psi(s), tol, s=s)
        for s in (1.2, 1.5, 1.8, 2.0):
            report.check_leq(f"pair {k}: psi_tw <= psi at s={s:g}",
                             ev_tw.psi(s), ev_raw.psi(s), tol, s=s)
    return report


def conjugation_chain_report(tol: float = 1e-8) -> CheckReport:
    """Replacing the alternative by any of its group conjugates can only
    help the unrestricted problem, and the restricted mean distance matches
    the best conjugate for the commuting family."""
    report = CheckReport("Chernoff chain through group conjugates")
    for lam, mu in ((0.2, 0.7), (0.3, 0.4)):
        sc = make_scenario(Z2_COMMUTING, lam=lam, mu=mu)
        restricted = chernoff_distance(closed_form_curve(sc.kind, sc.params))
        per_conjugate = []
        for u in sc.action.unitaries:
            conj = DensityOperator.from_matrix(u.conj().T @ asmatrix(sc.rho1) @ u)
            per_conjugate.append(chernoff_distance(unrestricted_curve(sc.rho0, conj)))
        best = min(per_conjugate)
        plain = chernoff_distance(unrestricted_curve(sc.rho0, sc.rho1))
        report.check_leq(f"(lam,mu)=({lam:g},{mu:g}): C_M <= best conjugate",
                         restricted, best, tol)
        report.check_leq(f"(lam,mu)=({lam:g},{mu:g}): best conjugate <= C",
                         best, plain, tol)
        report.check_close(f"(lam,mu)=({lam:g},{mu:g}): C_M attains the best conjugate",
                           restricted, best, 1e-8)
        if (0.5 - lam) * (0.5 - mu) < 0:
            report.check_leq(f"(lam,mu)=({lam:g},{mu:g}): strictly restricted",
                             restricted, plain - 1e-6)
    return report


def closed_form_bracket_report(scenarios, n_max: int, tol: float = 1e-8) -> CheckReport:
    """The normalized per-copy curve brackets its closed-form limit: from
    above on [0, 1], from below on [1, 2] when the alternative's support is
    invariant."""
    report = CheckReport("normalized curves bracket their closed forms")
    for key in ("two-commuting", "pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        mirror = is_support_invariant(sc.rho1, sc.action)
        for n in range(1, min(n_max, 5) + 1):
            ev = PsiEvaluator(*twirled_pair(sc.rho0, sc.rho1, sc.action, n))
            for s in (0.0, 0.25, 0.5, 0.75, 1.0):
                limit = closed_form_psi(sc.kind, sc.params, s)
                report.check_leq(f"{key} n={n}: limit <= curve at s={s:g}",
                                 limit, ev.psi(s) / n, tol, n=n, s=s)
            if mirror:
                for s in (1.0, 1.25, 1.5, 2.0):
                    limit = closed_form_psi(sc.kind, sc.params, s)
                    report.check_leq(f"{key} n={n}: curve <= limit at s={s:g}",
                                     ev.psi(s) / n, limit, tol, n=n, s=s)
    return report


def beta_eps_shape_report(scenarios, tol: float = 1e-10) -> CheckReport:
    """The constrained type-II error is nonincreasing and continuous in eps."""
    report = CheckReport("beta_eps monotone and right-continuous in eps")
    for key in ("pure-vs-mixed", "two-pure"):
        sc = scenarios[key]
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, 3)
        eps_grid = np.linspace(0.05, 0.9, 10)
        values = [beta_eps(*pair, float(e)) for e in eps_grid]
        for (e1, v1), (e2, v2) in zip(zip(eps_grid, values), zip(eps_grid[1:], values[1:])):
            report.check_leq(f"{key}: beta({e2:.2f}) <= beta({e1:.2f})", v2, v1, tol)
        for e, v in zip(eps_grid[::3], values[::3]):
            nudged = beta_eps(*pair, float(e) + 1e-9)
            report.check_close(f"{key}: right-continuity at eps={e:.2f}", nudged, v, 1e-6)
    return report


def dim_growth_report(n_max: int = 6) -> CheckReport:
    """The per-copy log of the summed irrep dimensions decays toward zero."""
    from .asymptotics import torus_action
    from .groups import dim_growth

    report = CheckReport("commutant dimension growth decays")
    for name, action, top in (("torus", torus_action(), 9), ("sign-flip", z2_action(), n_max)):
        values = dim_growth(action, top)
        for n, (previous, current) in enumerate(zip(values, values[1:]), start=2):
            report.check_leq(f"{name}: growth rate falls at n={n}", current, previous, 1e-12)
        report.check_leq(f"{name}: rate small by n={top}", values[-1],
                         math.log(top + 1.0) / top, 1e-12)
    return report


def equality_experiment_report(n_max: int = 5) -> CheckReport:
    """Informational: with a two-element subgroup of the torus the normalized
    curve matches the unrestricted one up to an explicit (1-s) log2 / n offset
    that vanishes with n.  Reported, never asserted as a theorem."""
    report = CheckReport("finite-subgroup equality experiment")
    from .asymptotics import diag_qubit, pure_qubit

    rho0 = pure_qubit(0.5)
    rho1 = diag_qubit(0.3)
    action = z2_action()
    ev0 = PsiEvaluator(rho0, rho1)
    for n in range(1, n_max + 1):
        pair = twirled_pair(rho0, rho1, action, n)
        ev = PsiEvaluator(*pair)
        worst = 0.0
        for s in np.linspace(-0.5, 2.0, 26):
            expected = n * ev0.psi(float(s)) + (1.0 - float(s)) * math.log(2.0)
            worst = max(worst, abs(ev.psi(float(s)) - expected))
        report.check_leq(f"n={n}: exact offset identity", worst, 0.0, 1e-9, n=n)
        gap_at_0 = ev.psi(0.0) / n - ev0.psi(0.0)
        report.note(f"n={n}: gap to unrestricted at s=0", value=gap_at_0)
    return report


def mean_quantity_report(scenarios, tol: float = 1e-8) -> CheckReport:
    """Spot values of the mean quantities for the closed-form scenarios."""
    report = CheckReport("mean quantities of the built-in scenarios")
    rep62 = mean_quantities(scenarios["pure-vs-mixed"])
    alpha = scenarios["pure-vs-mixed"].params["alpha"]
    expected = -(math.log(alpha) + math.log(1.0 - alpha)) / 2.0
    report.check_close("pure-vs-mixed: mean relative entropy",
                       rep62.relative_entropy, expected, 1e-6)
    rep65 = mean_quantities(scenarios["two-pure"])
    lam, mu = (scenarios["two-pure"].params[k] for k in ("lam", "mu"))
    expected65 = lam * math.log(lam / mu) + (1.0 - lam) * math.log((1.0 - lam) / (1.0 - mu))
    report.check_close("two-pure: mean relative entropy",
                       rep65.relative_entropy, expected65, 1e-6)
    report.check_close("two-pure: unrestricted relative entropy infinite",
                       rep65.unrestricted_relative_entropy, math.inf, 0.0)
    rep61 = mean_quantities(scenarios["two-commuting"])
    sc61 = scenarios["two-commuting"]
    conj_c = []
    for u in sc61.action.unitaries:
        conj = DensityOperator.from_matrix(u.conj().T @ asmatrix(sc61.rho1) @ u)
        conj_c.append(chernoff_distance(unrestricted_curve(sc61.rho0, conj)))
    report.check_close("two-commuting: C_M is the best conjugate Chernoff",
                       rep61.chernoff, min(conj_c), tol)
    return report


def run_verify(n_max: int = 6, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    scenarios = builtin_scenarios(n_max)
    reports: list[CheckReport] = []
    reports.extend(psi_sandwich_reports(scenarios, n_max))
    reports.append(additivity_report(scenarios))
    reports.append(renyi_entropy_subadditivity_report())
    reports.extend(pmin_bounds_reports(scenarios, seed=seed))
    reports.extend(fidelity_reports(scenarios, n_max, seed=seed))
    reports.append(fidelity_floor_report(scenarios))
    reports.append(trace_norm_power_report(scenarios, n_max))
    reports.append(restricted_pmin_report(scenarios, n_max))
    reports.append(chernoff_band_report())
    reports.append(np_optimality_report(scenarios, seed=seed))
    reports.extend(stein_reports(scenarios, n_max))
    reports.append(lf_identity_report())
    reports.append(weyl_report(seed=seed))
    reports.append(beta_eps_converse_report(scenarios))
    reports.append(data_processing_report(seed=seed))
    reports.append(conjugation_chain_report())
    reports.append(mean_quantity_report(scenarios))
    reports.append(closed_form_bracket_report(scenarios, n_max))
    reports.append(beta_eps_shape_report(scenarios))
    reports.append(dim_growth_report(n_max))
    reports.append(equality_experiment_report())
    return reports


def verify_ok(reports) -> bool:
    return all(r.ok for r in reports)
