"""Scenario-driven command-line surface.

Scenario files are JSON: states either as dense matrices of [re, im] pairs
or as named constructors ("diag 0.3", "pure-qubit 0.3",
"bernoulli-conjugated 0.2"), the group as an explicit unitary list or a
torus weight vector.  Every command writes a CSV or JSON table; `verify`
runs the full inequality battery and exits nonzero on any violation.

Exit codes: 0 success, 1 verification failure, 2 parse/validation error,
3 dimension or resource error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import (
    Scenario,
    TORUS_PURE_VS_MIXED,
    TORUS_TWO_PURE,
    Z2_COMMUTING,
    closed_form_curve,
    closed_form_psi,
    convergence_table,
    diag_qubit,
    make_scenario,
    mean_quantities,
    pure_qubit,
    sigma_state,
    solve_flat_chernoff_alpha,
    unrestricted_curve,
    z2_action,
)
from .discrimination import beta_eps, error_pair, np_test, p_min, stein_a_grid, strong_converse_bound
from .divergences import (
    PsiEvaluator,
    chernoff_distance,
    default_s_grid,
    hoeffding_distance,
    psi_curve,
    relative_entropy,
    richardson_derivative,
)
from .errors import DimensionError, ScenarioError, SymtestError
from .groups import GroupAction, is_support_invariant, twirled_pair
from .linalg import DensityOperator
from .verify import run_verify

COMMANDS = (
    "psi", "chernoff", "hoeffding", "stein", "pmin", "beta-eps",
    "convergence", "examples", "verify",
)

EXAMPLE_NAMES = ("two-commuting", "pure-vs-mixed", "two-pure",
                 "subgroup-equality", "balanced-mixing")
EXAMPLE_ALIASES = {
    "example61": "two-commuting",
    "example62": "pure-vs-mixed",
    "example65": "two-pure",
    "remark63": "subgroup-equality",
    "remark64": "balanced-mixing",
}

_CONSTRUCTORS = {
    "diag": diag_qubit,
    "pure-qubit": pure_qubit,
    "bernoulli-conjugated": sigma_state,
}


@dataclass
class RunConfig:
    command: str
    scenario_path: str | None = None
    n_max: int | None = None
    s_grid: np.ndarray | None = None
    r_grid: np.ndarray | None = None
    a_grid: np.ndarray | None = None
    eps: float = 0.1
    name: str | None = None
    out: str | None = None
    fmt: str = "csv"
    extra_scenario_text: str | None = field(default=None, repr=False)


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.17g}"
    return str(x)


def _parse_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, steps = spec.split(":")
        grid = np.linspace(float(lo), float(hi), int(steps))
    except ValueError as exc:
        raise ScenarioError(f"bad grid spec {spec!r}, expected a:b:steps") from exc
    if np.any(np.diff(grid) <= 0):
        raise ScenarioError(f"grid {spec!r} must be ascending")
    return grid


def _parse_state(spec, label: str) -> tuple[DensityOperator, tuple | None]:
    if isinstance(spec, str):
        parts = spec.split()
        if len(parts) != 2:
            raise ScenarioError(f"{label}: constructor spec must be 'name value', got {spec!r}")
        name, raw = parts
        if name not in _CONSTRUCTORS:
            raise ScenarioError(f"{label}: unknown constructor {name!r}")
        try:
            value = float(raw)
        except ValueError as exc:
            raise ScenarioError(f"{label}: bad constructor parameter {raw!r}") from exc
        try:
            return _CONSTRUCTORS[name](value), (name, value)
        except ValueError as exc:
            raise ScenarioError(f"{label}: {exc}") from exc
    try:
        arr = np.asarray(spec, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{label}: matrix entries must be [re, im] pairs") from exc
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
        raise ScenarioError(
            f"{label}: expected a square matrix of [re, im] pairs, got shape {arr.shape}")
    mat = arr[..., 0] + 1j * arr[..., 1]
    try:
        return DensityOperator.from_matrix(mat), None
    except ValueError as exc:
        raise ScenarioError(f"{label} is not a density matrix: {exc}") from exc


def _parse_group(spec, dim: int) -> GroupAction:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ScenarioError("group must be an object with a 'type' key")
    kind = spec["type"]
    if kind == "torus":
        try:
            action = GroupAction.torus(spec["weights"])
        except (KeyError, ValueError) as exc:
            raise ScenarioError(f"bad torus group: {exc}") from exc
    elif kind == "finite":
        try:
            mats = [np.asarray(u, dtype=float) for u in spec["unitaries"]]
            unitaries = [u[..., 0] + 1j * u[..., 1] for u in mats]
            action = GroupAction.finite(unitaries)
        except (KeyError, ValueError, IndexError) as exc:
            raise ScenarioError(f"bad finite group: {exc}") from exc
    else:
        raise ScenarioError(f"unknown group type {kind!r}")
    if action.dim != dim:
        raise ScenarioError(
            f"group dimension {action.dim} does not match state dimension {dim}")
    return action


def _infer_kind(ctor0, ctor1, action: GroupAction) -> str | None:
    if ctor0 is None or ctor1 is None:
        return None
    if action.kind == "torus" and list(action.weights) == [0, 1]:
        if ctor0 == ("pure-qubit", 0.5) and ctor1[0] == "diag":
            return TORUS_PURE_VS_MIXED
        if ctor0[0] == "pure-qubit" and ctor1[0] == "pure-qubit":
            return TORUS_TWO_PURE
    if action.kind == "finite" and len(action.unitaries) == 2:
        if ctor0[0] == "bernoulli-conjugated" and ctor1[0] == "bernoulli-conjugated":
            return Z2_COMMUTING
    return None


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document; raises ScenarioError with a
    line/column diagnostic on malformed JSON."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    for key in ("name", "rho0", "rho1", "group", "n_max"):
        if key not in doc:
            raise ScenarioError(f"scenario is missing the {key!r} key")
    rho0, ctor0 = _parse_state(doc["rho0"], "rho0")
    rho1, ctor1 = _parse_state(doc["rho1"], "rho1")
    if rho0.dim != rho1.dim:
        raise ScenarioError("rho0 and rho1 have different dimensions")
    action = _parse_group(doc["group"], rho0.dim)
    n_max = doc["n_max"]
    if not isinstance(n_max, int) or n_max < 1:
        raise ScenarioError(f"n_max must be a positive integer, got {n_max!r}")
    params = dict(doc.get("params", {}))
    for ctor, names in ((ctor0, ("lam", "alpha")), (ctor1, ("mu", "alpha"))):
        if ctor is not None:
            name = "alpha" if ctor[0] == "diag" else names[0]
            params.setdefault(name, ctor[1])
    kind = doc.get("kind") or _infer_kind(ctor0, ctor1, action)
    return Scenario(name=str(doc["name"]), rho0=rho0, rho1=rho1, action=action,
                    n_max=n_max, params=params, kind=kind)


def _mat_to_pairs(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def serialize_scenario(sc: Scenario) -> str:
    doc = {
        "name": sc.name,
        "rho0": _mat_to_pairs(sc.rho0.mat),
        "rho1": _mat_to_pairs(sc.rho1.mat),
        "n_max": sc.n_max,
        "params": sc.params,
    }
    if sc.kind is not None:
        doc["kind"] = sc.kind
    if sc.action.kind == "torus":
        doc["group"] = {"type": "torus", "weights": [int(w) for w in sc.action.weights]}
    else:
        doc["group"] = {
            "type": "finite",
            "unitaries": [_mat_to_pairs(u) for u in sc.action.unitaries],
        }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _write_table(columns, rows, config: RunConfig) -> None:
    if config.fmt == "json":
        payload = {"command": config.command,
                   "rows": [dict(zip(columns, row)) for row in rows]}
        text = json.dumps(payload, default=_fmt, indent=1) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    if config.out:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_scenario(config: RunConfig) -> Scenario:
    if config.extra_scenario_text is not None:
        text = config.extra_scenario_text
    elif config.scenario_path:
        with open(config.scenario_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        raise ScenarioError(f"command {config.command!r} requires --scenario")
    sc = parse_scenario(text)
    if config.n_max is not None:
        sc = Scenario(name=sc.name, rho0=sc.rho0, rho1=sc.rho1, action=sc.action,
                      n_max=config.n_max, params=sc.params, kind=sc.kind)
    return sc


def _cmd_psi(sc: Scenario, config: RunConfig) -> int:
    grid = config.s_grid if config.s_grid is not None else default_s_grid()
    rows = []
    for s, v in zip(grid, unrestricted_curve(sc.rho0, sc.rho1, grid).values):
        rows.append((float(s), float(v), 1, "unrestricted"))
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        curve = psi_curve(*pair, grid=grid, n=n, label="twirled")
        rows.extend((float(s), float(v) / n, n, "twirled")
                    for s, v in zip(curve.s_grid, curve.values))
    if sc.kind is not None:
        curve = closed_form_curve(sc.kind, sc.params, grid)
        rows.extend(curve.rows())
    _write_table(("s", "value", "n", "label"), rows, config)
    return 0


def _cmd_chernoff(sc: Scenario, config: RunConfig) -> int:
    rows = []
    unres = chernoff_distance(unrestricted_curve(sc.rho0, sc.rho1))
    rows.append((0, "unrestricted", unres))
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        curve = psi_curve(*pair, n=n)
        rows.append((n, "twirled-per-copy", chernoff_distance(curve) / n))
    report = mean_quantities(sc)
    rows.append((0, "mean" + (" (best-n estimate)" if report.estimated else ""),
                 report.chernoff))
    _write_table(("n", "label", "chernoff"), rows, config)
    return 0


def _cmd_hoeffding(sc: Scenario, config: RunConfig) -> int:
    r_grid = config.r_grid if config.r_grid is not None else np.linspace(0.0, 0.5, 11)
    report = mean_quantities(sc, r_grid=r_grid)
    rows = []
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        curve = psi_curve(*pair, n=n)
        for r in r_grid:
            rows.append((n, float(r), hoeffding_distance(curve, float(n * r)) / n, "twirled-per-copy"))
    for r, h in report.hoeffding.items():
        rows.append((0, float(r), h, "mean" + (" (best-n estimate)" if report.estimated else "")))
    _write_table(("n", "r", "hoeffding", "label"), rows, config)
    return 0


def _cmd_stein(sc: Scenario, config: RunConfig) -> int:
    rows = [(0, "unrestricted", relative_entropy(sc.rho0, sc.rho1))]
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        rows.append((n, "twirled-per-copy", relative_entropy(*pair) / n))
    report = mean_quantities(sc)
    rows.append((0, "mean" + (" (best-n estimate)" if report.estimated else ""),
                 report.relative_entropy))
    _write_table(("n", "label", "relative_entropy"), rows, config)
    return 0


def _cmd_pmin(sc: Scenario, config: RunConfig) -> int:
    a_values = config.a_grid if config.a_grid is not None else np.array([0.0])
    rows = []
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        ev = PsiEvaluator(*pair)
        for a in a_values:
            a = float(a)
            value = p_min(*pair, a=a, n=n)
            errors = error_pair(np_test(*pair, a=a, n=n), *pair)
            weight = math.exp(-n * a)
            lower = weight / (1.0 + weight) * ev.trace_power(0.5) ** 2
            upper = min(math.exp(-n * a * s) * ev.trace_power(s)
                        for s in np.linspace(0.0, 1.0, 101))
            rows.append((n, a, errors.beta0, errors.beta1, lower, upper))
    _write_table(("n", "a_or_eps", "beta0", "beta1", "bound_lo", "bound_hi"), rows, config)
    return 0


def _cmd_beta_eps(sc: Scenario, config: RunConfig) -> int:
    rows = []
    # the converse floor is only valid for an invariant alternative support
    floored = is_support_invariant(sc.rho1, sc.action)
    for n in range(1, sc.n_max + 1):
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, n)
        ev = PsiEvaluator(*pair)
        value = beta_eps(*pair, config.eps)
        if floored:
            curve = _normalized(psi_curve(*pair, n=n), n)
            grid = config.a_grid if config.a_grid is not None else stein_a_grid(curve)
            floor = max(strong_converse_bound(*pair, eps=config.eps, a=float(a), n=n,
                                              evaluator=ev)
                        for a in grid)
        else:
            floor = float("-inf")
        achievable = _best_pure_threshold_beta1(pair, config.eps)
        rows.append((n, config.eps, config.eps, value, floor, achievable))
    _write_table(("n", "a_or_eps", "beta0", "beta1", "bound_lo", "bound_hi"), rows, config)
    return 0


def _normalized(curve, n):
    from .divergences import PsiCurve

    return PsiCurve(curve.s_grid, curve.values / n, n=n, label=curve.label,
                    fn=(lambda s: curve.fn(s) / n) if curve.fn else None)


def _best_pure_threshold_beta1(pair, eps: float) -> float:
    best = 1.0
    rho0n, rho1n = pair
    for a in np.linspace(-2.0, 2.0, 81):
        test = np_test(rho0n, rho1n, float(a), n=1)
        errors = error_pair(test, rho0n, rho1n)
        if errors.beta0 <= eps:
            best = min(best, errors.beta1)
    return best


def _cmd_convergence(sc: Scenario, config: RunConfig) -> int:
    if sc.kind is None:
        raise ScenarioError("convergence needs a scenario with a closed-form kind")
    grid = config.s_grid if config.s_grid is not None else np.linspace(-0.5, 2.0, 26)
    table = convergence_table(sc, s_grid=grid, n_max=sc.n_max)
    rows = [(r.n, r.s, r.value, r.closed_form, r.gap, int(r.monotone)) for r in table.rows]
    _write_table(("n", "s", "value", "closed_form", "gap", "monotone"), rows, config)
    return 0


def _cmd_verify(config: RunConfig) -> int:
    n_max = config.n_max if config.n_max is not None else 6
    reports = run_verify(n_max=n_max)
    failures = 0
    for report in reports:
        print(report.summary())
        failures += len(report.violations)
    total = sum(len(r.entries) for r in reports)
    print(f"verify: {total} checks, {failures} violations")
    return 1 if failures else 0


def _cmd_examples(config: RunConfig) -> int:
    wanted = config.name
    if wanted in EXAMPLE_ALIASES:
        wanted = EXAMPLE_ALIASES[wanted]
    if wanted is not None and wanted not in EXAMPLE_NAMES:
        raise ScenarioError(f"unknown example {config.name!r}; choose from {EXAMPLE_NAMES}")
    names = [wanted] if wanted else list(EXAMPLE_NAMES)
    failures = 0
    for name in names:
        failures += _run_example(name)
    return 1 if failures else 0


def _check_line(label: str, value: float, expected: float, tol: float) -> int:
    ok = abs(value - expected) <= tol
    status = "PASS" if ok else "FAIL"
    print(f"  [{status}] {label}: {value:.12g} (expected {expected:.12g} +- {tol:g})")
    return 0 if ok else 1


def _run_example(name: str) -> int:
    failures = 0
    print(f"example {name}:")
    if name == "two-commuting":
        sc = make_scenario(Z2_COMMUTING, n_max=5, lam=0.2, mu=0.7)
        for n in (1, 3, 5):
            ev = PsiEvaluator(*twirled_pair(sc.rho0, sc.rho1, sc.action, n))
            closed = closed_form_psi(sc.kind, sc.params, 0.5)
            gap = ev.psi(0.5) / n - closed
            print(f"  n={n}: (1/n)psi_n(0.5)={ev.psi(0.5) / n:.9f}  limit={closed:.9f}  gap={gap:.3e}")
            if not 0.0 <= gap <= math.log(2.0) / n + 1e-12:
                failures += 1
                print("  [FAIL] gap left the [0, log2/n] envelope")
    elif name == "pure-vs-mixed":
        sc = make_scenario(TORUS_PURE_VS_MIXED, n_max=6, alpha=0.3)
        curve = closed_form_curve(sc.kind, sc.params)
        failures += _check_line("psi(1/2)", curve.evaluate(0.5), -0.5 * math.log(2.0), 1e-12)
        report = mean_quantities(sc)
        failures += _check_line("mean relative entropy", report.relative_entropy,
                                -(math.log(0.3) + math.log(0.7)) / 2.0, 1e-6)
        pair = twirled_pair(sc.rho0, sc.rho1, sc.action, 6)
        print(f"  n=6: p_min={p_min(*pair):.9g}, beta_0.1={beta_eps(*pair, 0.1):.9g}")
    elif name == "two-pure":
        sc = make_scenario(TORUS_TWO_PURE, n_max=6, lam=0.3, mu=0.6)
        worst = 0.0
        for n in (1, 3, 6):
            ev = PsiEvaluator(*twirled_pair(sc.rho0, sc.rho1, sc.action, n))
            for s in (-0.5, 0.0, 0.5, 1.0, 2.0):
                worst = max(worst, abs(ev.psi(s) / n - closed_form_psi(sc.kind, sc.params, s)))
        failures += _check_line("max |(1/n)psi_n - closed form|", worst, 0.0, 1e-9)
    elif name == "subgroup-equality":
        rho0, rho1 = pure_qubit(0.5), diag_qubit(0.3)
        ev0 = PsiEvaluator(rho0, rho1)
        worst = 0.0
        for n in (2, 4, 6):
            ev = PsiEvaluator(*twirled_pair(rho0, rho1, z2_action(), n))
            for s in (-0.5, 0.0, 0.5, 1.5, 2.0):
                expected = n * ev0.psi(s) + (1.0 - s) * math.log(2.0)
                worst = max(worst, abs(ev.psi(s) - expected))
            print(f"  n={n}: per-copy gap to unrestricted at s=0: "
                  f"{(math.log(2.0)) / n:.6f} (vanishes with n)")
        failures += _check_line("offset identity defect", worst, 0.0, 1e-9)
    elif name == "balanced-mixing":
        alpha = solve_flat_chernoff_alpha()
        print(f"  alpha* = {alpha:.12g} (in [0.10, 0.12])")
        curve = closed_form_curve(TORUS_PURE_VS_MIXED, {"alpha": alpha})
        slope = richardson_derivative(curve.evaluate, 0.5, side="central")
        failures += _check_line("curve slope at s=1/2", slope, 0.0, 1e-8)
        failures += _check_line("restricted Chernoff distance C_M",
                                chernoff_distance(curve), 0.5 * math.log(2.0), 1e-8)
    return failures


def run(config: RunConfig) -> int:
    try:
        if config.command == "verify":
            return _cmd_verify(config)
        if config.command == "examples":
            return _cmd_examples(config)
        sc = _load_scenario(config)
        dispatch = {
            "psi": _cmd_psi,
            "chernoff": _cmd_chernoff,
            "hoeffding": _cmd_hoeffding,
            "stein": _cmd_stein,
            "pmin": _cmd_pmin,
            "beta-eps": _cmd_beta_eps,
            "convergence": _cmd_convergence,
        }
        return dispatch[config.command](sc, config)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SymtestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symtest",
        description="Finite-size numerics for binary state discrimination "
                    "under group-invariant measurements.",
    )
    parser.add_argument("--scenario", help="path to a scenario JSON file")
    parser.add_argument("--command", required=True, choices=COMMANDS)
    parser.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--s-grid", dest="s_grid", help="grid as a:b:steps")
    parser.add_argument("--r-grid", dest="r_grid", help="grid as a:b:steps")
    parser.add_argument("--a-grid", dest="a_grid", help="grid as a:b:steps")
    parser.add_argument("--eps", type=float, default=0.1)
    parser.add_argument("--name", help="which built-in example to run")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            scenario_path=args.scenario,
            n_max=args.n_max,
            s_grid=_parse_grid(args.s_grid) if args.s_grid else None,
            r_grid=_parse_grid(args.r_grid) if args.r_grid else None,
            a_grid=_parse_grid(args.a_grid) if args.a_grid else None,
            eps=args.eps,
            name=args.name,
            out=args.out,
            fmt=args.fmt,
        )
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
