"""
ergomax Command Handlers
Each handler takes the parsed inputs and the tolerance table and returns a
CommandResult: a validated payload, extra input echo and the identity checks
the command asserts. The dispatcher turns these into a RunReport.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Callable, Mapping

import numpy as np
from pydantic import TypeAdapter, ValidationError

from ergomax.averages import (
    AlphaMethod,
    compute_alpha,
    exact_inf_of_sup,
    exact_inf_time_average,
    horizon_table,
    limsup_tail,
    minimax_inequality_check,
    time_average_series,
)
from ergomax.convex import bilinear_minimax, biconjugate_check, fr_duality_gap
from ergomax.core.errors import DomainViolationError, ParseError
from ergomax.dual import solve_subaction, verify_duality
from ergomax.pressure import (
    PressureKind,
    axiom_check,
    bernoulli_measure,
    entropy_via_vp2,
    gibbs_chain,
    markov_entropy,
    parry_measure,
    random_markov_measure,
    random_potential_pairs,
    registry,
    vp1_check,
)
from ergomax.schemas import (
    AlphaPayload,
    AxiomOutcomeModel,
    AxiomsPayload,
    BiconjugateInstance,
    BiconjugatePayload,
    BilinearInstance,
    BilinearPayload,
    CommandResult,
    EntropyPayload,
    FenchelInstance,
    FrDualityPayload,
    HorizonRowModel,
    HorizonsPayload,
    IdentityCheck,
    MinimaxPayload,
    ThreePointPayload,
    PointPayload,
    PressurePayload,
    SubactionPayload,
    VP1Payload,
)
from ergomax.symbolic.catalog import BUILTIN_SYSTEMS, THREE_POINTS, three_point_system
from ergomax.symbolic.graph import trim_and_recode
from ergomax.symbolic.points import parse_point
from ergomax.symbolic.system import SubshiftSystem, SystemDocument, load_system

logger = logging.getLogger("ergomax.commands")

Handler = Callable[[Mapping[str, Any], Mapping[str, float]], CommandResult]


# ─────────────────────────────────────────────────────────────────────────────
# INPUT HELPERS
# ─────────────────────────────────────────────────────────────────────────────

def resolve_system(ref: str) -> SubshiftSystem:
    """A built-in name (full2, golden, three-point) or a path to a system JSON file."""
    if ref in BUILTIN_SYSTEMS:
        return BUILTIN_SYSTEMS[ref]()
    return load_system(ref)


def _system_echo(system: SubshiftSystem) -> dict:
    return {"system_document": SystemDocument.from_system(system).model_dump()}


def _read_json(path: str, what: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read {what} file {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what.capitalize()} file is not valid JSON: {e}") from None


def _weight_scale(graph) -> float:
    return 1.0 + float(np.abs(graph.weight_array).max())


def _pressure_kind(raw: Any) -> PressureKind:
    try:
        return PressureKind(raw)
    except ValueError:
        known = ", ".join(k.value for k in PressureKind)
        raise ParseError(f"Unknown pressure kind: {raw} (known: {known})") from None


# ─────────────────────────────────────────────────────────────────────────────
# AVERAGES
# ─────────────────────────────────────────────────────────────────────────────

def run_alpha(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    graph = trim_and_recode(system)
    result = compute_alpha(graph, AlphaMethod(inputs.get("method", "karp")))
    witness_mean = result.witness_mean(graph)

    payload = AlphaPayload(
        value=result.value,
        method=result.method.value,
        witness_cycle=list(result.witness_cycle),
        witness_labels=result.witness_labels(graph),
        witness_mean=witness_mean,
        vertices=[graph.label(v) for v in range(graph.size)],
    )
    checks = [
        IdentityCheck.equality("witness_mean == alpha", witness_mean, result.value, tol["cycle"] * _weight_scale(graph))
    ]
    return CommandResult(payload, _system_echo(system), checks)


def run_horizons(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    graph = trim_and_recode(system)
    table = horizon_table(graph, int(inputs.get("horizon", 50)))

    payload = HorizonsPayload(
        rows=[HorizonRowModel(n=r.n, sup_value=r.sup_value) for r in table.rows],
        running_inf=table.running_inf,
        attained_at=table.attained_at,
        error_bound=table.error_bound,
        alpha=table.alpha,
        limsup_tail=limsup_tail(table),
    )
    excess = table.running_inf - table.alpha
    checks = [
        IdentityCheck.at_most("alpha <= running_inf", -excess, 0.0, tol["compare"]),
        IdentityCheck.at_most("running_inf - alpha <= error_bound", excess, table.error_bound, tol["compare"]),
    ]
    return CommandResult(payload, _system_echo(system), checks, csv=table.to_csv())


def _point_payload(profile, series: list[float]) -> PointPayload:
    return PointPayload(
        point=str(profile.point),
        inf_over_n=profile.inf_over_n,
        inf_attained_at=profile.inf_attained_at,
        liminf=profile.liminf,
        limsup=profile.limsup,
        sup_over_n=profile.sup_over_n,
        sup_attained_at=profile.sup_attained_at,
        series=series,
    )


def run_point(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    point = parse_point(inputs["point"], system)
    horizon = int(inputs.get("horizon", 12))
    profile = exact_inf_time_average(point, system)
    series = time_average_series(point, system, horizon) if horizon > 0 else []

    checks = [
        IdentityCheck.at_most("inf_over_n <= liminf", profile.inf_over_n, profile.liminf, tol["compare"]),
        IdentityCheck.at_most("limsup <= sup_over_n", profile.limsup, profile.sup_over_n, tol["compare"]),
    ]
    return CommandResult(_point_payload(profile, series), _system_echo(system), checks)


def _three_point_csv(horizon: int, labels: list[str], series: list[list[float]], sups: list[float]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", *labels, "horizon_sup"])
    for n in range(1, horizon + 1):
        writer.writerow([n, *(repr(s[n - 1]) for s in series), repr(sups[n - 1])])
    return buf.getvalue()


def run_three_point(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    """
    The three-point shift {(10)^inf, (01)^inf, a(10)^inf} with phi = (0, 1, a):
    every minimax member equals 1/2 although the three points disagree.
    """
    a = float(inputs["a"])
    horizon = int(inputs.get("horizon", 12))
    if a in (0.0, 1.0):
        raise DomainViolationError(f"a must differ from 0 and 1, got {a}")
    if horizon < 1:
        raise ParseError(f"Horizon must be >= 1, got {horizon}")

    system = three_point_system(a)
    graph = trim_and_recode(system)
    alpha = compute_alpha(graph)
    table = horizon_table(graph, horizon, alpha.value)

    profiles = [exact_inf_time_average(p, system) for p in THREE_POINTS]
    series = [time_average_series(p, system, horizon) for p in THREE_POINTS]
    left = exact_inf_of_sup(THREE_POINTS, system)
    right = max(p.inf_over_n for p in profiles)

    cmp = tol["compare"]
    ten, zero_one = profiles[0], profiles[1]
    checks = [
        IdentityCheck.equality("alpha = 1/2", alpha.value, 0.5, cmp),
        IdentityCheck.equality("inf_n sup_x S_n/n = 1/2", left.value, 0.5, cmp),
        IdentityCheck.equality("sup_x inf_n S_n/n = 1/2", right, 0.5, cmp),
        IdentityCheck.equality("inf_n at (10)^inf = 1/2", ten.inf_over_n, 0.5, cmp),
        IdentityCheck.equality("sup_n at (10)^inf = 1", ten.sup_over_n, 1.0, cmp),
        IdentityCheck.equality("inf_n at (01)^inf = 0", zero_one.inf_over_n, 0.0, cmp),
    ]

    payload = ThreePointPayload(
        a=a,
        horizon=horizon,
        alpha=alpha.value,
        alpha_witness=alpha.witness_labels(graph),
        points=[_point_payload(p, s) for p, s in zip(profiles, series)],
        horizon_sup=[HorizonRowModel(n=r.n, sup_value=r.sup_value) for r in table.rows],
        inf_n_sup_x=left.value,
        inf_n_sup_x_attained_at=left.attained_at,
        sup_x_inf_n=right,
        sup_sup=max(p.sup_over_n for p in profiles),
        inf_inf=min(p.inf_over_n for p in profiles),
        identities=[c.to_model() for c in checks],
    )
    sheet = _three_point_csv(horizon, [str(p) for p in THREE_POINTS], series, [r.sup_value for r in table.rows])
    return CommandResult(payload, _system_echo(system), checks, csv=sheet)


def run_minimax(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    matrix = _read_json(inputs["matrix"], "matrix")
    result = minimax_inequality_check(matrix)
    payload = MinimaxPayload(
        shape=list(np.shape(matrix)),
        inf_of_row_sups=result.inf_of_row_sups,
        sup_of_col_infs=result.sup_of_col_infs,
        holds=result.holds,
    )
    checks = [
        IdentityCheck.at_most("sup inf <= inf sup", result.sup_of_col_infs, result.inf_of_row_sups, 0.0)
    ]
    return CommandResult(payload, {"matrix_values": matrix}, checks)


# ─────────────────────────────────────────────────────────────────────────────
# DUALITY AND PRESSURE
# ─────────────────────────────────────────────────────────────────────────────

def run_subaction(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    graph = trim_and_recode(system)
    feas = tol["feasibility"]
    solution = solve_subaction(graph)
    report = verify_duality(graph, feas)

    payload = SubactionPayload(
        dual_value=solution.dual_value,
        alpha=report.alpha,
        gap=report.gap,
        violation=report.violation,
        psi={graph.label(v): float(solution.psi[v]) for v in range(graph.size)},
        min_slack=float(solution.slack.min()),
        tight_edges=[[graph.label(u), graph.label(v)] for u, v in solution.tight_edges(graph, feas)],
        tight_cycle=[graph.label(v) for v in report.tight_cycle],
        tight_cycle_mean=report.tight_cycle_mean,
        passed=report.passed(feas),
    )
    checks = [
        IdentityCheck.at_most("|dual - alpha|", report.gap, 0.0, feas),
        IdentityCheck.at_most("sub-action violation", report.violation, 0.0, feas),
        IdentityCheck.equality("tight cycle mean = alpha", report.tight_cycle_mean, report.alpha, tol["compare"]),
    ]
    return CommandResult(payload, _system_echo(system), checks)


def run_pressure(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    kind = _pressure_kind(inputs.get("kind", PressureKind.SPECTRAL.value))
    gamma = registry.create(kind, system, tol=tol["power"])
    value = gamma(gamma.system_potential())

    vp1 = None
    checks: list[IdentityCheck] = []
    if kind is PressureKind.SPECTRAL:
        report = vp1_check(gamma, samples=int(inputs.get("samples", 20)), seed=int(inputs.get("seed", 0)))
        vp1 = VP1Payload(
            lhs=report.lhs,
            rhs=report.rhs,
            gap=report.gap,
            sampled_max_excess=report.sampled_max_excess,
            samples=report.samples,
            passed=report.passed(tol["vp_gap"], tol["axiom"]),
        )
        checks = [
            IdentityCheck.at_most("VP1 gap", report.gap, 0.0, tol["vp_gap"]),
            IdentityCheck.at_most("h(mu) + <phi, mu> <= Gamma(phi)", report.sampled_max_excess, 0.0, tol["axiom"]),
        ]

    payload = PressurePayload(
        kind=kind.value,
        gamma=value,
        axioms=sorted(a.value for a in gamma.axioms),
        vp1=vp1,
    )
    return CommandResult(payload, _system_echo(system), checks)


def _target_measure(inputs: Mapping[str, Any], system: SubshiftSystem, graph):
    measure = inputs.get("measure", "parry")
    if measure == "parry":
        return parry_measure(system)
    if measure == "gibbs":
        return gibbs_chain(system)
    if measure == "bernoulli":
        probs = inputs.get("probs")
        if not probs:
            raise ParseError("--probs is required for the bernoulli measure")
        try:
            values = [float(p) for p in str(probs).split(",")]
        except ValueError:
            raise ParseError(f"--probs must be comma-separated numbers, got {probs!r}") from None
        return bernoulli_measure(graph, values)
    if measure == "random":
        return random_markov_measure(graph, np.random.default_rng(int(inputs.get("seed", 0))))
    raise ParseError(f"Unknown target measure: {measure}")


def run_entropy(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    gamma = registry.create(PressureKind.SPECTRAL, system, tol=tol["power"])
    target = _target_measure(inputs, system, gamma.graph)

    analytic = markov_entropy(target)
    result = entropy_via_vp2(gamma, target, tol=tol["vp2_grad"])
    difference = abs(result.value - analytic)

    payload = EntropyPayload(
        measure=str(inputs.get("measure", "parry")),
        entropy_analytic=analytic,
        entropy_vp2=result.value,
        difference=difference,
        grad_norm=result.grad_norm,
        iterations=result.iterations,
        boundary=result.boundary,
        passed=difference <= tol["entropy"],
    )
    checks = [IdentityCheck.equality("VP2 entropy = h(mu)", result.value, analytic, tol["entropy"])]
    return CommandResult(payload, _system_echo(system), checks)


def run_axioms(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    system = resolve_system(inputs["system"])
    kind = _pressure_kind(inputs.get("kind", PressureKind.SPECTRAL.value))
    samples = int(inputs.get("samples", 20))
    depth = int(inputs.get("depth", 1))
    seed = int(inputs.get("seed", 0))
    if depth not in (1, 2):
        raise ParseError(f"Potential depth must be 1 or 2, got {depth}")

    gamma = registry.create(kind, system, tol=tol["power"])
    pairs = random_potential_pairs(gamma, samples, seed=seed, depth=depth)
    report = axiom_check(gamma, pairs, tol=tol["axiom"], seed=seed)

    payload = AxiomsPayload(
        kind=kind.value,
        samples=samples,
        depth=depth,
        tol=report.tol,
        checked=report.checked(),
        passed=report.passed,
        failures=[
            AxiomOutcomeModel(axiom=o.axiom.value, sample=o.sample, excess=o.excess, detail=o.detail)
            for o in report.failures
        ],
    )
    worst = max(o.excess for o in report.outcomes)
    checks = [IdentityCheck.at_most(f"{kind.value} axioms", worst, 0.0, tol["axiom"])]
    return CommandResult(payload, _system_echo(system), checks)


# ─────────────────────────────────────────────────────────────────────────────
# CONVEX DUALITY
# ─────────────────────────────────────────────────────────────────────────────

_fenchel_adapter = TypeAdapter(FenchelInstance)


def load_fenchel_instance(path: str):
    raw = _read_json(path, "instance")
    try:
        return _fenchel_adapter.validate_python(raw)
    except ValidationError as e:
        raise ParseError(f"Instance does not match the schema: {e}") from None


def _dual_axes(dual_grid):
    if dual_grid is None:
        return None
    if dual_grid and isinstance(dual_grid[0], list):
        return tuple(np.asarray(a, dtype=float) for a in dual_grid)
    return np.asarray(dual_grid, dtype=float)


def run_fenchel(inputs: Mapping[str, Any], tol: Mapping[str, float]) -> CommandResult:
    instance = load_fenchel_instance(inputs["instance"])
    echo = {"instance_document": instance.model_dump()}

    if isinstance(instance, BilinearInstance):
        report = bilinear_minimax(instance.to_game())
        passed = report.passed(tol["bilinear"], tol["minimax"])
        payload = BilinearPayload(
            sup_inf=report.sup_inf,
            inf_sup=report.inf_sup,
            gap=report.gap,
            regime=report.regime,
            mu=report.mu.tolist(),
            xi_weights=report.xi_weights.tolist(),
            passed=passed,
        )
        checks = [IdentityCheck.at_most("sup inf <= inf sup", report.sup_inf, report.inf_sup, tol["minimax"])]
        if report.regime == "exact":
            checks.append(IdentityCheck.at_most("bilinear minimax gap", report.gap, 0.0, tol["bilinear"]))
        return CommandResult(payload, echo, checks)

    if isinstance(instance, BiconjugateInstance):
        f = instance.f.to_function()
        scale = 1.0 + float(np.abs(f.values[f.finite]).max())
        report = biconjugate_check(f, tol["exact"] * scale)
        payload = BiconjugatePayload(
            max_deviation=report.max_deviation,
            below=report.below,
            convex=report.convex,
            equal=report.equal,
            idempotence_gap=report.idempotence_gap,
            exact=report.exact,
            tol=report.tol,
            biconjugate=report.biconjugate.values.tolist(),
        )
        checks = [
            IdentityCheck("f** <= f", float(report.max_deviation), 0.0, report.tol, report.below),
            IdentityCheck.at_most("(f**)** = f**", report.idempotence_gap, 0.0, report.tol),
        ]
        return CommandResult(payload, echo, checks)

    f, g = instance.f.to_function(), instance.g.to_function()
    report = fr_duality_gap(f, g, _dual_axes(instance.dual_grid))
    payload = FrDualityPayload(
        primal=report.primal,
        dual=report.dual,
        gap=report.gap,
        qualified=report.qualified,
        weak_duality=report.weak_duality,
        tol=report.tol,
        primal_argmin=list(report.primal_argmin),
        dual_argmax=list(report.dual_argmax),
        passed=report.passed,
    )
    checks = [IdentityCheck("primal >= dual", report.gap, 0.0, 0.0, report.weak_duality)]
    if report.qualified:
        checks.append(IdentityCheck.at_most("Fenchel-Rockafellar gap", report.gap, 0.0, report.tol))
    return CommandResult(payload, echo, checks)


HANDLERS: dict[str, Handler] = {
    "alpha": run_alpha,
    "three-point": run_three_point,
    "horizons": run_horizons,
    "point": run_point,
    "subaction": run_subaction,
    "pressure": run_pressure,
    "entropy": run_entropy,
    "fenchel": run_fenchel,
    "axioms": run_axioms,
    "minimax": run_minimax,
}
