"""Assemble the full analysis of an instance into a JSON-ready report."""

from __future__ import annotations

from fractions import Fraction

from .capacity import CapacityResult
from .documents import to_jsonable
from .essential import essential_distribution, essential_rate, essential_recoding, induced_transition, prices, rate_from_conditionals
from .graphs import auxiliary_graph, bi_auxiliary_graph, equivalence_classes, minimal_coloring, support_graph
from .model import MonitoringInstance
from .precision import monitoring_precision
from .prob_core import entropy, product_channel, to_scalar
from .simulate import simulate_one_shot
from .verdicts import ReconstructionReport, broadcast_capacity, check_theorem2, check_theorem3, check_theorem4


def _edges(g) -> list:
    return [list(e) for e in g.sorted_edges()]


def _prices(p) -> dict:
    return {
        "preepm_infty": p.preepm_infty,
        "prpm_infty": p.prpm_infty,
        "preepm_oneshot": p.preepm_oneshot,
        "numerator_rate": p.rate,
        "denominator_source_entropy": p.source_entropy,
        "log2_essential_alphabet": p.log_essential,
        "log2_action_alphabet": p.log_actions,
    }


def _capacity(cap: CapacityResult) -> dict:
    return {
        "C0": cap.C0,
        "optimal_input": dict(cap.optimal_input.items()),
        "per_player_mi": list(cap.per_player_mi),
        "iterations": cap.iterations,
        "certified_gap": cap.certified_gap,
    }


def _verdict(rep: ReconstructionReport) -> dict:
    out = {
        "theorem": rep.theorem,
        "holds": rep.holds,
        "status": rep.status,
        "epsilon": rep.epsilon,
        "epsilon_bound": rep.epsilon_bound,
        "x": rep.x,
        "y": rep.y,
        "H": rep.H,
        "C0": rep.capacity.C0 if rep.capacity else None,
        "recoloring": dict(rep.recoding.coloring),
        "prices": _prices(rep.prices),
        "diagnostics": rep.diagnostics,
    }
    if rep.theorem != 3:
        out["per_player"] = [dict(p) for p in rep.per_player]
    if rep.theorem == 3:
        out["painting_violations"] = [list(v) for v in rep.painting_violations]
        out["scope"] = "rate evaluated under the given strategy; the painting condition does not depend on it"
    if rep.theorem == 4:
        out["z"] = rep.z
        out["per_player_z"] = rep.per_player_z
        out["z_witnesses"] = rep.z_witnesses
    return out


def reference_check(computed: dict, reference: dict) -> dict:
    """Compare computed figures with quoted ones from the instance document."""
    tol = float(reference.get("tolerance", 1e-3))
    rows = []
    for key, value in reference.items():
        if key in ("tolerance", "listed_conditionals") or key not in computed:
            continue
        got = computed[key]
        rows.append({
            "quantity": key,
            "reference": value,
            "computed": got,
            "agrees": got is not None and abs(got - float(value)) <= tol,
        })
    out = {"tolerance": tol, "checks": rows, "discrepancy": any(not r["agrees"] for r in rows)}

    listed = reference.get("listed_conditionals")
    if listed:
        marginal = {s: to_scalar(v) for s, v in listed["side_marginal"].items()}
        table = {s: [to_scalar(v) for v in row] for s, row in listed["conditionals"].items()}
        listed_rate = rate_from_conditionals(marginal, table)
        row_sums = {s: sum(row) for s, row in table.items()}
        out["listed_conditionals"] = {
            "rate": listed_rate,
            "row_sums": row_sums,
            "normalized": all(v == 1 for v in row_sums.values()),
            "reproduces_reference_rate": (
                "essential_rate" in reference and abs(listed_rate - float(reference["essential_rate"])) <= tol
            ),
        }
        if "source_entropy" in computed and computed["source_entropy"]:
            out["listed_conditionals"]["price"] = listed_rate / computed["source_entropy"]
    return out


def analyze(
    inst: MonitoringInstance,
    mode: str = "majority",
    epsilon=None,
    oneshot: bool = False,
    simulate: int | None = None,
    seed: int = 0,
    workers: int = 1,
    reference: dict | None = None,
    keep_outcomes: bool = False,
) -> tuple[dict, bool, object]:
    """Run every applicable analysis.

    Returns ``(report, holds, simulation)``. The headline verdict is the
    one-shot check with ``oneshot``, the ε-perfect check when ``epsilon`` is
    given, and the perfect-monitoring check otherwise.
    """
    report: dict = {"instance": {
        "actions": list(inst.actions),
        "players": [p.name for p in inst.players],
        "mediator_signals": list(inst.signals),
        "has_broadcast": inst.broadcast is not None,
    }, "mode": mode}

    graphs: dict = {"auxiliary": {}, "support": {}, "equivalence_classes": {}}
    for p in inst.players:
        classes = equivalence_classes(p.monitoring, "majority")
        graphs["equivalence_classes"][p.name] = [list(c) for c in classes.classes]
        graphs["auxiliary"][p.name] = _edges(auxiliary_graph(classes))
        graphs["support"][p.name] = _edges(support_graph(p.monitoring))
    graphs["equivalence_classes"]["mediator"] = [list(c) for c in equivalence_classes(inst.mediator, "majority").classes]
    bi = bi_auxiliary_graph(inst, mode)
    coloring = minimal_coloring(bi)
    graphs["bi_auxiliary"] = _edges(bi)
    graphs["chromatic_number"] = coloring.n_colors
    report["graphs"] = graphs

    rec = essential_recoding(inst, mode)
    rate = essential_rate(inst, rec)
    dist = essential_distribution(inst, rec)
    transitions = {}
    for i, p in enumerate(inst.players):
        T = induced_transition(inst, rec, i)
        transitions[p.name] = {r: dict(zip(T.output_alphabet, row)) for r, row in zip(T.input_alphabet, T.rows)}
    joint_channels = [product_channel([p.monitoring, rec.channel]) for p in inst.players]
    joint_precision = monitoring_precision(joint_channels)
    price = prices(inst, rec, rate)
    report["essential"] = {
        "recoloring": dict(rec.coloring),
        "alphabet": list(rec.alphabet),
        "distribution": dict(dist.items()),
        "entropy": entropy(dist),
        "transitions": transitions,
        "per_player_rate": dict(zip([p.name for p in inst.players], rate.per_player)),
        "H": rate.H,
        "joint_monitoring_epsilon": joint_precision.epsilon,
        "joint_monitoring_per_player": list(joint_precision.per_player_epsilon),
        "joint_monitoring_method": joint_precision.method,
    }
    report["prices"] = _prices(price)

    verdicts: dict = {}
    holds = False
    simulation = None
    if inst.broadcast is None:
        report["diagnostics"] = ["no broadcast channel: rate and one-shot conditions not evaluated"]
    else:
        cap = broadcast_capacity(inst)
        report["capacity"] = _capacity(cap)
        t3 = check_theorem3(inst, capacity=cap)
        verdicts["theorem3"] = _verdict(t3)
        headline = t3
        if epsilon is not None:
            t2 = check_theorem2(inst, epsilon, capacity=cap)
            verdicts["theorem2"] = _verdict(t2)
            headline = t2
        if oneshot:
            eps4 = epsilon if epsilon is not None else Fraction(1)
            t4 = check_theorem4(inst, eps4)
            verdicts["theorem4"] = _verdict(t4)
            headline = t4
        holds = headline.holds
        report["headline"] = {"theorem": headline.theorem, "holds": holds, "status": headline.status}
        if simulate:
            simulation = simulate_one_shot(inst, rec if mode == "majority" else essential_recoding(inst, "majority"),
                                           trials=simulate, seed=seed, workers=workers, keep_outcomes=keep_outcomes)
            report["simulation"] = {
                "trials": simulation.trials,
                "seed": simulation.seed,
                "per_player_error": list(simulation.per_player_error),
                "bound": simulation.bound,
                "half_width_99": list(simulation.half_width) if simulation.half_width else None,
                "tolerance": simulation.tolerance,
                "within_bound": simulation.within_bound,
            }
    report["verdicts"] = verdicts

    if reference:
        computed = {
            "essential_rate": rate.H,
            "preepm_infty": price.preepm_infty,
            "prpm_infty": check_theorem3_price(verdicts, price),
            "source_entropy": price.source_entropy,
            "essential_entropy": entropy(dist),
        }
        report["reference_check"] = reference_check(computed, reference)
    return to_jsonable(report), holds, simulation


def check_theorem3_price(verdicts: dict, fallback) -> float | None:
    t3 = verdicts.get("theorem3")
    if t3 is not None:
        return t3["prices"]["prpm_infty"]
    return fallback.prpm_infty
