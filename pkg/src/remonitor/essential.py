"""Essential information: recoloring the mediator's signals, the rate needed to
convey them given each player's side information, and the signalling prices."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graphs import bi_auxiliary_graph, minimal_coloring
from .model import EssentialRecoding, MonitoringInstance, induced_joint
from .prob_core import Channel, Distribution, conditional_entropy, entropy, output_distribution


@dataclass(frozen=True)
class EssentialRate:
    per_player: tuple
    H: float
    recoding: EssentialRecoding


@dataclass(frozen=True)
class PriceReport:
    preepm_infty: float | None
    prpm_infty: float | None
    preepm_oneshot: float | None
    rate: float
    source_entropy: float
    log_essential: float
    log_actions: float


def essential_recoding(inst: MonitoringInstance, mode: str = "majority") -> EssentialRecoding:
    """Minimal coloring of the bi-auxiliary graph, as a map ``q -> "r<k>"``."""
    coloring = minimal_coloring(bi_auxiliary_graph(inst, mode))
    labels = [f"r{k + 1}" for k in range(coloring.n_colors)]
    mapping = {q: labels[c] for q, c in coloring.colors.items()}
    return EssentialRecoding.from_coloring(inst.mediator, mapping, labels)


def essential_distribution(inst: MonitoringInstance, rec: EssentialRecoding) -> Distribution:
    return output_distribution(inst.strategy, rec.channel)


def reachable_symbols(inst: MonitoringInstance, rec: EssentialRecoding) -> tuple:
    d = essential_distribution(inst, rec)
    return tuple(r for r, m in d.items() if m > 0)


def induced_transition(inst: MonitoringInstance, rec: EssentialRecoding, player: int | str) -> Channel:
    """Side-information channel ``T_i : R -> Δ(S_i)``.

    Essential symbols that never occur under the strategy have no conditional
    law; they are dropped with a warning.
    """
    joint = induced_joint(inst, rec, player)
    ch = joint.conditional("S", "R")
    dropped = [r for r in rec.alphabet if r not in ch.input_alphabet]
    if dropped:
        warnings.warn(f"essential symbols {dropped} have zero probability and were dropped", stacklevel=2)
    return ch


def essential_rate(inst: MonitoringInstance, rec: EssentialRecoding) -> EssentialRate:
    per_player = tuple(
        conditional_entropy(induced_joint(inst, rec, i), "R", "S") for i in range(len(inst.players))
    )
    return EssentialRate(per_player, max(per_player), rec)


def rate_from_conditionals(side_marginal: Mapping, conditionals: Mapping[object, Sequence]) -> float:
    """Σ_s P(s) H(c(·|s)) for explicitly listed conditionals ``c``.

    No normalization is enforced on the conditionals; this evaluates the
    formula on whatever table is given, which is how externally quoted
    figures can be audited against the exact joint.
    """
    total = 0.0
    for s, ps in side_marginal.items():
        total += float(ps) * entropy(conditionals[s])
    return total


def prices(inst: MonitoringInstance, rec: EssentialRecoding, rate: EssentialRate | None = None) -> PriceReport:
    """Bits of mediator signalling per bit of the action source.

    The infinite-horizon price divides the essential rate by the entropy of
    the strategy; the one-shot price divides ``log|R|`` (reachable symbols
    only) by ``log|A|``.
    """
    rate = rate or essential_rate(inst, rec)
    h_a = entropy(inst.strategy)
    n_r = len(reachable_symbols(inst, rec))
    log_r = math.log2(n_r) if n_r else 0.0
    log_a = math.log2(len(inst.actions))
    infinite = rate.H / h_a if h_a > 0 else None
    return PriceReport(
        preepm_infty=infinite,
        prpm_infty=infinite,
        preepm_oneshot=log_r / log_a if log_a > 0 else None,
        rate=rate.H,
        source_entropy=h_a,
        log_essential=log_r,
        log_actions=log_a,
    )
