"""Precision of a monitoring: the best class-indexed partition of its signals.

All three precision notions reduce to the same search. The channel's inputs
are grouped (singleton actions, equivalence classes, or essential symbols);
every output signal is assigned to one group; the score of an assignment is
the smallest in-group mass ``min_g min_{a in g} Σ_{s -> g} W(s|a)``. The
precision parameter is one minus the best score.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .prob_core import AlphabetMismatch, Channel, Scalar

EXHAUSTIVE_BUDGET = 10**7
NODE_BUDGET = 10**7


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Assignment:
    score: Scalar
    groups: tuple
    certified: bool


@dataclass(frozen=True)
class PrecisionResult:
    epsilon: Scalar
    per_player_epsilon: tuple
    witness_partitions: tuple
    method: str


def _score(rows_by_group, assignment, zero):
    best = None
    for g, rows in enumerate(rows_by_group):
        for row in rows:
            mass = zero
            for s, target in enumerate(assignment):
                if target == g:
                    mass += row[s]
            if best is None or mass < best:
                best = mass
    return best


def _exhaustive(rows_by_group, n_signals, zero):
    best, best_assignment = None, None
    for assignment in itertools.product(range(len(rows_by_group)), repeat=n_signals):
        value = _score(rows_by_group, assignment, zero)
        if best is None or value > best:
            best, best_assignment = value, assignment
    return best, best_assignment


def _greedy(rows_by_group, n_signals, zero):
    assignment = []
    for s in range(n_signals):
        assignment.append(max(
            range(len(rows_by_group)),
            key=lambda g: (min(row[s] for row in rows_by_group[g]), -g),
        ))
    return _score(rows_by_group, assignment, zero), tuple(assignment)


def _branch_and_bound(rows_by_group, n_signals, zero, node_budget):
    """Depth-first search in lexicographic order with a mass upper bound.

    Each row can at best keep everything already assigned to its group plus
    every signal not yet assigned; the minimum of that over rows bounds the
    subtree. Subtrees that cannot beat the incumbent are pruned, and ties are
    pruned once a search leaf is found, so the first optimum in lexicographic
    order is returned.
    """
    flat = [(g, row) for g, rows in enumerate(rows_by_group) for row in rows]
    remaining = [[zero] * (n_signals + 1) for _ in flat]
    for k, (_, row) in enumerate(flat):
        for s in range(n_signals - 1, -1, -1):
            remaining[k][s] = remaining[k][s + 1] + row[s]

    best, best_assignment = _greedy(rows_by_group, n_signals, zero)
    from_search = False
    acc = [zero] * len(flat)
    assignment = [0] * n_signals
    nodes = 0
    truncated = False

    def visit(s):
        nonlocal best, best_assignment, from_search, nodes, truncated
        nodes += 1
        if nodes > node_budget:
            truncated = True
            return
        bound = min(acc[k] + remaining[k][s] for k in range(len(flat)))
        if bound < best or (from_search and bound == best):
            return
        if s == n_signals:
            best, best_assignment, from_search = bound, tuple(assignment), True
            return
        for g in range(len(rows_by_group)):
            assignment[s] = g
            touched = [k for k, (gk, _) in enumerate(flat) if gk == g]
            for k in touched:
                acc[k] += flat[k][1][s]
            visit(s + 1)
            for k in touched:
                acc[k] -= flat[k][1][s]
            if truncated:
                return

    visit(0)
    return best, best_assignment, not truncated


def best_assignment(
    ch: Channel,
    groups: Sequence[Sequence],
    budget: int = EXHAUSTIVE_BUDGET,
    node_budget: int = NODE_BUDGET,
) -> Assignment:
    """Best assignment of ``ch``'s outputs to ``groups`` of its inputs.

    Exhaustive enumeration is used when ``len(groups) ** n_signals`` fits in
    ``budget``; otherwise a branch-and-bound search seeded by a greedy
    assignment runs, and ``certified`` is false only if it hit ``node_budget``.
    """
    index = {a: i for i, a in enumerate(ch.input_alphabet)}
    rows_by_group = [[ch.rows[index[a]] for a in g] for g in groups]
    zero = Fraction(0) if ch.exact else 0.0
    n_groups = len(rows_by_group)
    live = [s for s in range(len(ch.output_alphabet)) if any(row[s] for row in ch.rows)]
    reduced = [[[row[s] for s in live] for row in rows] for rows in rows_by_group]

    certified = True
    if n_groups ** len(live) <= budget:
        score, sub = _exhaustive(reduced, len(live), zero)
    else:
        score, sub, certified = _branch_and_bound(reduced, len(live), zero, node_budget)

    full = [0] * len(ch.output_alphabet)
    for s, g in zip(live, sub):
        full[s] = g
    return Assignment(score, tuple(full), certified)


def _one_minus(value: Scalar) -> Scalar:
    return Fraction(1) - value if isinstance(value, Fraction) else 1.0 - value


def monitoring_precision(channels: Sequence[Channel], budget: int = EXHAUSTIVE_BUDGET, node_budget: int = NODE_BUDGET) -> PrecisionResult:
    """Smallest ε for which each channel is ε-perfect, maximized over channels.

    Each channel is one player's (possibly joint) signal ``A -> Δ(Σ_i)``; an
    action-indexed partition of its signals may leave some classes empty.
    """
    if not channels:
        raise ValueError("need at least one channel")
    actions = channels[0].input_alphabet
    per_player, witnesses = [], []
    method = "exact"
    for ch in channels:
        if ch.input_alphabet != actions:
            raise AlphabetMismatch("all channels must share the action alphabet")
        found = best_assignment(ch, [[a] for a in actions], budget, node_budget)
        if not found.certified:
            method = "greedy"
        per_player.append(_one_minus(found.score))
        witnesses.append({s: actions[g] for s, g in zip(ch.output_alphabet, found.groups)})
    return PrecisionResult(max(per_player), tuple(per_player), tuple(witnesses), method)


def _check_partition(universe: Sequence, classes: Sequence[Sequence]) -> None:
    seen = [a for c in classes for a in c]
    if any(len(c) == 0 for c in classes):
        raise PartitionError("classes must be non-empty")
    if len(seen) != len(set(seen)) or set(seen) != set(universe):
        raise PartitionError(f"classes {classes} do not partition {list(universe)}")


def auxiliary_partition(ch: Channel, classes: Sequence[Sequence], budget: int = EXHAUSTIVE_BUDGET) -> tuple[Scalar, dict]:
    """Precision of the auxiliary monitoring induced by ``classes``, with its
    witness ``{signal: class index}``."""
    _check_partition(ch.input_alphabet, classes)
    found = best_assignment(ch, classes, budget)
    return _one_minus(found.score), dict(zip(ch.output_alphabet, found.groups))


def auxiliary_precision(ch: Channel, classes: Sequence[Sequence], budget: int = EXHAUSTIVE_BUDGET) -> Scalar:
    return auxiliary_partition(ch, classes, budget)[0]


def z_perfect(ch: Channel, budget: int = EXHAUSTIVE_BUDGET) -> tuple[Scalar, dict]:
    """Smallest z for which ``ch : R -> Δ(Y)`` is z-perfect, and the witness ``{y: r}``."""
    found = best_assignment(ch, [[r] for r in ch.input_alphabet], budget)
    witness = {y: ch.input_alphabet[g] for y, g in zip(ch.output_alphabet, found.groups)}
    return _one_minus(found.score), witness


def witness_score(ch: Channel, witness: Mapping, groups: Sequence[Sequence] | None = None) -> Scalar:
    """Smallest in-class mass of an explicit ``{signal: group label}`` partition.

    ``groups`` maps group labels to member inputs; by default every input is
    its own group labeled by itself.
    """
    if groups is None:
        groups = {a: [a] for a in ch.input_alphabet}
    elif not isinstance(groups, Mapping):
        groups = dict(enumerate(groups))
    zero = Fraction(0) if ch.exact else 0.0
    worst = None
    for label, members in groups.items():
        for a in members:
            row = ch.rows[ch.input_alphabet.index(a)]
            mass = sum((w for s, w in zip(ch.output_alphabet, row) if witness.get(s) == label), zero)
            worst = mass if worst is None or mass < worst else worst
    return worst
