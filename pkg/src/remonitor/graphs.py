"""Confusion graphs over actions and mediator signals, and exact coloring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .model import MonitoringInstance
from .precision import auxiliary_partition
from .prob_core import Channel, Scalar

MODES = ("majority", "support")


@dataclass(frozen=True)
class EquivClasses:
    mode: str
    representative_sets: Mapping
    classes: tuple

    def class_of(self, action) -> int:
        for k, c in enumerate(self.classes):
            if action in c:
                return k
        raise KeyError(action)


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        known = set(self.vertices)
        clean = set()
        for e in self.edges:
            u, v = tuple(e)
            if u not in known or v not in known:
                raise ValueError(f"edge {u!r}-{v!r} references an unknown vertex")
            if u != v:
                clean.add(frozenset((u, v)))
        object.__setattr__(self, "edges", frozenset(clean))

    def adjacent(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, u) -> list:
        return [v for v in self.vertices if v != u and self.adjacent(u, v)]

    def sorted_edges(self) -> list[tuple]:
        order = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=order.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))

    def max_degree(self) -> int:
        return max((len(self.neighbors(v)) for v in self.vertices), default=0)


@dataclass(frozen=True)
class Coloring:
    colors: Mapping
    n_colors: int

    def classes(self) -> list[list]:
        out = [[] for _ in range(self.n_colors)]
        for v, c in self.colors.items():
            out[c].append(v)
        return out

    def is_proper(self, g: UndirectedGraph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in map(tuple, g.edges))


def _representative(ch: Channel, mode: str) -> dict:
    if mode == "majority":
        return {a: frozenset(s for s, w in zip(ch.output_alphabet, row) if w > 0.5)
                for a, row in zip(ch.input_alphabet, ch.rows)}
    if mode == "support":
        return {a: ch.support(a) for a in ch.input_alphabet}
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def equivalence_classes(ch: Channel, mode: str = "majority") -> EquivClasses:
    """Group inputs whose majority (or support) signal sets coincide."""
    reps = _representative(ch, mode)
    grouped: dict = {}
    for a in ch.input_alphabet:
        grouped.setdefault(reps[a], []).append(a)
    return EquivClasses(mode, reps, tuple(tuple(c) for c in grouped.values()))


def auxiliary_graph(classes: EquivClasses) -> UndirectedGraph:
    vertices = [a for c in classes.classes for a in c]
    order = list(classes.representative_sets) or vertices
    edges = {frozenset(p) for c in classes.classes for p in itertools.combinations(c, 2)}
    return UndirectedGraph(order, frozenset(edges))


def support_graph(ch: Channel) -> UndirectedGraph:
    supports = {a: ch.support(a) for a in ch.input_alphabet}
    edges = {
        frozenset((a, b))
        for a, b in itertools.combinations(ch.input_alphabet, 2)
        if supports[a] & supports[b]
    }
    return UndirectedGraph(ch.input_alphabet, frozenset(edges))


def confusion_pairs(ch: Channel, mode: str) -> set:
    """Ordered action pairs a player cannot tell apart, including ``(a, a)``."""
    if mode == "majority":
        g = auxiliary_graph(equivalence_classes(ch, mode))
    else:
        g = support_graph(ch)
    pairs = {(a, a) for a in ch.input_alphabet}
    for u, v in map(tuple, g.edges):
        pairs.update({(u, v), (v, u)})
    return pairs


def bi_auxiliary_graph(inst: MonitoringInstance, mode: str = "majority") -> UndirectedGraph:
    """Graph on mediator signals: q and q' are joined when relaying them could
    leave some player confused between two actions it already mixes up."""
    reps = _representative(inst.mediator, mode)
    edges = set()
    for player in inst.players:
        for a, b in confusion_pairs(player.monitoring, mode):
            for q in reps[a]:
                for q2 in reps[b]:
                    if q != q2:
                        edges.add(frozenset((q, q2)))
    return UndirectedGraph(inst.signals, frozenset(edges))


def _greedy_clique(adj: list[set]) -> int:
    best = 1 if adj else 0
    for start in range(len(adj)):
        clique = [start]
        for v in sorted(adj[start], key=lambda u: -len(adj[u])):
            if all(v in adj[u] for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def minimal_coloring(g: UndirectedGraph) -> Coloring:
    """Proper coloring with the fewest colors (DSATUR branch and bound).

    Colors are renumbered by first appearance in vertex order, so the result
    only depends on the graph and its vertex order.
    """
    n = len(g.vertices)
    if n == 0:
        return Coloring({}, 0)
    index = {v: i for i, v in enumerate(g.vertices)}
    adj = [set() for _ in range(n)]
    for u, v in map(tuple, g.edges):
        adj[index[u]].add(index[v])
        adj[index[v]].add(index[u])
    lower = _greedy_clique(adj)

    colors = [-1] * n
    best_k = n + 1
    best_colors = list(range(n))

    def pick():
        choice, key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[u] for u in adj[v] if colors[u] >= 0})
            k = (sat, len(adj[v]), -v)
            if key is None or k > key:
                choice, key = v, k
        return choice

    def search(used: int, done: int):
        nonlocal best_k, best_colors
        if best_k == lower:
            return
        if done == n:
            best_k, best_colors = used, colors.copy()
            return
        v = pick()
        forbidden = {colors[u] for u in adj[v]}
        for c in range(min(used + 1, best_k - 1)):
            if c in forbidden:
                continue
            colors[v] = c
            search(max(used, c + 1), done + 1)
            colors[v] = -1
            if best_k == lower:
                return

    search(0, 0)
    renumber: dict = {}
    for c in best_colors:
        renumber.setdefault(c, len(renumber))
    return Coloring({v: renumber[best_colors[i]] for i, v in enumerate(g.vertices)}, best_k)


def to_dot(g: UndirectedGraph, name: str = "G", coloring: Coloring | None = None) -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        attr = f' [label="{v}", color={coloring.colors[v]}]' if coloring else f' [label="{v}"]'
        lines.append(f'  "{v}"{attr};')
    for u, v in g.sorted_edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class XYColoring:
    holds: bool
    x: Scalar
    y: Scalar
    witness: Mapping
    reasons: tuple = ()


def check_xy_coloring(inst: MonitoringInstance, player: int | str) -> XYColoring:
    """(x, y)-coloring condition between one player's monitoring and the mediator's."""
    i = inst.player_index(player)
    g = inst.players[i].monitoring
    g_classes = equivalence_classes(g, "majority")
    m_classes = equivalence_classes(inst.mediator, "majority")
    x, g_partition = auxiliary_partition(g, g_classes.classes)
    y, m_partition = auxiliary_partition(inst.mediator, m_classes.classes)

    reasons = []
    if x >= 1:
        reasons.append(f"private monitoring of {inst.players[i].name} is not x-perfect for any x < 1")
    if y >= 1:
        reasons.append("mediator monitoring is not y-perfect for any y < 1")
    for label, classes in (("private", g_classes), ("mediator", m_classes)):
        empty = [a for a, s in classes.representative_sets.items() if not s]
        if empty:
            reasons.append(f"empty representative set in {label} monitoring for {empty}")
    conflicts = [
        (u, v) for u, v in auxiliary_graph(g_classes).sorted_edges()
        if m_classes.class_of(u) == m_classes.class_of(v)
    ]
    if conflicts:
        reasons.append(f"mediator classes do not color the auxiliary graph: {conflicts}")

    witness = {
        "private_classes": [list(c) for c in g_classes.classes],
        "mediator_classes": [list(c) for c in m_classes.classes],
        "private_partition": {s: list(g_classes.classes[k]) for s, k in g_partition.items()},
        "mediator_partition": {q: list(m_classes.classes[k]) for q, k in m_partition.items()},
        "conflicts": conflicts,
    }
    return XYColoring(not reasons, x, y, witness, tuple(reasons))


def check_painting(inst: MonitoringInstance, strict: bool = False) -> tuple[bool, list]:
    """Whether every edge of each player's support graph joins actions with
    disjoint mediator supports. ``strict`` also demands the converse."""
    m = inst.mediator
    violations = []
    for p in inst.players:
        graph = support_graph(p.monitoring)
        for a, b in itertools.combinations(inst.actions, 2):
            disjoint = not (m.support(a) & m.support(b))
            if graph.adjacent(a, b) and not disjoint:
                violations.append((p.name, a, b))
            elif strict and not graph.adjacent(a, b) and disjoint:
                violations.append((p.name, a, b))
    return not violations, violations
