"""Randomized property suites; each runs at least 100 small instances."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from remonitor.capacity import single_user_capacity
from remonitor.graphs import UndirectedGraph, bi_auxiliary_graph, minimal_coloring
from remonitor.model import MonitoringInstance, Player, noiseless_broadcast
from remonitor.prob_core import (
    Channel,
    Distribution,
    compose,
    conditional_entropy,
    entropy,
    joint_from_channel,
    mutual_information,
    product_channel,
    push_forward,
)
from remonitor.verdicts import check_theorem2, combined_error

N = 120
PROPS = settings(max_examples=N, deadline=None)


@st.composite
def distributions(draw, n=None):
    n = n or draw(st.integers(1, 5))
    w = draw(st.lists(st.integers(0, 6), min_size=n, max_size=n).filter(lambda v: sum(v) > 0))
    return [F(x, sum(w)) for x in w]


@st.composite
def channels(draw, inputs=None, n_out=None):
    inputs = inputs or [f"a{i}" for i in range(draw(st.integers(1, 4)))]
    n_out = n_out or draw(st.integers(1, 4))
    rows = [draw(distributions(n_out)) for _ in inputs]
    return Channel(inputs, [f"o{j}" for j in range(n_out)], rows)


def _stochastic(ch):
    return all(sum(r) == 1 and all(v >= 0 for v in r) for r in ch.rows)


@PROPS
@given(st.data())
def test_row_stochasticity_closure(data):
    a = data.draw(channels())
    b = data.draw(channels(inputs=list(a.output_alphabet)))
    c = data.draw(channels(inputs=list(a.input_alphabet)))
    assert _stochastic(compose(a, b))
    assert _stochastic(product_channel([a, c]))
    k = data.draw(st.integers(1, len(a.output_alphabet)))
    mapping = {o: f"m{data.draw(st.integers(0, k - 1))}" for o in a.output_alphabet}
    assert _stochastic(push_forward(a, mapping))


@PROPS
@given(st.data())
def test_entropy_bounds(data):
    p = data.draw(distributions())
    h = entropy(p)
    assert -1e-12 <= h <= math.log2(len(p)) + 1e-12
    ch = data.draw(channels(inputs=[f"a{i}" for i in range(len(p))]))
    d = Distribution(ch.input_alphabet, p)
    j = joint_from_channel(d, ch)
    # conditioning never increases entropy; information is non-negative and
    # bounded by both marginal entropies
    assert conditional_entropy(j, "X", "Y") <= h + 1e-12
    mi = mutual_information(d, ch)
    assert -1e-12 <= mi <= min(h, entropy(j.distribution("Y"))) + 1e-12
    cap = single_user_capacity(ch)
    assert mi <= cap.C0 + cap.certified_gap + 1e-12


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 7))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UndirectedGraph(range(n), frozenset(frozenset(p) for p in chosen))


@PROPS
@given(graphs())
def test_coloring_properness(g):
    c = minimal_coloring(g)
    assert c.is_proper(g)
    assert c.n_colors <= g.max_degree() + 1 or not g.vertices
    # merging any two color classes breaks properness, otherwise a smaller
    # coloring would exist
    for i, j in itertools.combinations(range(c.n_colors), 2):
        merged = {v: (i if k == j else k) for v, k in c.colors.items()}
        assert any(merged[u] == merged[v] for u, v in map(tuple, g.edges))


unit = st.fractions(min_value=0, max_value=1, max_denominator=50)


@PROPS
@given(unit, unit, unit)
def test_combined_error_symmetry_and_identity(x, y, z):
    e = combined_error(x, y, z)
    assert e == 1 - (1 - x) * (1 - y) * (1 - z)
    assert e == x + y + z - x * y - x * z - y * z + x * y * z
    for perm in itertools.permutations((x, y, z)):
        assert combined_error(*perm) == e
    assert max(x, y, z) <= e <= min(1, x + y + z)


@st.composite
def instances(draw):
    n_a = draw(st.integers(2, 3))
    actions = [f"a{i}" for i in range(n_a)]
    n_players = draw(st.integers(1, 2))
    players = [Player(f"p{i}", draw(channels(inputs=actions, n_out=2))) for i in range(n_players)]
    mediator = draw(channels(inputs=actions, n_out=draw(st.integers(2, 3))))
    strategy = Distribution(actions, draw(distributions(n_a)))
    return MonitoringInstance(actions, players, mediator, strategy, noiseless_broadcast(("r1", "r2", "r3"), n_players))


_CAPACITY = single_user_capacity(Channel.identity(("r1", "r2", "r3")))


@PROPS
@given(instances(), unit, unit)
def test_epsilon_monotonicity_of_block_coding_check(inst, e1, e2):
    lo, hi = min(e1, e2), max(e1, e2)
    weak = check_theorem2(inst, lo, capacity=_CAPACITY)
    strong = check_theorem2(inst, hi, capacity=_CAPACITY)
    if weak.holds:
        assert strong.holds
    # the precision bound itself does not depend on ε
    assert weak.epsilon_bound == strong.epsilon_bound
    assert minimal_coloring(bi_auxiliary_graph(inst)).is_proper(bi_auxiliary_graph(inst))
