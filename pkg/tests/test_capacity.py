from __future__ import annotations

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from remonitor.capacity import check_rate_condition, common_message_capacity, single_user_capacity
from remonitor.model import binary_symmetric
from remonitor.prob_core import AlphabetMismatch, Channel

from oracles import grid_maxmin_binary, grid_maxmin_ternary, h2, mi_bits


def _floats(ch):
    return [[float(w) for w in row] for row in ch.rows]


def test_bsc_capacity_closed_form():
    cap = single_user_capacity(binary_symmetric("1/10"))
    assert cap.C0 == pytest.approx(1 - h2(0.1), abs=1e-6)
    assert cap.optimal_input["0"] == pytest.approx(0.5, abs=1e-6)
    assert cap.certified_gap <= 1e-7


def test_z_channel_closed_form():
    p = 0.3
    z = Channel(["0", "1"], ["0", "1"], [[1.0, 0.0], [p, 1 - p]])
    closed = math.log2(1 + (1 - p) * p ** (p / (1 - p)))
    assert single_user_capacity(z).C0 == pytest.approx(closed, abs=1e-6)


def test_noiseless_and_useless_channels():
    assert single_user_capacity(Channel.identity(["a", "b", "c", "d"])).C0 == pytest.approx(2.0, abs=1e-9)
    useless = Channel(["a", "b"], ["s"], [[F(1)], [F(1)]])
    assert common_message_capacity([useless, Channel.identity(["a", "b"])]).C0 == pytest.approx(0.0, abs=1e-9)


def test_identical_channels_reduce_to_single_user():
    W = Channel(["0", "1", "2"], ["u", "v"], [[F(7, 10), F(3, 10)], [F(1, 5), F(4, 5)], [F(1, 2), F(1, 2)]])
    single = single_user_capacity(W).C0
    common = common_message_capacity([W, W, W]).C0
    assert common == pytest.approx(single, abs=1e-6)


def test_maxmin_of_two_opposed_z_channels():
    # Each Z channel favours a different input law; the common optimum is
    # symmetric and strictly below either single-user capacity.
    za = Channel(["0", "1"], ["0", "1"], [[1.0, 0.0], [0.4, 0.6]])
    zb = Channel(["0", "1"], ["0", "1"], [[0.6, 0.4], [0.0, 1.0]])
    res = common_message_capacity([za, zb])
    grid = grid_maxmin_binary([_floats(za), _floats(zb)])
    assert res.C0 == pytest.approx(grid, abs=1e-4)
    assert res.optimal_input["0"] == pytest.approx(0.5, abs=1e-3)
    assert res.C0 < single_user_capacity(za).C0
    assert res.per_player_mi[0] == pytest.approx(res.per_player_mi[1], abs=1e-4)


def test_input_alphabets_must_agree():
    with pytest.raises(AlphabetMismatch):
        common_message_capacity([Channel.identity(["0", "1"]), Channel.identity(["1", "0"])])


def test_rate_condition_uses_certified_gap():
    cap = single_user_capacity(binary_symmetric("1/10"))
    assert check_rate_condition(0.5, cap)
    assert not check_rate_condition(0.6, cap)


@st.composite
def binary_input_channels(draw):
    k = draw(st.integers(1, 3))
    n_out = draw(st.integers(2, 3))
    out = []
    for _ in range(k):
        rows = []
        for _ in range(2):
            w = draw(st.lists(st.integers(0, 9), min_size=n_out, max_size=n_out).filter(lambda v: sum(v) > 0))
            rows.append([F(x, sum(w)) for x in w])
        out.append(Channel(["0", "1"], [f"y{j}" for j in range(n_out)], rows))
    return out


@settings(max_examples=100, deadline=None)
@given(binary_input_channels())
def test_common_capacity_matches_grid_search(channels):
    res = common_message_capacity(channels)
    grid = grid_maxmin_binary([_floats(c) for c in channels], step=1e-3)
    assert res.C0 == pytest.approx(grid, abs=1e-4)
    # the reported input law achieves the reported value
    p = [float(res.optimal_input[x]) for x in ("0", "1")]
    assert min(mi_bits(p, _floats(c)) for c in channels) == pytest.approx(res.C0, abs=1e-9)


def test_ternary_input_against_coarse_grid():
    a = Channel(["0", "1", "2"], ["u", "v"], [[0.9, 0.1], [0.5, 0.5], [0.1, 0.9]])
    b = Channel(["0", "1", "2"], ["u", "v", "w"], [[0.8, 0.1, 0.1], [0.1, 0.8, 0.1], [0.4, 0.2, 0.4]])
    res = common_message_capacity([a, b])
    grid = grid_maxmin_ternary([_floats(a), _floats(b)], step=1e-2)
    # a coarse grid only bounds the optimum from below
    assert grid - 1e-9 <= res.C0 <= grid + 5e-3
    assert res.certified_gap <= 1e-6
