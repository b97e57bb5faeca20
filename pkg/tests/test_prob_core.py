from __future__ import annotations

import math
from fractions import Fraction as F

import pytest

from remonitor.prob_core import (
    AlphabetMismatch,
    Channel,
    Distribution,
    ProbabilityError,
    compose,
    conditional_entropy,
    entropy,
    format_scalar,
    joint_from_channel,
    mutual_information,
    output_distribution,
    product_channel,
    push_forward,
    to_scalar,
)

from oracles import entropy_of, h2, mi_bits


def test_to_scalar_parses_rationals_and_floats():
    assert to_scalar("3/7") == F(3, 7)
    assert to_scalar(2) == F(2)
    # Floats go through their shortest repr, so 0.1 is exactly 1/10.
    assert to_scalar(0.1) == F(1, 10)
    assert to_scalar("0.25", exact=False) == 0.25
    assert format_scalar(F(49, 90)) == "49/90"


@pytest.mark.parametrize("bad", ["abc", "1/0", None])
def test_to_scalar_rejects_garbage(bad):
    with pytest.raises(ProbabilityError):
        to_scalar(bad)


def test_distribution_validation():
    Distribution(["a", "b"], [F(1, 3), F(2, 3)])
    with pytest.raises(ProbabilityError, match="sums to"):
        Distribution(["a", "b"], [F(1, 3), F(1, 3)])
    with pytest.raises(ProbabilityError):
        Distribution(["a", "b"], [F(-1, 3), F(4, 3)])
    with pytest.raises(ProbabilityError):
        Distribution(["a", "a"], [F(1, 2), F(1, 2)])
    # float rows pass within tolerance
    Distribution(["a", "b"], [0.1, 0.9 + 1e-12])


def test_channel_rows_must_be_stochastic():
    with pytest.raises(ProbabilityError, match="row not stochastic"):
        Channel(["a"], ["x", "y"], [[F(1, 2), F(1, 3)]])
    with pytest.raises(ProbabilityError):
        Channel(["a", "b"], ["x"], [[F(1)]])


def test_entropy_matches_oracle():
    masses = [F(4, 9), F(2, 9), F(2, 9), F(1, 9)]
    assert entropy(masses) == pytest.approx(entropy_of(masses), abs=1e-12)
    assert entropy(masses) == pytest.approx(math.log2(9) - F(4, 3), abs=1e-12)
    assert entropy(Distribution.point(["a", "b"], "a")) == 0.0


def test_mutual_information_of_bsc():
    bsc = Channel(["0", "1"], ["0", "1"], [[F(9, 10), F(1, 10)], [F(1, 10), F(9, 10)]])
    mi = mutual_information(Distribution.uniform(["0", "1"]), bsc)
    assert mi == pytest.approx(1 - h2(0.1), abs=1e-12)
    p = Distribution(["0", "1"], [F(1, 5), F(4, 5)])
    assert mi == pytest.approx(mi_bits([0.5, 0.5], [[0.9, 0.1], [0.1, 0.9]]), abs=1e-12)
    assert mutual_information(p, bsc) == pytest.approx(mi_bits([0.2, 0.8], [[0.9, 0.1], [0.1, 0.9]]), abs=1e-12)


def test_compose_and_output_distribution():
    a = Channel(["x"], ["u", "v"], [[F(1, 4), F(3, 4)]])
    b = Channel(["u", "v"], ["0", "1"], [[F(1), F(0)], [F(1, 3), F(2, 3)]])
    c = compose(a, b)
    assert c.rows == ((F(1, 2), F(1, 2)),)
    with pytest.raises(AlphabetMismatch):
        compose(b, a)
    assert output_distribution(Distribution.point(["x"], "x"), a).as_dict() == {"u": F(1, 4), "v": F(3, 4)}


def test_push_forward_merges_outputs():
    ch = Channel(["a"], ["q1", "q2", "q3"], [[F(1, 2), F(1, 4), F(1, 4)]])
    merged = push_forward(ch, {"q1": "r1", "q2": "r2", "q3": "r1"})
    assert merged.row("a").as_dict() == {"r1": F(3, 4), "r2": F(1, 4)}


def test_product_channel_is_independent_pairing():
    g = Channel(["a", "b"], ["s", "t"], [[F(1), F(0)], [F(1, 2), F(1, 2)]])
    h = Channel(["a", "b"], ["0", "1"], [[F(1, 3), F(2, 3)], [F(0), F(1)]])
    gh = product_channel([g, h])
    assert gh.prob(("s", "1"), "a") == F(2, 3)
    assert gh.prob(("t", "1"), "b") == F(1, 2)


def test_conditional_entropy_of_joint():
    ch = Channel(["0", "1"], ["0", "1"], [[F(9, 10), F(1, 10)], [F(1, 10), F(9, 10)]])
    j = joint_from_channel(Distribution.uniform(["0", "1"]), ch)
    assert conditional_entropy(j, "Y", "X") == pytest.approx(h2(0.1), abs=1e-12)
    assert conditional_entropy(j, "X", "Y") == pytest.approx(h2(0.1), abs=1e-12)
    cond = j.conditional("Y", "X")
    assert cond.rows == ch.rows
