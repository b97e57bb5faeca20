from __future__ import annotations

from fractions import Fraction as F

import pytest

from remonitor.model import (
    Broadcast,
    EssentialRecoding,
    InstanceError,
    MonitoringInstance,
    Player,
    broadcast_marginal,
    bsc_broadcast,
    builtin_pd_instance,
    induced_joint,
    noiseless_broadcast,
)
from remonitor.prob_core import AlphabetMismatch, Channel, Distribution, ProbabilityError

from oracles import brute_joint_rs, pd_tables


def test_pd_instance_shape():
    inst = builtin_pd_instance()
    assert inst.actions == ("CC", "CD", "DC", "DD")
    assert inst.signals == ("q1", "q2", "q3")
    assert [p.name for p in inst.players] == ["player1", "player2"]
    assert inst.strategy.as_dict() == {"CC": F(4, 9), "CD": F(2, 9), "DC": F(2, 9), "DD": F(1, 9)}
    assert inst.player_index("player2") == 1


def test_pd_channels_match_hand_tables():
    inst = builtin_pd_instance("1/10", "1/5", "1/10")
    _, g1, g2, m = pd_tables("1/10", "1/5", "1/10")
    for a in inst.actions:
        for s, v in g1[a].items():
            assert inst.players[0].monitoring.prob(s, a) == v
        for s, v in g2[a].items():
            assert inst.players[1].monitoring.prob(s, a) == v
        for q in inst.signals:
            assert inst.mediator.prob(q, a) == m[a].get(q, 0)


@pytest.mark.parametrize("noise", ["1/2", "-1/10", "3/4"])
def test_pd_noise_range(noise):
    with pytest.raises(InstanceError):
        builtin_pd_instance(x=noise)


def test_instance_validation():
    inst = builtin_pd_instance()
    with pytest.raises(AlphabetMismatch):
        MonitoringInstance(inst.actions, inst.players, inst.mediator, Distribution.uniform(["a", "b"]))
    with pytest.raises(InstanceError):
        MonitoringInstance(inst.actions, (), inst.mediator, inst.strategy)
    with pytest.raises(InstanceError):
        MonitoringInstance(inst.actions, inst.players, inst.mediator, inst.strategy, noiseless_broadcast(("r1", "r2"), 3))
    twin = Player("player1", inst.players[1].monitoring)
    with pytest.raises(InstanceError):
        MonitoringInstance(inst.actions, (inst.players[0], twin), inst.mediator, inst.strategy)


def test_induced_joint_matches_enumeration():
    inst = builtin_pd_instance()
    color = {"q1": "r1", "q2": "r2", "q3": "r1"}
    rec = EssentialRecoding.from_coloring(inst.mediator, color, ["r1", "r2"])
    j = induced_joint(inst, rec, 0)
    p, g1, _, m = pd_tables("1/10", "1/10", "1/10")
    expected = brute_joint_rs(p, g1, m, color)
    got = j.marginal("R", "S")
    for (r, s), v in expected.items():
        assert got.mass[(r, s)] == v
    assert sum(j.mass.values()) == 1


def test_string_masses_are_rejected():
    with pytest.raises(ProbabilityError, match="numbers"):
        Channel(["a"], ["x"], [["1"]])


def test_recoding_must_be_total():
    inst = builtin_pd_instance()
    with pytest.raises(ProbabilityError):
        EssentialRecoding.from_coloring(inst.mediator, {"q1": "r1"})


def test_broadcast_marginals():
    bc = bsc_broadcast("1/10", ("r1", "r2"), 2)
    inst = builtin_pd_instance(broadcast=bc)
    f1 = broadcast_marginal(inst, 0)
    assert f1.rows == ((F(9, 10), F(1, 10)), (F(1, 10), F(9, 10)))
    # correlated joint broadcast: both players get the same noisy bit
    joint = Broadcast.from_matrix(["0", "1"], [["0", "1"], ["0", "1"]], [
        [F(9, 10), F(0), F(0), F(1, 10)],
        [F(1, 10), F(0), F(0), F(9, 10)],
    ])
    assert joint.transition.prob(("1", "1"), "0") == F(1, 10)
    with pytest.raises(InstanceError):
        bsc_broadcast("1/10", ("a", "b", "c"), 2)


def test_identity_broadcast_marginal_is_identity():
    inst = builtin_pd_instance(broadcast=noiseless_broadcast(("r1", "r2"), 2))
    assert broadcast_marginal(inst, "player2").rows == Channel.identity(("r1", "r2")).rows
