"""Monitoring structures: private monitorings, the mediator, and the broadcast channel."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .prob_core import (
    FLOAT_TOL,
    AlphabetMismatch,
    Channel,
    Distribution,
    JointDistribution,
    ProbabilityError,
    Scalar,
    product_channel,
    push_forward,
    to_scalar,
)


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Player:
    name: str
    monitoring: Channel

    @property
    def signals(self) -> tuple:
        return self.monitoring.output_alphabet


@dataclass(frozen=True)
class Broadcast:
    """Joint channel ``f : X -> Δ(Y_1 × ... × Y_K)``.

    ``transition`` has tuple-valued output labels ordered row-major over the
    per-player output alphabets.
    """

    transition: Channel
    outputs: tuple

    @property
    def inputs(self) -> tuple:
        return self.transition.input_alphabet

    @classmethod
    def from_matrix(cls, inputs: Sequence, outputs: Sequence[Sequence], rows: Sequence[Sequence[Scalar]], tol: float = FLOAT_TOL) -> "Broadcast":
        joint = [()]
        for alphabet in outputs:
            joint = [j + (y,) for j in joint for y in alphabet]
        return cls(Channel(inputs, joint, rows, tol=tol), tuple(tuple(o) for o in outputs))

    @classmethod
    def independent(cls, channels: Sequence[Channel]) -> "Broadcast":
        """Broadcast whose per-player outputs are conditionally independent."""
        return cls(product_channel(channels), tuple(ch.output_alphabet for ch in channels))


@dataclass(frozen=True)
class MonitoringInstance:
    actions: tuple
    players: tuple
    mediator: Channel
    strategy: Distribution
    broadcast: Broadcast | None = None
    encoder: Mapping | None = None

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "players", tuple(self.players))
        if not self.players:
            raise InstanceError("at least one player is required")
        names = [p.name for p in self.players]
        if len(set(names)) != len(names):
            raise InstanceError(f"duplicate player names {names}")
        for p in self.players:
            if p.monitoring.input_alphabet != self.actions:
                raise AlphabetMismatch(f"monitoring of {p.name!r} is not indexed by the actions")
        if self.mediator.input_alphabet != self.actions:
            raise AlphabetMismatch("mediator observation is not indexed by the actions")
        if self.strategy.alphabet != self.actions:
            raise AlphabetMismatch("strategy is not a distribution over the actions")
        if self.broadcast is not None and len(self.broadcast.outputs) != len(self.players):
            raise InstanceError(
                f"broadcast has {len(self.broadcast.outputs)} outputs for {len(self.players)} players"
            )

    @property
    def signals(self) -> tuple:
        return self.mediator.output_alphabet

    def player_index(self, player: int | str) -> int:
        if isinstance(player, int):
            if not 0 <= player < len(self.players):
                raise IndexError(f"no player {player}")
            return player
        for i, p in enumerate(self.players):
            if p.name == player:
                return i
        raise KeyError(f"no player named {player!r}")


@dataclass(frozen=True)
class EssentialRecoding:
    """A recoloring ``Q -> R`` of the mediator's signals and the recoded channel."""

    coloring: Mapping
    alphabet: tuple
    channel: Channel = field(repr=False)

    @classmethod
    def from_coloring(cls, mediator: Channel, coloring: Mapping, alphabet: Sequence | None = None) -> "EssentialRecoding":
        missing = [q for q in mediator.output_alphabet if q not in coloring]
        if missing:
            raise ProbabilityError(f"recoloring is not total: no color for {missing}")
        if alphabet is None:
            alphabet = list(dict.fromkeys(coloring[q] for q in mediator.output_alphabet))
        return cls(dict(coloring), tuple(alphabet), push_forward(mediator, coloring, alphabet))


def induced_joint(inst: MonitoringInstance, rec: EssentialRecoding, player: int | str) -> JointDistribution:
    """Joint law of (A, Q, R, S_i) with r = recoloring(q) and s_i drawn independently of q given a."""
    i = inst.player_index(player)
    if tuple(rec.coloring) and set(rec.coloring) != set(inst.signals):
        raise AlphabetMismatch("recoloring domain differs from the mediator's signals")
    g = inst.players[i].monitoring
    m = inst.mediator
    mass = {}
    for a, pa, m_row, g_row in zip(inst.actions, inst.strategy.masses, m.rows, g.rows):
        if pa == 0:
            continue
        for q, mq in zip(m.output_alphabet, m_row):
            if mq == 0:
                continue
            r = rec.coloring[q]
            for s, gs in zip(g.output_alphabet, g_row):
                if gs:
                    mass[(a, q, r, s)] = pa * mq * gs
    return JointDistribution(
        ("A", "Q", "R", "S"),
        (inst.actions, m.output_alphabet, rec.alphabet, g.output_alphabet),
        mass,
    )


def broadcast_marginal(inst: MonitoringInstance, player: int | str) -> Channel:
    """Per-player marginal ``f_i(y|x)`` of the joint broadcast channel."""
    if inst.broadcast is None:
        raise InstanceError("instance has no broadcast channel")
    i = inst.player_index(player)
    bc = inst.broadcast
    alphabet = bc.outputs[i]
    return push_forward(bc.transition, {y: y[i] for y in bc.transition.output_alphabet}, alphabet)


# Example: two-player power-control game with two power levels each.
# "C" is the cooperative operating power, "D" the Nash power; action "CD"
# means player 1 plays C and player 2 plays D.
PD_ACTIONS = ("CC", "CD", "DC", "DD")
PD_STRATEGY = (Fraction(4, 9), Fraction(2, 9), Fraction(2, 9), Fraction(1, 9))


def _noise(value, name: str) -> Scalar:
    v = to_scalar(value)
    if not 0 <= v < Fraction(1, 2):
        raise InstanceError(f"{name} must lie in [0, 1/2), got {value}")
    return v


def builtin_pd_instance(x=Fraction(1, 10), xp=Fraction(1, 10), y=Fraction(1, 10), broadcast: Broadcast | None = None) -> MonitoringInstance:
    """The two-player power-control example with noise levels ``x``, ``x'`` and ``y``.

    Player 1 observes its own power level through a binary channel that errs
    with probability ``x``; player 2 likewise observes the second coordinate
    with error ``x'``. The mediator sees CC -> q1, CD/DC -> q2 and DD -> q3,
    except with probability ``y`` where CC -> q2, CD -> q1, DC -> q3, DD -> q2.
    """
    x, xp, y = _noise(x, "x"), _noise(xp, "x'"), _noise(y, "y")
    one = Fraction(1)
    g1 = Channel(PD_ACTIONS, ("s1", "s1'"), [
        (one - x, x), (one - x, x), (x, one - x), (x, one - x),
    ])
    g2 = Channel(PD_ACTIONS, ("s2", "s2'"), [
        (one - xp, xp), (xp, one - xp), (one - xp, xp), (xp, one - xp),
    ])
    zero = Fraction(0)
    m = Channel(PD_ACTIONS, ("q1", "q2", "q3"), [
        (one - y, y, zero),
        (y, one - y, zero),
        (zero, one - y, y),
        (zero, y, one - y),
    ])
    return MonitoringInstance(
        actions=PD_ACTIONS,
        players=(Player("player1", g1), Player("player2", g2)),
        mediator=m,
        strategy=Distribution(PD_ACTIONS, PD_STRATEGY),
        broadcast=broadcast,
    )


def binary_symmetric(flip, inputs=("0", "1"), outputs=None) -> Channel:
    flip = to_scalar(flip)
    outputs = inputs if outputs is None else outputs
    one = Fraction(1) if isinstance(flip, Fraction) else 1.0
    return Channel(inputs, outputs, [(one - flip, flip), (flip, one - flip)])


def noiseless_broadcast(inputs: Sequence, n_players: int) -> Broadcast:
    return Broadcast.independent([Channel.identity(inputs)] * n_players)


def bsc_broadcast(flip, inputs: Sequence, n_players: int) -> Broadcast:
    """Each player receives the binary input through its own independent BSC."""
    if len(inputs) != 2:
        raise InstanceError("a binary symmetric broadcast needs exactly two inputs")
    return Broadcast.independent([binary_symmetric(flip, tuple(inputs))] * n_players)
