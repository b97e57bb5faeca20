"""End-to-end reconstruction checks.

Three verdicts are offered: ε-perfect monitoring through block coding over
the broadcast channel, perfect monitoring (an exact characterization), and
one-shot ε-perfect monitoring through a z-perfect channel. Only the perfect
monitoring check can conclude that reconstruction is impossible; the other
two establish sufficient conditions or report them as not established.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .capacity import CapacityResult, check_rate_condition, common_message_capacity
from .essential import EssentialRate, PriceReport, essential_rate, essential_recoding, prices, reachable_symbols
from .graphs import check_painting, check_xy_coloring
from .model import EssentialRecoding, InstanceError, MonitoringInstance, broadcast_marginal
from .precision import z_perfect
from .prob_core import Channel, Scalar, compose, to_scalar


@dataclass
class ReconstructionReport:
    theorem: int
    holds: bool
    status: str
    per_player: list
    x: Scalar | None
    y: Scalar | None
    epsilon: Scalar | None
    epsilon_bound: Scalar
    recoding: EssentialRecoding
    prices: PriceReport
    z: Scalar | None = None
    per_player_z: list | None = None
    H: float | None = None
    rate: EssentialRate | None = None
    capacity: CapacityResult | None = None
    diagnostics: list = field(default_factory=list)
    painting_violations: list = field(default_factory=list)
    z_witnesses: list | None = None
    channels: list | None = None


def combined_error(x: Scalar, y: Scalar, z: Scalar) -> Scalar:
    """1 - (1-x)(1-y)(1-z): the error of three independent stages that each
    fail with the given probability."""
    for name, v in (("x", x), ("y", y), ("z", z)):
        if not 0 <= v <= 1:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    if all(isinstance(v, (Fraction, int)) for v in (x, y, z)):
        one = Fraction(1)
    else:
        one, x, y, z = 1.0, float(x), float(y), float(z)
    return one - (one - x) * (one - y) * (one - z)


def _require_broadcast(inst: MonitoringInstance) -> None:
    if inst.broadcast is None:
        raise InstanceError("this check needs a broadcast channel")


def _coloring_stage(inst: MonitoringInstance):
    checks = [check_xy_coloring(inst, i) for i in range(len(inst.players))]
    x = max(c.x for c in checks)
    y = max(c.y for c in checks)
    per_player = [
        {"player": p.name, "holds": c.holds, "x": c.x, "y": c.y, "reasons": list(c.reasons), "witness": c.witness}
        for p, c in zip(inst.players, checks)
    ]
    diagnostics = [f"{p.name}: {r}" for p, c in zip(inst.players, checks) for r in c.reasons]
    return checks, x, y, per_player, diagnostics


def broadcast_capacity(inst: MonitoringInstance) -> CapacityResult:
    _require_broadcast(inst)
    return common_message_capacity([broadcast_marginal(inst, i) for i in range(len(inst.players))])


def check_theorem2(
    inst: MonitoringInstance,
    epsilon: Scalar,
    capacity: CapacityResult | None = None,
) -> ReconstructionReport:
    """Sufficient conditions for ε-perfect monitoring with block coding."""
    _require_broadcast(inst)
    epsilon = to_scalar(epsilon)
    checks, x, y, per_player, diagnostics = _coloring_stage(inst)
    bound = combined_error(x, y, Fraction(0) if isinstance(x, Fraction) else 0.0)
    colored = all(c.holds for c in checks)
    if colored and bound > epsilon:
        diagnostics.append(f"precision bound x+y-xy = {bound} exceeds epsilon = {epsilon}")
    cond1 = colored and bound <= epsilon

    rec = essential_recoding(inst, "majority")
    rate = essential_rate(inst, rec)
    capacity = capacity or broadcast_capacity(inst)
    cond2 = check_rate_condition(rate.H, capacity)
    if not cond2:
        diagnostics.append(f"essential rate H = {rate.H:.6f} exceeds common-message capacity C0 = {capacity.C0:.6f}")

    holds = cond1 and cond2
    return ReconstructionReport(
        theorem=2,
        holds=holds,
        status="sufficient conditions hold" if holds else "not established",
        per_player=per_player,
        x=x, y=y, epsilon=epsilon, epsilon_bound=bound,
        recoding=rec,
        prices=prices(inst, rec, rate),
        H=rate.H, rate=rate, capacity=capacity,
        diagnostics=diagnostics,
    )


def check_theorem3(inst: MonitoringInstance, capacity: CapacityResult | None = None, strict: bool = False) -> ReconstructionReport:
    """Perfect monitoring: painting condition plus the rate condition.

    The rate uses the support-based recoloring and the given strategy; both
    conditions are necessary, so a failure is a definitive negative.
    """
    _require_broadcast(inst)
    painted, violations = check_painting(inst, strict=strict)
    diagnostics = [
        f"painting violated for {name}: {a} and {b} share a private signal and a mediator signal"
        for name, a, b in violations
    ]
    rec = essential_recoding(inst, "support")
    rate = essential_rate(inst, rec)
    capacity = capacity or broadcast_capacity(inst)
    rate_ok = check_rate_condition(rate.H, capacity)
    if not rate_ok:
        diagnostics.append(
            f"essential rate H = {rate.H:.6f} exceeds C0 = {capacity.C0:.6f}; "
            "the essential source cannot be transmitted reliably over this broadcast channel"
        )
    holds = painted and rate_ok
    zero = Fraction(0)
    return ReconstructionReport(
        theorem=3,
        holds=holds,
        status="perfect monitoring reconstructible" if holds else "perfect monitoring NOT reconstructible",
        per_player=[],
        x=None, y=None, epsilon=zero, epsilon_bound=zero if holds else Fraction(1),
        recoding=rec,
        prices=prices(inst, rec, rate),
        H=rate.H, rate=rate, capacity=capacity,
        diagnostics=diagnostics,
        painting_violations=violations,
    )


def default_encoder(rec: EssentialRecoding, inputs: tuple) -> dict:
    missing = [r for r in rec.alphabet if r not in inputs]
    if missing:
        raise InstanceError(
            f"no encoder given and essential symbols {missing} are not broadcast inputs"
        )
    return {r: r for r in rec.alphabet}


def one_shot_channels(inst: MonitoringInstance, rec: EssentialRecoding, encoder: Mapping | None = None) -> list[Channel]:
    """Per-player channels ``R -> X -> Y_i`` restricted to reachable essential symbols."""
    _require_broadcast(inst)
    inputs = inst.broadcast.inputs
    encoder = dict(encoder) if encoder is not None else (
        dict(inst.encoder) if inst.encoder else default_encoder(rec, inputs)
    )
    reachable = reachable_symbols(inst, rec)
    missing = [r for r in reachable if r not in encoder]
    if missing:
        raise InstanceError(f"encoder is not total: no codeword for {missing}")
    stray = [encoder[r] for r in reachable if encoder[r] not in inputs]
    if stray:
        raise InstanceError(f"encoder maps to unknown broadcast inputs {stray}")
    enc = Channel.deterministic({r: encoder[r] for r in reachable}, inputs)
    return [compose(enc, broadcast_marginal(inst, i)) for i in range(len(inst.players))]


def check_theorem4(inst: MonitoringInstance, epsilon: Scalar, encoder: Mapping | None = None) -> ReconstructionReport:
    """Sufficient conditions for one-shot ε-perfect monitoring."""
    _require_broadcast(inst)
    epsilon = to_scalar(epsilon)
    checks, x, y, per_player, diagnostics = _coloring_stage(inst)
    rec = essential_recoding(inst, "majority")
    channels = one_shot_channels(inst, rec, encoder)
    zs = [z_perfect(ch) for ch in channels]
    z = max(v for v, _ in zs)
    bound = combined_error(x, y, z)
    colored = all(c.holds for c in checks)
    if colored and bound > epsilon:
        diagnostics.append(f"one-shot bound x+y+z-xy-xz-yz+xyz = {bound} exceeds epsilon = {epsilon}")
    holds = colored and bound <= epsilon
    rate = essential_rate(inst, rec)
    return ReconstructionReport(
        theorem=4,
        holds=holds,
        status="sufficient conditions hold" if holds else "not established",
        per_player=per_player,
        x=x, y=y, epsilon=epsilon, epsilon_bound=bound,
        recoding=rec,
        prices=prices(inst, rec, rate),
        z=z, per_player_z=[v for v, _ in zs],
        H=rate.H, rate=rate,
        diagnostics=diagnostics,
        z_witnesses=[w for _, w in zs],
        channels=channels,
    )
