"""JSON instance documents and report serialization."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .model import Broadcast, InstanceError, MonitoringInstance, Player, builtin_pd_instance, bsc_broadcast, noiseless_broadcast
from .prob_core import FLOAT_TOL, Channel, Distribution, ProbabilityError, format_scalar, to_scalar


class DocumentError(ValueError):
    pass


def _field(doc: dict, key: str, where: str = "document"):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"{where}: missing key {key!r}")
    return doc[key]


def _labels(value, where: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentError(f"{where}: expected an array of strings")
    return value


def _matrix(value, exact: bool, where: str) -> list:
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        raise DocumentError(f"{where}: expected a matrix (array of arrays)")
    try:
        return [[to_scalar(v, exact) for v in row] for row in value]
    except ProbabilityError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def instance_from_document(doc: dict, exact: bool = True, tol: float = FLOAT_TOL) -> MonitoringInstance:
    """Build and validate an instance; any violation raises ``DocumentError``."""
    try:
        actions = _labels(_field(doc, "actions"), "actions")
        players = []
        for k, p in enumerate(_field(doc, "players")):
            where = f"players[{k}]"
            name = _field(p, "name", where)
            signals = _labels(_field(p, "signals", where), f"{where}.signals")
            rows = _matrix(_field(p, "monitoring", where), exact, f"{where}.monitoring")
            players.append(Player(name, Channel(actions, signals, rows, tol=tol)))
        med = _field(doc, "mediator")
        mediator = Channel(
            actions,
            _labels(_field(med, "signals", "mediator"), "mediator.signals"),
            _matrix(_field(med, "observation", "mediator"), exact, "mediator.observation"),
            tol=tol,
        )
        strategy_raw = _field(doc, "strategy")
        if not isinstance(strategy_raw, list):
            raise DocumentError("strategy: expected an array")
        strategy = Distribution(actions, [to_scalar(v, exact) for v in strategy_raw], tol=tol)

        broadcast = None
        if doc.get("broadcast") is not None:
            bc = doc["broadcast"]
            outputs = [_labels(o, "broadcast.outputs") for o in _field(bc, "outputs", "broadcast")]
            broadcast = Broadcast.from_matrix(
                _labels(_field(bc, "inputs", "broadcast"), "broadcast.inputs"),
                outputs,
                _matrix(_field(bc, "transition", "broadcast"), exact, "broadcast.transition"),
                tol=tol,
            )
        encoder = doc.get("encoder")
        if encoder is not None and not isinstance(encoder, dict):
            raise DocumentError("encoder: expected an object mapping essential symbols to inputs")
        return MonitoringInstance(actions, players, mediator, strategy, broadcast, encoder)
    except DocumentError:
        raise
    except (ProbabilityError, InstanceError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc


def load_instance(path, exact: bool = True, tol: float = FLOAT_TOL) -> tuple[MonitoringInstance, dict]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
    return instance_from_document(doc, exact, tol), doc


def _matrix_out(ch: Channel) -> list:
    return [[format_scalar(v) for v in row] for row in ch.rows]


def instance_to_document(inst: MonitoringInstance) -> dict:
    doc: dict[str, Any] = {
        "actions": list(inst.actions),
        "players": [
            {"name": p.name, "signals": list(p.signals), "monitoring": _matrix_out(p.monitoring)}
            for p in inst.players
        ],
        "mediator": {"signals": list(inst.signals), "observation": _matrix_out(inst.mediator)},
        "strategy": [format_scalar(v) for v in inst.strategy.masses],
    }
    if inst.broadcast is not None:
        doc["broadcast"] = {
            "inputs": list(inst.broadcast.inputs),
            "outputs": [list(o) for o in inst.broadcast.outputs],
            "transition": _matrix_out(inst.broadcast.transition),
        }
    if inst.encoder:
        doc["encoder"] = dict(inst.encoder)
    return doc


# Figures quoted alongside the noisy example; they are audited, not trusted.
PD_REFERENCE = {
    "essential_rate": 0.9451,
    "preepm_infty": 0.5145,
    "source_entropy": 1.8366,
    "essential_entropy": 0.9943,
    "tolerance": 0.001,
    "listed_conditionals": {
        "side_marginal": {"s1": "570/900", "s1'": "330/900"},
        "conditionals": {"s1": ["353/570", "193/570"], "s1'": ["137/330", "217/330"]},
    },
}

PD_NOISELESS_REFERENCE = {"prpm_infty": 0.5, "source_entropy": 1.8366, "tolerance": 0.001}


def pd_document(x="1/10", xp="1/10", y="1/10", broadcast: str | None = "noiseless", flip="1/10") -> dict:
    """Document for the two-player power-control example."""
    if broadcast == "noiseless":
        bc = noiseless_broadcast(("r1", "r2"), 2)
    elif broadcast == "bsc":
        bc = bsc_broadcast(flip, ("r1", "r2"), 2)
    elif broadcast in (None, "none"):
        bc = None
    else:
        raise DocumentError(f"unknown broadcast kind {broadcast!r}")
    inst = builtin_pd_instance(x, xp, y, broadcast=bc)
    doc = instance_to_document(inst)
    noise = tuple(to_scalar(v) for v in (x, xp, y))
    if noise == (Fraction(1, 10),) * 3:
        doc["reference"] = PD_REFERENCE
    elif noise == (0, 0, 0):
        doc["reference"] = PD_NOISELESS_REFERENCE
    return doc


def bundled_path(name: str):
    return resources.files("remonitor") / "data" / name


def to_jsonable(value):
    """Recursively convert report values: rationals to ``"p/q"``, tuples to lists."""
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k) if not isinstance(k, tuple) else "|".join(map(str, k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=str)
        return [to_jsonable(v) for v in items]
    if hasattr(value, "item"):
        return value.item()
    return str(value)


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=False) + "\n"
