"""Monte Carlo check of one-shot reconstruction.

Every trial samples the whole chain a -> q -> r -> x -> (y_i) alongside the
private signals s_i, lets each player decode an action from (s_i, y_i), and
counts mistakes. Randomness comes from Philox streams keyed by
``(seed, stage, chunk)`` with a fixed chunk size, so a run is reproducible
and independent of how chunks are spread over threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .graphs import equivalence_classes
from .model import EssentialRecoding, MonitoringInstance
from .precision import auxiliary_partition, z_perfect
from .verdicts import combined_error, one_shot_channels, _coloring_stage

CHUNK = 8192
Z99 = 2.576


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class SimulationResult:
    trials: int
    seed: int
    per_player_error: tuple
    bound: float
    half_width: tuple | None
    tolerance: float
    within_bound: bool
    outcomes: np.ndarray | None = None


def _uniforms(seed: int, stage: int, chunk: int, size: int) -> np.ndarray:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, (stage << 32) | chunk], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key)).random(size)


def _sample(cdf: np.ndarray, rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Inverse-CDF draw: for trial t, the first column k with u[t] < cdf[rows[t], k]."""
    idx = (u[:, None] >= cdf[rows]).sum(axis=1)
    return np.minimum(idx, cdf.shape[1] - 1)


def _cdf(rows) -> np.ndarray:
    m = np.array([[float(w) for w in row] for row in rows], dtype=float)
    c = np.cumsum(m, axis=1)
    c[:, -1] = 1.0
    return c


def _decoder_table(inst, rec, player, channel, z_witness) -> np.ndarray:
    """Decoded action index for every (private signal, broadcast output) pair."""
    g = inst.players[player].monitoring
    m = inst.mediator
    actions = inst.actions
    g_classes = equivalence_classes(g, "majority")
    m_reps = equivalence_classes(m, "majority").representative_sets
    _, s_partition = auxiliary_partition(g, g_classes.classes)

    signature: dict = {}
    for a in actions:
        reps = m_reps[a]
        if len(reps) != 1:
            continue
        key = (g_classes.class_of(a), rec.coloring[next(iter(reps))])
        signature.setdefault(key, []).append(a)

    r_index = {r: k for k, r in enumerate(channel.input_alphabet)}
    table = np.zeros((len(g.output_alphabet), len(channel.output_alphabet)), dtype=np.int64)
    for si, s in enumerate(g.output_alphabet):
        for yi, y in enumerate(channel.output_alphabet):
            match = signature.get((s_partition[s], z_witness[y]), [])
            if len(match) == 1:
                table[si, yi] = actions.index(match[0])
                continue
            # Maximum posterior of the action given (s, y), smallest label on ties.
            def posterior(a):
                ai = actions.index(a)
                total = Fraction(0) if inst.strategy.exact else 0.0
                for q, mq in zip(m.output_alphabet, m.rows[ai]):
                    r = rec.coloring[q]
                    if mq and r in r_index:
                        total += mq * channel.rows[r_index[r]][yi]
                return inst.strategy.masses[ai] * g.rows[ai][si] * total
            best, best_mass = None, None
            for a in sorted(actions, key=str):
                mass = posterior(a)
                if best is None or mass > best_mass:
                    best, best_mass = a, mass
            table[si, yi] = actions.index(best)
    return table


def simulate_one_shot(
    inst: MonitoringInstance,
    rec: EssentialRecoding,
    encoder: Mapping | None = None,
    trials: int = 100_000,
    seed: int = 0,
    workers: int = 1,
    keep_outcomes: bool = False,
) -> SimulationResult:
    if trials < 1:
        raise SimulationError("trials must be at least 1")
    if inst.broadcast is None:
        raise SimulationError("simulation needs a broadcast channel")
    _, x, y, _, _ = _coloring_stage(inst)
    channels = one_shot_channels(inst, rec, encoder)
    zs = [z_perfect(ch) for ch in channels]
    bound = float(combined_error(x, y, max(z for z, _ in zs)))
    tables = [_decoder_table(inst, rec, i, ch, w) for i, (ch, (_, w)) in enumerate(zip(channels, zs))]

    K = len(inst.players)
    strategy_cdf = _cdf([inst.strategy.masses])
    mediator_cdf = _cdf(inst.mediator.rows)
    private_cdfs = [_cdf(p.monitoring.rows) for p in inst.players]
    q_to_r = np.array([channels[0].input_alphabet.index(rec.coloring[q])
                       if rec.coloring[q] in channels[0].input_alphabet else -1
                       for q in inst.signals])
    # Broadcast sampling goes through the joint channel so correlated outputs are honored.
    bc = inst.broadcast.transition
    r_alphabet = channels[0].input_alphabet
    encoder_map = dict(encoder) if encoder is not None else (dict(inst.encoder) if inst.encoder else {r: r for r in r_alphabet})
    r_to_x = np.array([bc.input_alphabet.index(encoder_map[r]) for r in r_alphabet])
    joint_cdf = _cdf(bc.rows)
    out_index = [
        np.array([inst.broadcast.outputs[i].index(y[i]) for y in bc.output_alphabet]) for i in range(K)
    ]

    def run_chunk(c: int) -> np.ndarray:
        start = c * CHUNK
        n = min(CHUNK, trials - start)
        zeros = np.zeros(n, dtype=np.int64)
        a = _sample(strategy_cdf, zeros, _uniforms(seed, 0, c, n))
        q = _sample(mediator_cdf, a, _uniforms(seed, 1, c, n))
        r = q_to_r[q]
        if (r < 0).any():
            raise SimulationError("sampled an essential symbol outside the reachable set")
        joint = _sample(joint_cdf, r_to_x[r], _uniforms(seed, 2, c, n))
        wrong = np.zeros((n, K), dtype=bool)
        for i in range(K):
            s = _sample(private_cdfs[i], a, _uniforms(seed, 3 + i, c, n))
            decoded = tables[i][s, out_index[i][joint]]
            wrong[:, i] = decoded != a
        return wrong

    n_chunks = math.ceil(trials / CHUNK)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_chunk, range(n_chunks)))
    else:
        parts = [run_chunk(c) for c in range(n_chunks)]
    wrong = np.concatenate(parts, axis=0)

    errors = tuple(float(v) for v in wrong.mean(axis=0))
    half = tuple(Z99 * math.sqrt(e * (1 - e) / trials) for e in errors) if trials >= 1000 else None
    tolerance = 3 * math.sqrt(bound * (1 - bound) / trials) + 1e-12
    return SimulationResult(
        trials=trials,
        seed=seed,
        per_player_error=errors,
        bound=bound,
        half_width=half,
        tolerance=tolerance,
        within_bound=all(e <= bound + tolerance for e in errors),
        outcomes=wrong if keep_outcomes else None,
    )
