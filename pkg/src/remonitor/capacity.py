"""Channel capacity: single-user Blahut-Arimoto and the common-message
(max-min) capacity of a broadcast channel."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog, minimize
from scipy.special import logsumexp

from .prob_core import AlphabetMismatch, Channel, Distribution

LN2 = np.log(2.0)


@dataclass(frozen=True)
class CapacityResult:
    C0: float
    optimal_input: Distribution
    per_player_mi: tuple
    iterations: int
    certified_gap: float


def _matrix(ch: Channel) -> np.ndarray:
    return np.array([[float(w) for w in row] for row in ch.rows], dtype=float)


def _divergences(p: np.ndarray, W: np.ndarray) -> np.ndarray:
    """D(W(·|x) || pW) for every input x, in nats."""
    q = p @ W
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(W > 0, W * (np.log(W) - np.log(q)), 0.0)
    return terms.sum(axis=1)


def _dual_bound(D: np.ndarray) -> tuple[float, np.ndarray]:
    """min over player weights λ of max_x Σ_i λ_i D_i(x).

    For any input law p with output laws q_i, I_i(p') <= Σ_x p'(x) D_i(x), so
    this is an upper bound on the max-min capacity.
    """
    K, n = D.shape
    if K == 1:
        return float(D[0].max()), np.ones(1)
    res = linprog(
        c=np.r_[np.zeros(K), 1.0],
        A_ub=np.c_[D.T, -np.ones(n)],
        b_ub=np.zeros(n),
        A_eq=np.r_[np.ones(K), 0.0][None, :],
        b_eq=[1.0],
        bounds=[(0, None)] * K + [(None, None)],
        method="highs",
    )
    if not res.success:
        # Fall back to the trivially valid bound.
        return float(D.max(axis=0).max()), np.ones(K) / K
    return float(res.fun), res.x[:K]


def _step_weights(log_p: np.ndarray, D: np.ndarray) -> np.ndarray:
    """Convex combination of the players' gradients used for the next step.

    Chosen to minimize log Σ_x p(x) exp(Σ_i λ_i D_i(x)), which makes the
    multiplicative update the exact maximizer of the BA surrogate of
    min_i I_i.
    """
    K = D.shape[0]
    if K == 1:
        return np.ones(1)

    def f(lam):
        return logsumexp(log_p + lam @ D)

    def grad(lam):
        z = log_p + lam @ D
        return D @ np.exp(z - logsumexp(z))

    res = minimize(
        f, np.full(K, 1.0 / K), jac=grad, method="SLSQP",
        bounds=[(0.0, 1.0)] * K,
        constraints=[{"type": "eq", "fun": lambda l: l.sum() - 1.0, "jac": lambda l: np.ones(K)}],
        options={"ftol": 1e-15, "maxiter": 200},
    )
    lam = np.clip(res.x, 0.0, None)
    return lam / lam.sum()


def _polish(p: np.ndarray, mats: Sequence[np.ndarray]) -> np.ndarray:
    """Local refinement of max_p min_i I_i(p) in epigraph form (max t s.t.
    I_i(p) >= t). Its output is only used if it improves the certified
    bounds, so a failed solve costs nothing but time."""
    n = p.size
    floor = 1e-300

    def mi(v):
        q = np.clip(v[:n], floor, None)
        return np.array([_divergences(q, W) @ q for W in mats])

    def mi_jac(v):
        q = np.clip(v[:n], floor, None)
        rows = [np.r_[_divergences(q, W) - 1.0, -1.0] for W in mats]
        return np.array(rows)

    x0 = np.r_[p, float(mi(np.r_[p, 0.0]).min())]
    res = minimize(
        lambda v: -v[n], x0, jac=lambda v: np.r_[np.zeros(n), -1.0], method="SLSQP",
        bounds=[(0.0, 1.0)] * n + [(None, None)],
        constraints=[
            {"type": "eq", "fun": lambda v: v[:n].sum() - 1.0, "jac": lambda v: np.r_[np.ones(n), 0.0]},
            {"type": "ineq", "fun": lambda v: mi(v) - v[n], "jac": mi_jac},
        ],
        options={"ftol": 1e-14, "maxiter": 500},
    )
    q = np.clip(res.x[:n], 0.0, None)
    return q / q.sum() if q.sum() > 0 else p


def _maxmin(mats: Sequence[np.ndarray], tol_bits: float, max_iter: int, check_every: int, polish_at: int = 20):
    n = mats[0].shape[0]
    p = np.full(n, 1.0 / n)
    tol = tol_bits * LN2
    # Any iterate's dual bound is valid, so the certificate pairs the best
    # lower bound seen with the smallest upper bound seen.
    best_lower, best_p, best_mi = -np.inf, p, np.zeros(len(mats))
    best_upper = np.inf

    def observe(q):
        nonlocal best_lower, best_p, best_mi, best_upper
        D = np.array([_divergences(q, W) for W in mats])
        mi = D @ q
        if float(mi.min()) > best_lower:
            best_lower, best_p, best_mi = float(mi.min()), q.copy(), mi
        best_upper = min(best_upper, _dual_bound(D)[0])

    it = 0
    for it in range(max_iter + 1):
        D = np.array([_divergences(p, W) for W in mats])
        mi = D @ p
        lower = float(mi.min())
        if lower > best_lower:
            best_lower, best_p, best_mi = lower, p.copy(), mi
        if it % check_every == 0 or it == max_iter:
            best_upper = min(best_upper, _dual_bound(D)[0])
            if best_upper - best_lower <= tol:
                break
        if it == polish_at:
            # The multiplicative step slows down near the optimum; one
            # Newton-type solve from the current iterate usually closes the gap.
            observe(_polish(best_p, mats))
            if best_upper - best_lower <= tol:
                break
        if it == max_iter:
            break
        lam = _step_weights(np.log(p), D)
        z = np.log(p) + lam @ D
        p = np.exp(z - logsumexp(z))
    gap = max(best_upper - best_lower, 0.0)
    return best_lower / LN2, best_p, tuple(float(v) / LN2 for v in best_mi), it, gap / LN2


def _result(inputs, value, p, mi, iterations, gap) -> CapacityResult:
    p = np.clip(p, 0.0, None)
    masses = [float(v) for v in p / p.sum()]
    return CapacityResult(max(value, 0.0), Distribution(inputs, masses), mi, iterations, gap)


def single_user_capacity(ch: Channel, tol: float = 1e-7, max_iter: int = 100_000) -> CapacityResult:
    """Blahut-Arimoto iteration stopped once max_x D(W_x||q) - I(p) <= tol bits.

    The default tolerance is a certified gap; tighter values are honored but
    can take many iterations when the optimal input leaves some symbols unused.
    """
    return _result(ch.input_alphabet, *_maxmin([_matrix(ch)], tol, max_iter, 1))


def common_message_capacity(channels: Sequence[Channel], tol: float = 1e-6, max_iter: int = 100_000) -> CapacityResult:
    """max_p min_i I(p; W_i) over a common input alphabet.

    Entropic mirror ascent on p: each step multiplies p by exp of a convex
    combination of the players' mutual-information gradients (a subgradient
    of the minimum), with one SLSQP refinement after a few steps. Stopping
    is certified by the duality gap against ``_dual_bound``.
    """
    if not channels:
        raise ValueError("need at least one channel")
    inputs = channels[0].input_alphabet
    for ch in channels[1:]:
        if ch.input_alphabet != inputs:
            raise AlphabetMismatch("all channels must share the input alphabet")
    mats = [_matrix(ch) for ch in channels]
    check_every = 1 if len(mats) == 1 else 5
    return _result(inputs, *_maxmin(mats, tol, max_iter, check_every))


def check_rate_condition(H: float, cap: CapacityResult) -> bool:
    return H <= cap.C0 + cap.certified_gap
