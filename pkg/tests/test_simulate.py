from __future__ import annotations

import math

import numpy as np
import pytest

from remonitor.essential import essential_recoding
from remonitor.model import builtin_pd_instance, bsc_broadcast, noiseless_broadcast
from remonitor.simulate import CHUNK, SimulationError, simulate_one_shot

pytestmark = pytest.mark.montecarlo


def pd(x="1/10", y="1/10", flip=None):
    bc = noiseless_broadcast(("r1", "r2"), 2) if flip is None else bsc_broadcast(flip, ("r1", "r2"), 2)
    return builtin_pd_instance(x, x, y, broadcast=bc)


def run(inst, **kw):
    return simulate_one_shot(inst, essential_recoding(inst), **kw)


def test_noiseless_everything_never_errs():
    res = run(pd(0, 0), trials=20_000, seed=3)
    assert res.per_player_error == (0.0, 0.0)
    assert res.bound == 0.0


def test_error_within_bound_and_close_to_it():
    res = run(pd(), trials=50_000, seed=11)
    assert res.bound == pytest.approx(0.19)
    assert res.within_bound
    # The decoder is wrong exactly when the private or mediator signal flips
    # the relevant class, so the rate sits at the bound, not far below it.
    for e in res.per_player_error:
        assert abs(e - 0.19) < 4 * math.sqrt(0.19 * 0.81 / 50_000)


def test_thread_count_does_not_change_results():
    inst = pd(flip="1/10")
    one = run(inst, trials=3 * CHUNK + 17, seed=5, workers=1, keep_outcomes=True)
    four = run(inst, trials=3 * CHUNK + 17, seed=5, workers=4, keep_outcomes=True)
    assert np.array_equal(one.outcomes, four.outcomes)
    assert one.per_player_error == four.per_player_error
    other = run(inst, trials=3 * CHUNK + 17, seed=6)
    assert other.per_player_error != one.per_player_error


def test_small_runs_have_no_interval():
    res = run(pd(), trials=10, seed=0)
    assert res.half_width is None
    with pytest.raises(SimulationError):
        run(pd(), trials=0)


def test_needs_broadcast():
    inst = builtin_pd_instance()
    with pytest.raises(SimulationError):
        simulate_one_shot(inst, essential_recoding(inst))
