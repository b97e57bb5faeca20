from __future__ import annotations

from fractions import Fraction as F

import pytest

from remonitor.essential import essential_recoding
from remonitor.model import InstanceError, builtin_pd_instance, bsc_broadcast, noiseless_broadcast
from remonitor.verdicts import (
    check_theorem2,
    check_theorem3,
    check_theorem4,
    combined_error,
    one_shot_channels,
)


def pd(x="1/10", xp="1/10", y="1/10", flip=None):
    bc = noiseless_broadcast(("r1", "r2"), 2) if flip is None else bsc_broadcast(flip, ("r1", "r2"), 2)
    return builtin_pd_instance(x, xp, y, broadcast=bc)


def test_combined_error_exact_and_float():
    assert combined_error(F(1, 10), F(1, 10), F(0)) == F(19, 100)
    assert combined_error(F(1, 10), F(1, 10), F(1, 10)) == F(271, 1000)
    assert combined_error(0.1, 0.1, 0.1) == pytest.approx(0.271, abs=1e-15)
    with pytest.raises(ValueError):
        combined_error(F(3, 2), 0, 0)


def test_epsilon_perfect_check_on_pd():
    ok = check_theorem2(pd(), F(19, 100))
    assert ok.holds
    assert ok.epsilon_bound == F(19, 100)
    assert ok.H == pytest.approx(0.96608592010812, abs=1e-9)
    assert ok.capacity.C0 == pytest.approx(1.0, abs=1e-6)
    below = check_theorem2(pd(), "9/50")
    assert not below.holds
    assert any("exceeds epsilon" in d for d in below.diagnostics)


def test_rate_condition_can_fail():
    # a very noisy broadcast cannot carry ~0.97 bits
    res = check_theorem2(pd(flip="2/5"), F(1, 2))
    assert not res.holds
    assert any("capacity" in d for d in res.diagnostics)


def test_perfect_monitoring_check():
    clean = check_theorem3(pd(0, 0, 0))
    assert clean.holds
    assert clean.status == "perfect monitoring reconstructible"
    assert clean.prices.prpm_infty == pytest.approx(0.5, abs=1e-3)
    noisy = check_theorem3(pd(0, 0, "1/10"))
    assert not noisy.holds
    assert noisy.status == "perfect monitoring NOT reconstructible"
    assert noisy.painting_violations


def test_one_shot_check():
    clean = check_theorem4(pd(0, 0, 0), 0)
    assert clean.holds and clean.epsilon_bound == 0
    noisy = check_theorem4(pd(flip="1/10"), F(271, 1000))
    assert noisy.holds
    assert noisy.z == F(1, 10)
    assert noisy.epsilon_bound == F(271, 1000)
    assert not check_theorem4(pd(flip="1/10"), F(27, 100)).holds


def test_missing_broadcast_is_an_error():
    with pytest.raises(InstanceError):
        check_theorem2(builtin_pd_instance(), F(1, 2))


def test_encoder_must_cover_reachable_symbols():
    inst = pd()
    rec = essential_recoding(inst)
    with pytest.raises(InstanceError, match="not total"):
        one_shot_channels(inst, rec, {"r1": "r1"})
    with pytest.raises(InstanceError, match="unknown"):
        one_shot_channels(inst, rec, {"r1": "r1", "r2": "zz"})
    swapped = one_shot_channels(inst, rec, {"r1": "r2", "r2": "r1"})
    assert swapped[0].prob("r2", "r1") == 1


@pytest.mark.parametrize("eps", ["0", "1/10", "19/100", "1/5", "1/2", "1"])
def test_epsilon_monotone_on_pd(eps):
    inst = pd()
    if check_theorem2(inst, eps).holds:
        assert check_theorem2(inst, F(eps) + F(1, 100) if F(eps) < 1 else F(1)).holds
