import math

import pytest

from oqftsim.params import (
    SystemParams, move_ticks, move_time, reach_spans, validate_params,
)

P = SystemParams()


def test_defaults_are_valid():
    assert validate_params(P).ok


def test_even_distance_rejected():
    report = validate_params(SystemParams(d=4))
    assert any("odd" in v for v in report.violations)


def test_zero_reaction_time_rejected():
    report = validate_params(SystemParams(t_r=0.0))
    assert any("strictly positive" in v for v in report.violations)


def test_span():
    assert P.span_m == pytest.approx(180e-6)


def test_move_time_one_span():
    # 2*sqrt(180e-6 / 5500) ~ 362 us
    assert move_time(1.0, P) == pytest.approx(3.618e-4, rel=1e-3)


def test_move_time_six_spans():
    assert move_time(6.0, P) == pytest.approx(8.86e-4, rel=2e-3)


def test_move_time_zero():
    assert move_time(0.0, P) == 0.0
    assert move_time(0.0, P, include_pickdrop=True) == P.t_pickdrop


def test_move_time_negative_rejected():
    with pytest.raises(ValueError):
        move_time(-0.5, P)


def test_move_ticks_examples():
    assert move_ticks(1.0, P) == 1          # 362 + 400 us fits one tick
    assert move_ticks(12.0, P) == 4         # ~1.65 ms -> 2 * ceil(1.65)
    assert move_ticks(0.0, P) == 1          # pick/drop still occupies a tick


def test_move_monotone():
    distances = [0.0, 0.5, 1.0, 2.0, 2.75, 3.0, 7.0, 12.0, 20.0, 40.0]
    times = [move_time(d, P) for d in distances]
    ticks = [move_ticks(d, P) for d in distances]
    assert times == sorted(times)
    assert ticks == sorted(ticks)
    assert all(t >= 1 for t in ticks)


def test_move_ticks_one_inside_reaction_window():
    for d in (0.0, 0.1, 1.0, 2.0, 2.7):
        if move_time(d, P, include_pickdrop=True) <= P.t_r:
            assert move_ticks(d, P) == 1


def test_reach_spans_value():
    # accel * (t_r/2)^2 / span ~ 7.64; the quoted figure rounds to ~7
    assert reach_spans(P) == pytest.approx(7.6389, abs=1e-3)


def test_reach_scalings():
    assert reach_spans(SystemParams(accel=4 * P.accel)) == pytest.approx(4 * reach_spans(P))
    assert reach_spans(SystemParams(t_r=2 * P.t_r)) == pytest.approx(4 * reach_spans(P))


def test_reach_round_trip_identity():
    # plugging the reach back into the bare ballistic formula returns t_r
    t = move_time(reach_spans(P), P, include_pickdrop=False)
    assert abs(t - P.t_r) <= 1e-12 * P.t_r
