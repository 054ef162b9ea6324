import pytest

from oqftsim.hlmodel import (
    adder_families, hl_balanced_factories, hl_cost, hl_crossover, hl_optimal,
    hl_sweep_rows,
)
from oqftsim.params import SystemParams

P = SystemParams()


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        hl_cost("parallel_prefix", 32, 4, P)


def test_volume_consistency():
    c = hl_cost("gidney_ripple", 32, 8, P)
    assert c.volume == pytest.approx(c.footprint * c.time_s)
    assert c.time_s == pytest.approx(max(c.reaction_time_s, c.magic_time_s))


def test_balanced_factories_equalize_times():
    fam = adder_families()["gidney_ripple"]
    f = hl_balanced_factories(fam, 32, P)
    t_react = fam.reaction_depth(32) * P.t_r
    t_magic = fam.tcount(32) * P.cult_mean_ticks * P.t_r / f
    assert t_react == pytest.approx(t_magic)


def test_doubling_factories_in_magic_regime():
    # pick a clearly magic-limited point
    c1 = hl_cost("cuccaro_ripple", 64, 2, P)
    c2 = hl_cost("cuccaro_ripple", 64, 4, P)
    assert c1.time_s > c1.reaction_time_s           # magic-limited
    assert c2.time_s == pytest.approx(c1.time_s / 2)
    assert c2.footprint < 2 * c1.footprint          # footprint grows sublinearly


@pytest.mark.parametrize("family", sorted(adder_families()))
def test_smallest_instance_is_finite(family):
    c = hl_cost(family, 2, 1, P)
    assert c.volume > 0
    assert c.time_s > 0


def test_ripple_lookahead_crossover_band():
    x = hl_crossover("gidney_ripple", "gidney_lookahead", (8, 512), P)
    assert x is not None
    assert 64 <= x <= 256


def test_family_vs_itself_no_crossover():
    assert hl_crossover("gidney_ripple", "gidney_ripple", (8, 512), P) is None


def test_ripple_ripple_crossover_band():
    # adapted HL puts the cuccaro/gidney crossing at n ~ 32, band one octave
    x = hl_crossover("gidney_ripple", "cuccaro_ripple", (8, 512), P)
    assert x is not None
    assert 16 <= x <= 64


def test_ripple_beats_lookahead_below_crossover():
    x = hl_crossover("gidney_ripple", "gidney_lookahead", (8, 512), P)
    n = 8
    while n < x:
        assert hl_optimal("gidney_ripple", n, P).volume < \
            hl_optimal("gidney_lookahead", n, P).volume
        n *= 2


def test_faster_cultivation_never_hurts():
    fast = SystemParams(cult_mean_ticks=5)
    for family in sorted(adder_families()):
        for n in (8, 32, 128):
            assert hl_optimal(family, n, fast).volume <= \
                hl_optimal(family, n, P).volume + 1e-12


def test_sweep_rows_columns():
    rows = hl_sweep_rows([8, 16], P)
    assert len(rows) == 8
    assert set(rows[0]) == {"family", "n", "factories_opt", "footprint", "time_s", "volume"}
