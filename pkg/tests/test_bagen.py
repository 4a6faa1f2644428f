import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smaxkit.bagen import (BAConfig, SweepRow, cell_seed, chain_probability, generate_ba_tree,
                           grow_temporal, is_chain, is_star, log_gamma_grid, star_probability, sweep,
                           sweep_cell)
from smaxkit.metrics import coefficient_of_variation


def binom_ok(hits, trials, p):
    sd = math.sqrt(trials * p * (1 - p))
    return abs(hits - trials * p) <= 3 * sd


@pytest.mark.parametrize("gamma", [-3.0, 0.0, 1.0, 5.0])
def test_two_nodes_single_edge(gamma):
    g = generate_ba_tree(BAConfig(2, gamma, 11))
    assert g.edges == [(0, 1)]


def test_config_validation():
    with pytest.raises(ValueError):
        BAConfig(1, 1.0, 0)
    with pytest.raises(ValueError):
        BAConfig(5, math.inf, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 300), st.floats(-3, 4), st.integers(0, 2**63 - 1))
def test_tree_property_and_determinism(n, gamma, seed):
    g = generate_ba_tree(BAConfig(n, gamma, seed))
    assert g.m == n - 1 and g.is_connected()
    assert generate_ba_tree(BAConfig(n, gamma, seed)).edges == g.edges
    # node t always attaches to an earlier node
    assert all(u < v for u, v in g.edges)


def test_star_frequency_n4_gamma1():
    trials = 100_000
    rng = np.random.default_rng(1)
    seeds = rng.integers(0, 2**63, size=trials)
    hits = sum(is_star(generate_ba_tree(BAConfig(4, 1.0, int(s)))) for s in seeds)
    assert star_probability(4, 1.0) == 0.5
    assert binom_ok(hits, trials, 0.5)


def test_uniform_attachment_n3():
    trials = 20_000
    hits = sum(generate_ba_tree(BAConfig(3, 0.0, s)).degrees()[0] == 2 for s in range(trials))
    assert binom_ok(hits, trials, 0.5)


def test_star_probability_values():
    assert star_probability(3, 0.7) == 1.0
    assert star_probability(4, 1.0) == 0.5
    assert star_probability(5, 1.0) == 0.25
    assert star_probability(5, 2.0) == pytest.approx(1 / (1 + 0.5) / (1 + 1 / 3), rel=1e-15)
    ps = [star_probability(10, g) for g in (1, 2, 4, 8, 16, 32)]
    assert ps == sorted(ps) and ps[-1] > 0.999
    with pytest.raises(ValueError):
        star_probability(2, 1.0)


def test_chain_probability_values():
    assert chain_probability(3, 1.0) == 1.0
    assert chain_probability(4, 1.0) == pytest.approx(0.8, rel=1e-15)
    assert chain_probability(5, 0.0) == pytest.approx(1 / 3, rel=1e-15)


@pytest.mark.parametrize("gamma", [-2.0, 0.5])
def test_chain_frequency_under_negated_exponent(gamma):
    # the printed product is the path probability for kernel k**(-gamma)
    trials, n = 20_000, 6
    hits = sum(is_chain(generate_ba_tree(BAConfig(n, -gamma, s))) for s in range(trials))
    assert binom_ok(hits, trials, chain_probability(n, gamma))


def test_star_and_chain_predicates():
    assert is_star(generate_ba_tree(BAConfig(3, 1.0, 0)))
    assert is_chain(generate_ba_tree(BAConfig(3, 1.0, 0)))
    assert not is_star(generate_ba_tree(BAConfig(60, 0.0, 4)))


def test_cell_seed_distinct_and_stable():
    a = cell_seed(7, 8, 1.0, 0)
    assert a == cell_seed(7, 8, 1.0, 0)
    others = {cell_seed(7, 8, 1.0, 1), cell_seed(7, 16, 1.0, 0), cell_seed(7, 8, 1.5, 0),
              cell_seed(8, 8, 1.0, 0)}
    assert a not in others and len(others) == 4
    assert 0 <= a < 2**64


def test_sweep_shape_and_order():
    rows = sweep([8, 16], [0.0, 1.0], 3, seed=5, workers=1)
    assert len(rows) == 12
    assert [(r.n, r.gamma) for r in rows[:3]] == [(8, 0.0)] * 3
    for r in rows:
        assert r.s_min_approx / r.s_max_approx - 1e-12 <= r.S_ratio <= 1 + 1e-12
        assert r.csv_row().count(",") == SweepRow.HEADER.count(",")


def test_sweep_parallel_matches_serial():
    a = sweep([8, 32], [-1.0, 2.0], 4, seed=9, workers=1)
    b = sweep([8, 32], [-1.0, 2.0], 4, seed=9, workers=2)
    assert a == b


def test_sweep_star_and_chain_rows():
    star = next(sweep_cell(8, 8.0, s) for s in range(1000)
                if is_star(generate_ba_tree(BAConfig(8, 8.0, s))))
    D = [7] + [1] * 7
    assert star.cv == pytest.approx(coefficient_of_variation(D), rel=1e-15)
    assert star.cv == pytest.approx(math.sqrt(3.9375) / 1.75, rel=1e-12)
    assert star.degenerate and star.S_ratio == 1.0
    chain = next(sweep_cell(8, -8.0, s) for s in range(1000)
                 if is_chain(generate_ba_tree(BAConfig(8, -8.0, s))))
    assert chain.degenerate and chain.S_ratio == 1.0


def test_log_gamma_grid():
    g = log_gamma_grid(-2.0, 4.0, 3)
    assert g[0] == -2.0 and g[-1] == 4.0 and 1.0 in g
    assert len(g) == 7 and g == sorted(g)


def test_grow_temporal_shape():
    rec = grow_temporal(units=4, arrivals=10, internal=3, gamma=1.0, seed=3)
    assert {t for t, _, _ in rec} == {0, 1, 2, 3}
    per_t = [sum(1 for t, *_ in rec if t == k) for k in range(4)]
    assert per_t == [9, 13, 13, 13]
    assert len({(min(u, v), max(u, v)) for _, u, v in rec}) == len(rec)
    assert rec == grow_temporal(units=4, arrivals=10, internal=3, gamma=1.0, seed=3)
