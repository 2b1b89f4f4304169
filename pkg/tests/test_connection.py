import random
from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import config_and_point, configs, nonzero_weights, sample_point
from lauricella.connection import (SeedFamilies, gamma_entry, gamma_seed, gamma_semisimple_oracle,
                                   gamma_single_block_oracle, gamma_table, scale_point)
from lauricella.errors import IndexOutOfRange, NonRegularPoint, NotSemisimpleConfig, NotSingleBlock, UnsupportedDimension
from lauricella.jordan import BlockConfig
from lauricella.kernel import lift_point
from lauricella.tables import ERRATA, REFERENCE, gamma_smalldim_oracle


def test_seed_two_block():
    cfg = BlockConfig((2, 1), ["7", "1"])
    u = [F(2), F(1), F(0)]
    assert gamma_seed(cfg, u, 1, 2, 1) == F(1, 2)
    # -ε3 u2/(u1-u3)^2
    assert gamma_seed(cfg, u, 1, 2, 2) == F(-1, 4)
    assert gamma_seed(cfg, u, 1, 2, 0) == 0
    with pytest.raises(IndexOutOfRange):
        gamma_seed(cfg, u, 1, 1, 1)


@given(nonzero_weights, nonzero_weights)
def test_entries_two_block(e1, e3):
    cfg = BlockConfig((2, 1), [e1, e3])
    u = [F(3), F(2), F(-1)]
    assert gamma_entry(cfg, u, 3, 1, 1) == 2 * e1 / (u[0] - u[2])
    assert gamma_entry(cfg, u, 1, 1, 3) == e3 / (u[0] - u[2])


@given(nonzero_weights)
def test_three_block_entry(e):
    u = [F(1), F(2), F(5)]
    assert gamma_entry(BlockConfig((3,), [e]), u, 3, 2, 2) == 3 * e * u[2] / u[1] ** 2


def test_semisimple_entries():
    cfg = BlockConfig((1, 1, 1), ["1/2", "2", "-3"])
    u = [F(1), F(4), F(-2)]
    assert gamma_entry(cfg, u, 3, 1, 2) == 0
    assert gamma_entry(BlockConfig((1, 1), ["1", "2"]), u[:2], 1, 1, 2) == F(2) / (u[0] - u[1])
    t = gamma_semisimple_oracle(cfg, u)
    assert t.get(1, 1, 1) == -F(2) / (u[0] - u[1]) - F(-3) / (u[0] - u[2])
    assert t.get(1, 2, 3) == 0


def test_one_block_table_is_single_entry():
    t = gamma_table(BlockConfig((2,), ["1"]), ["5", "2"])
    assert dict(t.entries) == {(2, 2, 2): F(-1)}


def test_single_block_closed_forms():
    u = [F(3), F(2), F(-1), F(4), F(7, 2)]
    e = F(1, 3)
    t4 = gamma_single_block_oracle(BlockConfig((4,), [e]), u[:4])
    assert t4.get(4, 2, 2) == 4 * e * (u[1] * u[3] - u[2] ** 2) / u[1] ** 3
    t5 = gamma_single_block_oracle(BlockConfig((5,), [e]), u)
    expect = 5 * e * (u[1] ** 2 * u[4] - 2 * u[1] * u[2] * u[3] + u[2] ** 3) / u[1] ** 4
    assert t5.get(5, 2, 2) == expect
    assert all(i != 1 for (_, i, _j) in t5.entries)


def test_oracle_preconditions():
    with pytest.raises(NotSingleBlock):
        gamma_single_block_oracle(BlockConfig((1, 1), ["1", "1"]), [1, 2])
    with pytest.raises(NotSemisimpleConfig):
        gamma_semisimple_oracle(BlockConfig((2,), ["1"]), [1, 2])
    with pytest.raises(UnsupportedDimension):
        gamma_smalldim_oracle(BlockConfig((6,), ["1"]), [1, 2, 3, 4, 5, 6])
    with pytest.raises(NonRegularPoint):
        gamma_table(BlockConfig((2,), ["1"]), ["5", "0"])


@pytest.mark.parametrize("sizes,key,expr", [
    ((3, 2), (3, 1, 1), lambda u, e: 2 * e[4] * (u[1] * u[3] - u[2] ** 2 - u[3] * u[4]) / (u[1] - u[4]) ** 3),
    ((2, 2), (4, 1, 3), lambda u, e: -2 * e[1] * u[4] / (u[1] - u[3]) ** 2),
    ((2, 1, 1, 1), (5, 5, 5), lambda u, e: 2 * e[1] / (u[1] - u[5]) + e[3] / (u[3] - u[5]) + e[4] / (u[4] - u[5])),
])
def test_closed_form_entries(sizes, key, expr):
    rng = random.Random(11)
    cfg = BlockConfig(sizes, [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in sizes])
    pt = sample_point(cfg, rng)
    u = {i + 1: x for i, x in enumerate(pt)}
    e = {cfg.flat_index(a, 1): cfg.weight(a) for a in range(1, cfg.r + 1)}
    assert gamma_table(cfg, pt).get(*key) == expr(u, e)
    assert gamma_smalldim_oracle(cfg, pt).get(*key) == expr(u, e)


@pytest.mark.parametrize("sizes", sorted(REFERENCE))
def test_tables_match(sizes):
    rng = random.Random(str(sizes))
    cfg = BlockConfig(sizes, [F(rng.randint(-9, 9) or 1, rng.randint(1, 4)) for _ in sizes])
    for _ in range(3):
        pt = sample_point(cfg, rng)
        assert gamma_table(cfg, pt).entries == gamma_smalldim_oracle(cfg, pt).entries


@pytest.mark.parametrize("sizes", sorted(ERRATA))
def test_raw_tables_differ_exactly_at_errata(sizes):
    from lauricella.tables import _parse_lhs
    fixed = {_parse_lhs(fix["chain"].split("=")[0])[1] for fix in ERRATA[sizes]}
    rng = random.Random(3)
    cfg = BlockConfig(sizes, [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in sizes])
    pt = sample_point(cfg, rng)
    good, raw = gamma_table(cfg, pt), gamma_smalldim_oracle(cfg, pt, corrected=False)
    diff = {k for k in set(good.entries) | set(raw.entries) if good.get(*k) != raw.get(*k)}
    assert diff == fixed


@given(st.integers(1, 8), nonzero_weights, st.integers(0, 10**6))
def test_single_block_triangulation(m, e, seed):
    cfg = BlockConfig((m,), [e])
    pt = sample_point(cfg, random.Random(seed))
    assert gamma_table(cfg, pt).entries == gamma_single_block_oracle(cfg, pt).entries


@given(st.integers(1, 6), st.integers(0, 10**6))
def test_semisimple_triangulation(n, seed):
    rng = random.Random(seed)
    cfg = BlockConfig((1,) * n, [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(n)])
    pt = sample_point(cfg, rng)
    assert gamma_table(cfg, pt).entries == gamma_semisimple_oracle(cfg, pt).entries


@given(config_and_point(), st.sampled_from([F(2), F(-1, 3), F(5, 7)]))
def test_homogeneous_degree_minus_one(cp, lam):
    cfg, pt = cp
    a, b = gamma_table(cfg, pt), gamma_table(cfg, scale_point(pt, lam))
    assert set(a.entries) == set(b.entries)
    assert all(b.get(*k) == v / lam for k, v in a.entries.items())


@given(config_and_point())
def test_symmetric_lower_indices(cp):
    cfg, pt = cp
    s = SeedFamilies(cfg, pt)
    n = cfg.n
    assert all(s.entry(k, i, j) == s.entry(k, j, i)
               for k in range(1, n + 1) for i in range(1, n + 1) for j in range(1, n + 1))


@pytest.mark.parametrize("sizes", sorted(REFERENCE))
def test_jets_match_closed_form_partials(sizes):
    # differentiating the recursion through jets agrees with differentiating the closed form
    rng = random.Random(7)
    cfg = BlockConfig(sizes, [F(rng.randint(1, 9), rng.randint(1, 4)) for _ in sizes])
    jets = lift_point(sample_point(cfg, rng))
    a, b = gamma_table(cfg, jets), gamma_smalldim_oracle(cfg, jets)
    assert set(a.entries) == set(b.entries)
    for k, v in a.entries.items():
        assert v.value == b.entries[k].value and v.partials == b.entries[k].partials


@given(configs(max_n=4))
def test_table_json_lists_nonzero_upper_entries(cfg):
    pt = sample_point(cfg, random.Random(1))
    rows = gamma_table(cfg, pt).to_json()
    assert all(r["i"] <= r["j"] and r["value"] != "0" for r in rows)
