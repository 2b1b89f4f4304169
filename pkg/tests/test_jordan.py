from fractions import Fraction

import pytest
from hypothesis import given

from conftest import configs
from lauricella.errors import IndexOutOfRange, MalformedInput
from lauricella.hierarchy import matmul, nijenhuis_torsion
from lauricella.jordan import (BlockConfig, a0_poly, canonical_fields, is_regular, operator_L,
                               parse_point)
from lauricella.kernel import Poly, form_is_zero


def test_flat_index_round_trip():
    cfg = BlockConfig((3, 2), ["1/3", "1/2"])
    assert cfg.flat_index(2, 1) == 4
    assert [cfg.block_of(i) for i in range(1, 6)] == [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2)]
    with pytest.raises(IndexOutOfRange):
        cfg.flat_index(2, 3)


@pytest.mark.parametrize("sizes,weights", [((), []), ((0,), ["1"]), ((2,), ["1", "2"]), ((2,), ["x"])])
def test_bad_configs(sizes, weights):
    with pytest.raises(MalformedInput):
        BlockConfig(sizes, weights)


def test_json_round_trip():
    cfg = BlockConfig((2, 1), ["1/2", "-3"])
    assert BlockConfig.from_json(cfg.to_json()) == cfg
    assert BlockConfig.from_json('{"sizes": [2, 1], "weights": ["1/2", "-3"]}') == cfg


def test_operator_L_two_block():
    cfg = BlockConfig((2, 1), ["1", "1"])
    L = operator_L(cfg)
    u = [Poly.var(3, i) for i in (1, 2, 3)]
    expect = [[u[0], 0, 0], [u[1], u[0], 0], [0, 0, u[2]]]
    assert [[L[i][j] == Poly.const(3, 0) + expect[i][j] for j in range(3)] for i in range(3)] == [[True] * 3] * 3


@given(configs())
def test_L_is_E_product(cfg):
    # L^i_j = c^i_{jk} E^k, the operator of multiplication by E
    _, E, c = canonical_fields(cfg)
    L = operator_L(cfg)
    n = cfg.n
    for i in range(n):
        for j in range(n):
            acc = Poly(n)
            for k in range(n):
                acc = acc + E[k] * c.get(i + 1, j + 1, k + 1)
            assert acc == L[i][j]


@given(configs(max_n=4))
def test_L_has_no_torsion(cfg):
    assert form_is_zero(nijenhuis_torsion(operator_L(cfg)))


@given(configs())
def test_L_commutes_with_blocks(cfg):
    L = operator_L(cfg)
    L2 = matmul(L, L)
    # a polynomial in L commutes with L
    assert matmul(L, L2) == matmul(L2, L)


def test_a0_weighted_traces():
    cfg = BlockConfig((2, 1), ["1/2", "3"])
    u = [Poly.var(3, i) for i in (1, 2, 3)]
    assert a0_poly(cfg) == u[0] * 1 + u[2] * 3


def test_regularity():
    cfg = BlockConfig((2, 1), ["1", "1"])
    assert is_regular(cfg, [1, 2, 3])
    assert not is_regular(cfg, [1, 0, 3])
    assert not is_regular(cfg, [3, 1, 3])
    assert not is_regular(cfg, [0, 1, 3], dual=True)


def test_parse_point():
    assert parse_point('["1/2", "3"]') == [Fraction(1, 2), Fraction(3)]
    assert parse_point({"coords": ["1"]}, 1) == [Fraction(1)]
    with pytest.raises(MalformedInput):
        parse_point("[1, 2]", 3)
