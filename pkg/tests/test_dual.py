import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import config_and_point, nonzero_weights
from lauricella.connection import gamma_single_block_oracle, gamma_table
from lauricella.dual import dual_gamma_closed, dual_gamma_generic, dual_product, euler_inverse, nabla_euler
from lauricella.errors import NonInvertibleEuler
from lauricella.jordan import BlockConfig


def test_euler_inverse_small_blocks():
    u = [F(3), F(2), F(-5)]
    assert euler_inverse(BlockConfig((1,), ["1"]), u[:1]) == [F(1, 3)]
    assert euler_inverse(BlockConfig((2,), ["1"]), u[:2]) == [F(1, 3), -u[1] / u[0] ** 2]
    assert euler_inverse(BlockConfig((3,), ["1"]), u)[2] == (u[1] ** 2 - u[0] * u[2]) / u[0] ** 3
    with pytest.raises(NonInvertibleEuler):
        euler_inverse(BlockConfig((1, 1), ["1", "1"]), [0, 1])


@given(config_and_point(dual=True))
def test_E_inverse_is_inverse(cp):
    # E^{-1} ∘ E = e blockwise
    cfg, pt = cp
    x = euler_inverse(cfg, pt)
    for a in range(1, cfg.r + 1):
        m = cfg.size(a)
        for k in range(1, m + 1):
            s = sum(x[cfg.flat_index(a, i) - 1] * cfg.coord(pt, a, k - i + 1) for i in range(1, k + 1))
            assert s == (1 if k == 1 else 0)


def test_dual_product_entries():
    u = [F(2), F(3), F(7)]
    c = dual_product(BlockConfig((1, 1, 1), ["1", "1", "1"]), u)
    assert dict(c.entries) == {(i, i, i): 1 / u[i - 1] for i in (1, 2, 3)}
    c2 = dual_product(BlockConfig((2,), ["1"]), u[:2])
    assert c2.get(2, 1, 2) == F(1, 2)
    assert dual_product(BlockConfig((2, 1), ["1", "1"]), u).get(1, 1, 3) == 0


@given(nonzero_weights)
def test_single_block_two(e):
    cfg = BlockConfig((2,), [e])
    u = [F(5), F(3)]
    g = gamma_table(cfg, u)
    d = dual_gamma_closed(cfg, u, g)
    assert d.get(2, 2, 2) == g.get(2, 2, 2)
    assert d.get(1, 1, 1) == -1 / u[0]


@given(config_and_point(dual=True))
def test_two_routes_agree(cp):
    cfg, pt = cp
    g = gamma_table(cfg, pt)
    assert dual_gamma_closed(cfg, pt, g).entries == dual_gamma_generic(cfg, pt, g).entries


@given(config_and_point(dual=True))
def test_cross_block_entries_unchanged(cp):
    cfg, pt = cp
    g = gamma_table(cfg, pt)
    d = dual_gamma_closed(cfg, pt, g)
    n = cfg.n
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if cfg.block_of(i)[0] != cfg.block_of(j)[0]:
                    assert d.get(k, i, j) == g.get(k, i, j)


def test_semisimple_dual_entries():
    eps = [F(1, 2), F(-2), F(3)]
    cfg = BlockConfig((1, 1, 1), eps)
    u = [F(2), F(-3), F(7, 2)]
    d = dual_gamma_generic(cfg, u, gamma_table(cfg, u))
    for i in range(3):
        for j in range(3):
            if i != j:
                sym = d.get(i + 1, i + 1, j + 1)
                assert sym == eps[j] / (u[i] - u[j])
                assert d.get(i + 1, j + 1, j + 1) == -(u[i] / u[j]) * sym


def test_single_block_dual_matches_closed_form():
    # inside one block: Γ* = Γ - C c*, with C = 1 on the top row and 1 - mε below it
    rng = random.Random(4)
    for m in range(1, 6):
        e = F(rng.randint(1, 9), 7)
        cfg = BlockConfig((m,), [e])
        pt = [F(rng.randint(1, 9)) for _ in range(m)]
        g = gamma_single_block_oracle(cfg, pt)
        d = dual_gamma_closed(cfg, pt, g)
        c = dual_product(cfg, pt)
        for k in range(1, m + 1):
            for i in range(1, m + 1):
                for j in range(i, m + 1):
                    coef = 1 if k == 1 else 1 - m * e
                    assert d.get(k, i, j) == g.get(k, i, j) - coef * c.get(k, i, j)


def test_nabla_euler_identity_for_zero_connection():
    from lauricella.jordan import Tensor3
    assert nabla_euler(Tensor3(2), [F(1), F(2)]) == [[1, 0], [0, 1]]
