import random
from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from conftest import config_and_point, configs, small_rationals
from lauricella.errors import NotClosed, TorsionNotZero
from lauricella.hierarchy import (commutator, d_L_function, d_L_oneform, d_L_oneform_from_brackets,
                                  diagonal_L, flows_are_symmetries, hierarchy_generate, identity,
                                  kodama_konopelchenko_L, nijenhuis_from_brackets, nijenhuis_torsion,
                                  weighted_trace)
from lauricella.jordan import BlockConfig, a0_poly, operator_L
from lauricella.kernel import Poly, exterior_d, form_is_zero, grad


def u(n):
    return [Poly.var(n, i + 1) for i in range(n)]


@st.composite
def polys(draw, n):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        terms[tuple(draw(st.integers(0, 2)) for _ in range(n))] = draw(small_rationals)
    return Poly(n, terms)


def test_torsion_examples():
    assert form_is_zero(nijenhuis_torsion(diagonal_L(3)))
    x = u(2)
    N = nijenhuis_torsion([[x[1], Poly(2)], [Poly(2), x[0]]])
    assert not form_is_zero(N)
    assert N == nijenhuis_from_brackets([[x[1], Poly(2)], [Poly(2), x[0]]])


@settings(max_examples=15)
@given(st.data())
def test_torsion_matches_bracket_formula(data):
    n = 2
    L = [[data.draw(polys(n)) for _ in range(n)] for _ in range(n)]
    N = nijenhuis_torsion(L)
    assert N == nijenhuis_from_brackets(L)
    assert all(N[k][i][j] == -N[k][j][i] for k in range(n) for i in range(n) for j in range(n))


@settings(max_examples=15)
@given(st.data())
def test_d_L_oneform_matches_bracket_formula(data):
    n = 2
    L = [[data.draw(polys(n)) for _ in range(n)] for _ in range(n)]
    w = [data.draw(polys(n)) for _ in range(n)]
    assert d_L_oneform(w, L) == d_L_oneform_from_brackets(w, L)


@given(configs(max_n=4), st.data())
def test_d_and_d_L_anticommute(cfg, data):
    f = data.draw(polys(cfg.n))
    L = operator_L(cfg)
    a = exterior_d(d_L_function(f, L))
    b = d_L_oneform(grad(f), L)
    assert all((a[i][j] + b[i][j]).is_zero() for i in range(cfg.n) for j in range(cfg.n))


@given(configs(max_n=4), st.data())
def test_d_L_squares_to_zero(cfg, data):
    f = data.draw(polys(cfg.n))
    L = operator_L(cfg)
    assert form_is_zero(d_L_oneform(d_L_function(f, L), L))


@given(configs())
def test_dd_L_a0(cfg):
    assert form_is_zero(exterior_d(d_L_function(a0_poly(cfg), operator_L(cfg))))


def test_d_L_examples():
    n = 4
    dl = d_L_function(-u(n)[0], kodama_konopelchenko_L(n))
    assert dl == (Poly(n), Poly.const(n, -1), Poly(n), Poly(n))
    assert all(p.is_zero() for p in d_L_function(Poly.const(3, 5), diagonal_L(3)))


def test_kodama_konopelchenko():
    n = 4
    x = u(n)
    seq = hierarchy_generate(kodama_konopelchenko_L(n), -x[0], 3)
    assert seq.a[1] == -x[1] - x[0] * x[0] * F(1, 2)
    V2 = seq.V[2]
    L = kodama_konopelchenko_L(n)
    L2 = [[sum((L[i][k] * L[k][j] for k in range(n)), Poly(n)) for j in range(n)] for i in range(n)]
    diag = x[1] + x[0] * x[0] * F(1, 2)
    for i in range(n):
        for j in range(n):
            assert V2[i][j] == L2[i][j] + x[0] * L[i][j] + (diag if i == j else 0)


@given(st.lists(small_rationals.filter(bool), min_size=1, max_size=4))
def test_epsilon_system_first_flow(eps):
    n = len(eps)
    seq = hierarchy_generate(diagonal_L(n), weighted_trace(eps), 1)
    a0 = weighted_trace(eps)
    assert seq.V[0] == identity(n)
    for i in range(n):
        for j in range(n):
            assert seq.V[1][i][j] == (u(n)[i] - a0 if i == j else Poly(n))


def test_preconditions():
    x = u(2)
    with pytest.raises(TorsionNotZero):
        hierarchy_generate([[x[1], Poly(2)], [Poly(2), x[0]]], x[0], 1)
    # d_L(u1 u2) = (u1 u2, u1 u2) for the diagonal L is not closed
    with pytest.raises(NotClosed):
        hierarchy_generate(diagonal_L(2), x[0] * x[1], 1)


@settings(max_examples=10)
@given(config_and_point(max_n=4))
def test_flows_are_symmetries(cp):
    cfg, pt = cp
    seq = hierarchy_generate(operator_L(cfg), a0_poly(cfg), 3)
    r = flows_are_symmetries(cfg, pt, seq)
    assert r.all_pass, [c.to_json() for c in r.failed()]


def test_wrong_flow_is_caught():
    cfg = BlockConfig((2, 1), ["1/2", "3"])
    wrong = BlockConfig((2, 1), ["3", "1/2"])
    seq = hierarchy_generate(operator_L(wrong), a0_poly(wrong), 2)
    r = flows_are_symmetries(cfg, [2, 3, 5], seq)
    assert r["d_nabla_V0"].passed and not r["d_nabla_V1"].passed


def test_flow_sequence_json():
    seq = hierarchy_generate(diagonal_L(2), weighted_trace([1, 1]), 2)
    j = seq.to_json()
    assert [s["k"] for s in j["steps"]] == [0, 1, 2]
    assert Poly.from_json(j["steps"][1]["a"], 2) == seq.a[1]


def test_flows_commute_with_L():
    cfg = BlockConfig((3, 1), ["1", "-2"])
    seq = hierarchy_generate(operator_L(cfg), a0_poly(cfg), 3)
    assert all(form_is_zero(commutator(V, seq.L)) for V in seq.V)
