import random
from fractions import Fraction as F

import hypothesis.strategies as st
import pytest
from hypothesis import assume, given

from conftest import small_rationals
from lauricella.errors import CoincidingSpeeds, MalformedInput
from lauricella.hierarchy import diagonal_L, hierarchy_generate, weighted_trace
from lauricella.kernel import Poly
from lauricella.tsarev import DiagonalSystem, candidate_residuals, epsilon_system, residuals, tsarev_symbol

eps_lists = st.lists(small_rationals.filter(bool), min_size=3, max_size=4)


def distinct_point(sys, rng):
    while True:
        pt = [F(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(sys.n)]
        vals = [p.eval(pt) for p in sys.speeds]
        if len(set(vals)) == len(vals):
            return pt


def random_system(rng, n):
    speeds = []
    for _ in range(n):
        terms = {tuple(rng.randint(0, 2) for _ in range(n)): F(rng.randint(-5, 5), rng.randint(1, 3))
                 for _ in range(rng.randint(1, 4))}
        speeds.append(Poly(n, terms))
    return DiagonalSystem(tuple(speeds))


def non_rich():
    u = [Poly.var(3, i) for i in (1, 2, 3)]
    return DiagonalSystem((u[1] + u[2], u[0], u[0] * 2))


@given(eps_lists, st.integers(0, 10**6))
def test_epsilon_symbols(eps, seed):
    sys = epsilon_system(eps)
    pt = distinct_point(sys, random.Random(seed))
    for i in range(1, sys.n + 1):
        for j in range(1, sys.n + 1):
            if i != j:
                assert tsarev_symbol(sys, i, j, pt) == eps[j - 1] / (pt[i - 1] - pt[j - 1])


@given(eps_lists, st.integers(0, 10**6))
def test_epsilon_system_is_rich(eps, seed):
    sys = epsilon_system(eps)
    r = residuals(sys, distinct_point(sys, random.Random(seed)))
    assert r.all_pass and r.names() == ["semi_hamiltonian", "darboux_tsarev", "shder", "tsarev_identity"]


@given(st.integers(3, 4), st.integers(0, 10**6))
def test_identity_holds_for_any_system(n, seed):
    rng = random.Random(seed)
    sys = random_system(rng, n)
    vals = None
    for _ in range(50):
        pt = [F(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(n)]
        vals = [p.eval(pt) for p in sys.speeds]
        if len(set(vals)) == n:
            break
    assume(len(set(vals)) == n)
    assert residuals(sys, pt)["tsarev_identity"].passed


def test_non_rich_control():
    r = residuals(non_rich(), [1, 2, 5])
    assert not r["semi_hamiltonian"].passed
    assert not r["shder"].passed
    # the two routes to the same condition report the same worst residual
    assert abs(r["semi_hamiltonian"].value) == abs(r["shder"].value)


def test_speeds_independent_of_u_j_give_zero_symbol():
    u = [Poly.var(2, i) for i in (1, 2)]
    assert tsarev_symbol(DiagonalSystem((u[0] * u[0], u[1] * 3)), 1, 2, [1, 2]) == 0


def test_coinciding_speeds():
    u = [Poly.var(2, i) for i in (1, 2)]
    sys = DiagonalSystem((u[0], u[1]))
    with pytest.raises(CoincidingSpeeds):
        tsarev_symbol(sys, 1, 2, [3, 3])
    with pytest.raises(CoincidingSpeeds):
        residuals(sys, [3, 3])


@given(eps_lists, st.integers(0, 10**6))
def test_candidates(eps, seed):
    n = len(eps)
    sys = epsilon_system(eps)
    pt = distinct_point(sys, random.Random(seed))
    assert candidate_residuals(sys, sys.speeds, Poly.const(n, 7), pt).all_pass
    seq = hierarchy_generate(diagonal_L(n), weighted_trace(eps), 2)
    w = [seq.V[2][i][i] for i in range(n)]
    assert candidate_residuals(sys, w, None, pt)["symmetry"].passed


def test_bad_candidate_fails():
    sys = epsilon_system([1, 2, 3])
    u = [Poly.var(3, i) for i in (1, 2, 3)]
    pt = [F(1), F(4), F(-2)]
    r = candidate_residuals(sys, [u[1], u[2], u[0]], u[0] * u[1], pt)
    assert not r["symmetry"].passed and not r["conservation"].passed


def test_json_round_trip():
    sys = non_rich()
    assert DiagonalSystem.from_json(sys.to_json()) == sys
    with pytest.raises(MalformedInput):
        DiagonalSystem.from_json('{"speed": []}')
