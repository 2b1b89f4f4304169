"""Frölicher–Nijenhuis machinery over the polynomial ring.

Matrices are lists of rows of :class:`Poly`; ``L[i][j]`` is L^{i+1}_{j+1}.
Tensor outputs are nested lists with 0-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import MalformedInput, NotClosed, TorsionNotZero
from .connection import gamma_table
from .kernel import Poly, exterior_d, form_is_zero, grad, integrate_radial, parse_rational
from .report import VerificationReport, scan
from .tensors import d_nabla, dense, flat_items


def identity(n: int):
    return [[Poly.const(n, 1 if i == j else 0) for j in range(n)] for i in range(n)]


def matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = Poly(A[i][0].n)
            for k in range(len(B)):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def matsub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scalar_identity(p: Poly, n: int):
    return [[p if i == j else Poly(p.n) for j in range(n)] for i in range(n)]


def commutator(A, B):
    return matsub(matmul(A, B), matmul(B, A))


def _check_square(L):
    n = len(L)
    if n == 0 or any(len(row) != n for row in L):
        raise MalformedInput("operator must be a nonempty square matrix")
    if any(p.n != n for row in L for p in row):
        raise MalformedInput("operator entries must be polynomials in n variables")
    return n


def nijenhuis_torsion(L):
    """N^k_{ij} = L^s_i ∂_s L^k_j - L^s_j ∂_s L^k_i - L^k_s (∂_i L^s_j - ∂_j L^s_i), as N[k][i][j]."""
    n = _check_square(L)
    dL = [[[L[a][b].partial(s + 1) for s in range(n)] for b in range(n)] for a in range(n)]
    N = [[[Poly(n) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                acc = Poly(n)
                for s in range(n):
                    acc = acc + L[s][i] * dL[k][j][s] - L[s][j] * dL[k][i][s]
                    acc = acc - L[k][s] * (dL[s][j][i] - dL[s][i][j])
                N[k][i][j] = acc
    return N


# Vector fields as lists of Poly components.

def _apply(L, X):
    n = len(L)
    return [sum((L[i][j] * X[j] for j in range(n)), Poly(n)) for i in range(n)]


def _bracket(X, Y):
    n = len(X)
    return [sum((X[s] * Y[i].partial(s + 1) - Y[s] * X[i].partial(s + 1) for s in range(n)), Poly(n))
            for i in range(n)]


def _basis(n, i):
    return [Poly.const(n, 1 if k == i else 0) for k in range(n)]


def nijenhuis_from_brackets(L):
    """N(X,Y) = [LX,LY] - L[LX,Y] - L[X,LY] + L^2[X,Y] on coordinate fields."""
    n = _check_square(L)
    N = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            X, Y = _basis(n, i), _basis(n, j)
            LX, LY = _apply(L, X), _apply(L, Y)
            t1 = _bracket(LX, LY)
            t2 = _apply(L, _bracket(LX, Y))
            t3 = _apply(L, _bracket(X, LY))
            t4 = _apply(L, _apply(L, _bracket(X, Y)))
            for k in range(n):
                N[k][i][j] = t1[k] - t2[k] - t3[k] + t4[k]
    return N


def d_L_function(f: Poly, L):
    """(d_L f)_i = L^j_i ∂_j f."""
    n = _check_square(L)
    df = grad(f)
    return tuple(sum((L[j][i] * df[j] for j in range(n)), Poly(n)) for i in range(n))


def d_L_oneform(omega: Sequence[Poly], L):
    """(d_L ω)_{ij} = L^s_i ∂_s ω_j - L^s_j ∂_s ω_i - ω_s (∂_i L^s_j - ∂_j L^s_i)."""
    n = _check_square(L)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Poly(n)
            for s in range(n):
                acc = acc + L[s][i] * omega[j].partial(s + 1) - L[s][j] * omega[i].partial(s + 1)
                acc = acc - omega[s] * (L[s][j].partial(i + 1) - L[s][i].partial(j + 1))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def d_L_oneform_from_brackets(omega: Sequence[Poly], L):
    """(d_L ω)(X,Y) = (LX)ω(Y) - (LY)ω(X) - ω([LX,Y] + [X,LY] - L[X,Y])."""
    n = _check_square(L)

    def pair(w, X):
        return sum((w[s] * X[s] for s in range(n)), Poly(n))

    def deriv(X, f):
        return sum((X[s] * f.partial(s + 1) for s in range(n)), Poly(n))

    out = []
    for i in range(n):
        row = []
        for j in range(n):
            X, Y = _basis(n, i), _basis(n, j)
            LX, LY = _apply(L, X), _apply(L, Y)
            LXY = [a + b - c for a, b, c in zip(_bracket(LX, Y), _bracket(X, LY), _apply(L, _bracket(X, Y)))]
            row.append(deriv(LX, pair(omega, Y)) - deriv(LY, pair(omega, X)) - pair(omega, LXY))
        out.append(tuple(row))
    return tuple(out)


@dataclass
class FlowSequence:
    L: list
    a: list = field(default_factory=list)
    V: list = field(default_factory=list)

    def to_json(self):
        return {
            "steps": [
                {"k": k, "a": self.a[k].to_json(), "V": [[p.to_json() for p in row] for row in self.V[k]]}
                for k in range(len(self.a))
            ]
        }


def hierarchy_generate(L, a0: Poly, steps: int) -> FlowSequence:
    """a_{k+1} from da_{k+1} = d_L a_k - a_k da_0, and V_{k+1} = V_k L - a_k I."""
    n = _check_square(L)
    if a0.n != n:
        raise MalformedInput("a0 must be a polynomial in the same variables as L")
    if not form_is_zero(nijenhuis_torsion(L)):
        raise TorsionNotZero("operator has nonzero Nijenhuis torsion")
    if not form_is_zero(exterior_d(d_L_function(a0, L))):
        raise NotClosed("d(d_L a0) is not zero")
    da0 = grad(a0)
    seq = FlowSequence(L=L, a=[a0], V=[identity(n)])
    for k in range(steps):
        ak = seq.a[k]
        dl = d_L_function(ak, L)
        omega = tuple(x - ak * y for x, y in zip(dl, da0))
        try:
            seq.a.append(integrate_radial(omega))
        except NotClosed as exc:
            raise NotClosed(f"hierarchy step {k + 1}: {exc}") from None
        seq.V.append(matsub(matmul(seq.V[k], L), scalar_identity(ak, n)))
    return seq


def kodama_konopelchenko_L(n: int):
    """Constant nilpotent shift: ones on the superdiagonal."""
    return [[Poly.const(n, 1 if j == i + 1 else 0) for j in range(n)] for i in range(n)]


def diagonal_L(n: int):
    return [[Poly.var(n, i + 1) if i == j else Poly(n) for j in range(n)] for i in range(n)]


def weighted_trace(weights) -> Poly:
    """Σ_k ε_k u^k, the a_0 of the generalized ε-system."""
    n = len(weights)
    return sum((Poly.var(n, k + 1) * parse_rational(w) for k, w in enumerate(weights)), Poly(n))


def _poly_witness(p: Poly):
    """Zero for the zero polynomial, else one of its coefficients."""
    return next(iter(p.terms.values()), 0)


def flows_are_symmetries(config, point, seq: FlowSequence) -> VerificationReport:
    """d_∇V_k = 0 for the natural connection at ``point`` and [V_j, V_k] = 0."""
    pt = [parse_rational(x) for x in point]
    G = dense(gamma_table(config, pt), config.n)
    report = VerificationReport()
    for k, V in enumerate(seq.V):
        T = [[p.jet(pt) for p in row] for row in V]
        report.add(scan(f"d_nabla_V{k}", flat_items(d_nabla(T, G))))

    def commutators():
        for j in range(len(seq.V)):
            for k in range(j + 1, len(seq.V)):
                for a, row in enumerate(commutator(seq.V[j], seq.V[k])):
                    for b, p in enumerate(row):
                        yield (j, k, a + 1, b + 1), _poly_witness(p)

    report.add(scan("flows_commute", commutators()))
    return report
