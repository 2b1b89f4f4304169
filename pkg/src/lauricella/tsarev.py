"""Diagonal systems u^i_t = v^i(u) u^i_x and their integrability residuals.

Speeds are polynomials. Every quantity is built from exact first and second
partials of the speeds at a rational point; no rational functions are formed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .errors import CoincidingSpeeds, IndexOutOfRange, MalformedInput
from .kernel import Jet1, Poly, parse_rational
from .report import VerificationReport, scan

ZERO = Fraction(0)


@dataclass(frozen=True)
class DiagonalSystem:
    speeds: tuple

    def __post_init__(self):
        speeds = tuple(self.speeds)
        if not speeds:
            raise MalformedInput("a system needs at least one speed")
        n = len(speeds)
        if any(not isinstance(p, Poly) or p.n != n for p in speeds):
            raise MalformedInput(f"every speed must be a polynomial in {n} variables")
        object.__setattr__(self, "speeds", speeds)

    @property
    def n(self) -> int:
        return len(self.speeds)

    @classmethod
    def from_json(cls, data) -> "DiagonalSystem":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict) or not isinstance(data.get("speeds"), list):
            raise MalformedInput('expected {"speeds": [poly, ...]}')
        n = len(data["speeds"])
        return cls(tuple(Poly.from_json(p, n) for p in data["speeds"]))

    def to_json(self):
        return {"speeds": [p.to_json() for p in self.speeds]}


def epsilon_system(weights: Sequence) -> DiagonalSystem:
    """v^i = u^i - Σ_k ε_k u^k."""
    n = len(weights)
    trace = sum((Poly.var(n, k + 1) * parse_rational(w) for k, w in enumerate(weights)), Poly(n))
    return DiagonalSystem(tuple(Poly.var(n, i + 1) - trace for i in range(n)))


class _Data:
    """v, ∂v and ∂∂v at a point, with the distinct-speed check done once."""

    def __init__(self, sys: DiagonalSystem, point: Sequence):
        pt = [parse_rational(x) for x in point]
        if len(pt) != sys.n:
            raise IndexOutOfRange(f"point has {len(pt)} coordinates, expected {sys.n}")
        jets = [p.jet(pt, 2) for p in sys.speeds]
        self.n = sys.n
        self.v = [j.value for j in jets]
        self.dv = [j.gradient for j in jets]
        self.ddv = [j.hessian for j in jets]
        self.jets = jets
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.v[i] == self.v[j]:
                    raise CoincidingSpeeds(f"v^{i + 1} = v^{j + 1} at the point")

    def gamma(self, i, j):
        """Γ^i_{ij} = ∂_j v^i / (v^j - v^i), 0-based."""
        return self.dv[i][j] / (self.v[j] - self.v[i])

    def d_gamma(self, i, j, k):
        """∂_k Γ^i_{ij} by the quotient rule."""
        den = self.v[j] - self.v[i]
        num = self.ddv[i][j][k] * den - self.dv[i][j] * (self.dv[j][k] - self.dv[i][k])
        return num / (den * den)

    def gamma_jet(self, i, j) -> Jet1:
        """Γ^i_{ij} as a Jet1, built from jets instead of the quotient rule."""
        return self.jets[i].partial_jet(j) / (self.jets[j] - self.jets[i]).to_jet1()


def tsarev_symbol(sys: DiagonalSystem, i: int, j: int, point: Sequence) -> Fraction:
    """Γ^i_{ij} (1-based indices, i ≠ j)."""
    if i == j or not (1 <= i <= sys.n and 1 <= j <= sys.n):
        raise IndexOutOfRange(f"need distinct indices in 1..{sys.n}, got ({i}, {j})")
    pt = [parse_rational(x) for x in point]
    vi, vj = sys.speeds[i - 1].eval(pt), sys.speeds[j - 1].eval(pt)
    if vi == vj:
        raise CoincidingSpeeds(f"v^{i} = v^{j} at the point")
    return sys.speeds[i - 1].partial(j).eval(pt) / (vj - vi)


def _triples(n):
    return permutations(range(n), 3)


def residuals(sys: DiagonalSystem, point: Sequence) -> VerificationReport:
    D = _Data(sys, point)
    n = D.n

    def semi_hamiltonian():
        # ∂_j(∂_k v^i/(v^k - v^i)) - ∂_k(∂_j v^i/(v^j - v^i)), expanded by hand
        for i, j, k in _triples(n):
            if j < k:
                yield (i + 1, j + 1, k + 1), D.d_gamma(i, k, j) - D.d_gamma(i, j, k)

    def lhs(i, j, k):
        # ∂_iΓ^k_{kj} + Γ^k_{ki}Γ^k_{kj} - Γ^k_{kj}Γ^j_{ji} - Γ^k_{ki}Γ^i_{ij}
        g = D.gamma
        return D.d_gamma(k, j, i) + g(k, i) * g(k, j) - g(k, j) * g(j, i) - g(k, i) * g(i, j)

    def darboux_tsarev():
        for i, j, k in _triples(n):
            yield (i + 1, j + 1, k + 1), lhs(i, j, k)

    def shder():
        # ∂_jΓ^i_{ik} - ∂_kΓ^i_{ij} read off jet-lifted symbols
        for i, j, k in _triples(n):
            if j < k:
                yield (i + 1, j + 1, k + 1), D.gamma_jet(i, k).partials[j] - D.gamma_jet(i, j).partials[k]

    def identity():
        for i, j, k in _triples(n):
            bracket = D.d_gamma(k, i, j) - D.d_gamma(k, j, i)
            rhs = (D.v[i] - D.v[k]) / (D.v[j] - D.v[i]) * bracket
            yield (i + 1, j + 1, k + 1), lhs(i, j, k) - rhs

    report = VerificationReport()
    report.add(scan("semi_hamiltonian", semi_hamiltonian()))
    report.add(scan("darboux_tsarev", darboux_tsarev()))
    report.add(scan("shder", shder()))
    report.add(scan("tsarev_identity", identity()))
    return report


def candidate_residuals(sys: DiagonalSystem, w=None, h=None, point=()) -> VerificationReport:
    """Residuals of a candidate symmetry w (speeds) and conserved density h."""
    D = _Data(sys, point)
    n = D.n
    pt = [parse_rational(x) for x in point]
    report = VerificationReport()
    if w is not None:
        if len(w) != n:
            raise MalformedInput(f"symmetry needs {n} speeds")
        wj = [p.jet(pt) for p in w]
        report.add(scan("symmetry", (((i + 1, j + 1), wj[i].partials[j] - D.gamma(i, j) * (wj[j].value - wj[i].value))
                                     for i in range(n) for j in range(n) if i != j)))
    if h is not None:
        hj = h.jet(pt, 2)
        report.add(scan("conservation", (((i + 1, j + 1),
                                          hj.hessian[i][j] - D.gamma(i, j) * hj.gradient[i] - D.gamma(j, i) * hj.gradient[j])
                                         for i in range(n) for j in range(n) if i < j)))
    return report
