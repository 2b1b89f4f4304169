"""Dual side of the bi-flat structure: E^{-1}, the product *, and Γ*."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .connection import ChristoffelTable, _coords
from .errors import NonInvertibleEuler
from .jordan import BlockConfig, Tensor3
from .kernel import is_zero, value_of

ZERO = Fraction(0)


def _require_dual_regular(config: BlockConfig, pt):
    for a in range(1, config.r + 1):
        if value_of(config.coord(pt, a, 1)) == 0:
            raise NonInvertibleEuler(f"u^(1({a})) = 0, so E has no inverse")


def euler_inverse(config: BlockConfig, point: Sequence) -> list:
    """Components (E^{-1})^i in flat order, solving E∘X = e block by block."""
    pt = _coords(config, point)
    _require_dual_regular(config, pt)
    out = []
    for a in range(1, config.r + 1):
        m = config.size(a)
        u = [config.coord(pt, a, s) for s in range(m + 1)]
        inv1 = 1 / u[1]
        x = [ZERO, inv1]
        for k in range(1, m):
            acc = ZERO
            for s in range(1, k + 1):
                acc = x[k - s + 1] * u[s + 1] + acc
            x.append(-(acc * inv1))
        out.extend(x[1:])
    return out


def _einv(config, einv, a, t):
    if t < 1 or t > config.size(a):
        return ZERO
    return einv[config.flat_index(a, t) - 1]


def dual_product(config: BlockConfig, point: Sequence) -> Tensor3:
    """c*^{i(a)}_{j(a)k(a)} = (E^{-1})^{(i-j-k+2)(a)}; zero across blocks."""
    einv = euler_inverse(config, point)
    entries = {}
    for a in range(1, config.r + 1):
        m = config.size(a)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                for k in range(j, m + 1):
                    v = _einv(config, einv, a, i - j - k + 2)
                    if not is_zero(v):
                        entries[(config.flat_index(a, i), config.flat_index(a, j), config.flat_index(a, k))] = v
    return Tensor3(config.n, entries)


def dual_gamma_closed(config: BlockConfig, point: Sequence, gamma: ChristoffelTable) -> ChristoffelTable:
    """Γ* from Γ by the explicit block correction terms."""
    pt = _coords(config, point)
    einv = euler_inverse(config, pt)
    total = sum(config.mweight(a) for a in range(1, config.r + 1))
    entries = dict(gamma.entries)

    def sub(key, v):
        entries[key] = entries.get(key, ZERO) - v

    for a in range(1, config.r + 1):
        m = config.size(a)
        others = total - config.mweight(a)
        for k in range(1, m + 1):
            coef = (1 - others) if k == 1 else (1 - total)
            for i in range(1, m + 1):
                for j in range(i, m + 1):
                    t = k - i - j + 2
                    if 1 <= t <= m:
                        sub((config.flat_index(a, k), config.flat_index(a, i), config.flat_index(a, j)),
                            _einv(config, einv, a, t) * coef)
        for b in range(1, config.r + 1):
            if b != a:
                fb = config.flat_index(b, 1)
                sub((config.flat_index(a, 1), fb, fb), config.mweight(b) / config.coord(pt, b, 1))
    return ChristoffelTable(config, pt, {k: v for k, v in entries.items() if not is_zero(v)}, dual=True)


def nabla_euler(gamma: Tensor3, point: Sequence) -> list:
    """∇_j E^i = δ^i_j + Σ_k Γ^i_{jk} u^k as a dense matrix M[i][j], 0-based."""
    n = len(point)
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            acc = Fraction(1) if i == j else ZERO
            for k in range(1, n + 1):
                g = gamma.get(i, j, k)
                if not is_zero(g):
                    acc = g * point[k - 1] + acc
            row.append(acc)
        out.append(row)
    return out


def dual_gamma_generic(config: BlockConfig, point: Sequence, gamma: ChristoffelTable,
                       symmetric: bool = True) -> ChristoffelTable:
    """Γ*^k_{ij} = Γ^k_{ij} - c*^l_{ji} ∇_l E^k, assembled by plain contraction.

    With ``symmetric=False`` both orders (i, j) are computed independently and
    returned as a dict keyed by ordered triples, for torsion checks.
    """
    pt = _coords(config, point)
    cstar = dual_product(config, pt)
    nE = nabla_euler(gamma, pt)
    n = config.n
    entries = {}
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1 if not symmetric else i, n + 1):
                acc = gamma.get(k, i, j)
                for l in range(1, n + 1):
                    c = cstar.get(l, j, i)
                    if not is_zero(c):
                        acc = acc - c * nE[k - 1][l - 1]
                if not is_zero(acc):
                    entries[(k, i, j)] = acc
    if not symmetric:
        return entries
    return ChristoffelTable(config, pt, entries, dual=True)
