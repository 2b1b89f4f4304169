"""Christoffel symbols of the natural connection of the Lauricella structure.

All functions accept coordinates that are either rationals or :class:`Jet1`
values; with jets the results carry their exact first partials.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, NonRegularPoint, NotSemisimpleConfig, NotSingleBlock
from .jordan import BlockConfig, Tensor3, is_regular
from .kernel import Jet1, format_rational, is_zero, parse_rational, value_of

ZERO = Fraction(0)


def _coords(config: BlockConfig, point: Sequence) -> list:
    pt = [x if isinstance(x, Jet1) else parse_rational(x) for x in point]
    if len(pt) != config.n:
        raise IndexOutOfRange(f"point has {len(pt)} coordinates, expected {config.n}")
    return pt


def _require_regular(config, pt):
    if not is_regular(config, pt):
        raise NonRegularPoint(
            "point is not regular: need u^{2(a)} != 0 on blocks of size >= 2 "
            "and pairwise distinct block eigenvalues u^{1(a)}")


class SeedFamilies:
    """The seeds g^{(a)}_b(t) and h_a(t) at one point, computed once.

    g is filled first since it only depends on itself; h then uses the
    diagonal sums Γ^{s(a)}_{1(a)1(a)} = -Σ_{σ≠a} g^{(a)}_σ(s).
    """

    def __init__(self, config: BlockConfig, point: Sequence):
        self.config = config
        pt = _coords(config, point)
        _require_regular(config, pt)
        self.point = pt
        r = config.r
        self.g = {}
        for a in range(1, r + 1):
            m = config.size(a)
            ua = [config.coord(pt, a, s) for s in range(m + 1)]
            for b in range(1, r + 1):
                if b == a:
                    continue
                inv_d = 1 / (ua[1] - config.coord(pt, b, 1))
                seq = [ZERO] * (m + 1)
                seq[1] = config.mweight(b) * inv_d
                for t in range(2, m + 1):
                    acc = ZERO
                    for s in range(2, t + 1):
                        acc = seq[t - s + 1] * ua[s] + acc
                    seq[t] = -(acc * inv_d)
                self.g[(a, b)] = seq
        self.g11 = {}
        for a in range(1, r + 1):
            m = config.size(a)
            seq = [ZERO] * (m + 1)
            for s in range(1, m + 1):
                acc = ZERO
                for b in range(1, r + 1):
                    if b != a:
                        acc = self.g[(a, b)][s] + acc
                seq[s] = -acc
            self.g11[a] = seq
        self.h = {}
        for a in range(1, r + 1):
            m = config.size(a)
            seq = [ZERO] * (m + 1)
            if m >= 2:
                u = [config.coord(pt, a, s) for s in range(m + 1)]
                inv_u2 = 1 / u[2]
                g11 = self.g11[a]
                seq[2] = -config.mweight(a) * inv_u2
                for t in range(3, m + 1):
                    acc = ZERO
                    for l in range(1, t - 2):
                        acc = (seq[l + 2] - g11[l]) * u[t - l] + acc
                    seq[t] = g11[t - 2] - seq[2] * u[t] * inv_u2 - acc * inv_u2
            self.h[a] = seq

    def seed(self, a: int, b: int, t: int):
        """g^{(a)}_b(t) = Γ^{t(a)}_{1(b)1(a)} for b != a."""
        if t <= 0 or t > self.config.size(a):
            return ZERO
        return self.g[(a, b)][t]

    def diag11(self, a: int, s: int):
        """Γ^{s(a)}_{1(a)1(a)}."""
        if s <= 0 or s > self.config.size(a):
            return ZERO
        return self.g11[a][s]

    def hseq(self, a: int, t: int):
        """h_a(t) = Γ^{t(a)}_{2(a)2(a)}."""
        if t <= 1 or t > self.config.size(a):
            return ZERO
        return self.h[a][t]

    def entry(self, k: int, i: int, j: int):
        cfg = self.config
        gc, kk = cfg.block_of(k)
        a, ii = cfg.block_of(i)
        b, jj = cfg.block_of(j)
        if a == b == gc:
            if ii == 1:
                return self.diag11(gc, kk - jj + 1)
            if jj == 1:
                return self.diag11(gc, kk - ii + 1)
            return self.hseq(gc, kk - ii - jj + 4)
        if a == gc:
            return self.seed(gc, b, kk - ii + 1) if jj == 1 else ZERO
        if b == gc:
            return self.seed(gc, a, kk - jj + 1) if ii == 1 else ZERO
        if a == b:
            return -self.seed(gc, a, kk) if ii == jj == 1 else ZERO
        return ZERO


class ChristoffelTable(Tensor3):
    """Γ or Γ* at one point, with the configuration it belongs to."""

    def __init__(self, config: BlockConfig, point, entries=None, dual: bool = False):
        super().__init__(config.n, entries)
        self.config = config
        self.point = list(point)
        self.dual = dual

    def to_json(self):
        out = []
        for (k, i, j), v in self.items():
            val = value_of(v)
            if val != 0:
                row = {"k": k, "i": i, "j": j, "value": format_rational(val)}
                if self.dual:
                    row["dual"] = True
                out.append(row)
        return out


def gamma_seed(config: BlockConfig, point: Sequence, a: int, b: int, t: int):
    if a == b:
        raise IndexOutOfRange("the seed g^{(a)}_b needs two distinct blocks")
    if not (1 <= a <= config.r and 1 <= b <= config.r):
        raise IndexOutOfRange(f"block indices must lie in 1..{config.r}")
    return SeedFamilies(config, point).seed(a, b, t)


def gamma_entry(config: BlockConfig, point: Sequence, k: int, i: int, j: int):
    n = config.n
    for x in (k, i, j):
        if not 1 <= x <= n:
            raise IndexOutOfRange(f"flat index {x} outside 1..{n}")
    return SeedFamilies(config, point).entry(k, i, j)


def gamma_table(config: BlockConfig, point: Sequence) -> ChristoffelTable:
    seeds = SeedFamilies(config, point)
    n = config.n
    entries = {}
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                v = seeds.entry(k, i, j)
                if not is_zero(v):
                    entries[(k, i, j)] = v
    return ChristoffelTable(config, seeds.point, entries)


# ---------------------------------------------------------------- oracles


def gamma_semisimple_oracle(config: BlockConfig, point: Sequence) -> ChristoffelTable:
    """Closed form for configurations made only of 1x1 blocks."""
    if any(m != 1 for m in config.sizes):
        raise NotSemisimpleConfig(f"sizes {config.sizes} are not all 1")
    pt = _coords(config, point)
    _require_regular(config, pt)
    n = config.n
    eps = config.weights
    entries = {}
    for i in range(n):
        diag = ZERO
        for j in range(n):
            if i == j:
                continue
            v = eps[j] / (pt[i] - pt[j])
            entries[(i + 1, i + 1, j + 1)] = v
            entries[(i + 1, j + 1, j + 1)] = -v
            diag = v + diag
        entries[(i + 1, i + 1, i + 1)] = -diag
    return ChristoffelTable(config, pt, {k: v for k, v in entries.items() if not is_zero(v)})


def gamma_single_block_oracle(config: BlockConfig, point: Sequence) -> ChristoffelTable:
    """One Jordan block: every entry is a shift of Γ^p_{22}, built upward in p."""
    if config.r != 1:
        raise NotSingleBlock(f"{config.r} blocks given")
    pt = _coords(config, point)
    m = config.n
    if m >= 2 and value_of(pt[1]) == 0:
        raise NonRegularPoint("u^2 vanishes")
    eps = m * config.weights[0]
    u = [ZERO] + pt
    top = {}
    if m >= 2:
        top[2] = -eps / u[2]
        for p in range(2, m):
            acc = ZERO
            for s in range(1, p):
                acc = u[2 + s] * top[p + 1 - s] + acc
            top[p + 1] = -acc / u[2]
    entries = {}
    for k in range(1, m + 1):
        for i in range(2, m + 1):
            for j in range(i, m + 1):
                if k - i - j >= -2:
                    v = top[k + 4 - i - j]
                    if not is_zero(v):
                        entries[(k, i, j)] = v
    return ChristoffelTable(config, pt, entries)


def scale_point(point: Sequence, lam) -> list:
    lam = Fraction(lam)
    return [parse_rational(x) * lam for x in point]
