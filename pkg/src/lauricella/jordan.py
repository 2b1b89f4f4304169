"""Jordan-block configurations in canonical coordinates.

Coordinates are labelled u^{j(a)}: inner index j inside block a, with flat
index j(a) = m_1 + ... + m_{a-1} + j.  All indices in this module are 1-based,
matching the usual tensor notation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, MalformedInput
from .kernel import Poly, format_rational, parse_rational, value_of


@dataclass(frozen=True)
class BlockConfig:
    sizes: tuple
    weights: tuple

    def __post_init__(self):
        sizes = tuple(self.sizes)
        weights = tuple(parse_rational(w) for w in self.weights)
        if not sizes:
            raise MalformedInput("a configuration needs at least one block")
        if not all(isinstance(m, int) and not isinstance(m, bool) and m >= 1 for m in sizes):
            raise MalformedInput(f"block sizes must be positive integers, got {sizes!r}")
        if len(weights) != len(sizes):
            raise MalformedInput(f"{len(sizes)} blocks but {len(weights)} weights")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "weights", weights)
        offsets, acc = [], 0
        for m in sizes:
            offsets.append(acc)
            acc += m
        object.__setattr__(self, "_offsets", tuple(offsets))

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def r(self) -> int:
        return len(self.sizes)

    def size(self, a: int) -> int:
        return self.sizes[a - 1]

    def weight(self, a: int) -> Fraction:
        return self.weights[a - 1]

    def mweight(self, a: int) -> Fraction:
        """m_a * eps_a."""
        return self.sizes[a - 1] * self.weights[a - 1]

    def flat_index(self, a: int, j: int) -> int:
        if not 1 <= a <= self.r:
            raise IndexOutOfRange(f"block {a} outside 1..{self.r}")
        if not 1 <= j <= self.sizes[a - 1]:
            raise IndexOutOfRange(f"inner index {j} outside 1..{self.sizes[a - 1]} in block {a}")
        return self._offsets[a - 1] + j

    def block_of(self, i: int) -> tuple:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"flat index {i} outside 1..{self.n}")
        for a, (off, m) in enumerate(zip(self._offsets, self.sizes), start=1):
            if i <= off + m:
                return a, i - off
        raise AssertionError("unreachable")

    def labels(self):
        """(flat, block, inner) for every coordinate, in flat order."""
        return [(self._offsets[a] + j, a + 1, j) for a in range(self.r) for j in range(1, self.sizes[a] + 1)]

    def coord(self, point: Sequence, a: int, j: int):
        """u^{j(a)} read from a flat point; zero when j is outside the block."""
        if j < 1 or j > self.sizes[a - 1]:
            return Fraction(0)
        return point[self._offsets[a - 1] + j - 1]

    def to_json(self):
        return {"sizes": list(self.sizes), "weights": [format_rational(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data) -> "BlockConfig":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict) or "sizes" not in data or "weights" not in data:
            raise MalformedInput('config must look like {"sizes": [...], "weights": [...]}')
        if not isinstance(data["sizes"], list) or not isinstance(data["weights"], list):
            raise MalformedInput("sizes and weights must be lists")
        return cls(tuple(data["sizes"]), tuple(data["weights"]))


class Tensor3:
    """Sparse (upper, lower, lower) tensor, symmetric in the lower pair.

    Keys are stored with ``i <= j``; missing keys are exact zeros.
    """

    def __init__(self, n: int, entries=None):
        self.n = n
        self.entries = {}
        for (k, i, j), v in (entries or {}).items():
            self.entries[(k, min(i, j), max(i, j))] = v

    def get(self, k: int, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.entries.get((k, i, j), Fraction(0))

    __call__ = get

    def items(self):
        return sorted(self.entries.items())

    def __len__(self):
        return len(self.entries)

    def values_only(self) -> "Tensor3":
        return Tensor3(self.n, {key: value_of(v) for key, v in self.entries.items()})


def canonical_fields(config: BlockConfig):
    """Unit e, Euler field E (as polynomials) and the structure constants c."""
    n = config.n
    e = [0] * n
    for a in range(1, config.r + 1):
        e[config.flat_index(a, 1) - 1] = 1
    E = [Poly.var(n, i) for i in range(1, n + 1)]
    c = {}
    for a in range(1, config.r + 1):
        m = config.size(a)
        for i in range(1, m + 1):
            for j in range(i, m + 1):
                k = i + j - 1
                if k <= m:
                    c[(config.flat_index(a, k), config.flat_index(a, i), config.flat_index(a, j))] = Fraction(1)
    return e, E, Tensor3(n, c)


def operator_L(config: BlockConfig):
    """L = E∘ as a matrix of polynomials; L[row][col] with 0-based indices."""
    n = config.n
    L = [[Poly(n) for _ in range(n)] for _ in range(n)]
    for a in range(1, config.r + 1):
        m = config.size(a)
        for j in range(1, m + 1):
            for k in range(1, j + 1):
                L[config.flat_index(a, j) - 1][config.flat_index(a, k) - 1] = Poly.var(n, config.flat_index(a, j - k + 1))
    return L


def a0_poly(config: BlockConfig) -> Poly:
    n = config.n
    out = Poly(n)
    for a in range(1, config.r + 1):
        out = out + Poly.var(n, config.flat_index(a, 1)) * config.mweight(a)
    return out


def is_regular(config: BlockConfig, point: Sequence, dual: bool = False) -> bool:
    if len(point) != config.n:
        return False
    vals = [value_of(x) for x in point]
    firsts = []
    for a in range(1, config.r + 1):
        if config.size(a) >= 2 and config.coord(vals, a, 2) == 0:
            return False
        firsts.append(config.coord(vals, a, 1))
    if len(set(firsts)) != len(firsts):
        return False
    if dual and any(x == 0 for x in firsts):
        return False
    return True


def parse_point(data, n: int | None = None) -> list:
    """Accept a JSON list of "p/q" strings or {"coords": [...]}."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"point is not valid JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("coords")
    if not isinstance(data, list):
        raise MalformedInput("point must be a list of rationals")
    pt = [parse_rational(x) for x in data]
    if n is not None and len(pt) != n:
        raise MalformedInput(f"point has {len(pt)} coordinates, expected {n}")
    return pt
