"""Exact scalars, forward-mode jets, sparse polynomials and coordinate forms.

Rationals are plain :class:`fractions.Fraction` values.  Jets carry a value
together with exact partial derivatives with respect to every coordinate, so
the same arithmetic code evaluates a quantity or differentiates it.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import IndexOutOfRange, MalformedInput, NotClosed

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text) -> Fraction:
    """Read a rational from ``"p/q"``, ``"p"`` or an int."""
    if isinstance(text, bool):
        raise MalformedInput(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise MalformedInput(f"not a rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise MalformedInput(f"zero denominator: {text!r}") from None


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- jets


class Jet1:
    """Value plus exact gradient."""

    __slots__ = ("value", "partials")

    def __init__(self, value, partials: Sequence):
        self.value = value
        self.partials = tuple(partials)

    @classmethod
    def constant(cls, value, n: int) -> "Jet1":
        return cls(Fraction(value), (Fraction(0),) * n)

    @classmethod
    def variable(cls, value, i: int, n: int) -> "Jet1":
        """Coordinate u^{i+1} (0-based ``i``) at the given value."""
        p = [Fraction(0)] * n
        p[i] = Fraction(1)
        return cls(Fraction(value), p)

    def __add__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.value + other.value,
                        [a + b for a, b in zip(self.partials, other.partials)])
        return Jet1(self.value + other, self.partials)

    __radd__ = __add__

    def __neg__(self):
        return Jet1(-self.value, [-a for a in self.partials])

    def __sub__(self, other):
        if isinstance(other, Jet1):
            return Jet1(self.value - other.value,
                        [a - b for a, b in zip(self.partials, other.partials)])
        return Jet1(self.value - other, self.partials)

    def __rsub__(self, other):
        return Jet1(other - self.value, [-a for a in self.partials])

    def __mul__(self, other):
        if isinstance(other, Jet1):
            f, g = self.value, other.value
            return Jet1(f * g, [f * b + g * a for a, b in zip(self.partials, other.partials)])
        if other == 0:
            return Jet1(Fraction(0), (Fraction(0),) * len(self.partials))
        return Jet1(self.value * other, [a * other for a in self.partials])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Jet1.constant(1, len(self.partials))
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self) -> "Jet1":
        if self.value == 0:
            raise ZeroDivisionError("Jet1 reciprocal of zero value")
        r = 1 / Fraction(self.value)
        r2 = -r * r
        return Jet1(r, [a * r2 for a in self.partials])

    def __truediv__(self, other):
        if isinstance(other, Jet1):
            return self * other.reciprocal()
        inv = 1 / Fraction(other)
        return Jet1(self.value * inv, [a * inv for a in self.partials])

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __eq__(self, other):
        if isinstance(other, Jet1):
            return self.value == other.value and self.partials == other.partials
        return all(a == 0 for a in self.partials) and self.value == other

    def __hash__(self):
        return hash((self.value, self.partials))

    def is_zero(self) -> bool:
        return self.value == 0 and not any(self.partials)

    def partial(self, i: int):
        """0-based partial derivative."""
        return self.partials[i]

    def __repr__(self):
        parts = ", ".join(format_rational(a) for a in self.partials)
        return f"Jet1({format_rational(self.value)}; {parts})"


class Jet2:
    """Value, gradient and symmetric Hessian."""

    __slots__ = ("value", "gradient", "hessian")

    def __init__(self, value, gradient: Sequence, hessian: Sequence[Sequence]):
        self.value = value
        self.gradient = tuple(gradient)
        self.hessian = tuple(tuple(row) for row in hessian)

    @classmethod
    def constant(cls, value, n: int) -> "Jet2":
        z = Fraction(0)
        return cls(Fraction(value), (z,) * n, ((z,) * n,) * n)

    @classmethod
    def variable(cls, value, i: int, n: int) -> "Jet2":
        z = Fraction(0)
        g = [z] * n
        g[i] = Fraction(1)
        return cls(Fraction(value), g, ((z,) * n,) * n)

    def _lift(self, other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        return Jet2.constant(other, len(self.gradient))

    def __add__(self, other):
        o = self._lift(other)
        return Jet2(self.value + o.value,
                    [a + b for a, b in zip(self.gradient, o.gradient)],
                    [[a + b for a, b in zip(r, s)] for r, s in zip(self.hessian, o.hessian)])

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, [-a for a in self.gradient],
                    [[-a for a in r] for r in self.hessian])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            c = Fraction(other)
            return Jet2(self.value * c, [a * c for a in self.gradient],
                        [[a * c for a in r] for r in self.hessian])
        f, g = self.value, other.value
        df, dg = self.gradient, other.gradient
        n = len(df)
        hess = [[f * other.hessian[i][j] + g * self.hessian[i][j] + df[i] * dg[j] + df[j] * dg[i]
                 for j in range(n)] for i in range(n)]
        return Jet2(f * g, [f * b + g * a for a, b in zip(df, dg)], hess)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Jet2.constant(1, len(self.gradient))
        for _ in range(k):
            out = out * self
        return out

    def reciprocal(self) -> "Jet2":
        if self.value == 0:
            raise ZeroDivisionError("Jet2 reciprocal of zero value")
        g = Fraction(self.value)
        r = 1 / g
        r2 = r * r
        r3 = 2 * r2 * r
        dg = self.gradient
        n = len(dg)
        hess = [[-self.hessian[i][j] * r2 + dg[i] * dg[j] * r3 for j in range(n)] for i in range(n)]
        return Jet2(r, [-a * r2 for a in dg], hess)

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def partial_jet(self, i: int) -> Jet1:
        """The first partial ∂_i (0-based) as a Jet1 carrying its own gradient."""
        return Jet1(self.gradient[i], self.hessian[i])

    def to_jet1(self) -> Jet1:
        return Jet1(self.value, self.gradient)

    def __repr__(self):
        return f"Jet2({format_rational(self.value)}, grad={self.gradient})"


Scalar = Union[Fraction, Jet1, Jet2]


def value_of(x) -> Fraction:
    """Plain value of a scalar or jet."""
    return x.value if isinstance(x, (Jet1, Jet2)) else x


def is_zero(x) -> bool:
    if isinstance(x, Jet1):
        return x.is_zero()
    if isinstance(x, Jet2):
        return x.value == 0 and not any(x.gradient) and not any(any(r) for r in x.hessian)
    return x == 0


def lift_point(point: Sequence, order: int = 1):
    """Coordinates u^i as jets of the requested order."""
    n = len(point)
    cls = Jet1 if order == 1 else Jet2
    return [cls.variable(parse_rational(x), i, n) for i, x in enumerate(point)]


# ---------------------------------------------------------------- polynomials


class Poly:
    """Sparse polynomial in ``n`` variables with rational coefficients.

    ``terms`` maps exponent tuples to nonzero Fractions.  Treat instances as
    immutable.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise MalformedInput(f"exponent vector {exps} has wrong length for n={n}")
                c = Fraction(c)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        """The coordinate u^i, 1-based."""
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"variable index {i} outside 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise MalformedInput(f"variable count mismatch {self.n} vs {other.n}")
            return other
        return Poly.const(self.n, other)

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.n, {e: a * c for e, a in self.terms.items()})
        o = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / Fraction(c))

    def __pow__(self, k: int):
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        return self.terms == Poly.const(self.n, other).terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def partial(self, i: int) -> "Poly":
        """Formal ∂/∂u^i, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"variable index {i} outside 1..{self.n}")
        k = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                e2 = list(e)
                e2[k] -= 1
                out[tuple(e2)] = c * e[k]
        return Poly(self.n, out)

    def __call__(self, point):
        return self.eval(point)

    def eval(self, point):
        """Evaluate at a point whose entries may be rationals or jets."""
        if len(point) != self.n:
            raise MalformedInput(f"point has {len(point)} coordinates, expected {self.n}")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            total = term + total
        return total

    def jet(self, point, order: int = 1):
        """Exact jet of the polynomial at a rational point."""
        pt = [parse_rational(x) for x in point]
        if len(pt) != self.n:
            raise MalformedInput(f"point has {len(pt)} coordinates, expected {self.n}")
        grads = [self.partial(i + 1) for i in range(self.n)]
        value = self.eval(pt)
        g = [d.eval(pt) for d in grads]
        if order == 1:
            return Jet1(value, g)
        hess = [[grads[i].partial(j + 1).eval(pt) for j in range(self.n)] for i in range(self.n)]
        return Jet2(value, g, hess)

    def homogeneous_scaled(self, factor_of_degree) -> "Poly":
        """Divide each monomial of degree d by ``factor_of_degree(d)``."""
        return Poly(self.n, {e: c / factor_of_degree(sum(e)) for e, c in self.terms.items()})

    def to_json(self):
        return [{"coeff": format_rational(c), "exps": list(e)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "Poly":
        if not isinstance(data, list):
            raise MalformedInput("polynomial JSON must be a list of terms")
        terms: dict = {}
        for t in data:
            if not isinstance(t, dict) or "coeff" not in t or "exps" not in t:
                raise MalformedInput(f"bad polynomial term {t!r}")
            exps = t["exps"]
            if not isinstance(exps, list) or not all(isinstance(k, int) and k >= 0 for k in exps):
                raise MalformedInput(f"bad exponent vector {exps!r}")
            if n is None:
                n = len(exps)
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + parse_rational(t["coeff"])
        if n is None:
            raise MalformedInput("cannot infer variable count of an empty polynomial")
        return cls(n, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"u{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            out.append(format_rational(c) + ("*" + mono if mono else ""))
        return " + ".join(out)


def poly_partial(p: Poly, i: int) -> Poly:
    return p.partial(i)


def jet_lift(p: Poly, point, order: int = 1):
    return p.jet(point, order)


def poly_eval(p: Poly, point):
    return p.eval(point)


# ---------------------------------------------------------------- forms

OneForm = tuple
TwoForm = tuple


def grad(p: Poly) -> OneForm:
    return tuple(p.partial(i + 1) for i in range(p.n))


def exterior_d(omega: Sequence[Poly]) -> TwoForm:
    """Coordinate differential: result[i][j] = ∂_i ω_j − ∂_j ω_i."""
    n = len(omega)
    return tuple(tuple(omega[j].partial(i + 1) - omega[i].partial(j + 1) for j in range(n))
                 for i in range(n))


def form_is_zero(form) -> bool:
    if isinstance(form, Poly):
        return form.is_zero()
    return all(form_is_zero(x) for x in form)


def integrate_radial(omega: Sequence[Poly]) -> Poly:
    """Potential a with da = ω and a(0) = 0, by the radial homotopy formula."""
    omega = tuple(omega)
    if not omega:
        raise MalformedInput("empty one-form")
    n = omega[0].n
    if len(omega) != n:
        raise MalformedInput(f"one-form has {len(omega)} components in {n} variables")
    d = exterior_d(omega)
    for i in range(n):
        for j in range(i + 1, n):
            if not d[i][j].is_zero():
                raise NotClosed(f"d(omega)[{i + 1}][{j + 1}] = {d[i][j]!r} is not zero")
    s = Poly(n)
    for i, w in enumerate(omega):
        s = s + w * Poly.var(n, i + 1)
    return s.homogeneous_scaled(lambda deg: deg)


def combine(scalars: Iterable):
    """Exact sum of scalars or jets, starting from rational zero."""
    total = Fraction(0)
    for x in scalars:
        total = x + total
    return total
