"""Exact rational functions and meromorphic lambda-forms on the Riemann sphere.

Everything lives over :class:`fractions.Fraction`.  The sphere is covered by
the standard coordinate ``z`` and by ``w = 1/z`` near infinity; a form
``g(z) dz^lam`` reads ``g(1/w) (-w^-2)^lam dw^lam`` in the second chart.
Contour integrals over a curve separating the in-points from the out-points
are residue sums over the in-points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DegenerateMap, WrongWeight, ZeroDenominator

__all__ = [
    "Poly",
    "RationalFunction",
    "Infinity",
    "INF",
    "Point",
    "parse_point",
    "format_point",
    "MeroForm",
    "LocalExpansion",
    "make_rational_function",
    "order_at",
    "local_expansion",
    "local_series",
    "residue_at",
    "residue_of_product",
    "contour_integral_over_I",
    "form_product",
    "exterior_derivative",
    "schwarzian",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Poly:
    """Univariate polynomial, coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def linear(cls, a) -> "Poly":
        """The polynomial ``z - a``."""
        return cls((-_frac(a), 1))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def valuation(self) -> int:
        """Lowest power with nonzero coefficient (inf for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return math.inf

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly(c * x for x in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = ONE / other.lead
        quot = [ZERO] * max(len(rem) - db, 0)
        for k in range(len(rem) - db - 1, -1, -1):
            q = rem[k + db] * inv
            quot[k] = q
            if q:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= q * y
        return Poly(quot), Poly(rem[:db] if db > 0 else [])

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = ONE / self.lead
        return Poly(c * inv for c in self.coeffs)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def deriv(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, a) -> "Poly":
        """Taylor shift: the polynomial ``t -> p(t + a)``."""
        a = _frac(a)
        if a == 0 or self.degree < 1:
            return self
        cs = list(self.coeffs)
        n = len(cs)
        # repeated synthetic division
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly(cs)

    def reversed(self, n: int | None = None) -> "Poly":
        """``w^n p(1/w)`` with ``n`` defaulting to the degree."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        cs = list(self.coeffs) + [ZERO] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs))


def _series_div(num: Sequence[Fraction], den: Sequence[Fraction], n: int) -> list[Fraction]:
    """First ``n`` power-series coefficients of num/den, den[0] != 0."""
    inv = ONE / den[0]
    out: list[Fraction] = []
    for k in range(n):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc * inv)
    return out


class RationalFunction:
    """Reduced quotient ``num/den`` with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _reduced: bool = False):
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly.const(1)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
            lc = den.lead
            if lc != 1:
                num, den = num * (ONE / lc), den * (ONE / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Poly.const(c), _reduced=True)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls(Poly.z(), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(other)
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.num})/({self.den})"

    @staticmethod
    def _coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x, _reduced=True)
        return RationalFunction.const(x)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalFunction(Poly(), _reduced=True)
            return RationalFunction(self.num * other, self.den, _reduced=True)
        o = self._coerce(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDenominator("division by the zero function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k, _reduced=True)
        if self.is_zero():
            raise ZeroDenominator("negative power of the zero function")
        return RationalFunction(self.den ** -k, self.num ** -k)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDenominator(f"pole at {x}")
        return self.num(x) / d

    def deriv(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.deriv() * d - n * d.deriv(), d * d)

    def compose(self, g: "RationalFunction") -> "RationalFunction":
        """The composite ``z -> self(g(z))``."""
        def horner(p: Poly) -> RationalFunction:
            acc = RationalFunction.const(0)
            for c in reversed(p.coeffs):
                acc = acc * g + c
            return acc

        return horner(self.num) / horner(self.den)


def make_rational_function(num: Poly, den: Poly) -> RationalFunction:
    """Reduce ``num/den`` to lowest terms with a monic denominator."""
    return RationalFunction(num, den)


class Infinity:
    """The point at infinity; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()
Point = Union[Fraction, Infinity]


def parse_point(s) -> Point:
    """Parse ``"inf"``, a decimal or a fraction string into a point."""
    if isinstance(s, Infinity):
        return s
    if isinstance(s, str) and s.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    if isinstance(s, float):
        raise ValueError("points must be exact; got a float")
    return Fraction(s)


def format_point(P: Point) -> str:
    return "inf" if P is INF else str(P)


@dataclass(frozen=True)
class MeroForm:
    """``rep(z) dz^weight`` in the standard chart."""

    weight: int
    rep: RationalFunction

    @classmethod
    def of(cls, weight: int, rep) -> "MeroForm":
        return cls(weight, RationalFunction._coerce(rep))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def flip(self) -> "MeroForm":
        """The same form written in the coordinate ``w = 1/z``."""
        inv = RationalFunction(Poly.const(1), Poly.z(), _reduced=True)
        jac = RationalFunction(Poly.const(-1), Poly((0, 0, 1)), _reduced=True)  # -w^-2
        return MeroForm(self.weight, self.rep.compose(inv) * jac ** self.weight)

    def __add__(self, other: "MeroForm") -> "MeroForm":
        if self.weight != other.weight:
            raise WrongWeight("cannot add forms of different weight")
        return MeroForm(self.weight, self.rep + other.rep)

    def __sub__(self, other: "MeroForm") -> "MeroForm":
        return self + other.scale(-1)

    def scale(self, c) -> "MeroForm":
        return MeroForm(self.weight, self.rep * _frac(c))


@dataclass(frozen=True)
class LocalExpansion:
    point: Point
    coefficients: dict = field(hash=False)
    window: tuple[int, int] = (0, 0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients.get(k, ZERO)


def _local_data(f: MeroForm, P: Point) -> tuple[int, Poly, Poly]:
    """Write f near P as ``t^e N(t)/D(t)`` with N(0), D(0) nonzero."""
    num, den = f.rep.num, f.rep.den
    if P is INF:
        e = den.degree - num.degree - 2 * f.weight
        N = num.reversed()
        if f.weight % 2:
            N = -N
        return e, N, den.reversed()
    N, D = num.shift(P), den.shift(P)
    vn, vd = N.valuation(), D.valuation()
    return vn - vd, Poly(N.coeffs[vn:]), Poly(D.coeffs[vd:])


def order_at(f: MeroForm, P: Point):
    """Vanishing order at P in the local coordinate; ``math.inf`` for 0."""
    if f.is_zero():
        return math.inf
    return _local_data(f, P)[0]


def local_series(f: MeroForm, P: Point, upto: int) -> tuple[int, list[Fraction]]:
    """Order ``o`` and Laurent coefficients of orders ``o..upto``."""
    if f.is_zero():
        return math.inf, []
    e, N, D = _local_data(f, P)
    n = upto - e + 1
    if n <= 0:
        return e, []
    return e, _series_div(N.coeffs, D.coeffs, n)


def local_expansion(f: MeroForm, P: Point, window: tuple[int, int]) -> LocalExpansion:
    lo, hi = window
    if lo > hi:
        raise ValueError("empty expansion window")
    coeffs = dict.fromkeys(range(lo, hi + 1), ZERO)
    if not f.is_zero():
        e, cs = local_series(f, P, hi)
        for k in range(max(lo, e), hi + 1):
            coeffs[k] = cs[k - e]
    return LocalExpansion(P, coeffs, (lo, hi))


def _require_weight(f: MeroForm, lam: int) -> None:
    if f.weight != lam:
        raise WrongWeight(f"expected a form of weight {lam}, got {f.weight}")


def residue_at(omega: MeroForm, P: Point) -> Fraction:
    _require_weight(omega, 1)
    if omega.is_zero():
        return ZERO
    e, cs = local_series(omega, P, -1)
    if e > -1:
        return ZERO
    return cs[-1 - e]


def residue_of_product(forms: Sequence[MeroForm], P: Point, series=None) -> Fraction:
    """Residue at P of a product of forms whose weights sum to one.

    Multiplies truncated local series rather than the rational functions.
    ``series`` may supply precomputed ``(order, coeffs)`` pairs per factor;
    they must reach at least the orders required here.
    """
    if sum(f.weight for f in forms) != 1:
        raise WrongWeight("weights of the factors must sum to 1")
    data = list(series) if series is not None else None
    if data is None:
        if any(f.is_zero() for f in forms):
            return ZERO
        orders = [order_at(f, P) for f in forms]
        total = sum(orders)
        if total > -1:
            return ZERO
        data = [local_series(f, P, o + (-1 - total)) for f, o in zip(forms, orders)]
    return _series_product_residue(data)


def _series_product_residue(data) -> Fraction:
    total = sum(o for o, _ in data)
    if total > -1:
        return ZERO
    need = -1 - total  # index of the residue in the product series
    acc = [ONE]
    for _, cs in data:
        nxt = [ZERO] * (need + 1)
        for i, a in enumerate(acc):
            if a:
                for j in range(min(len(cs), need + 1 - i)):
                    b = cs[j]
                    if b:
                        nxt[i + j] += a * b
        acc = nxt
    return acc[need] if need < len(acc) else ZERO


def contour_integral_over_I(omega: MeroForm, in_points: Iterable[Point]) -> Fraction:
    """``(1/2 pi i)`` times the integral over a curve separating ``in_points``."""
    _require_weight(omega, 1)
    return sum((residue_at(omega, P) for P in in_points), ZERO)


def form_product(f: MeroForm, g: MeroForm) -> MeroForm:
    return MeroForm(f.weight + g.weight, f.rep * g.rep)


def exterior_derivative(g: MeroForm) -> MeroForm:
    _require_weight(g, 0)
    return MeroForm(1, g.rep.deriv())


def schwarzian(h: RationalFunction) -> RationalFunction:
    """``h'''/h' - 3/2 (h''/h')^2``."""
    d1 = h.deriv()
    if d1.is_zero():
        raise DegenerateMap("Schwarzian of a map with vanishing derivative")
    d2 = d1.deriv()
    d3 = d2.deriv()
    q = d2 / d1
    return d3 / d1 - q * q * Fraction(3, 2)
