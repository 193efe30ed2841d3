"""Krichever-Novikov bases on the Riemann sphere for a split point set.

The marked points ``A = I u O`` carry in-points ``P_1..P_K`` and out-points
``Q_1..Q_L``.  For weight ``lam``, degree ``n`` and label ``p`` the basis
element ``f^lam_{n,p}`` is the unique lam-form holomorphic outside ``A`` with
orders

* ``n + 1 - lam - delta_{i,p}`` at ``P_i``,
* ``-(n + 1 - lam)`` at ``Q_j`` for ``j < L``,
* whatever remains at ``Q_L`` so that the orders add up to ``-2 lam``,

normalized to leading coefficient one at ``P_p``.  Elements are found by an
exact linear solve and cached on a :class:`KNBasisTable`.
"""

from __future__ import annotations

import itertools
import json
from math import comb
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from . import linalg
from .errors import BandViolation, ConfigError, NonUniqueElement, NotInWindow, OrderSlack, WrongWeight
from .funcfield import (
    INF,
    MeroForm,
    Point,
    Poly,
    RationalFunction,
    _series_product_residue,
    contour_integral_over_I,
    form_product,
    format_point,
    local_series,
    order_at,
    parse_point,
)

__all__ = [
    "PointConfig",
    "KNIndex",
    "KNBasisElement",
    "KNBasisTable",
    "prescribe_orders",
    "build_basis_element",
    "duality_pairing",
    "expansion_window",
    "expand_in_basis",
    "product_constants",
    "bracket_constants",
    "lie_derivative",
    "vector_field_bracket",
    "band_profile",
    "almost_grading_bounds",
]


@dataclass(frozen=True)
class PointConfig:
    in_points: tuple
    out_points: tuple

    def __post_init__(self):
        ins = tuple(parse_point(P) for P in self.in_points)
        outs = tuple(parse_point(P) for P in self.out_points)
        object.__setattr__(self, "in_points", ins)
        object.__setattr__(self, "out_points", outs)
        if not ins or not outs:
            raise ConfigError("need at least one in-point and one out-point")
        pts = ins + outs
        if len(set(pts)) != len(pts):
            raise ConfigError("marked points must be pairwise distinct")

    @classmethod
    def classical(cls) -> "PointConfig":
        return cls((Fraction(0),), (INF,))

    @classmethod
    def from_json(cls, doc) -> "PointConfig":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            return cls(tuple(doc["in"]), tuple(doc["out"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad point configuration: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "in": [format_point(P) for P in self.in_points],
            "out": [format_point(P) for P in self.out_points],
        }

    @property
    def K(self) -> int:
        return len(self.in_points)

    @property
    def L(self) -> int:
        return len(self.out_points)

    @property
    def points(self) -> tuple:
        return self.in_points + self.out_points


class KNIndex(NamedTuple):
    weight: int
    degree: int
    label: int


@dataclass(frozen=True)
class KNBasisElement:
    index: KNIndex
    form: MeroForm
    orders: dict = field(hash=False, compare=False)


def prescribe_orders(config: PointConfig, lam: int, n: int, p: int) -> dict:
    """Prescribed vanishing orders at every marked point."""
    if not 1 <= p <= config.K:
        raise ValueError(f"label {p} outside 1..{config.K}")
    base = n + 1 - lam
    orders = {}
    for i, P in enumerate(config.in_points, start=1):
        orders[P] = base - (1 if i == p else 0)
    for Q in config.out_points[:-1]:
        orders[Q] = -base
    orders[config.out_points[-1]] = -2 * lam - sum(orders.values())
    return orders


def _solve_element(config: PointConfig, idx: KNIndex) -> KNBasisElement:
    lam, n, p = idx
    orders = prescribe_orders(config, lam, n, p)
    pole = Poly.const(1)
    zeros = []
    for P, d in orders.items():
        if P is INF:
            continue
        if d < 0:
            pole = pole * Poly.linear(P) ** (-d)
        elif d > 0:
            zeros.append((P, d))
    # order at infinity of N(z)/pole dz^lam is deg(pole) - deg(N) - 2 lam
    top = pole.degree - 2 * lam - orders.get(INF, 0)
    if top < 0:
        raise NonUniqueElement(f"{idx}: no nonzero form with the prescribed orders")
    cols = list(range(top + 1))
    rows = []
    for P, d in zeros:
        # coefficient of t^j in N(P + t) must vanish for j < d
        for j in range(d):
            row = {}
            for i in range(j, top + 1):
                v = Fraction(comb(i, j)) * P ** (i - j)
                if v:
                    row[i] = v
            rows.append(row)
    null = linalg.nullspace(rows, cols)
    if len(null) != 1:
        raise NonUniqueElement(f"{idx}: solution space has dimension {len(null)}")
    vec = null[0]
    form = MeroForm(lam, RationalFunction(Poly([vec.get(i, 0) for i in cols]), pole))
    for P, d in orders.items():
        got = order_at(form, P)
        if got != d:
            raise OrderSlack(f"{idx}: order {got} at {format_point(P)}, prescribed {d}")
    if INF not in orders and order_at(form, INF) < 0:
        raise NonUniqueElement(f"{idx}: pole at infinity outside the marked points")
    P = config.in_points[p - 1]
    o, cs = local_series(form, P, orders[P])
    form = form.scale(1 / cs[0])
    return KNBasisElement(idx, form, orders)


class KNBasisTable:
    """Memoizing store of basis elements and structure constants.

    Every cached value is immutable once published; recomputing an entry
    concurrently gives an identical value, so no locking is needed beyond
    the atomicity of ``dict.setdefault``.
    """

    def __init__(self, config: PointConfig):
        self.config = config
        self._elements: dict[KNIndex, KNBasisElement] = {}
        self._series: dict = {}
        self._products: dict = {}
        self._brackets: dict = {}

    def __repr__(self) -> str:
        return f"KNBasisTable({self.config.to_json()})"

    def element(self, lam: int, n: int, p: int) -> KNBasisElement:
        idx = KNIndex(lam, n, p)
        el = self._elements.get(idx)
        if el is None:
            el = self._elements.setdefault(idx, _solve_element(self.config, idx))
        return el

    def form(self, lam: int, n: int, p: int) -> MeroForm:
        return self.element(lam, n, p).form

    def series(self, idx: KNIndex, P: Point, upto: int) -> tuple[int, list]:
        """Cached Laurent data of a basis element at a marked point."""
        key = (idx, P)
        got = self._series.get(key)
        if got is not None and got[0] + len(got[1]) - 1 >= upto:
            return got
        o, cs = local_series(self.element(*idx).form, P, upto + 4)
        self._series[key] = (o, cs)
        return o, cs

    def integrate(self, indices: Iterable[KNIndex]) -> Fraction:
        """Residue sum over the in-points of a product of basis elements."""
        indices = list(indices)
        if sum(i.weight for i in indices) != 1:
            raise WrongWeight("weights of the factors must sum to 1")
        total = Fraction(0)
        for P in self.config.in_points:
            orders = [self.element(*i).orders[P] for i in indices]
            s = sum(orders)
            if s > -1:
                continue
            data = []
            for i, o in zip(indices, orders):
                oo, cs = self.series(i, P, o + (-1 - s))
                data.append((oo, cs))
            total += _series_product_residue(data)
        return total

    def labels(self) -> range:
        return range(1, self.config.K + 1)


def build_basis_element(table: KNBasisTable, idx: KNIndex) -> KNBasisElement:
    return table.element(*idx)


def duality_pairing(table: KNBasisTable, a: KNBasisElement, b: KNBasisElement) -> Fraction:
    if a.index.weight + b.index.weight != 1:
        raise WrongWeight("paired forms must have weights adding to 1")
    return contour_integral_over_I(form_product(a.form, b.form), table.config.in_points)


def _pairing(table: KNBasisTable, f: MeroForm, fseries: dict, dual: KNIndex) -> Fraction:
    total = Fraction(0)
    for P in table.config.in_points:
        of, _ = fseries[P]
        od = table.element(*dual).orders[P]
        s = of + od
        if s > -1:
            continue
        need_f = of + (-1 - s)
        if of + len(fseries[P][1]) - 1 < need_f:
            fseries[P] = local_series(f, P, need_f + 4)
        data = [fseries[P], table.series(dual, P, od + (-1 - s))]
        total += _series_product_residue(data)
    return total


def expansion_window(table: KNBasisTable, f: MeroForm) -> tuple[int, int]:
    """Degrees outside which every expansion coefficient of f vanishes.

    Returns ``(lo, hi)``; ``lo > hi`` means f is zero.
    """
    if f.is_zero():
        return (1, 0)
    cfg, lam = table.config, f.weight
    lo = min(order_at(f, P) for P in cfg.in_points) + lam
    # out-point orders of the dual element f^{1-lam}_{-h,1} are affine in h
    o0 = prescribe_orders(cfg, 1 - lam, 0, 1)
    o1 = prescribe_orders(cfg, 1 - lam, -1, 1)
    hi = lo - 1
    for Q in cfg.out_points:
        q = order_at(f, Q)
        slope = o1[Q] - o0[Q]  # per unit of h
        if slope > 0:
            hi = max(hi, -((q + o0[Q]) // slope) - 1)
        elif q + o0[Q] < 0:
            raise NotInWindow(f"cannot bound the expansion window at {format_point(Q)}")
    return lo, hi


def expand_in_basis(table: KNBasisTable, f: MeroForm, window: tuple[int, int] | None = None, *, check: bool = True) -> dict:
    """Coefficients ``c[(n, p)]`` with ``f = sum c f^lam_{n,p}``.

    Coefficients come from pairing against the dual elements
    ``f^{1-lam}_{-n,p}``.  With ``check`` the reconstruction is compared
    with f exactly and :class:`NotInWindow` raised on mismatch.
    """
    lam = f.weight
    if window is None:
        window = expansion_window(table, f)
    lo, hi = window
    coeffs = {}
    if lo <= hi and not f.is_zero():
        fseries = {P: local_series(f, P, order_at(f, P) + 8) for P in table.config.in_points}
        for n in range(lo, hi + 1):
            for p in table.labels():
                c = _pairing(table, f, fseries, KNIndex(1 - lam, -n, p))
                if c:
                    coeffs[(n, p)] = c
    if check and recombine(table, lam, coeffs).rep != f.rep:
        raise NotInWindow(f"form is not in the span of degrees {lo}..{hi}")
    return coeffs


def recombine(table: KNBasisTable, lam: int, coeffs: dict) -> MeroForm:
    rep = RationalFunction.const(0)
    for (n, p), c in sorted(coeffs.items()):
        rep = rep + table.form(lam, n, p).rep * c
    return MeroForm(lam, rep)


def vector_field_bracket(e: MeroForm, f: MeroForm) -> MeroForm:
    """``[e, f] = (e f' - f e') d/dz``."""
    if e.weight != -1 or f.weight != -1:
        raise WrongWeight("bracket is defined on vector fields")
    return MeroForm(-1, e.rep * f.rep.deriv() - f.rep * e.rep.deriv())


def lie_derivative(e, g: MeroForm) -> MeroForm:
    """Lie derivative of a lam-form along a vector field."""
    ef = e.form if isinstance(e, KNBasisElement) else e
    if ef.weight != -1:
        raise WrongWeight("Lie derivative along a non-vector-field")
    lam = g.weight
    return MeroForm(lam, ef.rep * g.rep.deriv() + g.rep * ef.rep.deriv() * lam)


def product_constants(table: KNBasisTable, a: tuple[int, int], b: tuple[int, int]) -> dict:
    """``a_{n,p} a_{m,r} = sum alpha[(h, s)] a_{h,s}``."""
    key = (a, b) if a <= b else (b, a)
    got = table._products.get(key)
    if got is None:
        f = form_product(table.form(0, *a), table.form(0, *b))
        got = table._products.setdefault(key, expand_in_basis(table, f))
    return got


def bracket_constants(table: KNBasisTable, a: tuple[int, int], b: tuple[int, int]) -> dict:
    """``[e_{n,p}, e_{m,r}] = sum C[(h, s)] e_{h,s}``."""
    if a == b:
        return {}
    if a > b:
        return {k: -v for k, v in bracket_constants(table, b, a).items()}
    got = table._brackets.get((a, b))
    if got is None:
        f = vector_field_bracket(table.form(-1, *a), table.form(-1, *b))
        got = table._brackets.setdefault((a, b), expand_in_basis(table, f))
    return got


def band_profile(table: KNBasisTable, constants, degrees: Iterable[int]) -> dict:
    """``(n, m) -> (low, high)`` offsets of the support above ``n + m``.

    Offsets are taken over all label pairs; ``None`` marks an identically
    vanishing pair of degrees.
    """
    degrees = sorted(set(degrees))
    labels = list(table.labels())
    profile = {}
    for n, m in itertools.product(degrees, repeat=2):
        hs = [
            h
            for p, r in itertools.product(labels, repeat=2)
            for h, _ in constants(table, (n, p), (m, r))
        ]
        profile[(n, m)] = (min(hs) - n - m, max(hs) - n - m) if hs else None
    return profile


def almost_grading_bounds(table: KNBasisTable, window: Iterable[int]) -> tuple[int, int]:
    """Measured band widths ``(R, S)`` for vector fields and functions.

    Every bracket and product support in the window must start at or above
    ``n + m``.  The widest band in each row of fixed ``n`` must be the same
    for all rows; that common width is returned.
    """
    degrees = sorted(set(window))
    if not degrees:
        raise ValueError("empty probe window")
    result = []
    for constants in (bracket_constants, product_constants):
        profile = band_profile(table, constants, degrees)
        rows = {}
        for (n, m), band in profile.items():
            if band is None:
                continue
            if band[0] < 0:
                raise BandViolation(f"support below n+m at degrees {(n, m)}")
            rows[n] = max(rows.get(n, band[1]), band[1])
        widths = set(rows.values())
        if len(widths) > 1:
            raise BandViolation(f"band width varies across the window: {sorted(widths)}")
        result.append(widths.pop() if widths else 0)
    return result[0], result[1]
