"""Geometric two-cocycles on the function and vector-field algebras.

All integrals run over a curve separating in-points from out-points and are
evaluated as residue sums over the in-points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import linalg
from .errors import DomainEscape, UpperBandViolation, WrongWeight
from .funcfield import (
    MeroForm,
    Poly,
    RationalFunction,
    contour_integral_over_I,
    exterior_derivative,
    form_product,
    schwarzian,
)
from .knbasis import KNBasisTable, bracket_constants

__all__ = [
    "ProjectiveConnection",
    "CocycleTable",
    "function_cocycle",
    "vectorfield_cocycle",
    "vectorfield_cocycle_table",
    "check_cocycle_identity",
    "locality_bound",
    "coboundary_equivalence",
    "fit_multiple_of",
    "closed_triples",
    "kn_bracket",
    "table_to_json",
]

Index = tuple  # (degree, label)
BracketProvider = Callable[[Index, Index], dict]


@dataclass(frozen=True)
class ProjectiveConnection:
    """A global projective connection given by its standard-chart function.

    The representative in ``w = 1/z`` follows from the transformation law
    ``R_w(w) = R_z(1/w) (d(1/w)/dw)^2 + S(1/w)``.
    """

    rep: RationalFunction = field(default_factory=lambda: RationalFunction.const(0))

    def in_w_chart(self) -> RationalFunction:
        h = RationalFunction(Poly.const(1), Poly.z())
        return self.rep.compose(h) * h.deriv() ** 2 + schwarzian(h)

    def is_chart_compatible(self) -> bool:
        """Transforming to ``w`` and back reproduces the ``z`` representative."""
        h = RationalFunction(Poly.const(1), Poly.z())
        back = self.in_w_chart().compose(h) * h.deriv() ** 2 + schwarzian(h)
        return back == self.rep


def function_cocycle(table: KNBasisTable, g: MeroForm, h: MeroForm) -> Fraction:
    """``-(1/2 pi i) int g dh``; the affine central term is ``(x|y)`` times this."""
    if g.weight != 0 or h.weight != 0:
        raise WrongWeight("function cocycle takes two functions")
    return -contour_integral_over_I(form_product(g, exterior_derivative(h)), table.config.in_points)


def vectorfield_cocycle(
    table: KNBasisTable, e: MeroForm, f: MeroForm, R: ProjectiveConnection | None = None
) -> Fraction:
    """``(1/24 pi i) int (1/2 (e'''f - e f''') - R (e'f - e f')) dz``."""
    if e.weight != -1 or f.weight != -1:
        raise WrongWeight("vector-field cocycle takes two vector fields")
    a, b = e.rep, f.rep
    a1, b1 = a.deriv(), b.deriv()
    a3, b3 = a1.deriv().deriv(), b1.deriv().deriv()
    integrand = (a3 * b - a * b3) * Fraction(1, 2)
    if R is not None and not R.rep.is_zero():
        integrand = integrand - R.rep * (a1 * b - a * b1)
    return contour_integral_over_I(MeroForm(1, integrand), table.config.in_points) / 12


@dataclass
class CocycleTable:
    """Antisymmetric values on pairs of basis indices from a finite window."""

    indices: tuple
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.indices = tuple(self.indices)
        self._members = set(self.indices)

    def __call__(self, a: Index, b: Index) -> Fraction:
        return self.values.get((a, b), Fraction(0))

    def __contains__(self, a: Index) -> bool:
        return a in self._members

    def set(self, a: Index, b: Index, v) -> None:
        v = Fraction(v)
        for key, val in (((a, b), v), ((b, a), -v)):
            if val:
                self.values[key] = val
            else:
                self.values.pop(key, None)

    def is_antisymmetric(self) -> bool:
        return all(self.values.get((b, a), 0) == -v for (a, b), v in self.values.items())

    def scaled(self, c) -> "CocycleTable":
        return CocycleTable(self.indices, {k: v * c for k, v in self.values.items() if v * c})

    def __sub__(self, other: "CocycleTable") -> "CocycleTable":
        out = dict(self.values)
        for k, v in other.values.items():
            x = out.get(k, 0) - v
            if x:
                out[k] = x
            else:
                out.pop(k, None)
        return CocycleTable(self.indices, out)

    def pairs(self) -> Iterable[tuple[Index, Index]]:
        return itertools.combinations(self.indices, 2)


def vectorfield_cocycle_table(
    table: KNBasisTable, degrees: Iterable[int], R: ProjectiveConnection | None = None
) -> CocycleTable:
    idx = [(n, p) for n in sorted(set(degrees)) for p in table.labels()]
    out = CocycleTable(idx)
    for a, b in itertools.combinations(idx, 2):
        out.set(a, b, vectorfield_cocycle(table, table.form(-1, *a), table.form(-1, *b), R))
    return out


def _apply(values: CocycleTable, combo: dict, c: Index) -> Fraction:
    total = Fraction(0)
    for h, coef in combo.items():
        if h not in values:
            raise DomainEscape(f"bracket term {h} outside the table window")
        total += coef * values(h, c)
    return total


def check_cocycle_identity(
    values: CocycleTable, bracket: BracketProvider, triples: Iterable[tuple] | None = None
) -> bool:
    """``a([x,y],z) + a([y,z],x) + a([z,x],y) == 0`` on every triple."""
    if not values.is_antisymmetric():
        return False
    if triples is None:
        triples = itertools.combinations(values.indices, 3)
    for x, y, z in triples:
        s = (
            _apply(values, bracket(x, y), z)
            + _apply(values, bracket(y, z), x)
            + _apply(values, bracket(z, x), y)
        )
        if s:
            return False
    return True


def closed_triples(values: CocycleTable, bracket: BracketProvider) -> list[tuple]:
    """Triples of window indices whose three brackets stay in the window."""
    out = []
    for x, y, z in itertools.combinations(values.indices, 3):
        if all(h in values for a, b in ((x, y), (y, z), (z, x)) for h in bracket(a, b)):
            out.append((x, y, z))
    return out


def locality_bound(values: CocycleTable) -> int | None:
    """Lowest total degree carrying a nonzero value; ``None`` for zero."""
    T = None
    for (a, b), v in values.values.items():
        if not v:
            continue
        s = a[0] + b[0]
        if s > 0:
            raise UpperBandViolation(f"nonzero value at total degree {s} for {a}, {b}")
        T = s if T is None else min(T, s)
    return T


def _coboundary_rows(indices, bracket: BracketProvider, domain):
    """One equation per window pair whose bracket stays inside ``domain``."""
    for a, b in itertools.combinations(indices, 2):
        combo = bracket(a, b)
        if all(h in domain for h in combo):
            yield a, b, combo


def coboundary_equivalence(
    g1: CocycleTable,
    g2: CocycleTable,
    bracket: BracketProvider,
    window: Iterable[Index] | None = None,
    b_domain: Iterable[Index] | None = None,
) -> dict:
    """A functional ``b`` with ``(g1 - g2)(x, y) = b([x, y])``.

    Pairs are drawn from ``window`` (default: the shared table window); a
    pair gives an equation when its bracket lies in ``b_domain`` (default:
    the window).  Free directions of ``b`` are set to zero.  Raises
    :class:`Inconsistent` when no ``b`` exists.
    """
    indices = tuple(window) if window is not None else g1.indices
    if not set(indices) <= set(g1.indices) or not set(indices) <= set(g2.indices):
        raise DomainEscape("window is not shared by both tables")
    domain = tuple(b_domain) if b_domain is not None else indices
    rows, rhs = [], []
    for a, b, combo in _coboundary_rows(indices, bracket, set(domain)):
        rows.append(combo)
        rhs.append(g1(a, b) - g2(a, b))
    particular, _ = linalg.solve(rows, rhs, list(domain))
    return particular


CHARGE = ("central", "charge")


def fit_multiple_of(
    gamma: CocycleTable,
    chi: CocycleTable,
    bracket: BracketProvider,
    window: Iterable[Index] | None = None,
    b_domain: Iterable[Index] | None = None,
) -> tuple[Fraction, dict, bool]:
    """Solve ``gamma = c * chi + b([., .])`` for the scalar c and functional b.

    Returns ``(c, b, determined)``; ``determined`` says whether c is pinned
    down uniquely by the available equations.  Raises :class:`Inconsistent`
    when gamma is not of that form on the window.
    """
    indices = tuple(window) if window is not None else gamma.indices
    domain = tuple(b_domain) if b_domain is not None else indices
    rows, rhs = [], []
    for a, b, combo in _coboundary_rows(indices, bracket, set(domain)):
        row = dict(combo)
        x = chi(a, b)
        if x:
            row[CHARGE] = x
        rows.append(row)
        rhs.append(gamma(a, b))
    particular, hom = linalg.solve(rows, rhs, [CHARGE] + list(domain))
    determined = all(not v.get(CHARGE) for v in hom)
    c = particular.pop(CHARGE, Fraction(0))
    return c, particular, determined


def kn_bracket(table: KNBasisTable) -> BracketProvider:
    return lambda a, b: bracket_constants(table, a, b)


def table_to_json(values: CocycleTable) -> dict:
    pairs = []
    for a, b in values.pairs():
        v = values(a, b)
        if v:
            pairs.append({"a": list(a), "b": list(b), "value": str(v)})
    return {"pairs": pairs, "bound_T": locality_bound(values)}
