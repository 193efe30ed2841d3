"""Sugawara operators on vacuum modules and the checks of their algebra.

For a vacuum module at level ``c`` the operator

    L_{k,s} = 1/2 sum_{i,j} Binv[i][j] sum l^{(n,p),(m,r)}_{(k,s)} :u_i(n,p) u_j(m,r):

uses the coefficients ``l = res_I(w^{n,p} w^{m,r} e_{k,s})`` with
``w^{n,p} = f^1_{-n,p}`` and ``e_{k,s} = f^{-1}_{k,s}``.  The rescaled
``L* = -L / (c + kappa)`` should satisfy

    [L*_a, L*_b] = L*_{[e_a, e_b]} + gamma(a, b) id

with gamma cohomologous to ``c dim g / (c + kappa)`` times the geometric
vector-field cocycle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cocycle import (
    CocycleTable,
    ProjectiveConnection,
    check_cocycle_identity,
    closed_triples,
    fit_multiple_of,
    kn_bracket,
    locality_bound,
    vectorfield_cocycle_table,
)
from .errors import (
    CentralChargeMismatch,
    CriticalLevel,
    DepthExceeded,
    Inconsistent,
    NonScalarDefect,
    NotCohomologous,
    NotInWindow,
)
from .findim import FinLieAlgebra, dual_basis, kappa
from .knbasis import KNBasisTable, KNIndex, bracket_constants, expand_in_basis, lie_derivative, prescribe_orders
from .representations import CENTRAL, FockModule, Q, VacuumModule, add_into, scale

__all__ = [
    "NormalOrdering",
    "STANDARD",
    "SWAP_EQUAL",
    "shifted_ordering",
    "normal_order_pair",
    "sugawara_coefficient",
    "coefficient_band",
    "SugawaraCoefficients",
    "SugawaraOperator",
    "sugawara_operator",
    "rescale",
    "central_charge",
    "verify_current_commutator",
    "defect_cocycle",
    "verify_virasoro",
    "classical_virasoro_check",
]


@dataclass(frozen=True)
class NormalOrdering:
    """Pair ``(n, m)`` stays in written order iff ``m >= n + shift``
    (``m > n + shift`` when ``strict``)."""

    name: str
    shift: int = 0
    strict: bool = False

    def keep(self, n: int, m: int) -> bool:
        return m > n + self.shift if self.strict else m >= n + self.shift


STANDARD = NormalOrdering("standard")
SWAP_EQUAL = NormalOrdering("swap_equal", strict=True)


def shifted_ordering(shift: int) -> NormalOrdering:
    return NormalOrdering(f"shifted:{shift}", shift)


def normal_order_pair(X: tuple, Y: tuple, ordering: NormalOrdering = STANDARD) -> tuple[tuple, tuple]:
    """``(left, right)`` for the generator pair ``X Y``; only degrees are compared."""
    return (X, Y) if ordering.keep(X[0], Y[0]) else (Y, X)


def sugawara_coefficient(table: KNBasisTable, a: tuple, b: tuple, k: tuple) -> Fraction:
    (n, p), (m, r), (kk, s) = a, b, k
    return table.integrate([KNIndex(1, -n, p), KNIndex(1, -m, r), KNIndex(-1, kk, s)])


def coefficient_band(table: KNBasisTable) -> int:
    """B with ``l^{(n,p),(m,r)}_{(k,s)} = 0`` unless ``k <= n + m <= k + B``.

    The bound comes from the prescribed orders at the out-points: the
    in-point residue sum is minus the out-point one, which vanishes once
    the integrand is holomorphic at every out-point.
    """
    cfg = table.config
    B = None
    for point in cfg.out_points:
        w0 = prescribe_orders(cfg, 1, 0, 1)[point]
        wslope = prescribe_orders(cfg, 1, -1, 1)[point] - w0  # per unit of n
        e0 = prescribe_orders(cfg, -1, 0, 1)[point]
        eslope = prescribe_orders(cfg, -1, 1, 1)[point] - e0  # per unit of k
        if wslope <= 0 or eslope != -wslope:
            raise NotInWindow(f"cannot bound the coefficient band at {point}")
        # order of the integrand: wslope * (n + m - k) + 2 w0 + e0 <= -1
        top = (-1 - 2 * w0 - e0) // wslope
        B = top if B is None else max(B, top)
    return max(B, 0)


class SugawaraCoefficients:
    """Memoized ``l`` table of one basis table."""

    def __init__(self, table: KNBasisTable):
        self.table = table
        self.band = coefficient_band(table)
        self._cache: dict = {}

    def __call__(self, a: tuple, b: tuple, k: tuple) -> Fraction:
        key = (a, b, k) if a <= b else (b, a, k)
        got = self._cache.get(key)
        if got is None:
            got = self._cache.setdefault(key, sugawara_coefficient(self.table, *key))
        return got


def _inverse_form(g: FinLieAlgebra) -> list[tuple[int, int, Fraction]]:
    out = []
    for j, dual in enumerate(dual_basis(g)):
        for i, c in dual.items():
            out.append((i, j, c))
    return out


class SugawaraOperator:
    """``factor * L_{k,s}`` acting on a vacuum module."""

    def __init__(
        self,
        module: VacuumModule,
        k: int,
        s: int,
        coefficients: SugawaraCoefficients | None = None,
        ordering: NormalOrdering = STANDARD,
        factor: Fraction = Fraction(1),
        _caches: tuple | None = None,
    ):
        self.module = module
        self.k, self.s = k, s
        self.coefficients = coefficients or SugawaraCoefficients(module.table)
        self.ordering = ordering
        self.factor = Fraction(factor)
        self._factor = Q(self.factor)
        # unscaled results per monomial, left combinations, left applications
        self._caches = _caches if _caches is not None else ({}, {}, {})
        self._memo, self._left, self._left_memo = self._caches
        self._binv = {(i, j): c for i, j, c in _inverse_form(module.g)}
        self.last_term_count = 0

    @property
    def band(self) -> tuple[int, int]:
        return (self.k, self.k + self.coefficients.band)

    def scaled(self, c) -> "SugawaraOperator":
        return SugawaraOperator(
            self.module, self.k, self.s, self.coefficients, self.ordering, self.factor * c, self._caches
        )

    def _left_combination(self, Y: tuple) -> dict:
        """Coefficients of every left factor X in a normal-ordered pair ``X Y``."""
        got = self._left.get(Y)
        if got is not None:
            return got
        rho, r, j = Y
        g_dim = self.module.g.dim
        written = {}
        for t in range(self.k, self.k + self.coefficients.band + 1):
            for p in self.module.table.labels():
                for i in range(g_dim):
                    X = (t - rho, p, i)
                    if self.ordering.keep(X[0], rho):
                        written[(X, Y)] = X
                    if not self.ordering.keep(rho, X[0]):
                        written[(Y, X)] = X
        combo: dict = {}
        for (A, B), X in written.items():
            b = self._binv.get((A[2], B[2]))
            if not b:
                continue
            l = self.coefficients(A[:2], B[:2], (self.k, self.s))
            if l:
                combo[X] = combo.get(X, 0) + b * l / 2
        got = {X: Q(c) for X, c in combo.items() if c}
        self._left[Y] = got
        return got

    def _left_apply(self, Y: tuple, mono: tuple) -> dict:
        key = (Y, mono)
        got = self._left_memo.get(key)
        if got is None:
            got = {}
            for X, c in self._left_combination(Y).items():
                add_into(got, self.module._apply(X, mono), c)
            self._left_memo[key] = got
        return got

    def _on_monomial(self, mono: tuple) -> dict:
        got = self._memo.get(mono)
        if got is not None:
            return got
        module = self.module
        d = module.degree(mono)
        out: dict = {}
        count = 0
        slack = abs(self.ordering.shift) + 1
        lowest = (self.k - slack) // 2 - 1
        for rho in range(lowest, -d + 1):
            for Y in module.algebra.generators([rho]):
                if not self._left_combination(Y):
                    continue
                count += 1
                for mm, c in module._apply(Y, mono).items():
                    add_into(out, self._left_apply(Y, mm), c)
        self._memo[mono] = out
        self.last_term_count = count
        return out

    def apply(self, v: dict) -> dict:
        out: dict = {}
        floor = -self.module.depth
        for mono, c in v.items():
            d = self.module.degree(mono)
            if d + self.k > 0:
                continue
            if d + self.k < floor:
                raise DepthExceeded(f"L_{self.k} on a degree {d} vector leaves depth {self.module.depth}")
            add_into(out, self._on_monomial(mono), c * self._factor)
        return out

    __call__ = apply


def sugawara_operator(
    table: KNBasisTable,
    g: FinLieAlgebra,
    module: VacuumModule,
    k: tuple,
    ordering: NormalOrdering = STANDARD,
    coefficients: SugawaraCoefficients | None = None,
) -> SugawaraOperator:
    if module.table is not table or module.g is not g:
        raise ValueError("module is built over a different table or algebra")
    return SugawaraOperator(module, k[0], k[1], coefficients, ordering)


def _shifted_level(c, kap) -> Fraction:
    total = Fraction(c) + Fraction(kap)
    if total == 0:
        raise CriticalLevel("c + kappa = 0")
    return total


def rescale(L: SugawaraOperator, c, kap) -> SugawaraOperator:
    """``L* = -1/(c + kappa) L``."""
    return L.scaled(-1 / _shifted_level(c, kap))


def central_charge(c, g: FinLieAlgebra) -> Fraction:
    return Fraction(c) * g.dim / _shifted_level(c, kappa(g))


def _commutator(A, B, v: dict) -> dict:
    out = A(B(v))
    return add_into(out, B(A(v)), -1)


def verify_current_commutator(
    module: VacuumModule, L: SugawaraOperator, x, index: tuple, probes: Iterable[tuple] | None = None
) -> dict:
    """Nonzero defects of ``[L, x(n,p)] + (c + kappa) x(e . a_{n,p})``.

    ``x`` is a Lie basis index or :data:`CENTRAL`.  Returns a dict from
    probe monomial to its defect vector; empty means the identity holds.
    """
    if L.factor != 1:
        raise ValueError("expects the unrescaled operator")
    if x == CENTRAL:
        act_x = lambda v: module.act(CENTRAL, v)  # noqa: E731
        correction = {}
    else:
        n, p = index
        table = module.table
        flow = lie_derivative(table.form(-1, L.k, L.s), table.form(0, n, p))
        correction = {(h, s, x): Q(c) for (h, s), c in expand_in_basis(table, flow).items()}
        act_x = lambda v: module.act((n, p, x), v)  # noqa: E731
    shift = Q(module.level + kappa(module.g))
    n = 0 if x == CENTRAL else index[0]
    if probes is None:
        probes = module.probes(max(0, -n, -L.k, -n - L.k))
    defects = {}
    for mono in probes:
        v = {mono: Q(1)}
        out = _commutator(L, act_x, v)
        for X, c in correction.items():
            add_into(out, module.act(X, v), c * shift)
        if out:
            defects[mono] = out
    return defects


def defect_cocycle(
    module: VacuumModule,
    window: Iterable[tuple],
    ordering: NormalOrdering = STANDARD,
    probes_for=None,
) -> tuple[CocycleTable, int]:
    """Scalars ``gamma(a, b)`` with ``[L*_a, L*_b] - L*_{[e_a, e_b]} = gamma id``.

    Raises :class:`NonScalarDefect` when some eligible probe sees a defect
    that is not that multiple of itself.  ``probes_for(headroom)`` chooses
    probes (default: every capped basis monomial with the headroom).
    Returns the table and the number of pairs checked.
    """
    window = sorted(set(window))
    table = module.table
    coeffs = SugawaraCoefficients(table)
    kap = kappa(module.g)
    ops: dict = {}

    def op(a):
        if a not in ops:
            base = SugawaraOperator(module, a[0], a[1], coeffs, ordering)
            ops[a] = rescale(base, module.level, kap)
        return ops[a]

    if probes_for is None:
        probes_for = module.probes
    gamma = CocycleTable(window)
    checked = 0
    for a, b in itertools.combinations(window, 2):
        k, m = a[0], b[0]
        headroom = max(0, -k, -m, -k - m)
        La, Lb = op(a), op(b)
        brk = bracket_constants(table, a, b)

        def defect(v):
            out = _commutator(La, Lb, v)
            for h, c in brk.items():
                add_into(out, op(h)(v), -c)
            return out

        vac = defect(module.vacuum())
        if set(vac) - {()}:
            raise NonScalarDefect(f"defect of {a}, {b} moves the vacuum")
        value = vac.get((), Fraction(0))
        for mono in probes_for(headroom):
            v = {mono: Q(1)}
            if defect(v) != scale(v, value):
                raise NonScalarDefect(f"defect of {a}, {b} is not scalar on {mono}")
        gamma.set(a, b, value)
        checked += 1
    return gamma, checked


def _fmt_index(a) -> str:
    return f"{a[0]},{a[1]}"


def verify_virasoro(
    module: VacuumModule,
    window: Iterable[tuple],
    R: ProjectiveConnection | None = None,
    ordering: NormalOrdering = STANDARD,
    probes_for=None,
) -> dict:
    """Defect cocycle, its checks and the fitted central charge as a report.

    Raises :class:`NonScalarDefect`, :class:`NotCohomologous` or
    :class:`CentralChargeMismatch` on failure.
    """
    window = sorted(set(window))
    table = module.table
    gamma, checked = defect_cocycle(module, window, ordering, probes_for)
    bracket = kn_bracket(table)
    triples = closed_triples(gamma, bracket)
    if not check_cocycle_identity(gamma, bracket, triples):
        raise NotCohomologous("defect table violates the cocycle identity")
    T = locality_bound(gamma)
    degrees = [a[0] for a in window]
    chi = vectorfield_cocycle_table(table, degrees, R)
    domain = b_domain(table, window)
    try:
        c_fit, b, determined = fit_multiple_of(gamma, chi, bracket, window, domain)
    except Inconsistent:
        raise NotCohomologous("defect is not a multiple of the vector-field cocycle up to coboundary") from None
    expected = central_charge(module.level, module.g)
    if not determined:
        raise NotCohomologous("window too small to pin down the central charge")
    if c_fit != expected:
        raise CentralChargeMismatch(f"fitted {c_fit}, expected {expected}")
    return {
        "pairs_checked": checked,
        "defect_cocycle": [
            {"a": list(a), "b": list(bb), "value": str(gamma(a, bb))}
            for a, bb in gamma.pairs()
            if gamma(a, bb)
        ],
        "locality_bound": T,
        "triples_checked": len(triples),
        "coboundary": {_fmt_index(h): str(v) for h, v in sorted(b.items())},
        "central_charge": str(c_fit),
        "expected": str(expected),
        "pass": True,
    }


def b_domain(table: KNBasisTable, window: Iterable[tuple]) -> list[tuple]:
    """Every index a bracket of two window indices can reach."""
    window = list(window)
    seen = set(window)
    for a, b in itertools.combinations(window, 2):
        seen.update(bracket_constants(table, a, b))
    return sorted(seen)


def classical_virasoro_check(depth: int, nmax: int, cocycle=None) -> dict:
    """``[S_n, S_m] = (m - n) S_{n+m} + cocycle(n) delta_{n+m,0}`` on Fock space.

    ``cocycle`` defaults to ``(n^3 - n)/12``; passing another function is a
    self-test of the harness.  Returns a report with the first witness of
    failure, if any.
    """
    if cocycle is None:
        cocycle = lambda n: Fraction(n**3 - n, 12)  # noqa: E731
    F = FockModule(depth)
    basis = F.basis()
    checked = 0
    for n, m in itertools.product(range(-nmax, nmax + 1), repeat=2):
        headroom = max(0, -n, -m, -n - m)
        for mono in basis:
            if F.weight(mono) + headroom > depth:
                continue
            v = {mono: Fraction(1)}
            lhs = _commutator(lambda u: F.S(n, u), lambda u: F.S(m, u), v)
            rhs = scale(F.S(n + m, v), m - n)
            if n + m == 0:
                add_into(rhs, v, cocycle(n))
            checked += 1
            if lhs != rhs:
                return {
                    "pass": False,
                    "checked": checked,
                    "witness": {"n": n, "m": m, "vector": list(mono)},
                }
    return {"pass": True, "checked": checked, "witness": None}
