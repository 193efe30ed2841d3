"""Affine algebras over a point configuration and their truncated modules.

Generators ``x_i(n, p) = u_i (x) a_{n,p}`` are keyed by ``(n, p, i)``; this
tuple order is also the canonical PBW order.  A module vector is a dict from
monomials (sorted tuples of generator keys, all of degree <= 0) to
``Fraction`` coefficients.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable

from .cocycle import function_cocycle
from .errors import DepthExceeded
from .findim import FinLieAlgebra
from .knbasis import KNBasisTable, product_constants

try:  # GMP rationals; the module arithmetic is dominated by scalar operations
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

__all__ = [
    "CENTRAL",
    "AffineAlgebra",
    "affine_bracket",
    "VacuumModule",
    "vacuum_module",
    "act",
    "admissibility_check",
    "FockModule",
    "fock_module",
    "vacuum_to_fock",
    "add_into",
    "scale",
    "dump_vector",
]

CENTRAL = "t1"


def add_into(acc: dict, v: dict, c=1) -> dict:
    """``acc += c * v`` in place, pruning zeros."""
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def scale(v: dict, c) -> dict:
    return {k: x * c for k, x in v.items()} if c else {}


class AffineAlgebra:
    """``g (x) A`` plus the central element, with memoized brackets."""

    def __init__(self, table: KNBasisTable, g: FinLieAlgebra):
        self.table = table
        self.g = g
        self._gamma: dict = {}
        self._brackets: dict = {}

    def gamma(self, a: tuple, b: tuple) -> Fraction:
        """Function cocycle on basis functions ``a_{n,p}``, ``a_{m,r}``."""
        if a == b:
            return Fraction(0)
        if a > b:
            return -self.gamma(b, a)
        got = self._gamma.get((a, b))
        if got is None:
            t = self.table
            got = function_cocycle(t, t.form(0, *a), t.form(0, *b))
            self._gamma[(a, b)] = got
        return got

    def bracket(self, X: tuple, Y: tuple) -> tuple[dict, Fraction]:
        """``[X, Y]`` as (generator combination, central coefficient)."""
        key = (X, Y)
        got = self._brackets.get(key)
        if got is not None:
            return got
        (n, p, i), (m, r, j) = X, Y
        lie: dict = {}
        structure = self.g.brackets[i][j]
        if structure:
            for (h, s), alpha in product_constants(self.table, (n, p), (m, r)).items():
                for k, c in structure.items():
                    lie[(h, s, k)] = lie.get((h, s, k), 0) + alpha * c
        lie = {k: Q(v) for k, v in lie.items() if v}
        central = Q(0)
        B = self.g.form[i][j]
        if B:
            central = Q(B * self.gamma((n, p), (m, r)))
        got = (lie, central)
        self._brackets[key] = got
        return got

    def generators(self, degrees: Iterable[int]) -> list[tuple]:
        return [
            (n, p, i)
            for n in sorted(set(degrees))
            for p in self.table.labels()
            for i in range(self.g.dim)
        ]


def affine_bracket(table: KNBasisTable, g: FinLieAlgebra, X: tuple, Y: tuple) -> tuple[dict, Fraction]:
    return AffineAlgebra(table, g).bracket(X, Y)


def _degree(mono: tuple) -> int:
    return sum(x[0] for x in mono)


class VacuumModule:
    """Module induced from the trivial character on positive degrees.

    The centre acts by ``level``; positive-degree generators kill the
    vacuum and every generator of degree <= 0 acts freely.  ``depth`` is the
    lowest degree a result may reach before :class:`DepthExceeded`.
    """

    def __init__(self, algebra: AffineAlgebra, level, depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.algebra = algebra
        self.level = Fraction(level)
        self._level = Q(self.level)
        self.depth = depth
        self._memo: dict = {}

    @property
    def table(self) -> KNBasisTable:
        return self.algebra.table

    @property
    def g(self) -> FinLieAlgebra:
        return self.algebra.g

    def vacuum(self) -> dict:
        return {(): Q(1)}

    @staticmethod
    def degree(mono: tuple) -> int:
        return _degree(mono)

    def min_degree(self, v: dict) -> int | None:
        return min((_degree(m) for m in v), default=None)

    def _apply(self, X: tuple, mono: tuple) -> dict:
        """``X . mono`` with no window checks."""
        key = (X, mono)
        got = self._memo.get(key)
        if got is not None:
            return got
        if X[0] + _degree(mono) > 0:
            out = {}
        elif not mono:
            out = {} if X[0] >= 1 else {(X,): Q(1)}
        elif X <= mono[0]:
            out = {(X,) + mono: Q(1)}
        else:
            # X Y rest = Y (X rest) + [X, Y] rest
            Y, rest = mono[0], mono[1:]
            out = {}
            for m, c in self._apply(X, rest).items():
                add_into(out, self._apply(Y, m), c)
            lie, central = self.algebra.bracket(X, Y)
            for Z, c in lie.items():
                add_into(out, self._apply(Z, rest), c)
            if central:
                add_into(out, {rest: Q(1)}, central * self._level)
        self._memo[key] = out
        return out

    def act(self, X, v: dict) -> dict:
        if X == CENTRAL:
            return scale(v, self.level)
        out: dict = {}
        for mono, c in v.items():
            d = _degree(mono)
            if X[0] + d > 0:
                continue
            if X[0] + d < -self.depth:
                raise DepthExceeded(f"{X} on a degree {d} vector leaves depth {self.depth}")
            add_into(out, self._apply(X, mono), c)
        return out

    def act_word(self, word: Iterable, v: dict) -> dict:
        """Apply generators right to left, as in ``x y z . v``."""
        for X in reversed(list(word)):
            v = self.act(X, v)
        return v

    def basis(self, min_degree: int | None = None, weight_cap: int | None = None) -> list[tuple]:
        """PBW monomials of degree in ``[min_degree, 0]``.

        Degree-0 generators act freely, so each degree holds infinitely many
        monomials; enumeration is capped by the weight
        ``sum(max(-deg, 1))`` over the factors (default: the depth).
        """
        lo = -self.depth if min_degree is None else min_degree
        cap = self.depth if weight_cap is None else weight_cap
        gens = self.algebra.generators(range(-cap, 1))
        out = []

        def grow(start: int, mono: tuple, weight: int, deg: int):
            out.append(mono)
            for idx in range(start, len(gens)):
                X = gens[idx]
                w = max(-X[0], 1)
                if weight + w <= cap and deg + X[0] >= lo:
                    grow(idx, mono + (X,), weight + w, deg + X[0])

        grow(0, (), 0, 0)
        return sorted(out, key=lambda m: (-_degree(m), len(m), m))

    def probes(self, headroom: int) -> list[tuple]:
        """Basis monomials leaving ``headroom`` degrees above the window floor."""
        return self.basis(min_degree=-self.depth + headroom)

    def admissibility_bound(self, v: dict) -> int:
        """Degrees at or above this kill v."""
        d = self.min_degree(v)
        return 1 if d is None else 1 - d


def vacuum_module(table: KNBasisTable, g: FinLieAlgebra, level, depth: int) -> VacuumModule:
    return VacuumModule(AffineAlgebra(table, g), level, depth)


def act(module, X, v: dict) -> dict:
    return module.act(X, v)


def admissibility_check(module: VacuumModule, v: dict, degrees: Iterable[int]) -> bool:
    """Every probed generator at or above the computed bound kills v."""
    bound = module.admissibility_bound(v)
    for n in degrees:
        if n < bound:
            continue
        for X in module.algebra.generators([n]):
            if module.act(X, v):
                return False
    return True


def dump_vector(v: dict) -> str:
    terms = [
        {"monomial": [[i, n, p] for n, p, i in mono], "coef": str(c)}
        for mono, c in sorted(v.items())
    ]
    return json.dumps({"terms": terms}, sort_keys=True)


class FockModule:
    """Polynomials in ``x_1, x_2, ...``; a monomial is a sorted index tuple.

    ``a_n`` differentiates in ``x_n``, ``a_{-n}`` multiplies by ``n x_n``
    and ``a_0`` is the identity.  Weighted degree (``x_n`` has weight n) is
    capped at ``depth``.
    """

    def __init__(self, depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.depth = depth

    def vacuum(self) -> dict:
        return {(): Fraction(1)}

    def a(self, n: int, v: dict) -> dict:
        if n == 0:
            return dict(v)
        out: dict = {}
        for mono, c in v.items():
            if n > 0:
                k = mono.count(n)
                if k:
                    i = mono.index(n)
                    add_into(out, {mono[:i] + mono[i + 1:]: Fraction(k)}, c)
            else:
                if sum(mono) - n > self.depth:
                    raise DepthExceeded(f"a({n}) leaves weight {self.depth}")
                add_into(out, {tuple(sorted(mono + (-n,))): Fraction(-n)}, c)
        return out

    def basis(self, max_weight: int | None = None) -> list[tuple]:
        """Monomials of weight at most ``max_weight`` (default: depth)."""
        cap = self.depth if max_weight is None else max_weight
        out = []

        def grow(start: int, mono: tuple, w: int):
            out.append(mono)
            for k in range(start, cap - w + 1):
                grow(k, mono + (k,), w + k)

        grow(1, (), 0)
        return sorted(out, key=lambda m: (sum(m), m))

    @staticmethod
    def weight(mono: tuple) -> int:
        return sum(mono)

    def S(self, k: int, v: dict) -> dict:
        """``S_k = -1/2 sum_l :a_{k-l} a_l:``."""
        out: dict = {}
        for mono, c in v.items():
            top = max(mono, default=0)
            for l in range(k - max(top, 0) - 1, max(top, 0) + 2):
                n, m = k - l, l
                left, right = (n, m) if m >= n else (m, n)
                if right > top:
                    continue
                add_into(out, self.a(left, self.a(right, {mono: Fraction(1)})), c * Fraction(-1, 2))
        return out


def fock_module(depth: int) -> FockModule:
    return FockModule(depth)


def vacuum_to_fock(v: dict) -> dict:
    """Classical Heisenberg dictionary: ``a(-n) vac -> n x_n``, ``a(0) -> 1``."""
    out: dict = {}
    for mono, c in v.items():
        coef = Fraction(c)
        idx = []
        for n, _, _ in mono:
            if n < 0:
                coef *= -n
                idx.append(-n)
        add_into(out, {tuple(sorted(idx)): coef})
    return out

