"""Finite-dimensional Lie algebras with an invariant symmetric form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import BadDimension, ConfigError, DegenerateForm, NotScalarOnAdjoint

__all__ = [
    "FinLieAlgebra",
    "make_abelian",
    "make_sl",
    "direct_sum",
    "dual_basis",
    "casimir_tensor",
    "casimir_on_adjoint",
    "kappa",
    "parse_algebra",
]


@dataclass(frozen=True)
class FinLieAlgebra:
    """Structure constants ``[u_i, u_j] = sum_k c[i][j][k] u_k`` and form ``B``.

    ``brackets[i][j]`` is a dict ``k -> c`` with zero entries dropped.
    """

    name: str
    dim: int
    brackets: tuple
    form: tuple
    basis_names: tuple = ()

    def bracket(self, x: dict, y: dict) -> dict:
        """Bracket of two elements given as coefficient dicts."""
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.brackets[i][j].items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def pairing(self, x: dict, y: dict) -> Fraction:
        return sum((a * b * self.form[i][j] for i, a in x.items() for j, b in y.items()), Fraction(0))

    def ad(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``ad u_i`` (column j holds the image of u_j)."""
        m = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.brackets[i][j].items():
                m[k][j] = c
        return m

    def check(self) -> None:
        """Assert antisymmetry, Jacobi, symmetry, non-degeneracy and invariance."""
        d = self.dim
        e = [{i: Fraction(1)} for i in range(d)]
        for i, j in itertools.product(range(d), repeat=2):
            assert self.brackets[i][j] == {k: -v for k, v in self.brackets[j][i].items()}
            assert self.form[i][j] == self.form[j][i]
        for i, j, k in itertools.product(range(d), repeat=3):
            jac: dict = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                for key, v in self.bracket(self.bracket(e[a], e[b]), e[c]).items():
                    jac[key] = jac.get(key, 0) + v
            assert not any(jac.values()), "Jacobi identity fails"
            lhs = self.pairing(self.bracket(e[i], e[j]), e[k])
            rhs = self.pairing(e[i], self.bracket(e[j], e[k]))
            assert lhs == rhs, "form is not invariant"
        assert linalg.determinant(self.form) != 0, "form is degenerate"


def make_abelian(d: int) -> FinLieAlgebra:
    if d < 1:
        raise BadDimension("abelian algebra needs dimension >= 1")
    zero = tuple(tuple({} for _ in range(d)) for _ in range(d))
    form = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
    return FinLieAlgebra(f"abelian:{d}", d, zero, form, tuple(f"a{i}" for i in range(d)))


def _sl_basis(N: int) -> tuple[list, list[str]]:
    """Matrices of sl(N): positive root vectors, Cartan part, negative ones."""
    def unit(i, j):
        m = [[0] * N for _ in range(N)]
        m[i][j] = 1
        return m

    pos = [(i, j) for i in range(N) for j in range(i + 1, N)]
    mats, names = [], []
    for i, j in pos:
        mats.append(unit(i, j))
        names.append(f"E{i + 1}{j + 1}")
    for i in range(N - 1):
        m = unit(i, i)
        m[i + 1][i + 1] = -1
        mats.append(m)
        names.append(f"H{i + 1}")
    for i, j in pos:
        mats.append(unit(j, i))
        names.append(f"E{j + 1}{i + 1}")
    if N == 2:
        names = ["e", "h", "f"]
    return mats, names


def _coords(N: int, m, mats) -> dict:
    """Coordinates of a traceless matrix in the sl(N) basis."""
    out = {}
    idx = {}
    for b, mat in enumerate(mats):
        nz = [(i, j) for i in range(N) for j in range(N) if mat[i][j]]
        if len(nz) == 1 and nz[0][0] != nz[0][1]:
            idx[nz[0]] = b
    for (i, j), b in idx.items():
        if m[i][j]:
            out[b] = Fraction(m[i][j])
    # diagonal: H_k = E_kk - E_{k+1,k+1}, so coefficient of H_k is sum_{i<=k} m_ii
    first_h = N * (N - 1) // 2
    acc = Fraction(0)
    for k in range(N - 1):
        acc += m[k][k]
        if acc:
            out[first_h + k] = acc
    return out


def make_sl(n_plus_1: int) -> FinLieAlgebra:
    """sl(N) with the trace form ``B(x, y) = tr(xy)``."""
    N = n_plus_1
    if N < 2:
        raise BadDimension("sl(N) needs N >= 2")
    mats, names = _sl_basis(N)
    d = len(mats)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(N)) for j in range(N)] for i in range(N)]

    brackets = []
    form = []
    for a in mats:
        row_b, row_f = [], []
        for b in mats:
            ab, ba = mul(a, b), mul(b, a)
            comm = [[ab[i][j] - ba[i][j] for j in range(N)] for i in range(N)]
            row_b.append(_coords(N, comm, mats))
            row_f.append(Fraction(sum(ab[i][i] for i in range(N))))
        brackets.append(tuple(row_b))
        form.append(tuple(row_f))
    assert d == N * N - 1
    return FinLieAlgebra(f"sl:{N}", d, tuple(brackets), tuple(form), tuple(names))


def direct_sum(g: FinLieAlgebra, h: FinLieAlgebra) -> FinLieAlgebra:
    d = g.dim + h.dim
    off = g.dim
    brackets = [[{} for _ in range(d)] for _ in range(d)]
    form = [[Fraction(0)] * d for _ in range(d)]
    for i, j in itertools.product(range(g.dim), repeat=2):
        brackets[i][j] = dict(g.brackets[i][j])
        form[i][j] = g.form[i][j]
    for i, j in itertools.product(range(h.dim), repeat=2):
        brackets[off + i][off + j] = {off + k: v for k, v in h.brackets[i][j].items()}
        form[off + i][off + j] = h.form[i][j]
    return FinLieAlgebra(
        f"{g.name}+{h.name}",
        d,
        tuple(tuple(r) for r in brackets),
        tuple(tuple(r) for r in form),
        g.basis_names + h.basis_names,
    )


def dual_basis(g: FinLieAlgebra) -> list[dict]:
    """``u^i`` with ``B(u_i, u^j) = delta_ij``, as coefficient dicts."""
    try:
        inv = linalg.inverse(g.form)
    except DegenerateForm:
        raise DegenerateForm(f"{g.name}: bilinear form is degenerate") from None
    # B symmetric, so u^j = sum_k inv[k][j] u_k
    return [{k: inv[k][j] for k in range(g.dim) if inv[k][j]} for j in range(g.dim)]


def casimir_tensor(g: FinLieAlgebra) -> dict:
    """``sum_i u_i (x) u^i`` as ``(i, j) -> coefficient``; symmetric."""
    out = {}
    for i, dual in enumerate(dual_basis(g)):
        for j, c in dual.items():
            out[(i, j)] = out.get((i, j), 0) + c
    return {k: v for k, v in out.items() if v}


def casimir_on_adjoint(g: FinLieAlgebra) -> list[list[Fraction]]:
    """The matrix ``sum_i ad(u_i) ad(u^i)``."""
    d = g.dim
    total = [[Fraction(0)] * d for _ in range(d)]
    ads = [g.ad(i) for i in range(d)]
    for (i, j), c in casimir_tensor(g).items():
        prod = linalg.matmul(ads[i], ads[j])
        for a in range(d):
            for b in range(d):
                total[a][b] += c * prod[a][b]
    return total


def kappa(g: FinLieAlgebra) -> Fraction:
    """Half the scalar by which the Casimir acts in the adjoint representation."""
    m = casimir_on_adjoint(g)
    s = m[0][0]
    for a in range(g.dim):
        for b in range(g.dim):
            if m[a][b] != (s if a == b else 0):
                raise NotScalarOnAdjoint(f"{g.name}: Casimir is not scalar on the adjoint")
    return s / 2


def parse_algebra(token: str) -> FinLieAlgebra:
    """``"abelian:d"`` or ``"sl:n"`` (meaning sl(n))."""
    try:
        kind, _, arg = token.partition(":")
        d = int(arg)
    except ValueError:
        raise ConfigError(f"bad algebra token {token!r}") from None
    if kind == "abelian":
        return make_abelian(d)
    if kind == "sl":
        return make_sl(d)
    raise ConfigError(f"unknown algebra kind {kind!r}")
