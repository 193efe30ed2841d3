import itertools
from fractions import Fraction

import pytest

from knsugawara import linalg
from knsugawara.errors import BadDimension, ConfigError, DegenerateForm, NotScalarOnAdjoint
from knsugawara.findim import (
    FinLieAlgebra,
    casimir_on_adjoint,
    dual_basis,
    direct_sum,
    kappa,
    make_abelian,
    make_sl,
    parse_algebra,
)


def unit(i):
    return {i: Fraction(1)}


class TestConstruction:
    def test_abelian(self):
        g = make_abelian(2)
        assert g.dim == 2
        assert all(not g.brackets[i][j] for i in range(2) for j in range(2))
        assert g.form == ((1, 0), (0, 1))
        with pytest.raises(BadDimension):
            make_abelian(0)

    def test_sl2_structure(self):
        g = make_sl(2)
        e, h, f = 0, 1, 2
        assert g.basis_names == ("e", "h", "f")
        assert g.bracket(unit(h), unit(e)) == {e: 2}
        assert g.bracket(unit(h), unit(f)) == {f: -2}
        assert g.bracket(unit(e), unit(f)) == {h: 1}
        assert g.form[h][h] == 2 and g.form[e][f] == 1 and g.form[e][e] == 0

    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_axioms(self, N):
        g = make_sl(N)
        assert g.dim == N * N - 1
        g.check()

    def test_sl_needs_rank(self):
        with pytest.raises(BadDimension):
            make_sl(1)

    def test_parse(self):
        assert parse_algebra("sl:3").dim == 8
        assert parse_algebra("abelian:5").dim == 5
        for bad in ("so:3", "sl", "sl:x"):
            with pytest.raises(ConfigError):
                parse_algebra(bad)


class TestDualBasis:
    def test_abelian(self):
        assert dual_basis(make_abelian(3)) == [unit(0), unit(1), unit(2)]

    def test_sl2(self):
        e, h, f = 0, 1, 2
        d = dual_basis(make_sl(2))
        assert d[e] == unit(f) and d[f] == unit(e) and d[h] == {h: Fraction(1, 2)}

    @pytest.mark.parametrize("N", [2, 3])
    def test_defining_property(self, N):
        g = make_sl(N)
        for i, dual in enumerate(dual_basis(g)):
            for j in range(g.dim):
                assert g.pairing(unit(j), dual) == int(i == j)

    def test_scaled_form_halves(self):
        g = make_sl(2)
        g2 = FinLieAlgebra("sl2x2", 3, g.brackets, tuple(tuple(2 * x for x in r) for r in g.form))
        for a, b in zip(dual_basis(g), dual_basis(g2)):
            assert b == {k: v / 2 for k, v in a.items()}

    def test_degenerate(self):
        g = make_abelian(2)
        bad = FinLieAlgebra("bad", 2, g.brackets, ((1, 1), (1, 1)))
        with pytest.raises(DegenerateForm):
            dual_basis(bad)


class TestKappa:
    @pytest.mark.parametrize("N", [2, 3, 4])
    def test_sl(self, N):
        assert kappa(make_sl(N)) == N

    @pytest.mark.parametrize("d", [1, 2, 5])
    def test_abelian(self, d):
        assert kappa(make_abelian(d)) == 0

    def test_mixed_sum_not_scalar(self):
        with pytest.raises(NotScalarOnAdjoint):
            kappa(direct_sum(make_sl(2), make_abelian(1)))

    @pytest.mark.parametrize("N", [2, 3])
    def test_casimir_commutes_with_ad(self, N):
        g = make_sl(N)
        C = casimir_on_adjoint(g)
        for i in range(g.dim):
            A = g.ad(i)
            assert linalg.matmul(C, A) == linalg.matmul(A, C)


class TestLinalg:
    def test_inverse_and_det(self):
        m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
        inv = linalg.inverse(m)
        ident = linalg.matmul(m, inv)
        assert ident == [[int(i == j) for j in range(3)] for i in range(3)]
        assert linalg.determinant(m) == 18

    def test_solve_and_nullspace(self):
        rows = [{"x": 1, "y": 1}, {"y": 1, "z": -1}]
        part, hom = linalg.solve(rows, [3, 1], ["x", "y", "z"])
        assert part == {"x": 2, "y": 1}
        assert len(hom) == 1
        v = hom[0]
        for r in rows:
            assert sum(c * v.get(k, 0) for k, c in r.items()) == 0

    def test_inconsistent(self):
        from knsugawara.errors import Inconsistent

        with pytest.raises(Inconsistent):
            linalg.solve([{"x": 1}, {"x": 2}], [1, 1], ["x"])

    def test_rank_of_products(self):
        rows = [{i: i * j + 1 for i in range(4)} for j in range(5)]
        assert linalg.rank(rows, list(range(4))) == 2
        assert all(
            sum(r[k] * v.get(k, 0) for k in r) == 0
            for r, v in itertools.product(rows, linalg.nullspace(rows, list(range(4))))
        )
