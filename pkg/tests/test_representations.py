import itertools
import json
from fractions import Fraction

import pytest

from knsugawara.errors import DepthExceeded
from knsugawara.findim import make_abelian, make_sl
from knsugawara.representations import (
    CENTRAL,
    AffineAlgebra,
    FockModule,
    VacuumModule,
    add_into,
    admissibility_check,
    affine_bracket,
    dump_vector,
    fock_module,
    vacuum_module,
    vacuum_to_fock,
)

E, H, F = 0, 1, 2


@pytest.fixture(scope="module")
def heisenberg(classical_table):
    return vacuum_module(classical_table, make_abelian(1), 1, 6)


@pytest.fixture(scope="module")
def sl2_classical(classical_table):
    return vacuum_module(classical_table, make_sl(2), 1, 4)


@pytest.fixture(scope="module")
def sl2_multi(multi_table):
    return vacuum_module(multi_table, make_sl(2), 1, 3)


def vec(*monos):
    return {tuple(sorted(m)): Fraction(1) for m in monos}


class TestAffineBracket:
    def test_heisenberg(self, classical_table):
        ab = make_abelian(1)
        for n, m in itertools.product(range(-3, 4), repeat=2):
            lie, central = affine_bracket(classical_table, ab, (n, 1, 0), (m, 1, 0))
            assert lie == {} and central == (n if n == -m else 0)

    def test_self_bracket_vanishes(self, multi_table):
        g = make_sl(2)
        for X in [(1, 1, E), (0, 2, H), (-2, 1, F)]:
            assert affine_bracket(multi_table, g, X, X) == ({}, 0)

    def test_sl2_classical(self, classical_table):
        lie, central = affine_bracket(classical_table, make_sl(2), (1, 1, E), (-1, 1, F))
        assert lie == {(0, 1, H): 1} and central == 1

    def test_multi_point_jacobi(self, multi_table):
        alg = AffineAlgebra(multi_table, make_sl(2))
        gens = alg.generators(range(-1, 2))
        # Jacobi for the Lie part; central terms drop out of double brackets
        for X, Y, Z in itertools.islice(itertools.combinations(gens, 3), 0, None, 37):
            acc: dict = {}
            for a, b, c in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                inner, _ = alg.bracket(a, b)
                for W, w in inner.items():
                    lie, _ = alg.bracket(W, c)
                    add_into(acc, lie, w)
            assert acc == {}


class TestVacuumModule:
    def test_positive_modes_kill_vacuum(self, heisenberg):
        for n in range(1, 5):
            assert heisenberg.act((n, 1, 0), heisenberg.vacuum()) == {}

    def test_single_bracket(self, heisenberg):
        for n in range(1, 4):
            v = heisenberg.act((-n, 1, 0), heisenberg.vacuum())
            got = heisenberg.act_word([(-n, 1, 0), (n, 1, 0)], v)
            assert got == {((-n, 1, 0),): n}

    def test_central_acts_by_level(self, sl2_multi):
        v = vec([(-1, 1, E), (0, 2, H)])
        assert sl2_multi.act(CENTRAL, v) == {k: 1 for k in v}

    def test_depth_exceeded(self, sl2_multi):
        v = vec([(-2, 1, E)])
        with pytest.raises(DepthExceeded):
            sl2_multi.act((-2, 1, F), v)

    def test_canonical_order(self, sl2_classical):
        m = sl2_classical
        v = m.act((-1, 1, F), m.act((-2, 1, E), m.vacuum()))
        # f e = e f + [f, e] and [f, e] = -h
        assert v == {((-2, 1, E), (-1, 1, F)): 1, ((-3, 1, H),): -1}
        assert list(v)[0] == ((-2, 1, E), (-1, 1, F))

    @pytest.mark.parametrize("fixture", ["sl2_classical", "sl2_multi"])
    def test_commutators_respected(self, request, fixture):
        module = request.getfixturevalue(fixture)
        gens = module.algebra.generators(range(-1, 2))
        for mono in module.basis(min_degree=-module.depth + 2)[::7]:
            v = {mono: Fraction(1)}
            for X, Y in itertools.combinations(gens, 2):
                lhs = module.act(X, module.act(Y, v))
                add_into(lhs, module.act(Y, module.act(X, v)), -1)
                lie, central = module.algebra.bracket(X, Y)
                rhs: dict = {}
                for Z, c in lie.items():
                    add_into(rhs, module.act(Z, v), c)
                add_into(rhs, v, central * module.level)
                assert lhs == rhs

    def test_degree_bands(self, sl2_multi):
        # each Lie step may rise by S; a central contraction by at most 2,
        # since the function cocycle vanishes unless -2 <= n + m <= 0
        S, central_reach = 1, 2
        for mono in sl2_multi.basis()[::5]:
            d = sl2_multi.degree(mono)
            for X in sl2_multi.algebra.generators(range(-3 - d, 2)):
                if X[0] + d < -sl2_multi.depth:
                    continue
                out = sl2_multi.act(X, {mono: Fraction(1)})
                assert all(d + X[0] <= sl2_multi.degree(m) <= d + X[0] + S * len(mono) + central_reach for m in out)

    def test_basis_count_matches_brute_force(self, classical_table):
        m = vacuum_module(classical_table, make_sl(2), 1, 3)
        # generators of weight 1 (degrees 0, -1), 2 and 3, three of each degree
        pool = [(deg, max(-deg, 1)) for deg in (0, -1, -2, -3) for _ in range(3)]
        count = 0
        for size in range(4):
            for combo in itertools.combinations_with_replacement(range(len(pool)), size):
                if sum(pool[i][1] for i in combo) <= 3:
                    count += 1
        assert len(m.basis()) == count == len(set(m.basis()))

    def test_admissibility(self, sl2_multi):
        assert sl2_multi.admissibility_bound(sl2_multi.vacuum()) == 1
        for mono in sl2_multi.basis()[::11]:
            v = {mono: Fraction(1)}
            assert sl2_multi.admissibility_bound(v) == 1 - sl2_multi.degree(mono)
            assert admissibility_check(sl2_multi, v, range(0, 6))

    def test_admissibility_detects_bad_rule(self, classical_table):
        class Leaky(VacuumModule):
            def act(self, X, v):
                return dict(v)

        bad = Leaky(AffineAlgebra(classical_table, make_abelian(1)), 1, 3)
        assert not admissibility_check(bad, bad.vacuum(), range(0, 4))

    def test_dump(self, sl2_classical):
        v = sl2_classical.act((-1, 1, E), sl2_classical.vacuum())
        doc = json.loads(dump_vector(v))
        assert doc == {"terms": [{"monomial": [[E, -1, 1]], "coef": "1"}]}


class TestFock:
    def test_creation_annihilation(self):
        F_ = fock_module(4)
        one = F_.vacuum()
        x1 = F_.a(-1, one)
        assert x1 == {(1,): 1}
        assert F_.a(1, x1) == one
        assert F_.a(0, x1) == x1
        assert F_.a(-2, one) == {(2,): 2}

    def test_depth(self):
        with pytest.raises(DepthExceeded):
            fock_module(2).a(-3, {(): Fraction(1)})

    def test_heisenberg_relations(self):
        F_ = FockModule(9)
        for mono in F_.basis(3):
            v = {mono: Fraction(1)}
            for n, m in itertools.product(range(-3, 4), repeat=2):
                lhs = F_.a(n, F_.a(m, v))
                add_into(lhs, F_.a(m, F_.a(n, v)), -1)
                assert lhs == ({k: c * n for k, c in v.items()} if n == -m and n else {})

    def test_dictionary(self, heisenberg):
        F_ = FockModule(heisenberg.depth)
        for mono in heisenberg.basis()[::3]:
            v = {mono: Fraction(1)}
            image = vacuum_to_fock(v)
            for n in range(-2, 3):
                if heisenberg.degree(mono) + n < -heisenberg.depth:
                    continue
                if n == 0:
                    # a(0) is central classically and becomes the identity
                    continue
                assert vacuum_to_fock(heisenberg.act((n, 1, 0), v)) == F_.a(n, image)
