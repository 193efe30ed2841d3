import pytest
from hypothesis import strategies as st

from knsugawara.funcfield import INF, MeroForm, Poly, RationalFunction
from knsugawara.knbasis import KNBasisTable, PointConfig

MULTI = {"in": ["0", "1"], "out": ["2", "inf"]}

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def polys(draw, max_degree=3, nonzero=False):
    cs = draw(st.lists(small_fracs, min_size=1, max_size=max_degree + 1))
    p = Poly(cs)
    if nonzero and p.is_zero():
        p = Poly.const(1)
    return p


@st.composite
def rational_functions(draw, max_degree=3):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree, nonzero=True))
    return RationalFunction(num, den)


finite_points = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def with_known_poles(draw, max_degree=3):
    """``(rf, finite_poles)`` with every finite pole among ``finite_poles``."""
    pts = draw(st.lists(finite_points, min_size=1, max_size=3, unique=True))
    den = Poly.const(1)
    for a in pts:
        den = den * Poly.linear(a) ** draw(st.integers(1, 2))
    num = draw(polys(max_degree))
    return RationalFunction(num, den), pts


@pytest.fixture(scope="session")
def classical_table():
    return KNBasisTable(PointConfig.classical())


@pytest.fixture(scope="session")
def multi_table():
    return KNBasisTable(PointConfig.from_json(MULTI))


def z_power(k: int) -> RationalFunction:
    if k >= 0:
        return RationalFunction(Poly([0] * k + [1]))
    return RationalFunction(Poly.const(1), Poly([0] * (-k) + [1]))


def form(weight: int, rep) -> MeroForm:
    return MeroForm.of(weight, rep)


__all__ = ["INF"]
