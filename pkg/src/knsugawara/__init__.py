"""Exact genus-zero Krichever-Novikov algebras and the Sugawara construction."""

from .cocycle import (
    CocycleTable,
    ProjectiveConnection,
    check_cocycle_identity,
    coboundary_equivalence,
    function_cocycle,
    locality_bound,
    vectorfield_cocycle,
    vectorfield_cocycle_table,
)
from .findim import FinLieAlgebra, casimir_on_adjoint, dual_basis, kappa, make_abelian, make_sl, parse_algebra
from .funcfield import (
    INF,
    MeroForm,
    Poly,
    RationalFunction,
    contour_integral_over_I,
    exterior_derivative,
    form_product,
    local_expansion,
    make_rational_function,
    order_at,
    parse_point,
    residue_at,
    schwarzian,
)
from .knbasis import (
    KNBasisTable,
    KNIndex,
    PointConfig,
    almost_grading_bounds,
    bracket_constants,
    duality_pairing,
    expand_in_basis,
    lie_derivative,
    prescribe_orders,
    product_constants,
)
from .representations import AffineAlgebra, FockModule, VacuumModule, affine_bracket, fock_module, vacuum_module
from .sugawara import (
    central_charge,
    classical_virasoro_check,
    rescale,
    sugawara_coefficient,
    sugawara_operator,
    verify_current_commutator,
    verify_virasoro,
)

__version__ = "0.1.0"
