"""Krichever-Novikov basis for in-points {0, 1} and out-points {2, inf}.

Shows a few basis elements, the duality between weights lam and 1 - lam,
the almost-graded structure and expansion of a form in the basis.

Run:  python3 demos/multipoint_basis.py
"""

import itertools

from knsugawara.funcfield import form_product
from knsugawara.knbasis import (
    KNBasisTable,
    PointConfig,
    almost_grading_bounds,
    bracket_constants,
    duality_pairing,
    expand_in_basis,
)

table = KNBasisTable(PointConfig.from_json({"in": ["0", "1"], "out": ["2", "inf"]}))

print("functions A_{n,p}:")
for n, p in itertools.product(range(-1, 2), (1, 2)):
    el = table.element(0, n, p)
    orders = ", ".join(f"{P}:{o}" for P, o in el.orders.items())
    print(f"  A_{n},{p} = {el.form.rep}    orders {orders}")

print("\nvector fields e_{n,p}:")
for n, p in itertools.product(range(-1, 2), (1, 2)):
    print(f"  e_{n},{p} = ({table.form(-1, n, p).rep}) d/dz")

# the pairing of lam-forms with (1 - lam)-forms is a Kronecker delta
idx = [(n, p) for n in range(-2, 3) for p in (1, 2)]
ok = all(
    duality_pairing(table, table.element(0, *a), table.element(1, *b)) == int(a[0] == -b[0] and a[1] == b[1])
    for a, b in itertools.product(idx, repeat=2)
)
print("\nduality of functions and 1-forms on |n| <= 2:", ok)

R, S = almost_grading_bounds(table, range(-3, 4))
print(f"band widths: vector fields R = {R}, functions S = {S}")
print("[e_1,1, e_-1,2] =", bracket_constants(table, (1, 1), (-1, 2)))

prod = form_product(table.form(0, 0, 1), table.form(0, 0, 2))
print("A_0,1 * A_0,2 =", expand_in_basis(table, prod))
