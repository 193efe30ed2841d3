"""Witt algebra on the punctured plane and its Virasoro cocycle.

Run:  python3 demos/classical_virasoro.py
"""

from fractions import Fraction

from knsugawara.cocycle import check_cocycle_identity, closed_triples, kn_bracket, vectorfield_cocycle_table
from knsugawara.knbasis import KNBasisTable, PointConfig, bracket_constants
from knsugawara.sugawara import classical_virasoro_check

table = KNBasisTable(PointConfig.classical())

# with one in-point and one out-point the basis is just z^{n+1} d/dz
for n in range(-2, 3):
    print(f"e_{n:+d} =", table.form(-1, n, 1).rep, "d/dz")

print("[e_1, e_-1] =", bracket_constants(table, (1, 1), (-1, 1)))

chi = vectorfield_cocycle_table(table, range(-6, 7))
print("\nchi(e_n, e_-n):")
for n in range(1, 7):
    got = chi((n, 1), (-n, 1))
    print(f"  n={n}  {str(got):>6}   (n^3-n)/12 = {Fraction(n**3 - n, 12)}")

br = kn_bracket(table)
print("cocycle identity on closed triples:", check_cocycle_identity(chi, br, closed_triples(chi, br)))

# the free boson realizes the same cocycle with c = 1
report = classical_virasoro_check(depth=8, nmax=3)
print("\nFock space check:", report["pass"], f"({report['checked']} vectors)")

# a deliberately wrong central term is caught, with a witness
bad = classical_virasoro_check(depth=6, nmax=2, cocycle=lambda n: Fraction(n**3, 12))
print("wrong cocycle rejected:", not bad["pass"], "witness", bad["witness"])
