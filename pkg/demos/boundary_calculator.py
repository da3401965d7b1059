"""
The E1 boundary map on bigraded sphere homotopy: four-case table, the
displayed low-degree sequence, and the signed-preimage degree count that
pins down the exchange class.
"""

from fractions import Fraction

from ehpcalc.ehp import (
    SphereBidegree,
    degree_by_signed_preimages,
    ehp_sequence_report,
    hp_differential,
    known_results_table,
    signed_preimages,
)
from ehpcalc.gw import finite_odd, real_closed

RC = real_closed()
F7 = finite_odd(7)

# the differential 1 - (-1)^p eps^q collapses to four cases by parity
print("case table over a real closed field:")
for p in (2, 3):
    for q in (1, 2):
        elem, label = hp_differential(p, q, RC)
        print(f"  p={p} q={q}: {label:6s} = {elem}")

# the same labels appear over any decidable field; the elements differ
elem, label = hp_differential(2, 1, F7)
print("over F7, p=2 q=1:", label, "=", elem)

# the low-degree exact sequence for the bidegree (2, 3) sphere
report = ehp_sequence_report(SphereBidegree(2, 3), "low_degree")
print(" ".join(report.tokens()))

# the range statement for the (3, 3) sphere
report = ehp_sequence_report(SphereBidegree(3, 3), "full_range")
print(" ".join(report.tokens()))
print(report.annotation)

# the exchange self-map of the square: one preimage of (1/4, 3/4), with a
# negative Jacobian, so the degree is -1 in exact rationals
value = (Fraction(1, 4), Fraction(3, 4))
fiber = signed_preimages("whitehead_exchange_homotopy", value)
print("fiber over (1/4, 3/4):", [(tuple(map(str, pt)), s) for pt, s in fiber])
print("degree:", degree_by_signed_preimages("whitehead_exchange_homotopy", value))

# homotopy groups recorded from the sheaf-theoretic inputs, with their
# hypotheses spelled out
for row in known_results_table():
    print(f"{row['key']} = {row['value']}  [{row['status']}; {row['hypotheses']}]")
