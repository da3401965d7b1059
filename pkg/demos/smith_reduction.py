"""
Exact Smith reduction of integer matrices and the homology it computes.
"""

from ehpcalc.homology import (
    ChainComplex,
    HomologyGroup,
    IntegerMatrix,
    reduced_homology,
    smith_normal_form,
)
from ehpcalc.james import james_truncation
from ehpcalc.simplicial import build_sphere

M = IntegerMatrix.from_rows([
    [2, 4, 4],
    [-6, 6, 12],
    [10, 4, 16],
])
factors, U, V = smith_normal_form(M)
D = U @ M @ V
print("invariant factors:", factors)
print("diagonalized:", D.entries)

# U and V certify the reduction: both are integer matrices with unit
# determinant, so the factors are a change-of-basis invariant
assert all(b % a == 0 for a, b in zip(factors, factors[1:]))

# a chain complex with torsion: the 2-cell wraps twice around the 1-cell
C = ChainComplex(
    (("v",), ("a",), ("f",)),
    (IntegerMatrix.from_rows([[0]], 1), IntegerMatrix.from_rows([[2]], 1)),
)
for n in (0, 1, 2):
    d_out = C.boundary(n)
    d_in = C.boundary(n + 1)
    rank_out = len(smith_normal_form(d_out)[0]) if n > 0 else 0
    in_factors = smith_normal_form(d_in)[0]
    free = len(C.generators[n]) - rank_out - len(in_factors)
    group = HomologyGroup(free, tuple(d for d in in_factors if d > 1))
    print(f"H_{n} of the double-wrap complex: {group}")

# the same machinery drives simplicial homology end to end
J2 = james_truncation(build_sphere(2), 2)
print("reduced homology of the level-2 truncation of S^2:",
      {n: str(g) for n, g in sorted(reduced_homology(J2).items())})
