"""
Diagonal form arithmetic over concrete fields: invariants, Witt classes,
and the small rings they generate.
"""

from ehpcalc.gw import (
    finite_odd,
    gw_add,
    gw_equal,
    gw_invariants,
    gw_make,
    gw_mul,
    hyperbolic,
    pfister_form,
    rationals,
    real_closed,
    witt_class,
    witt_ring_table,
)

F5 = finite_odd(5)
RC = real_closed()
Q = rationals()

# over F5 the nonresidue class is written g; rank-2 forms are classified
# by rank and discriminant, so <2> + <3> collapses to 2<1>
a = gw_make(F5, [(1, 1), (1, 1)])
b = gw_make(F5, [(1, 2), (1, 3)])
print("over F5, <2> + <3> normalizes to", b, "and equals <1> + <1>:",
      gw_equal(a, b))
print("invariants:", {k: str(v) for k, v in gw_invariants(a).items()})

# signatures live over a real closed field
form = gw_make(RC, [(2, 1), (1, -1)])
print("over R:", form, "->",
      {k: str(v) for k, v in gw_invariants(form).items()})

# hyperbolic forms die in the Witt ring
h = hyperbolic(RC)
print("Witt class of", h, "is zero:", witt_class(h).is_zero)
print("Witt class of", form, "is", witt_class(form))

# the four-element Witt ring of a finite field, with its cyclicity flag
table = witt_ring_table(finite_odd(7))
print("W(F7) elements:", table["elements"], "cyclic:", table["cyclic"])
table = witt_ring_table(F5)
print("W(F5) elements:", table["elements"], "cyclic:", table["cyclic"])

# two-fold Pfister form <<2, 3>> = <1,-2> x <1,-3> over the rationals
p = pfister_form(Q, (2, 3))
print("Pfister <<2,3>> over Q:", p)
print("its square:", gw_mul(p, p))

# rank and discriminant are ring homomorphism data: additive on sums
x = gw_make(Q, [(1, 2)])
y = gw_make(Q, [(1, 3)])
s = gw_add(x, y)
assert gw_invariants(s)["rank"] == 2
print("disc(<2> + <3>) =", gw_invariants(s)["disc"])
