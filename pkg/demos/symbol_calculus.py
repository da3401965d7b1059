"""
Milnor-Witt symbols over a small field: defining relations, normal forms,
and the contraction / tensor bookkeeping for the graded sheaves.
"""

from ehpcalc.gw import finite_odd, quadratically_closed
from ehpcalc.kmw import (
    SheafExpr,
    aone_tensor,
    contraction,
    kmw_add,
    kmw_bracket,
    kmw_equal,
    kmw_eta,
    kmw_form,
    kmw_hyperbolic,
    kmw_mul,
    kmw_normal_form,
    kmw_zero,
    sheaf_token,
)

F5 = finite_odd(5)
eta = kmw_eta(F5)
b2 = kmw_bracket(F5, 2)
b3 = kmw_bracket(F5, 3)

# the Steinberg relation [a][1 - a] = 0, here with a = 3
steinberg = kmw_mul(b3, kmw_bracket(F5, 1 - 3))
print("[3][-2] = 0?", kmw_equal(steinberg, kmw_zero(F5)))

# the twisted logarithm: [ab] = [a] + [b] + eta [a][b]
lhs = kmw_bracket(F5, 2 * 3)
rhs = kmw_add(kmw_add(b2, b3), kmw_mul(eta, kmw_mul(b2, b3)))
print("[6] expands?", kmw_equal(lhs, rhs))

# eta kills the hyperbolic element
print("eta * h = 0?", kmw_equal(kmw_mul(eta, kmw_hyperbolic(F5)), kmw_zero(F5)))

# normal forms: degree 1 over F5 pairs a unit exponent with a form class
for sym, label in [(b2, "[2]"), (kmw_mul(eta, b2), "eta [2]"),
                   (kmw_form(F5, 2), "<2>")]:
    nf = kmw_normal_form(sym)
    print(f"normal form of {label}: degree {nf.degree}, {nf}")

# over a quadratically closed field the form fragment dies and only the
# multiplicative part survives
QC = quadratically_closed()
nf = kmw_normal_form(kmw_add(kmw_bracket(QC, 2), kmw_bracket(QC, 3)))
print("[2] + [3] over a quadratically closed field:", nf)

# sheaf bookkeeping: contractions step the weight down, tensors add it
KMW = lambda n: SheafExpr("KMW", (n,))
print("KMW(5) contracted 6 times:", sheaf_token(contraction(KMW(5), 6)))
print("KM(5) contracted 5 times:",
      sheaf_token(contraction(SheafExpr("KM", (5,)), 5)))
print("KMW(2) (x) KMW(3) =", sheaf_token(aone_tensor(KMW(2), KMW(3))))
print("KMW(1) (x) KM(5)/24 =",
      sheaf_token(aone_tensor(KMW(1), SheafExpr("KM_mod", (5, 24)))))
