"""Graded symbol calculus on two generators: degree +1 brackets [a] over
the field's units, a central degree -1 element eta, integer scalars in
degree 0. Products rewrite locally ([1] = 0, eta moved to the front);
exact normal forms exist over the decidable coefficient fields and route
degree 0 to diagonal forms, negative degrees to their classes modulo
hyperbolics, and positive degrees to a (multiplicative part, ideal part)
pair with a mod-2 matching. Symbolic sheaf tags carry the closed rewrite
tables for contraction and the tensor pairing.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NoTensorRule, NormalFormUnavailable
from .gw import (
    FINITE_ODD,
    QUADRATICALLY_CLOSED,
    RATIONALS,
    REAL_CLOSED,
    Field,
    GWElement,
    WittClass,
    gw_add,
    gw_equal,
    gw_make,
    gw_mul,
    gw_one,
    gw_scale,
    gw_sub,
    gw_zero,
    witt_class,
)

# ------------------------------------------------------------------ letters


def _unit_letter(field: Field, a):
    """Canonical bracket entry: an int in the prime subfield for finite
    fields, a nonzero lowest-terms Fraction elsewhere."""
    if isinstance(a, str):
        raise DomainError("bracket entries must be numeric units")
    if field.kind == FINITE_ODD:
        p = field.characteristic
        value = Fraction(a)
        num, den = value.numerator % p, value.denominator % p
        if num == 0 or den == 0:
            raise DomainError("bracket entry is not a unit")
        return num * pow(den, -1, p) % p
    value = Fraction(a)
    if value == 0:
        raise DomainError("bracket entry is not a unit")
    return value


def _one_letter(field: Field):
    return 1 if field.kind == FINITE_ODD else Fraction(1)


# ------------------------------------------------------------------ symbols


@dataclass(frozen=True)
class KMWSymbol:
    """Integer combination of monomials eta^s [a_1]...[a_m], one shared
    degree m - s; the empty combination leaves the degree unset."""

    field: Field
    degree: int | None
    terms: tuple  # ((coeff, (s, letters)), ...) merged, sorted, no zeros

    def __post_init__(self):
        one = _one_letter(self.field)
        for coeff, (s, letters) in self.terms:
            if not isinstance(coeff, int) or coeff == 0:
                raise DomainError("coefficients must be nonzero integers")
            if not isinstance(s, int) or s < 0:
                raise DomainError("eta exponents must be non-negative integers")
            if any(a == one for a in letters):
                raise DomainError("a bracket at 1 is zero and must be dropped")
            if len(letters) - s != self.degree:
                raise DomainError("terms must share one degree")
        if not self.terms and self.degree is not None:
            raise DomainError("the empty combination carries no degree")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for coeff, (s, letters) in self.terms:
            body = []
            if s == 1:
                body.append("eta")
            elif s > 1:
                body.append(f"eta^{s}")
            body.extend(f"[{a}]" for a in letters)
            mono = " ".join(body) if body else "1"
            mag = abs(coeff)
            head = mono if mag == 1 and body else (f"{mag} {mono}" if body else str(mag))
            if not pieces:
                pieces.append(head if coeff > 0 else f"- {head}")
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + head)
        return " ".join(pieces)


def _build(field: Field, items) -> KMWSymbol:
    """Merge (coeff, monomial) items into a symbol, dropping monomials
    containing a bracket at 1 and zero coefficients."""
    one = _one_letter(field)
    acc: dict = {}
    degree = None
    for coeff, (s, letters) in items:
        if not isinstance(coeff, int):
            raise DomainError("coefficients must be integers")
        if any(a == one for a in letters):
            continue
        d = len(letters) - s
        if degree is None:
            degree = d
        elif d != degree:
            raise DomainError("terms must share one degree")
        key = (s, tuple(letters))
        acc[key] = acc.get(key, 0) + coeff
    terms = tuple(
        (coeff, mono) for mono, coeff in sorted(acc.items()) if coeff != 0
    )
    return KMWSymbol(field, degree if terms else None, terms)


def kmw_zero(field: Field) -> KMWSymbol:
    return KMWSymbol(field, None, ())


def kmw_bracket(field: Field, a) -> KMWSymbol:
    """The degree 1 generator [a]; [1] is already zero."""
    return _build(field, [(1, (0, (_unit_letter(field, a),)))])


def kmw_eta(field: Field) -> KMWSymbol:
    """The central degree -1 generator."""
    return _build(field, [(1, (1, ()))])


def kmw_scalar(field: Field, c: int) -> KMWSymbol:
    """The degree 0 integer c."""
    return _build(field, [(c, (0, ()))])


def _same_field(x: KMWSymbol, y: KMWSymbol):
    if x.field != y.field:
        raise DomainError("symbols live over different fields")


def kmw_add(x: KMWSymbol, y: KMWSymbol) -> KMWSymbol:
    _same_field(x, y)
    if x.degree is not None and y.degree is not None and x.degree != y.degree:
        raise DomainError("cannot add symbols of different degrees")
    return _build(x.field, x.terms + y.terms)


def kmw_neg(x: KMWSymbol) -> KMWSymbol:
    return _build(x.field, tuple((-c, m) for c, m in x.terms))


def kmw_sub(x: KMWSymbol, y: KMWSymbol) -> KMWSymbol:
    return kmw_add(x, kmw_neg(y))


def kmw_scale(n: int, x: KMWSymbol) -> KMWSymbol:
    return _build(x.field, tuple((n * c, m) for c, m in x.terms))


def kmw_mul(x: KMWSymbol, y: KMWSymbol) -> KMWSymbol:
    """Product; eta is central, so all eta powers collect in front while
    bracket letters concatenate in order."""
    _same_field(x, y)
    items = []
    for cx, (sx, lx) in x.terms:
        for cy, (sy, ly) in y.terms:
            items.append((cx * cy, (sx + sy, lx + ly)))
    return _build(x.field, items)


def kmw_power(x: KMWSymbol, n: int) -> KMWSymbol:
    if n < 0:
        raise DomainError("negative symbol powers are not defined")
    out = kmw_scalar(x.field, 1)
    for _ in range(n):
        out = kmw_mul(out, x)
    return out


def kmw_form(field: Field, a) -> KMWSymbol:
    """<a> = 1 + eta [a], the degree 0 class of the unit a."""
    return kmw_add(kmw_scalar(field, 1), kmw_mul(kmw_eta(field), kmw_bracket(field, a)))


def kmw_hyperbolic(field: Field) -> KMWSymbol:
    """h = 2 + eta [-1] = <1> + <-1>."""
    return kmw_add(kmw_scalar(field, 2), kmw_mul(kmw_eta(field), kmw_bracket(field, -1)))


def kmw_epsilon(field: Field) -> KMWSymbol:
    """The swap class -<-1>."""
    return kmw_neg(kmw_form(field, -1))


# ------------------------------------------------------------- normal forms


@lru_cache(maxsize=None)
def _dlog_table(p: int) -> dict:
    # powers of the smallest generator of the units mod p
    for g in range(2, p):
        table, acc = {}, 1
        for e in range(p - 1):
            table[acc] = e
            acc = acc * g % p
        if len(table) == p - 1:
            return table
    raise DomainError("no multiplicative generator found")


def _gw_value(field: Field, terms) -> GWElement:
    """Sum of coeff * prod([a_i] -> <a_i> - <1>); eta powers act as the
    identity on this value, so they are ignored here."""
    total = gw_zero(field)
    for coeff, (_s, letters) in terms:
        prod = gw_one(field)
        for a in letters:
            prod = gw_mul(prod, gw_sub(gw_make(field, [(1, a)]), gw_one(field)))
        total = gw_add(total, gw_scale(coeff, prod))
    return total


def _milnor_trivial(m) -> bool:
    return m == 1 if isinstance(m, Fraction) else m == 0


@dataclass(frozen=True)
class KMWNormalForm:
    """Degree 0 holds a diagonal-form value, negative degrees a class
    modulo hyperbolics, positive degrees a (multiplicative, ideal) pair
    whose mod-2 images must match."""

    field: Field
    degree: int | None
    value: object

    def __post_init__(self):
        if self.degree is None or self.degree <= 0:
            return
        n = self.degree
        milnor, witt = self.value
        kind = self.field.kind
        if kind == FINITE_ODD:
            if n >= 2:
                ok = milnor == 0 and witt.is_zero
            else:
                ok = (milnor % 2 == 1) == (not witt.is_zero)
        elif kind == REAL_CLOSED:
            sig = witt.data[0]
            ok = sig % (1 << n) == 0 and (sig >> n) % 2 == milnor % 2
        else:
            ok = witt.is_zero
        if not ok:
            raise DomainError("normal form parts have mismatched mod-2 images")

    def is_zero(self) -> bool:
        if self.degree is None:
            return True
        if self.degree == 0:
            return gw_equal(self.value, gw_zero(self.field)) is True
        if self.degree < 0:
            return self.value.is_zero
        milnor, witt = self.value
        return _milnor_trivial(milnor) and witt.is_zero

    def __str__(self) -> str:
        if self.degree is None:
            return "0"
        if self.degree <= 0:
            return str(self.value)
        milnor, witt = self.value
        return f"({milnor}, {witt})"


def _positive_degree_letters_ok(field: Field, terms):
    if field.kind == REAL_CLOSED:
        # only the sign fragment is exact in positive degrees
        if any(a != -1 for _c, (_s, letters) in terms for a in letters):
            raise NormalFormUnavailable("entries outside {1, -1} have no exact form here")
    if field.kind == QUADRATICALLY_CLOSED:
        # the torsion of the unit group is not finitely presented here
        if any(a < 0 for _c, (_s, letters) in terms for a in letters):
            raise NormalFormUnavailable("negative entries have no exact form here")


def _milnor_part(field: Field, n: int, terms):
    kind = field.kind
    if kind == FINITE_ODD:
        if n >= 2:
            return 0
        p, q = field.characteristic, field.q
        table = _dlog_table(p)
        stretch = (q - 1) // (p - 1)
        total = 0
        for coeff, (s, letters) in terms:
            if s == 0:
                total += coeff * table[letters[0]] * stretch
        return total % (q - 1)
    if kind == REAL_CLOSED:
        return sum(coeff for coeff, (s, _l) in terms if s == 0) % 2
    # quadratically closed, degree 1: the positive units form a free group
    total = Fraction(1)
    for coeff, (s, letters) in terms:
        if s == 0:
            total *= Fraction(letters[0]) ** coeff
    return total


def kmw_normal_form(x: KMWSymbol) -> KMWNormalForm:
    """Exact evaluation where a normal form exists; raises otherwise so
    callers can fall back to symbolic comparison."""
    field = x.field
    if field.kind == RATIONALS:
        raise NormalFormUnavailable("no exact normal form over this field")
    if x.degree is None:
        return KMWNormalForm(field, None, None)
    n = x.degree
    if n == 0:
        return KMWNormalForm(field, 0, _gw_value(field, x.terms))
    if n < 0:
        return KMWNormalForm(field, n, witt_class(_gw_value(field, x.terms)))
    if field.kind == QUADRATICALLY_CLOSED and n >= 2:
        raise NormalFormUnavailable("only degree 1 is exact over this field")
    _positive_degree_letters_ok(field, x.terms)
    milnor = _milnor_part(field, n, x.terms)
    witt = witt_class(_gw_value(field, x.terms))
    return KMWNormalForm(field, n, (milnor, witt))


def kmw_equal(x: KMWSymbol, y: KMWSymbol):
    """True/False via normal forms where they exist; otherwise the merged
    difference decides only syntactic equality, and the honest answer for
    the rest is "undecided"."""
    _same_field(x, y)
    if x.degree is not None and y.degree is not None and x.degree != y.degree:
        raise DomainError("cannot compare symbols of different degrees")
    diff = kmw_sub(x, y)
    if not diff.terms:
        return True
    try:
        return kmw_normal_form(diff).is_zero()
    except NormalFormUnavailable:
        return "undecided"


# ------------------------------------------------------------- sheaf tags

_SHEAF_TAGS = {
    "KMW": 1,
    "KM": 1,
    "KM_mod": 2,
    "I": 1,
    "W": 0,
    "Z": 0,
    "Z_mod": 1,
    "Zero": 0,
    "Tensor": 2,
    "Contraction": 2,
}


@dataclass(frozen=True)
class SheafExpr:
    """Symbolic tag tree; leaves carry integer parameters only."""

    tag: str
    args: tuple = ()

    def __post_init__(self):
        if self.tag not in _SHEAF_TAGS:
            raise DomainError(f"unknown sheaf tag {self.tag!r}")
        if len(self.args) != _SHEAF_TAGS[self.tag]:
            raise DomainError(f"tag {self.tag} takes {_SHEAF_TAGS[self.tag]} arguments")
        if self.tag in ("KM_mod", "Z_mod"):
            modulus = self.args[-1]
            if not isinstance(modulus, int) or modulus < 2:
                raise DomainError("a modulus must be an integer >= 2")
        if self.tag == "Tensor" and not all(isinstance(a, SheafExpr) for a in self.args):
            raise DomainError("tensor arguments must be sheaf expressions")
        if self.tag == "Contraction":
            inner, j = self.args
            if not isinstance(inner, SheafExpr):
                raise DomainError("contraction applies to a sheaf expression")
            if not isinstance(j, int) or j < 0:
                raise DomainError("contraction count must be a non-negative integer")

    def __str__(self) -> str:
        return sheaf_token(self)


def sheaf_token(e: SheafExpr) -> str:
    tag = e.tag
    if tag == "KMW":
        return f"KMW({e.args[0]})"
    if tag == "KM":
        return f"KM({e.args[0]})"
    if tag == "KM_mod":
        return f"KM({e.args[0]})/{e.args[1]}"
    if tag == "I":
        return f"I({e.args[0]})"
    if tag == "Z_mod":
        return f"Z/{e.args[0]}"
    if tag == "Tensor":
        return f"{sheaf_token(e.args[0])} (x) {sheaf_token(e.args[1])}"
    if tag == "Contraction":
        return f"{sheaf_token(e.args[0])}_{{-{e.args[1]}}}"
    return {"W": "W", "Z": "Z", "Zero": "0"}[tag]


def _resolve(e: SheafExpr) -> SheafExpr:
    if e.tag == "Tensor":
        return aone_tensor(_resolve(e.args[0]), _resolve(e.args[1]))
    if e.tag == "Contraction":
        return contraction(_resolve(e.args[0]), e.args[1])
    return e


def contraction(e: SheafExpr, j: int) -> SheafExpr:
    """j-fold contraction by the closed table; nested tensor and
    contraction nodes are resolved first."""
    if not isinstance(j, int) or j < 0:
        raise DomainError("contraction count must be a non-negative integer")
    e = _resolve(e)
    if j == 0:
        return e
    tag = e.tag
    if tag == "KMW":
        n = e.args[0] - j
        return SheafExpr("W") if n < 0 else SheafExpr("KMW", (n,))
    if tag == "KM":
        n = e.args[0] - j
        if n < 0:
            return SheafExpr("Zero")
        return SheafExpr("Z") if n == 0 else SheafExpr("KM", (n,))
    if tag == "KM_mod":
        n = e.args[0] - j
        if n < 0:
            return SheafExpr("Zero")
        if n == 0:
            return SheafExpr("Z_mod", (e.args[1],))
        return SheafExpr("KM_mod", (n, e.args[1]))
    if tag == "I":
        n = e.args[0] - j
        return SheafExpr("W") if n <= 0 else SheafExpr("I", (n,))
    # W, Z, Z_mod, Zero are stable under contraction
    return e


def aone_tensor(e1: SheafExpr, e2: SheafExpr) -> SheafExpr:
    """Tensor pairing by the closed table; pairs outside it are refused
    rather than guessed."""
    e1, e2 = _resolve(e1), _resolve(e2)
    if e1.tag == "Z":
        return e2
    if e2.tag == "Z":
        return e1
    pair = {e1.tag, e2.tag}
    if pair == {"KMW"}:
        m, n = e1.args[0], e2.args[0]
        if m >= 1 and n >= 1:
            return SheafExpr("KMW", (m + n,))
    elif pair == {"KMW", "KM_mod"}:
        kmw, mod = (e1, e2) if e1.tag == "KMW" else (e2, e1)
        m, (n, r) = kmw.args[0], mod.args
        if m >= 1 and n >= 1:
            return SheafExpr("KM_mod", (m + n, r))
    elif pair == {"KM_mod"}:
        (m, r1), (n, r2) = e1.args, e2.args
        if r1 == r2 and m >= 1 and n >= 1:
            return SheafExpr("KM_mod", (m + n, r1))
    raise NoTensorRule(f"no rule for {sheaf_token(e1)} (x) {sheaf_token(e2)}")


def rational_decomposition(n: int, field: Field) -> dict:
    """After tensoring with the rationals the two factors survive or die
    by degree and by orderability of the field."""
    formally_real = field.kind in (REAL_CLOSED, RATIONALS)
    return {
        "degree": n,
        "field": str(field),
        "milnor_part_nontrivial": n >= 0,
        "I_part_nontrivial": formally_real,
    }
