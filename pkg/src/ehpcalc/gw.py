"""Symmetric bilinear form arithmetic over concrete fields of characteristic
not 2: square classes, the Grothendieck-Witt ring, Witt quotients, and powers
of the fundamental ideal."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

QUADRATICALLY_CLOSED = "quadratically-closed"
REAL_CLOSED = "real-closed"
FINITE_ODD = "finite-odd"
RATIONALS = "rationals"


def _prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
        p += 1
    return (q, 1)


@dataclass(frozen=True)
class Field:
    kind: str
    q: int | None = None

    def __post_init__(self):
        if self.kind not in (QUADRATICALLY_CLOSED, REAL_CLOSED, FINITE_ODD, RATIONALS):
            raise DomainError(f"unknown field kind {self.kind!r}")
        if self.kind == FINITE_ODD:
            if self.q is None or self.q < 3 or self.q % 2 == 0:
                raise DomainError("finite field size must be an odd prime power >= 3")
            if _prime_power(self.q) is None:
                raise DomainError(f"{self.q} is not a prime power")
        elif self.q is not None:
            raise DomainError("only finite fields carry a size")

    @property
    def characteristic(self) -> int:
        if self.kind == FINITE_ODD:
            return _prime_power(self.q)[0]
        return 0

    def __str__(self) -> str:
        if self.kind == FINITE_ODD:
            return f"F{self.q}"
        return {QUADRATICALLY_CLOSED: "Qbar", REAL_CLOSED: "R", RATIONALS: "Q"}[self.kind]


def quadratically_closed() -> Field:
    return Field(QUADRATICALLY_CLOSED)


def real_closed() -> Field:
    return Field(REAL_CLOSED)


def finite_odd(q: int) -> Field:
    return Field(FINITE_ODD, q)


def rationals() -> Field:
    return Field(RATIONALS)


def non_residue(field: Field) -> int:
    """Smallest positive non-residue, for finite fields of prime order."""
    if field.kind != FINITE_ODD:
        raise DomainError("non-residue lookup needs a finite field")
    p, k = _prime_power(field.q)
    if k != 1:
        raise DomainError("no prime-subfield non-residue in a proper extension")
    return next(g for g in range(2, p) if pow(g, (p - 1) // 2, p) == p - 1)


def _squarefree(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * n


@dataclass(frozen=True)
class SquareClass:
    """A unit up to squares, in the field's canonical form."""

    field: Field
    rep: int | str

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if self.field != other.field:
            raise DomainError("square classes live over different fields")
        kind = self.field.kind
        if kind == QUADRATICALLY_CLOSED:
            return self
        if kind == REAL_CLOSED:
            return SquareClass(self.field, self.rep * other.rep)
        if kind == FINITE_ODD:
            flips = (self.rep == "g") ^ (other.rep == "g")
            return SquareClass(self.field, "g" if flips else 1)
        return SquareClass(self.field, _squarefree(self.rep * other.rep))

    def __str__(self) -> str:
        return str(self.rep)


def square_class(field: Field, a) -> SquareClass:
    """Canonical square class of a nonzero unit; finite fields accept the
    symbol "g" for the fixed non-residue."""
    if a == "g":
        if field.kind != FINITE_ODD:
            raise DomainError("the symbol g is reserved for finite fields")
        return SquareClass(field, "g")
    if isinstance(a, Fraction):
        if a == 0:
            raise DomainError("zero is not a unit")
        a = a.numerator * a.denominator
    if not isinstance(a, int) or a == 0:
        raise DomainError(f"not a unit: {a!r}")
    kind = field.kind
    if kind == QUADRATICALLY_CLOSED:
        return SquareClass(field, 1)
    if kind == REAL_CLOSED:
        return SquareClass(field, 1 if a > 0 else -1)
    if kind == RATIONALS:
        return SquareClass(field, _squarefree(a))
    p, _ = _prime_power(field.q)
    if a % p == 0:
        raise DomainError(f"{a} is zero in characteristic {p}")
    # Euler criterion in the prime subfield decides squareness in the
    # extension as well
    e = (field.q - 1) // 2
    return SquareClass(field, 1 if pow(a, e, p) == 1 else "g")


def _class_key(c: SquareClass):
    return (1, 0) if c.rep == "g" else (0, c.rep)


@dataclass(frozen=True)
class GWElement:
    """Virtual diagonal form in field-specific normal form."""

    field: Field
    pos: tuple[SquareClass, ...]
    neg: tuple[SquareClass, ...]

    def __str__(self) -> str:
        def display_key(rep):
            # <1> first, then <-1>, then by magnitude, the non-residue last
            if rep == "g":
                return (4, 0)
            if rep == 1:
                return (0, 0)
            if rep == -1:
                return (1, 0)
            return (2 if rep > 0 else 3, abs(rep))

        def chunk(classes, sign):
            counts: dict = {}
            for c in classes:
                counts[c.rep] = counts.get(c.rep, 0) + 1
            parts = []
            for rep in sorted(counts, key=display_key):
                n = counts[rep]
                coeff = "" if n == 1 else str(n)
                parts.append(f"{sign}{coeff}<{rep}>")
            return parts

        parts = chunk(self.pos, "") + chunk(self.neg, "-")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _counts(classes) -> dict:
    out: dict = {}
    for c in classes:
        out[c] = out.get(c, 0) + 1
    return out


def _from_counts(field: Field, net: dict) -> GWElement:
    pos, neg = [], []
    for c in sorted(net, key=_class_key):
        n = net[c]
        (pos if n > 0 else neg).extend([c] * abs(n))
    return GWElement(field, tuple(pos), tuple(neg))


def _normalize(field: Field, pos, neg) -> GWElement:
    kind = field.kind
    one = square_class(field, 1)
    if kind == QUADRATICALLY_CLOSED:
        rank = len(pos) - len(neg)
        return _from_counts(field, {one: rank})
    if kind == REAL_CLOSED:
        minus = square_class(field, -1)
        sig = sum(c.rep for c in pos) - sum(c.rep for c in neg)
        rank = len(pos) - len(neg)
        return _from_counts(field, {one: (rank + sig) // 2, minus: (rank - sig) // 2})
    if kind == FINITE_ODD:
        g = SquareClass(field, "g")
        rank = len(pos) - len(neg)
        disc_is_g = (sum(1 for c in pos if c.rep == "g") + sum(1 for c in neg if c.rep == "g")) % 2
        if disc_is_g:
            return _from_counts(field, {one: rank - 1, g: 1})
        return _from_counts(field, {one: rank})
    # rationals: cancel identical classes, then rewrite hyperbolic pairs
    # <a> + <-a> as <1> + <-1>
    net: dict = {}
    for c in pos:
        net[c] = net.get(c, 0) + 1
    for c in neg:
        net[c] = net.get(c, 0) - 1
    minus = square_class(field, -1)
    one_minus_one: dict = {one: 0, minus: 0}
    for c in sorted(net, key=_class_key):
        if c.rep in (1, -1):
            continue
        opp = c * minus
        while net.get(c, 0) > 0 and net.get(opp, 0) > 0:
            net[c] -= 1
            net[opp] -= 1
            one_minus_one[one] += 1
            one_minus_one[minus] += 1
        while net.get(c, 0) < 0 and net.get(opp, 0) < 0:
            net[c] += 1
            net[opp] += 1
            one_minus_one[one] -= 1
            one_minus_one[minus] -= 1
    net[one] = net.get(one, 0) + one_minus_one[one]
    net[minus] = net.get(minus, 0) + one_minus_one[minus]
    return _from_counts(field, {c: n for c, n in net.items() if n})


def gw_make(field: Field, terms) -> GWElement:
    """Element from (integer coefficient, unit) terms, e.g. h = [(1, 1), (1, -1)]."""
    pos, neg = [], []
    for coeff, a in terms:
        c = square_class(field, a)
        (pos if coeff > 0 else neg).extend([c] * abs(coeff))
    return _normalize(field, pos, neg)


def gw_zero(field: Field) -> GWElement:
    return gw_make(field, [])


def gw_one(field: Field) -> GWElement:
    return gw_make(field, [(1, 1)])


def hyperbolic(field: Field) -> GWElement:
    """h = <1> + <-1>."""
    return gw_make(field, [(1, 1), (1, -1)])


def exchange_class(field: Field) -> GWElement:
    """The class -<-1> that swaps smash factors."""
    return gw_make(field, [(-1, -1)])


def _same_field(x: GWElement, y: GWElement):
    if x.field != y.field:
        raise DomainError("elements live over different fields")


def gw_add(x: GWElement, y: GWElement) -> GWElement:
    _same_field(x, y)
    return _normalize(x.field, x.pos + y.pos, x.neg + y.neg)


def gw_neg(x: GWElement) -> GWElement:
    return _normalize(x.field, x.neg, x.pos)


def gw_sub(x: GWElement, y: GWElement) -> GWElement:
    return gw_add(x, gw_neg(y))


def gw_mul(x: GWElement, y: GWElement) -> GWElement:
    _same_field(x, y)
    pos = [a * b for a, b in itertools.product(x.pos, y.pos)]
    pos += [a * b for a, b in itertools.product(x.neg, y.neg)]
    neg = [a * b for a, b in itertools.product(x.pos, y.neg)]
    neg += [a * b for a, b in itertools.product(x.neg, y.pos)]
    return _normalize(x.field, pos, neg)


def gw_scale(n: int, x: GWElement) -> GWElement:
    out = gw_zero(x.field)
    for _ in range(abs(n)):
        out = gw_add(out, x)
    return out if n >= 0 else gw_neg(out)


def gw_invariants(x: GWElement) -> dict:
    """Rank, discriminant class, and (where ordered) signature."""
    disc = square_class(x.field, 1)
    for c in x.pos + x.neg:
        disc = disc * c
    if x.field.kind == REAL_CLOSED:
        signature = sum(c.rep for c in x.pos) - sum(c.rep for c in x.neg)
    elif x.field.kind == RATIONALS:
        signature = sum(1 if c.rep > 0 else -1 for c in x.pos)
        signature -= sum(1 if c.rep > 0 else -1 for c in x.neg)
    else:
        signature = "undefined"
    return {"rank": len(x.pos) - len(x.neg), "disc": disc, "signature": signature}


def gw_equal(x: GWElement, y: GWElement):
    """Equality decision; over the rationals the answer may be "undecided"."""
    _same_field(x, y)
    if x.field.kind != RATIONALS:
        return (x.pos, x.neg) == (y.pos, y.neg)
    if (x.pos, x.neg) == (y.pos, y.neg):
        return True
    ix, iy = gw_invariants(x), gw_invariants(y)
    if (ix["rank"], ix["disc"], ix["signature"]) != (iy["rank"], iy["disc"], iy["signature"]):
        return False
    return "undecided"


@dataclass(frozen=True)
class WittClass:
    """Class of a form modulo hyperbolic multiples."""

    field: Field
    data: tuple

    def __str__(self) -> str:
        kind = self.field.kind
        if kind == QUADRATICALLY_CLOSED:
            return "<1>" if self.data[0] else "0"
        if kind == REAL_CLOSED:
            return str(self.data[0])
        if kind == FINITE_ODD:
            parity, disc = self.data
            if parity == 1:
                return f"<{disc}>"
            if disc == 1:
                return "0"
            # rank-2 representative; its honest discriminant undoes the
            # one-hyperbolic-plane twist
            actual = SquareClass(self.field, disc) * square_class(self.field, -1)
            return "<1>+<1>" if actual.rep == 1 else "<1>+<g>"
        inner = str(GWElement(self.field, *self.data))
        return f"[{inner}]"

    @property
    def is_zero(self) -> bool:
        kind = self.field.kind
        if kind == QUADRATICALLY_CLOSED:
            return self.data[0] == 0
        if kind == REAL_CLOSED:
            return self.data[0] == 0
        if kind == FINITE_ODD:
            return self.data == (0, 1)
        return self.data == ((), ())


def witt_class(x: GWElement) -> WittClass:
    kind = x.field.kind
    inv = gw_invariants(x)
    if kind == QUADRATICALLY_CLOSED:
        return WittClass(x.field, (inv["rank"] % 2,))
    if kind == REAL_CLOSED:
        return WittClass(x.field, (inv["signature"],))
    if kind == FINITE_ODD:
        parity = inv["rank"] % 2
        k = (inv["rank"] - parity) // 2
        disc = inv["disc"]
        if k % 2:
            disc = disc * square_class(x.field, -1)
        return WittClass(x.field, (parity, disc.rep))
    # rationals: subtract hyperbolic planes sitting inside the reduced
    # representative, keep the rest as a representative
    red = x
    h = hyperbolic(x.field)
    one = square_class(x.field, 1)
    minus = square_class(x.field, -1)
    while one in red.pos and minus in red.pos:
        red = gw_sub(red, h)
    while one in red.neg and minus in red.neg:
        red = gw_add(red, h)
    return WittClass(x.field, (red.pos, red.neg))


def witt_ring_table(field: Field) -> dict:
    """Addition and multiplication tables of the four-element Witt ring,
    found by enumerating small diagonal forms."""
    if field.kind != FINITE_ODD:
        raise DomainError("tables are enumerated for finite fields only")
    seen: dict[tuple, GWElement] = {}
    for rank in range(3):
        for combo in itertools.product([1, "g"], repeat=rank):
            el = gw_make(field, [(1, u) for u in combo])
            seen.setdefault(witt_class(el).data, el)
    if len(seen) != 4:
        raise DomainError("expected a four-element Witt ring")
    reps = list(seen.values())
    labels = [str(witt_class(r)) for r in reps]
    index = {data: i for i, data in enumerate(seen)}
    add = [[labels[index[witt_class(gw_add(a, b)).data]] for b in reps] for a in reps]
    mul = [[labels[index[witt_class(gw_mul(a, b)).data]] for b in reps] for a in reps]

    def additive_order(x: GWElement) -> int:
        acc, n = x, 1
        while not witt_class(acc).is_zero and n <= 4:
            acc = gw_add(acc, x)
            n += 1
        return n

    cyclic = any(additive_order(r) == 4 for r in reps)
    return {"elements": labels, "add": add, "mul": mul, "cyclic": cyclic}


@dataclass(frozen=True)
class IdealPower:
    """Power of the fundamental ideal, with a membership test on Witt classes."""

    field: Field
    n: int
    description: str

    def contains(self, x: GWElement) -> bool:
        if x.field != self.field:
            raise DomainError("element lives over a different field")
        if self.n <= 0:
            return True
        kind = self.field.kind
        w = witt_class(x)
        if kind == REAL_CLOSED:
            return w.data[0] % (2 ** self.n) == 0
        if kind == QUADRATICALLY_CLOSED:
            return w.is_zero
        if kind == FINITE_ODD:
            if self.n == 1:
                return w.data[0] == 0
            return w.is_zero
        if self.n == 1:
            return gw_invariants(x)["rank"] % 2 == 0
        raise DomainError("membership beyond the first power is unsupported here")


def fundamental_ideal_power(field: Field, n: int) -> IdealPower:
    if n <= 0:
        return IdealPower(field, n, f"W({field})")
    kind = field.kind
    if kind == REAL_CLOSED:
        desc = f"{2 ** n}Z under the signature isomorphism"
    elif kind == QUADRATICALLY_CLOSED:
        desc = "0"
    elif kind == FINITE_ODD:
        desc = "order 2, the even-rank classes" if n == 1 else "0"
    else:
        desc = "even-rank classes" if n == 1 else "generated by n-fold Pfister classes"
    return IdealPower(field, n, desc)


def pfister_form(field: Field, units) -> GWElement:
    """Product of the binary forms <1> + <-a> over the given units."""
    out = gw_one(field)
    for a in units:
        c = square_class(field, a)
        step = _normalize(field, (square_class(field, 1), c * square_class(field, -1)), ())
        out = gw_mul(out, step)
    return out
