"""Finite pointed simplicial sets with explicit degeneracy bookkeeping.

Only nondegenerate simplices are stored. An arbitrary simplex is a
generator name together with a degeneracy word in normal form, so equality
of simplices is literal equality and the simplicial identities can be
enforced mechanically on construction.
"""
from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass

from .errors import CapExceeded, DomainError, ExprParseError

# Backtracking isomorphism search refuses larger complexes.
ISO_GENERATOR_CAP = 512


def insert_degeneracy(word: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Normal form of s_i composed onto an already-normal degeneracy word.

    Words are strictly decreasing tuples (i_k, ..., i_1) denoting
    s_{i_k} ... s_{i_1}, leftmost entry outermost.  Uses the identity
    s_i s_j = s_{j+1} s_i for i <= j.

    >>> insert_degeneracy((), 0)
    (0,)
    >>> insert_degeneracy((0,), 0)
    (1, 0)
    >>> insert_degeneracy((2, 0), 4)
    (4, 2, 0)
    """
    if i < 0:
        raise DomainError(f"degeneracy index must be nonnegative, got {i}")
    if not word:
        return (i,)
    j = word[0]
    if i > j:
        return (i,) + word
    return (j + 1,) + insert_degeneracy(word[1:], i)


@dataclass(frozen=True)
class Simplex:
    """A simplex of some complex: generator name plus degeneracy word.

    dim equals the generator's dimension plus the word length; the word is
    strictly decreasing (normal form), so nondegenerate iff word == ().
    """

    generator: str
    word: tuple[int, ...]
    dim: int

    def __post_init__(self) -> None:
        for a, b in zip(self.word, self.word[1:]):
            if a <= b:
                raise DomainError(f"degeneracy word {self.word} is not strictly decreasing")
        if self.word and self.word[0] >= self.dim:
            raise DomainError(f"degeneracy index {self.word[0]} out of range for dim {self.dim}")

    @property
    def is_degenerate(self) -> bool:
        return bool(self.word)


_NAME_RE = re.compile(r"^\S+$")


@dataclass(frozen=True)
class SSet:
    """A finite pointed simplicial set given by nondegenerate generators.

    gens: (name, dim) pairs sorted by (dim, name); face_table: for each
    generator of positive dimension, its ordered faces d_0..d_n as
    Simplex values of the same complex.
    """

    basepoint: str
    gens: tuple[tuple[str, int], ...]
    face_table: tuple[tuple[str, tuple[Simplex, ...]], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_dims", {n: d for n, d in self.gens})
        object.__setattr__(self, "_faces", dict(self.face_table))
        by_dim: dict[int, list[str]] = {}
        for n, d in self.gens:
            by_dim.setdefault(d, []).append(n)
        object.__setattr__(self, "_by_dim", {d: tuple(v) for d, v in by_dim.items()})

    # -- construction ---------------------------------------------------

    @staticmethod
    def build(basepoint: str, dims: dict[str, int], faces: dict[str, tuple[Simplex, ...]]) -> "SSet":
        if basepoint not in dims or dims[basepoint] != 0:
            raise DomainError(f"basepoint {basepoint!r} must be a dimension-0 generator")
        for name, d in dims.items():
            if not _NAME_RE.match(name) or re.fullmatch(r"s\d+", name):
                raise DomainError(f"bad generator name {name!r}")
            if d < 0:
                raise DomainError(f"generator {name!r} has negative dimension")
            if d == 0 and name in faces:
                raise DomainError(f"dimension-0 generator {name!r} cannot have faces")
            if d > 0 and (name not in faces or len(faces[name]) != d + 1):
                raise DomainError(f"generator {name!r} needs exactly {d + 1} faces")
        gens = tuple(sorted(dims.items(), key=lambda p: (p[1], p[0])))
        table = tuple((n, tuple(faces[n])) for n, d in gens if d > 0)
        K = SSet(basepoint, gens, table)
        K._validate()
        return K

    def _validate(self) -> None:
        for name, d in self.gens:
            if d == 0:
                continue
            for i, f in enumerate(self.faces_of(name)):
                if f.generator not in self._dims:
                    raise DomainError(f"face {i} of {name!r} references unknown generator {f.generator!r}")
                if f.dim != d - 1 or self.dim_of(f.generator) + len(f.word) != f.dim:
                    raise DomainError(f"face {i} of {name!r} has inconsistent dimension")
        # simplicial identity d_i d_j = d_{j-1} d_i for i < j, on generators
        for name, d in self.gens:
            if d < 2:
                continue
            x = self.simplex(name)
            for j in range(d + 1):
                for i in range(j):
                    if face(self, face(self, x, j), i) != face(self, face(self, x, i), j - 1):
                        raise DomainError(f"simplicial identity fails at generator {name!r} (i={i}, j={j})")

    # -- lookups --------------------------------------------------------

    def dim_of(self, name: str) -> int:
        try:
            return self._dims[name]
        except KeyError:
            raise DomainError(f"unknown generator {name!r}") from None

    def faces_of(self, name: str) -> tuple[Simplex, ...]:
        if self.dim_of(name) == 0:
            raise DomainError(f"dimension-0 generator {name!r} has no faces")
        return self._faces[name]

    def generators(self, dim: int | None = None) -> tuple[str, ...]:
        if dim is None:
            return tuple(n for n, _ in self.gens)
        return self._by_dim.get(dim, ())

    @property
    def max_dim(self) -> int:
        return max(d for _, d in self.gens)

    @property
    def n_generators(self) -> int:
        return len(self.gens)

    def simplex(self, name: str, word: tuple[int, ...] = ()) -> Simplex:
        return Simplex(name, word, self.dim_of(name) + len(word))

    def basepoint_simplex(self, dim: int) -> Simplex:
        """The unique simplex over the basepoint in each dimension."""
        return Simplex(self.basepoint, tuple(range(dim - 1, -1, -1)), dim)

    def simplices(self, dim: int) -> tuple[Simplex, ...]:
        """All simplices of the given dimension, degenerate ones included."""
        out = []
        for name, d in self.gens:
            if d > dim:
                continue
            for idx in itertools.combinations(range(dim), dim - d):
                out.append(Simplex(name, tuple(reversed(idx)), dim))
        return tuple(out)


def degenerate(x: Simplex, i: int) -> Simplex:
    """s_i applied to x, in normal form."""
    if not 0 <= i <= x.dim:
        raise DomainError(f"degeneracy index {i} out of range for dim {x.dim}")
    return Simplex(x.generator, insert_degeneracy(x.word, i), x.dim + 1)


def face(K: SSet, x: Simplex, i: int) -> Simplex:
    """d_i applied to x, commuted into normal form via the simplicial identities."""
    if x.dim == 0:
        raise DomainError("a 0-simplex has no faces")
    if not 0 <= i <= x.dim:
        raise DomainError(f"face index {i} out of range for dim {x.dim}")
    if not x.word:
        return K.faces_of(x.generator)[i]
    a = x.word[0]
    inner = Simplex(x.generator, x.word[1:], x.dim - 1)  # x = s_a inner
    if i < a:
        return degenerate(face(K, inner, i), a - 1)
    if i in (a, a + 1):
        return inner
    return degenerate(face(K, inner, i - 1), a)


_OP_RE = re.compile(r"^([ds])(\d+)$")


def apply_operator(s: Simplex, op: str, K: SSet) -> Simplex:
    """Apply a single face or degeneracy operator, written "d2" or "s0"."""
    m = _OP_RE.match(op)
    if not m:
        raise DomainError(f"operator must look like 'd0' or 's1', got {op!r}")
    kind, i = m.group(1), int(m.group(2))
    return face(K, s, i) if kind == "d" else degenerate(s, i)


def in_degeneracy_image(K: SSet, x: Simplex, i: int) -> bool:
    """True iff x = s_i(y) for some y (then y = d_i(x))."""
    if x.dim == 0 or i >= x.dim:
        return False
    return degenerate(face(K, x, i), i) == x


def joint_normal_form(
    complexes: tuple[SSet, ...], xs: tuple[Simplex, ...], dim: int
) -> tuple[tuple[int, ...], tuple[Simplex, ...]]:
    """Strip the largest shared degeneracy word off a tuple of simplices.

    Returns (word, cores) with xs = s_word applied componentwise to cores
    and the cores jointly nondegenerate.  An empty tuple strips all the
    way down to dimension 0.
    """
    strips: list[int] = []
    cur = xs
    d = dim
    while d > 0:
        if cur:
            hit = next(
                (i for i in range(d) if all(in_degeneracy_image(K, x, i) for K, x in zip(complexes, cur))),
                None)
        else:
            hit = 0  # empty tuple: every operator index is shared
        if hit is None:
            break
        cur = tuple(face(K, x, hit) for K, x in zip(complexes, cur))
        strips.append(hit)
        d -= 1
    word: tuple[int, ...] = ()
    for i in reversed(strips):
        word = insert_degeneracy(word, i)
    return word, cur


def simplex_token(x: Simplex) -> str:
    """Compact name for a simplex: degeneracy prefixes joined with dots."""
    parts = [f"s{i}" for i in x.word] + [x.generator]
    return ".".join(parts)


# -- constructors -------------------------------------------------------


def point() -> SSet:
    return SSet.build("*", {"*": 0}, {})


def build_sphere(n: int) -> SSet:
    """Minimal simplicial n-sphere: basepoint plus one free generator.

    >>> build_sphere(1).generators()
    ('*', 'e1')
    """
    if n < 0:
        raise DomainError(f"sphere dimension must be nonnegative, got {n}")
    if n == 0:
        return SSet.build("*", {"*": 0, "e0": 0}, {})
    K = SSet.build("*", {"*": 0, f"e{n}": n}, {f"e{n}": tuple(
        Simplex("*", tuple(range(n - 2, -1, -1)), n - 1) for _ in range(n + 1))})
    return K


def _shuffle_words(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    # All normal degeneracy words raising dimension p to n: decreasing
    # (n-p)-subsets of {0..n-1}.
    return tuple(tuple(reversed(c)) for c in itertools.combinations(range(n), n - p))


@functools.lru_cache(maxsize=None)
def product_with_pairs(A: SSet, B: SSet) -> tuple[SSet, tuple[tuple[str, tuple[Simplex, Simplex]], ...]]:
    """Categorical product plus the generator-to-component-pair table."""
    dims: dict[str, int] = {}
    faces: dict[str, tuple[Simplex, ...]] = {}
    pairs: dict[str, tuple[Simplex, Simplex]] = {}
    for (a, p), (b, q) in itertools.product(A.gens, B.gens):
        for n in range(max(p, q), p + q + 1):
            for I in _shuffle_words(n, p):
                for J in _shuffle_words(n, q):
                    if set(I) & set(J):
                        continue
                    sa, sb = Simplex(a, I, n), Simplex(b, J, n)
                    name = f"({simplex_token(sa)},{simplex_token(sb)})"
                    dims[name] = n
                    pairs[name] = (sa, sb)
    basepoint = f"({A.basepoint},{B.basepoint})"

    def class_of(x: Simplex, y: Simplex) -> Simplex:
        word, (cx, cy) = joint_normal_form((A, B), (x, y), x.dim)
        return Simplex(f"({simplex_token(cx)},{simplex_token(cy)})", word, x.dim)

    for name, n in dims.items():
        if n == 0:
            continue
        sa, sb = pairs[name]
        faces[name] = tuple(class_of(face(A, sa, i), face(B, sb, i)) for i in range(n + 1))
    K = SSet.build(basepoint, dims, faces)
    return K, tuple(sorted(pairs.items()))


def product(A: SSet, B: SSet) -> SSet:
    return product_with_pairs(A, B)[0]


def wedge(A: SSet, B: SSet) -> SSet:
    """One-point union; generators keep their names behind l./r. prefixes."""
    dims: dict[str, int] = {"*": 0}
    faces: dict[str, tuple[Simplex, ...]] = {}

    def port(K: SSet, prefix: str) -> None:
        for name, d in K.gens:
            if name == K.basepoint:
                continue
            new = prefix + name
            dims[new] = d
            if d > 0:
                faces[new] = tuple(
                    Simplex("*" if f.generator == K.basepoint else prefix + f.generator, f.word, f.dim)
                    for f in K.faces_of(name))

    port(A, "l.")
    port(B, "r.")
    return SSet.build("*", dims, faces)


def collapse(K: SSet, kill: frozenset[str] | set[str]) -> SSet:
    """Quotient by a face-closed set of generators, all sent to the basepoint."""
    kill = frozenset(kill)
    if K.basepoint in kill:
        raise DomainError("cannot collapse the basepoint")
    unknown = kill - set(K.generators())
    if unknown:
        raise DomainError(f"cannot collapse unknown generators {sorted(unknown)}")
    for g in kill:
        if K.dim_of(g) == 0:
            continue
        for f in K.faces_of(g):
            if f.generator not in kill and f.generator != K.basepoint:
                raise DomainError(f"collapse set is not face-closed at {g!r}")
    dims = {n: d for n, d in K.gens if n not in kill}
    faces: dict[str, tuple[Simplex, ...]] = {}
    for name, d in dims.items():
        if d == 0:
            continue
        faces[name] = tuple(
            Simplex(K.basepoint, tuple(range(f.dim - 1, -1, -1)), f.dim) if f.generator in kill else f
            for f in K.faces_of(name))
    return SSet.build(K.basepoint, dims, faces)


def rename(K: SSet, mapping: dict[str, str]) -> SSet:
    """Rename generators; identity outside the mapping's domain."""
    def nm(n: str) -> str:
        return mapping.get(n, n)

    names = [nm(n) for n, _ in K.gens]
    if len(set(names)) != len(names):
        raise DomainError("renaming collides generator names")
    dims = {nm(n): d for n, d in K.gens}
    faces = {
        nm(n): tuple(Simplex(nm(f.generator), f.word, f.dim) for f in fs)
        for n, fs in K.face_table
    }
    return SSet.build(nm(K.basepoint), dims, faces)


@functools.lru_cache(maxsize=None)
def smash_with_pairs(A: SSet, B: SSet) -> tuple[SSet, tuple[tuple[str, tuple[Simplex, Simplex]], ...]]:
    """Smash product plus component pairs for the surviving generators."""
    P, pair_table = product_with_pairs(A, B)
    pairs = dict(pair_table)
    # the wedge inside the product: pairs with exactly one basepoint core
    # (a jointly nondegenerate pair of two basepoint cores only exists in
    # dimension 0, and that one is the product basepoint itself)
    kill = {
        name for name, (sa, sb) in pairs.items()
        if (sa.generator == A.basepoint) != (sb.generator == B.basepoint)
    }
    Q = collapse(P, kill)
    mapping = {}
    surviving = {}
    for name, d in Q.gens:
        if name == Q.basepoint:
            mapping[name] = "*"
            continue
        sa, sb = pairs[name]
        mapping[name] = f"({simplex_token(sa)}^{simplex_token(sb)})"
        surviving[mapping[name]] = (sa, sb)
    S = rename(Q, mapping)
    return S, tuple(sorted(surviving.items()))


def smash(A: SSet, B: SSet) -> SSet:
    return smash_with_pairs(A, B)[0]


def smash_class(A: SSet, B: SSet, x: Simplex, y: Simplex) -> Simplex:
    """Image of the product simplex (x, y) in smash(A, B); x, y of equal dim."""
    if x.dim != y.dim:
        raise DomainError(f"component dimensions differ: {x.dim} vs {y.dim}")
    S = smash(A, B)
    word, (cx, cy) = joint_normal_form((A, B), (x, y), x.dim)
    if cx.generator == A.basepoint or cy.generator == B.basepoint:
        return S.basepoint_simplex(x.dim)
    return Simplex(f"({simplex_token(cx)}^{simplex_token(cy)})", word, x.dim)


def suspension(K: SSet) -> SSet:
    """Smash with the minimal circle."""
    return smash(build_sphere(1), K)


# -- simplicial maps ----------------------------------------------------


@dataclass(frozen=True)
class SMap:
    """A pointed simplicial map, stored by generator images and verified."""

    source: SSet
    target: SSet
    images: tuple[tuple[str, Simplex], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_img", dict(self.images))

    @staticmethod
    def build(source: SSet, target: SSet, images: dict[str, Simplex]) -> "SMap":
        if set(images) != set(source.generators()):
            raise DomainError("images must cover exactly the source generators")
        if images[source.basepoint] != target.basepoint_simplex(0):
            raise DomainError("a pointed map must send basepoint to basepoint")
        f = SMap(source, target, tuple(sorted(images.items())))
        for name, d in source.gens:
            if images[name].dim != d:
                raise DomainError(f"image of {name!r} has wrong dimension")
            if d == 0:
                continue
            for i in range(d + 1):
                lhs = f(face(source, source.simplex(name), i))
                rhs = face(target, images[name], i)
                if lhs != rhs:
                    raise DomainError(f"not simplicial at generator {name!r}, face {i}")
        return f

    def __call__(self, x: Simplex) -> Simplex:
        y = self._img[x.generator]
        for i in reversed(x.word):
            y = degenerate(y, i)
        return y

    def image(self, name: str) -> Simplex:
        return self._img[name]


def identity_map(K: SSet) -> SMap:
    return SMap.build(K, K, {n: K.simplex(n) for n in K.generators()})


def compose(g: SMap, f: SMap) -> SMap:
    if f.target != g.source:
        raise DomainError("compose needs matching middle complex")
    return SMap.build(f.source, g.target, {n: g(img) for n, img in f.images})


def fold_map(K: SSet) -> SMap:
    """The fold wedge(K, K) -> K, identity on either copy."""
    W = wedge(K, K)
    images: dict[str, Simplex] = {"*": K.basepoint_simplex(0)}
    for name, _ in W.gens:
        if name == "*":
            continue
        images[name] = K.simplex(name[2:])  # strip the l./r. prefix
    return SMap.build(W, K, images)


def smash_map(f: SMap, g: SMap) -> SMap:
    """The induced map smash(A, B) -> smash(A', B')."""
    S, pairs = smash_with_pairs(f.source, g.source)
    T = smash(f.target, g.target)
    images: dict[str, Simplex] = {S.basepoint: T.basepoint_simplex(0)}
    for name, (sa, sb) in pairs:
        images[name] = smash_class(f.target, g.target, f(sa), g(sb))
    return SMap.build(S, T, images)


# -- isomorphism search -------------------------------------------------


def is_isomorphic(A: SSet, B: SSet) -> tuple[bool, dict[str, str] | None]:
    """Exact basepoint-preserving isomorphism test with witness.

    Backtracking over generators in dimension order; faces of each
    candidate must match the partial map already built.  Deterministic.
    """
    if A.n_generators > ISO_GENERATOR_CAP or B.n_generators > ISO_GENERATOR_CAP:
        raise CapExceeded(f"isomorphism search capped at {ISO_GENERATOR_CAP} generators")
    dims_a: dict[int, list[str]] = {}
    dims_b: dict[int, list[str]] = {}
    for n, d in A.gens:
        dims_a.setdefault(d, []).append(n)
    for n, d in B.gens:
        dims_b.setdefault(d, []).append(n)
    if {d: len(v) for d, v in dims_a.items()} != {d: len(v) for d, v in dims_b.items()}:
        return False, None
    order = [n for n, _ in A.gens if n != A.basepoint]
    mapping = {A.basepoint: B.basepoint}

    def compatible(a: str, b: str) -> bool:
        d = A.dim_of(a)
        if d != B.dim_of(b):
            return False
        if d == 0:
            return True
        for fa, fb in zip(A.faces_of(a), B.faces_of(b)):
            if fa.word != fb.word or mapping[fa.generator] != fb.generator:
                return False
        return True

    used: set[str] = {B.basepoint}

    def search(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for b in dims_b[A.dim_of(a)]:
            if b in used or b == B.basepoint:
                continue
            if compatible(a, b):
                mapping[a] = b
                used.add(b)
                if search(k + 1):
                    return True
                del mapping[a]
                used.discard(b)
        return False

    if search(0):
        return True, dict(mapping)
    return False, None


# -- serialization ------------------------------------------------------


def _face_str(x: Simplex) -> str:
    return " ".join([f"s{i}" for i in x.word] + [x.generator])


def _parse_face(text: str, dim: int, dims: dict[str, int]) -> Simplex:
    tokens = text.split()
    if not tokens:
        raise ExprParseError("empty face entry")
    name = tokens[-1]
    word = []
    for t in tokens[:-1]:
        m = _OP_RE.match(t)
        if not m or m.group(1) != "s":
            raise ExprParseError(f"bad degeneracy token {t!r} in face {text!r}")
        word.append(int(m.group(2)))
    if name not in dims:
        raise ExprParseError(f"face {text!r} references unknown generator {name!r}")
    return Simplex(name, tuple(word), dim)


def sset_to_doc(K: SSet) -> dict:
    """JSON-ready document; one entry per generator, faces as operator strings."""
    gens = []
    for name, d in K.gens:
        entry: dict = {"name": name, "dim": d}
        if d > 0:
            entry["faces"] = [_face_str(f) for f in K.faces_of(name)]
        gens.append(entry)
    return {"basepoint": K.basepoint, "generators": gens}


def sset_from_doc(doc: dict) -> SSet:
    try:
        basepoint = doc["basepoint"]
        entries = doc["generators"]
        dims = {e["name"]: e["dim"] for e in entries}
        faces = {
            e["name"]: tuple(_parse_face(s, e["dim"] - 1, dims) for s in e["faces"])
            for e in entries if e["dim"] > 0
        }
    except (KeyError, TypeError) as exc:
        raise ExprParseError(f"malformed simplicial-set document: {exc}") from exc
    return SSet.build(basepoint, dims, faces)


def sset_dumps(K: SSet) -> str:
    return json.dumps(sset_to_doc(K), sort_keys=True, indent=2)


def sset_loads(text: str) -> SSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprParseError(f"not valid JSON: {exc}") from exc
    return sset_from_doc(doc)
