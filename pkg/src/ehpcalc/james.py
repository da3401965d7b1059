"""Truncated free-monoid construction on a pointed complex, the one-letter
inclusion, word-subsequence invariants, and filtration quotients."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import CapExceeded, DomainError
from .simplicial import (
    SMap,
    SSet,
    Simplex,
    collapse,
    degenerate,
    face,
    in_degeneracy_image,
    is_isomorphic,
    joint_normal_form,
    simplex_token,
    smash,
    smash_class,
)

TRUNCATION_CAP = 2000


@lru_cache(maxsize=None)
def smash_power(K: SSet, r: int) -> SSet:
    """Iterated smash product, associated to the left."""
    if r < 1:
        raise DomainError("smash power needs r >= 1")
    if r == 1:
        return K
    return smash(smash_power(K, r - 1), K)


def smash_power_class(K: SSet, r: int, xs: tuple[Simplex, ...]) -> Simplex:
    """Class of x_1 ^ ... ^ x_r inside smash_power(K, r)."""
    if r < 1 or len(xs) != r:
        raise DomainError("need exactly r simplices")
    out = xs[0]
    for j in range(1, r):
        out = smash_class(smash_power(K, j), K, out, xs[j])
    return out


@dataclass(frozen=True)
class JamesWord:
    """Reduced word of same-dimension simplices of a fixed complex.

    Letters equal to the degenerate basepoint are deleted on construction,
    so equality of words is literal tuple equality.
    """

    complex: SSet
    dim: int
    letters: tuple[Simplex, ...]

    def __post_init__(self):
        if self.dim < 0:
            raise DomainError("negative word dimension")
        kept = []
        for x in self.letters:
            if x.dim != self.dim:
                raise DomainError("letters must all have the word dimension")
            if self.complex.dim_of(x.generator) + len(x.word) != x.dim:
                raise DomainError("letter does not live in the complex")
            if x.generator != self.complex.basepoint:
                kept.append(x)
        object.__setattr__(self, "letters", tuple(kept))

    def __len__(self) -> int:
        return len(self.letters)


def word_face(w: JamesWord, i: int) -> JamesWord:
    return JamesWord(w.complex, w.dim - 1, tuple(face(w.complex, x, i) for x in w.letters))


def word_degenerate(w: JamesWord, i: int) -> JamesWord:
    return JamesWord(w.complex, w.dim + 1, tuple(degenerate(x, i) for x in w.letters))


def word_is_degenerate(w: JamesWord) -> bool:
    if not w.letters:
        return w.dim > 0
    return any(
        all(in_degeneracy_image(w.complex, x, i) for x in w.letters)
        for i in range(w.dim)
    )


def word_token(w: JamesWord) -> str:
    if not w.letters:
        return "*"
    return "[" + "|".join(simplex_token(x) for x in w.letters) + "]"


def word_normal_form(w: JamesWord) -> tuple[tuple[int, ...], JamesWord]:
    """Shared degeneracy word and the nondegenerate core word under it."""
    word, cores = joint_normal_form((w.complex,) * len(w.letters), w.letters, w.dim)
    return word, JamesWord(w.complex, w.dim - len(word), cores)


def _word_simplex(w: JamesWord) -> Simplex:
    word, core = word_normal_form(w)
    return Simplex(word_token(core), word, w.dim)


@lru_cache(maxsize=None)
def _james_data(K: SSet, n: int, cap: int) -> tuple[SSet, dict[str, JamesWord]]:
    if n < 1:
        raise DomainError("truncation level must be >= 1")
    names: dict[str, int] = {"*": 0}
    found: dict[str, JamesWord] = {}
    count = 1
    for m in range(n * K.max_dim + 1):
        letters = [x for x in K.simplices(m) if x.generator != K.basepoint]
        for ell in range(1, n + 1):
            for combo in itertools.product(letters, repeat=ell):
                w = JamesWord(K, m, combo)
                if word_is_degenerate(w):
                    continue
                count += 1
                if count > cap:
                    raise CapExceeded(f"truncation exceeds {cap} generators")
                tok = word_token(w)
                names[tok] = m
                found[tok] = w
    faces = {}
    for name, w in found.items():
        if w.dim > 0:
            faces[name] = tuple(_word_simplex(word_face(w, i)) for i in range(w.dim + 1))
    return SSet.build("*", names, faces), found


def james_truncation(K: SSet, n: int, cap: int = TRUNCATION_CAP) -> SSet:
    """Words of length <= n, as a pointed simplicial set."""
    return _james_data(K, n, cap)[0]


def james_words(K: SSet, n: int, cap: int = TRUNCATION_CAP) -> dict[str, JamesWord]:
    """Generator name to word, for the nondegenerate cells of the truncation."""
    return dict(_james_data(K, n, cap)[1])


def suspension_unit_E(K: SSet, n: int, cap: int = TRUNCATION_CAP) -> SMap:
    """One-letter-word inclusion of K into its level-n truncation."""
    J, _ = _james_data(K, n, cap)
    images = {}
    for g in K.generators():
        if g == K.basepoint:
            images[g] = J.basepoint_simplex(0)
        else:
            x = K.simplex(g)
            images[g] = _word_simplex(JamesWord(K, x.dim, (x,)))
    return SMap.build(K, J, images)


def james_hopf_word(w: JamesWord, r: int) -> JamesWord:
    """Word of all r-fold smash subsequences, index tuples in lexicographic
    order, reduced over smash_power."""
    if r < 1:
        raise DomainError("subsequence length must be >= 1")
    target = smash_power(w.complex, r)
    letters = tuple(
        smash_power_class(w.complex, r, tuple(w.letters[i] for i in idx))
        for idx in itertools.combinations(range(len(w.letters)), r)
    )
    return JamesWord(target, w.dim, letters)


def james_hopf_map(K: SSet, n: int, r: int, cap: int = TRUNCATION_CAP) -> SMap:
    """Simplexwise subsequence map out of the level-n truncation.

    Target level is C(n, r); when r > n every word is too short and the
    constant map into level 1 is returned.  Simpliciality is checked by the
    map constructor, not assumed.
    """
    if n < 1 or r < 1:
        raise DomainError("levels must be >= 1")
    J, words = _james_data(K, n, cap)
    target = smash_power(K, r)
    T, _ = _james_data(target, max(comb(n, r), 1), cap)
    images = {"*": T.basepoint_simplex(0)}
    for name, w in words.items():
        images[name] = _word_simplex(james_hopf_word(w, r))
    return SMap.build(J, T, images)


def james_map(f: SMap, n: int, cap: int = TRUNCATION_CAP) -> SMap:
    """Letterwise induced map between level-n truncations."""
    Js, words = _james_data(f.source, n, cap)
    Jt, _ = _james_data(f.target, n, cap)
    images = {"*": Jt.basepoint_simplex(0)}
    for name, w in words.items():
        fw = JamesWord(f.target, w.dim, tuple(f(x) for x in w.letters))
        images[name] = _word_simplex(fw)
    return SMap.build(Js, Jt, images)


def james_quotient(K: SSet, n: int, cap: int = TRUNCATION_CAP) -> tuple[SSet, dict[str, str]]:
    """Collapse of words shorter than n, with an isomorphism witness onto the
    n-fold smash power."""
    J, words = _james_data(K, n, cap)
    kill = {name for name, w in words.items() if len(w) < n}
    Q = collapse(J, kill)
    ok, witness = is_isomorphic(Q, smash_power(K, n))
    if not ok:
        raise DomainError("quotient did not match the smash power")
    return Q, witness


def cartan_word_check(K: SSet, letters) -> bool:
    """Subsequence word at r = 2 versus the concatenation of one-letter pair
    words, both reduced; letters may include the basepoint."""
    letters = tuple(letters)
    dims = {x.dim for x in letters}
    if len(dims) > 1:
        raise DomainError("letters must share a dimension")
    dim = dims.pop() if dims else 0
    lhs = james_hopf_word(JamesWord(K, dim, letters), 2)
    target = smash_power(K, 2)
    concat: tuple[Simplex, ...] = ()
    for i, j in itertools.combinations(range(len(letters)), 2):
        one = JamesWord(target, dim, (smash_power_class(K, 2, (letters[i], letters[j])),))
        concat = concat + one.letters
    return lhs == JamesWord(target, dim, concat)
