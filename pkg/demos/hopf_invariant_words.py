"""
The combinatorial Hopf invariant on words: subsequences smashed together
in lexicographic order, checked against direct enumeration.
"""

import itertools

from ehpcalc.james import JamesWord, james_hopf_word, smash_power_class, word_token
from ehpcalc.simplicial import SSet, Simplex, simplex_token

# one free letter per name, all dimension 1
names = "wxyz"
bp = Simplex("*", (), 0)
W = SSet.build(
    "*",
    {"*": 0, **{c: 1 for c in names}},
    {c: (bp, bp) for c in names},
)

letters = tuple(W.simplex(c) for c in names)
word = JamesWord(W, 1, letters)
print("word:", word_token(word))

for r in (1, 2, 3):
    image = james_hopf_word(word, r)
    print(f"H_{r}:", "".join(simplex_token(x) for x in image.letters) or "*")

# cross-check r = 2 the slow way: every strictly increasing index pair,
# sorted, then smashed
pairs = sorted(
    idx for idx in itertools.product(range(len(letters)), repeat=2)
    if idx[0] < idx[1]
)
expected = tuple(
    smash_power_class(W, 2, (letters[i], letters[j])) for i, j in pairs
)
assert james_hopf_word(word, 2).letters == expected
print("r=2 enumeration agrees with the filtered product scan")

# a one-letter word has no subsequences of length 2, so its image is empty
single = JamesWord(W, 1, letters[:1])
assert james_hopf_word(single, 2).letters == ()
print("H_2 of a one-letter word:", word_token(james_hopf_word(single, 2)))
