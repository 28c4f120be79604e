"""
Reflection words, their Coxeter product, and l-vectors.

The reflections attached to a mutation sequence are words in the
generators r_1, r_2, r_3 of the free Coxeter group. Fixing a linear
ordering of the vertices gives a generalized intersection matrix (GIM),
and each reflection word acts on a simple root to give an l-vector.
"""

from __future__ import annotations

from cvectors import MARKOV, Q233, apply_sequence
from cvectors.coxeter import (
    coxeter_product_check,
    l_matrix_from_words,
    l_matrix_recurrence,
    reflections_along,
)
from cvectors.gim import gim_from_ordering, is_admissible


def word(r):
    return "".join(f"r{i}" for i in r)


w = [1, 2, 3]
t, _ = reflections_along(Q233, w)
print(f"reflections for w = {w}:")
for i, r in enumerate(t, 1):
    print(f"  r_{i}^w = {word(r)}")

# the product in the order (1, 3, 2) collapses to r3 r1 r2
cc = coxeter_product_check(Q233, w, lambda_order=(1, 3, 2), rho_order=(3, 1, 2))
print(f"\nr_1^w r_3^w r_2^w = {word(cc.lambda_product_word)}  (equal to r3r1r2: {cc.equal})")
print(f"Q is not a fork, so this runs outside the theorem hypotheses: {not cc.within_hypotheses}\n")

for order in [(1, 3, 2), (1, 2, 3)]:
    g = gim_from_ordering(MARKOV, order)
    print(f"M, ordering {order}: GIM rows {g.a}, admissible {is_admissible(g, MARKOV)}")

# L-matrices along the long walk: admissible orderings reproduce |C|
long_walk = [1, 2, 3, 2, 1, 3]
for name, b in (("Q", Q233), ("M", MARKOV)):
    t, seed = reflections_along(b, long_walk)
    print(f"\n{name}, w = {long_walk}, C = {seed.c}")
    for order in [(2, 1, 3), (3, 1, 2)]:
        words_path = l_matrix_from_words(gim_from_ordering(b, order), t)
        rec = l_matrix_recurrence(b, order, long_walk)
        print(f"  ordering {order}: L = {words_path.raw}")
        print(f"    recurrence agrees up to row sign: {words_path.equal_up_to_row_sign(rec)}")

# the worked l_2 for M with 1 < 3 < 2, signs included
t, _ = reflections_along(MARKOV, [1, 2, 3])
g = gim_from_ordering(MARKOV, (1, 3, 2))
print(f"\nM, w = [1, 2, 3], ordering (1, 3, 2): l_2 = {l_matrix_from_words(g, t).raw[1]}")
print(f"C^w row 2 for comparison: {apply_sequence(MARKOV, [1, 2, 3]).c[1]}")
