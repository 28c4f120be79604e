"""
Mutating the Markov quiver and Q(2,3,3) from the framed seed [B | I].

Both quivers carry the same sign pattern, so their c-vector signs agree
step by step even though the entries drift apart quickly.
"""

from __future__ import annotations

from cvectors import MARKOV, Q233, apply_sequence, sign_vector
from cvectors.quiver import walk


def show(name, b, w):
    seed = apply_sequence(b, w)
    print(f"{name}, w = {w}")
    for rb, rc in zip(seed.b.b, seed.c):
        print("  " + " ".join(f"{x:4d}" for x in rb) + "  |" + " ".join(f"{x:5d}" for x in rc))
    print(f"  signs {sign_vector(seed)}\n")


for w in ([1], [1, 2], [1, 2, 3]):
    show("Q", Q233, w)
    show("M", MARKOV, w)

# a longer walk: the entries of Q grow much faster than those of M
long_walk = [1, 2, 3, 2, 1, 3]
show("Q", Q233, long_walk)
show("M", MARKOV, long_walk)

print("sign vectors along the walk (Q vs M):")
for sq, sm in zip(walk(Q233, long_walk), walk(MARKOV, long_walk)):
    mark = "same" if sign_vector(sq) == sign_vector(sm) else "DIFFERENT"
    print(f"  {list(sq.history)!s:20} {sign_vector(sq)} {sign_vector(sm)} {mark}")
