"""
Generalized intersection matrices (GIMs) attached to a quiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .quiver import (
    ExchangeMatrix,
    FramedSeed,
    Matrix,
    as_matrix,
    check_label,
    mutate_extended,
    sgn,
    structural_predicates,
)


@dataclass(frozen=True)
class Gim:
    """Integer matrix with 2 on the diagonal and sign-symmetric off-diagonal pairs."""

    a: Matrix
    origin_ordering: tuple[int, ...] | None = None

    def __post_init__(self):
        a = as_matrix(self.a)
        object.__setattr__(self, "a", a)
        for i, row in enumerate(a):
            if row[i] != 2:
                raise ValueError(f"diagonal entry a[{i + 1}][{i + 1}] = {row[i]} is not 2")
            for j in range(i + 1, len(a)):
                if sgn(row[j]) != sgn(a[j][i]):
                    raise ValueError(f"a[{i + 1}][{j + 1}] and a[{j + 1}][{i + 1}] differ in sign")

    @property
    def n(self) -> int:
        return len(self.a)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.a[i - 1][j - 1]


def check_ordering(order: Sequence[int], n: int) -> tuple[int, ...]:
    order = tuple(int(v) for v in order)
    if sorted(order) != list(range(1, n + 1)):
        raise ValueError(f"{list(order)} is not an ordering of 1..{n}")
    return order


def gim_from_ordering(b: ExchangeMatrix, order: Sequence[int]) -> Gim:
    """GIM with ``a_ij = b_ij`` when ``i`` precedes ``j`` and ``-b_ij`` otherwise."""
    order = check_ordering(order, b.n)
    pos = {v: p for p, v in enumerate(order)}
    n = b.n
    a = tuple(
        tuple(
            2 if i == j else (b.b[i][j] if pos[i + 1] < pos[j + 1] else -b.b[i][j])
            for j in range(n)
        )
        for i in range(n)
    )
    return Gim(a, order)


def is_admissible(g: Gim, b: ExchangeMatrix) -> bool:
    """Triangle sign test for a GIM of a complete quiver.

    For each triple the product of ``-a_ij`` around the triangle must be
    negative for an oriented triangle and positive otherwise.
    """
    n = b.n
    if g.n != n:
        raise ValueError("GIM and quiver differ in rank")
    if not structural_predicates(b).complete:
        raise ValueError("admissibility is only decided for complete quivers")
    for i in range(n):
        for j in range(n):
            if i != j and abs(g.a[i][j]) != abs(b.b[i][j]):
                raise ValueError(f"|a[{i + 1}][{j + 1}]| differs from |b[{i + 1}][{j + 1}]|")
    a, bb = g.a, b.b
    for i, j, k in combinations(range(n), 3):
        prod = -a[i][j] * a[j][k] * a[k][i]
        edges = (bb[i][j], bb[j][k], bb[k][i])
        oriented = all(x > 0 for x in edges) or all(x < 0 for x in edges)
        if (prod < 0) != oriented:
            return False
    return True


def mutate_gim(g: Gim, seed: FramedSeed, k: int) -> Gim:
    """Mutate ``g`` at ``k`` using the sign of the c-vector ``c_k`` of ``seed``.

    ``seed`` is the state *before* the mutation. Row and column ``k`` change
    by ``-sgn(b_ik c_k)``; ``a_ij`` becomes ``a_ij - a_ik a_kj`` exactly when
    ``b_ik b_kj > 0``.
    """
    n = g.n
    check_label(k, n)
    kk = k - 1
    b = seed.b.b
    ck = seed.row_sign(k)
    for i in range(n):
        if i != kk and b[i][kk] == 0:
            raise ValueError(f"b[{i + 1}][{k}] = 0: GIM mutation needs a complete quiver")
    a = g.a
    flip = [-sgn(b[i][kk]) * ck for i in range(n)]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(2)
            elif j == kk:
                row.append(flip[i] * a[i][kk])
            elif i == kk:
                row.append(flip[j] * a[kk][j])
            elif b[i][kk] * b[kk][j] > 0:
                row.append(a[i][j] - a[i][kk] * a[kk][j])
            else:
                row.append(a[i][j])
        rows.append(tuple(row))
    return Gim(tuple(rows), g.origin_ordering)


def apply_gim_sequence(
    b0: ExchangeMatrix, order: Sequence[int], w: Sequence[int]
) -> tuple[Gim, FramedSeed]:
    g = gim_from_ordering(b0, order)
    seed = FramedSeed.initial(b0)
    for k in w:
        g = mutate_gim(g, seed, k)
        seed = mutate_extended(seed, k)
    return g, seed
