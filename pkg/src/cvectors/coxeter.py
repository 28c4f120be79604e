"""
Words in the universal Coxeter group, reflection mutation and l-vectors.

The universal Coxeter group on generators s_1..s_n has only the relations
s_i^2 = 1, so every element has a unique reduced word: a tuple of labels
with no two equal neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .fork import (
    certify_point_of_return,
    cyclic_signed_ordering,
    find_point_of_return,
    fork_linear_ordering,
    require_fork,
)
from .gim import Gim, gim_from_ordering, mutate_gim
from .quiver import ExchangeMatrix, FramedSeed, Matrix, check_label, mutate_extended

Word = tuple[int, ...]


def reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent equal letters until none remain."""
    stack: list[int] = []
    for x in word:
        if stack and stack[-1] == x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def multiply(*words: Iterable[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def is_reflection(word: Iterable[int]) -> bool:
    w = reduce(word)
    return len(w) % 2 == 1 and w == w[::-1]


def initial_reflections(n: int) -> tuple[Word, ...]:
    return tuple((i,) for i in range(1, n + 1))


def mutate_reflections(t: Sequence[Word], seed: FramedSeed, k: int) -> tuple[Word, ...]:
    """Conjugate ``r_i`` by ``r_k`` whenever ``b_ik * sgn(c_k) > 0``."""
    check_label(k, seed.n)
    ck = seed.row_sign(k)
    rk = t[k - 1]
    return tuple(
        multiply(rk, ri, rk) if seed.b[i, k] * ck > 0 else tuple(ri)
        for i, ri in enumerate(t, 1)
    )


def reflections_along(b0: ExchangeMatrix, w: Sequence[int]) -> tuple[tuple[Word, ...], FramedSeed]:
    t = initial_reflections(b0.n)
    seed = FramedSeed.initial(b0)
    for k in w:
        t = mutate_reflections(t, seed, k)
        seed = mutate_extended(seed, k)
    return t, seed


def pi_matrix(g: Gim, i: int) -> Matrix:
    """Matrix of s_i acting on row vectors: row j is ``alpha_j - a_ji alpha_i``."""
    check_label(i, g.n)
    n = g.n
    ii = i - 1
    rows = []
    for j in range(n):
        row = [int(j == m) for m in range(n)]
        row[ii] -= g.a[j][ii]
        rows.append(tuple(row))
    return tuple(rows)


def act(g: Gim, v: Sequence[int], i: int) -> tuple[int, ...]:
    """Row vector ``v`` times ``pi_matrix(g, i)``; only coordinate ``i`` moves."""
    ii = i - 1
    out = list(v)
    out[ii] -= sum(x * g.a[j][ii] for j, x in enumerate(v))
    return tuple(out)


def canonical_sign(v: Sequence[int]) -> tuple[int, ...]:
    """Representative of ``v`` up to sign whose first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def l_vector_from_word(g: Gim, r: Sequence[int]) -> tuple[int, ...]:
    """``g_r(alpha_c)`` for the reflection ``r = g_r s_c g_r^{-1}``.

    Returns the raw vector; use ``canonical_sign`` for the class up to sign.
    """
    r = tuple(r)
    if r != reduce(r) or not is_reflection(r):
        raise ValueError(f"{list(r)} is not a reduced reflection word")
    m = len(r) // 2
    centre = r[m]
    v = tuple(int(j == centre) for j in range(1, g.n + 1))
    for letter in reversed(r[:m]):
        v = act(g, v, letter)
    return v


@dataclass(frozen=True)
class LMatrix:
    raw: Matrix

    @property
    def canonical(self) -> Matrix:
        return tuple(canonical_sign(row) for row in self.raw)

    @property
    def n(self) -> int:
        return len(self.raw)

    def equal_up_to_row_sign(self, other: "LMatrix | Sequence[Sequence[int]]") -> bool:
        rows = other.raw if isinstance(other, LMatrix) else other
        return self.canonical == tuple(canonical_sign(row) for row in rows)


def l_matrix_from_words(g: Gim, t: Sequence[Word]) -> LMatrix:
    return LMatrix(tuple(l_vector_from_word(g, r) for r in t))


def l_matrix_step(l_rows: Matrix, g: Gim, seed: FramedSeed, k: int) -> Matrix:
    """``l_i <- l_i - a_ik l_k`` for every ``i`` with ``b_ik c_k > 0``.

    ``g`` and ``seed`` describe the state before mutating at ``k``.
    """
    ck = seed.row_sign(k)
    lk = l_rows[k - 1]
    out = []
    for i, li in enumerate(l_rows, 1):
        if seed.b[i, k] * ck > 0:
            a = g[i, k]
            out.append(tuple(x - a * y for x, y in zip(li, lk)))
        else:
            out.append(li)
    return tuple(out)


def l_matrix_recurrence(b0: ExchangeMatrix, order: Sequence[int], w: Sequence[int]) -> LMatrix:
    g = gim_from_ordering(b0, order)
    seed = FramedSeed.initial(b0)
    l_rows = seed.c
    for k in w:
        l_rows = l_matrix_step(l_rows, g, seed, k)
        g = mutate_gim(g, seed, k)
        seed = mutate_extended(seed, k)
    return LMatrix(l_rows)


@dataclass(frozen=True)
class CoxeterCheck:
    lambda_order: tuple[int, ...]
    rho_product_word: Word
    lambda_product_word: Word
    equal: bool
    within_hypotheses: bool


def coxeter_product_check(
    b0: ExchangeMatrix,
    w: Sequence[int],
    *,
    lambda_order: Sequence[int] | None = None,
    rho_order: Sequence[int] | None = None,
) -> CoxeterCheck:
    """Compare ``r^w_{lambda(1)} ... r^w_{lambda(n)}`` with a product of initial reflections.

    Without explicit orders ``b0`` must be a fork and ``w`` a non-trivial
    fork-preserving sequence: lambda is the cyclic signed ordering of the
    final state and rho comes from the fork ordering of ``b0`` and the
    first mutation. Passing both orders skips the fork machinery (used for
    quivers that are not forks); the result is then flagged as outside the
    theorem's hypotheses unless ``b0`` happens to be a fork.
    """
    t, seed = reflections_along(b0, w)
    if lambda_order is None or rho_order is None:
        if not w:
            raise ValueError("sequence must be non-trivial")
        cert0 = require_fork(b0)
        r = cert0.point_of_return
        if w[0] == r:
            raise ValueError("sequence starts at the point of return")
        if lambda_order is None:
            cert = certify_point_of_return(seed.b, w[-1])
            if cert is None:
                raise ValueError("final quiver is not a fork with point of return w[-1]")
            lambda_order = cyclic_signed_ordering(seed, cert)
        if rho_order is None:
            base = fork_linear_ordering(cert0, b0)
            rho_order = base[1:] + (r,) if w[0] in cert0.outbound else base
        within = True
    else:
        within = find_point_of_return(b0) is not None
    lam = tuple(lambda_order)
    rho = tuple(rho_order)
    left = multiply(*(t[i - 1] for i in lam))
    right = reduce(rho)
    return CoxeterCheck(lam, right, left, left == right, within)
