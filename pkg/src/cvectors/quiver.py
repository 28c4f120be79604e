"""
Exact mutation of framed exchange matrices [B | C].

Vertices are labelled 1..n in every public function (the usual cluster
algebra convention); matrices are stored as nested tuples of Python ints
and indexed from 0 internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, NamedTuple, Sequence

Matrix = tuple[tuple[int, ...], ...]


class SignCoherenceError(RuntimeError):
    """A c-vector with entries of both signs (or a zero c-vector) was met."""


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if any(len(row) != len(m) for row in m):
        raise ValueError("matrix must be square")
    return m


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix encoding a quiver.

    ``b[i][j] > 0`` means ``b[i][j]`` arrows from vertex ``i+1`` to ``j+1``.
    """

    b: Matrix

    def __post_init__(self):
        b = as_matrix(self.b)
        object.__setattr__(self, "b", b)
        if not b:
            raise ValueError("exchange matrix must have positive rank")
        for i, row in enumerate(b):
            if row[i] != 0:
                raise ValueError(f"b[{i + 1}][{i + 1}] = {row[i]} is not zero")
            for j in range(i + 1, len(b)):
                if row[j] != -b[j][i]:
                    raise ValueError(
                        f"not skew-symmetric: b[{i + 1}][{j + 1}] = {row[j]} "
                        f"but b[{j + 1}][{i + 1}] = {b[j][i]}"
                    )

    @property
    def n(self) -> int:
        return len(self.b)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        """Entry b_ij with 1-based labels."""
        i, j = ij
        return self.b[i - 1][j - 1]

    def weights(self) -> tuple[int, ...]:
        """Arrow counts q_ij = |b_ij| for i < j in lexicographic pair order."""
        n = self.n
        return tuple(abs(self.b[i][j]) for i in range(n) for j in range(i + 1, n))

    def sign_pattern(self) -> Matrix:
        return tuple(tuple(sgn(x) for x in row) for row in self.b)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.b]


@dataclass(frozen=True)
class FramedSeed:
    """The pair (B^w, C^w) together with the applied sequence w."""

    b: ExchangeMatrix
    c: Matrix
    history: tuple[int, ...] = field(default=())

    @classmethod
    def initial(cls, b: ExchangeMatrix | Sequence[Sequence[int]]) -> "FramedSeed":
        if not isinstance(b, ExchangeMatrix):
            b = ExchangeMatrix(as_matrix(b))
        return cls(b, identity(b.n), ())

    @property
    def n(self) -> int:
        return self.b.n

    def c_row(self, i: int) -> tuple[int, ...]:
        return self.c[i - 1]

    def row_sign(self, i: int) -> int:
        """Sign (+1/-1) of the c-vector of vertex ``i``."""
        return _row_sign(self.c[i - 1], i)


class QuiverShape(NamedTuple):
    skew: bool
    abundant: bool
    acyclic: bool
    complete: bool


def _row_sign(row: Sequence[int], label: int) -> int:
    pos = any(x > 0 for x in row)
    neg = any(x < 0 for x in row)
    if pos and neg:
        raise SignCoherenceError(f"c-vector {label} = {tuple(row)} is not sign-coherent")
    if not (pos or neg):
        raise SignCoherenceError(f"c-vector {label} is zero")
    return 1 if pos else -1


def check_label(k: int, n: int) -> None:
    if not isinstance(k, int) or not 1 <= k <= n:
        raise IndexError(f"vertex {k!r} out of range 1..{n}")


def mutate_extended(seed: FramedSeed, k: int) -> FramedSeed:
    """Mutate [B | C] at vertex ``k`` (1-based).

    Row/column ``k`` of B and row ``k`` of C change sign; every other entry
    m_ij becomes ``m_ij + sgn(b_ik) * max(b_ik * m_kj, 0)``.
    """
    n = seed.n
    check_label(k, n)
    kk = k - 1
    b, c = seed.b.b, seed.c
    bk, ck = b[kk], c[kk]
    new_b = []
    new_c = []
    for i in range(n):
        if i == kk:
            new_b.append(tuple(-x for x in bk))
            new_c.append(tuple(-x for x in ck))
            continue
        bik = b[i][kk]
        row_b = list(b[i])
        row_c = list(c[i])
        if bik:
            s = 1 if bik > 0 else -1
            for j in range(n):
                if j == kk:
                    row_b[j] = -row_b[j]
                elif bik * bk[j] > 0:
                    row_b[j] += s * bik * bk[j]
                if bik * ck[j] > 0:
                    row_c[j] += s * bik * ck[j]
        new_b.append(tuple(row_b))
        new_c.append(tuple(row_c))
    for i, row in enumerate(new_c):
        _row_sign(row, i + 1)
    return FramedSeed(ExchangeMatrix(tuple(new_b)), tuple(new_c), seed.history + (k,))


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Mutate the exchange matrix alone (no framing)."""
    n = b.n
    check_label(k, n)
    kk = k - 1
    m = b.b
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == kk or j == kk:
                row.append(-m[i][j])
            elif m[i][kk] * m[kk][j] > 0:
                row.append(m[i][j] + (1 if m[i][kk] > 0 else -1) * m[i][kk] * m[kk][j])
            else:
                row.append(m[i][j])
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows))


def is_reduced(w: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(w, w[1:]))


def apply_sequence(b0: ExchangeMatrix | Sequence[Sequence[int]], w: Sequence[int]) -> FramedSeed:
    seed = FramedSeed.initial(b0)
    for k in w:
        seed = mutate_extended(seed, k)
    return seed


def walk(b0: ExchangeMatrix, w: Sequence[int]) -> list[FramedSeed]:
    """All seeds along ``w``, starting with the initial one."""
    seeds = [FramedSeed.initial(b0)]
    for k in w:
        seeds.append(mutate_extended(seeds[-1], k))
    return seeds


def sign_vector(seed: FramedSeed) -> tuple[int, ...]:
    return tuple(_row_sign(row, i + 1) for i, row in enumerate(seed.c))


def arrows(b: ExchangeMatrix, vertices: Iterable[int] | None = None) -> dict[int, list[int]]:
    """Predecessor lists (1-based) of the subquiver induced by ``vertices``."""
    vs = sorted(vertices) if vertices is not None else list(range(1, b.n + 1))
    return {v: [u for u in vs if b[u, v] > 0] for v in vs}


def topological_order(b: ExchangeMatrix, vertices: Iterable[int] | None = None) -> tuple[int, ...]:
    """Sources first; raises ``ValueError`` on a directed cycle."""
    ts = TopologicalSorter(arrows(b, vertices))
    try:
        return tuple(ts.static_order())
    except CycleError as exc:
        raise ValueError(f"subquiver contains a directed cycle {exc.args[1]}") from None


def structural_predicates(b: ExchangeMatrix | Sequence[Sequence[int]]) -> QuiverShape:
    m = as_matrix(b.b if isinstance(b, ExchangeMatrix) else b)
    n = len(m)
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    skew = all(m[i][j] == -m[j][i] for i in range(n) for j in range(n))
    abundant = all(abs(m[i][j]) >= 2 for i, j in off)
    complete = all(m[i][j] != 0 for i, j in off)
    graph = {j: [i for i in range(n) if i != j and m[i][j] > 0] for j in range(n)}
    try:
        tuple(TopologicalSorter(graph).static_order())
        acyclic = True
    except CycleError:
        acyclic = False
    return QuiverShape(skew, abundant, acyclic, complete)


MARKOV = ExchangeMatrix(((0, 2, -2), (-2, 0, 2), (2, -2, 0)))
Q233 = ExchangeMatrix(((0, 2, -3), (-2, 0, 3), (3, -3, 0)))
FORK345 = ExchangeMatrix(((0, 3, -5), (-3, 0, 4), (5, -4, 0)))

NAMED_QUIVERS = {"markov": MARKOV, "m": MARKOV, "q233": Q233, "q": Q233, "fork345": FORK345}
