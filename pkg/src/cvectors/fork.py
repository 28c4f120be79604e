"""
Forks: recognition, orderings, fork-preserving walks and last green vertices.

A fork is an abundant, non-acyclic quiver with a vertex r (the point of
return) such that the in- and out-neighbourhoods of r induce acyclic
subquivers and every arrow j -> i from the out-part to the in-part carries
more arrows than both i -> r and r -> j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .quiver import (
    ExchangeMatrix,
    FramedSeed,
    check_label,
    is_reduced,
    mutate_extended,
    structural_predicates,
    topological_order,
)


class ForkViolation(RuntimeError):
    """A fork-related statement that should hold by construction failed."""


@dataclass(frozen=True)
class ForkCertificate:
    point_of_return: int
    inbound: frozenset[int]
    outbound: frozenset[int]


def certify_point_of_return(b: ExchangeMatrix, r: int) -> ForkCertificate | None:
    """Certificate for ``r`` as point of return of ``b``, or ``None``."""
    shape = structural_predicates(b)
    if not shape.abundant or shape.acyclic:
        return None
    n = b.n
    inbound = frozenset(i for i in range(1, n + 1) if b[i, r] > 0)
    outbound = frozenset(j for j in range(1, n + 1) if b[r, j] > 0)
    for i in inbound:
        for j in outbound:
            if not (b[j, i] > b[i, r] and b[j, i] > b[r, j]):
                return None
    for part in (inbound, outbound):
        try:
            topological_order(b, part)
        except ValueError:
            return None
    return ForkCertificate(r, inbound, outbound)


def find_point_of_return(b: ExchangeMatrix) -> ForkCertificate | None:
    """Lowest-labelled point of return of ``b``; ``None`` if ``b`` is no fork."""
    for r in range(1, b.n + 1):
        cert = certify_point_of_return(b, r)
        if cert is not None:
            return cert
    return None


def require_fork(b: ExchangeMatrix) -> ForkCertificate:
    cert = find_point_of_return(b)
    if cert is None:
        raise ValueError("quiver is not a fork")
    return cert


def acyclic_ordering(b: ExchangeMatrix, subset) -> tuple[int, ...]:
    """Vertices of ``subset`` so that every arrow points forward."""
    return topological_order(b, subset)


def fork_linear_ordering(cert: ForkCertificate, b: ExchangeMatrix) -> tuple[int, ...]:
    """``r`` followed by the reversed acyclic ordering of the other vertices."""
    r = cert.point_of_return
    rest = acyclic_ordering(b, [v for v in range(1, b.n + 1) if v != r])
    return (r,) + tuple(reversed(rest))


def is_fork_preserving(b: ExchangeMatrix, w: Sequence[int]) -> tuple[bool, str]:
    """Decide whether ``w`` is fork-preserving for the fork ``b``.

    Every intermediate quiver is re-checked to be a fork whose point of
    return is the vertex just mutated; a failure there raises
    ``ForkViolation`` instead of returning ``False``.
    """
    cert = require_fork(b)
    for k in w:
        check_label(k, b.n)
    if not is_reduced(w):
        return False, "sequence is not reduced"
    if w and w[0] == cert.point_of_return:
        return False, f"first mutation is at the point of return {cert.point_of_return}"
    seed = FramedSeed.initial(b)
    for step, k in enumerate(w, 1):
        seed = mutate_extended(seed, k)
        if certify_point_of_return(seed.b, k) is None:
            raise ForkViolation(
                f"after step {step} of {list(w)} the quiver is not a fork with point of return {k}"
            )
    return True, "ok"


def is_oriented_triangle(b: ExchangeMatrix, i: int, j: int, k: int) -> bool:
    edges = (b[i, j], b[j, k], b[k, i])
    return all(x > 0 for x in edges) or all(x < 0 for x in edges)


def has_vortex(b: ExchangeMatrix) -> bool:
    for quad in combinations(range(1, b.n + 1), 4):
        if any(b[u, v] == 0 for u, v in combinations(quad, 2)):
            continue
        for apex in quad:
            others = [v for v in quad if v != apex]
            signs = {b[apex, v] > 0 for v in others}
            if len(signs) == 1 and is_oriented_triangle(b, *others):
                return True
    return False


def last_green_vertex(seed: FramedSeed, cert: ForkCertificate) -> int:
    """The last green vertex of ``B^w`` for a non-trivial fork-preserving walk.

    Raises ``ForkViolation`` if the result does not satisfy the defining
    sign conditions.
    """
    b = seed.b
    r = cert.point_of_return
    signs = {v: seed.row_sign(v) for v in range(1, b.n + 1)}
    order = acyclic_ordering(b, [v for v in range(1, b.n + 1) if v != r])
    green = [v for v in order if signs[v] > 0]
    if not green:
        if signs[r] < 0:
            raise ForkViolation(f"no c-vector is positive after {list(seed.history)}")
        return r
    v = green[-1]
    for i in order:
        if b[i, v] > 0 and signs[i] < 0:
            raise ForkViolation(f"vertex {i} -> last green {v} has a negative c-vector")
        if b[v, i] > 0 and signs[i] > 0:
            raise ForkViolation(f"last green {v} -> vertex {i} has a positive c-vector")
    return v


def cyclic_signed_ordering(seed: FramedSeed, cert: ForkCertificate) -> tuple[int, ...]:
    """Rotate the fork ordering of ``B^w`` so that it starts at the last green vertex."""
    base = fork_linear_ordering(cert, seed.b)
    start = last_green_vertex(seed, cert)
    pos = base.index(start)
    rotated = base[pos:] + base[:pos]
    r = cert.point_of_return
    split = rotated.index(r)
    for v in rotated[:split]:
        if seed.row_sign(v) < 0:
            raise ForkViolation(f"vertex {v} precedes {r} but has a negative c-vector")
    for v in rotated[split + 1 :]:
        if seed.row_sign(v) > 0:
            raise ForkViolation(f"vertex {v} follows {r} but has a positive c-vector")
    return rotated


def _fork_weights(rng: random.Random, n, r, inbound, outbound, order_in, order_out, max_weight):
    b = [[0] * n for _ in range(n)]

    def put(u, v, x):
        b[u - 1][v - 1] = x
        b[v - 1][u - 1] = -x

    for part in (order_in, order_out):
        for a, c in combinations(part, 2):
            put(a, c, rng.randint(2, max_weight))
    for i in sorted(inbound):
        put(i, r, rng.randint(2, max_weight - 1))
    for j in sorted(outbound):
        put(r, j, rng.randint(2, max_weight - 1))
    for i in sorted(inbound):
        for j in sorted(outbound):
            low = max(b[i - 1][r - 1], b[r - 1][j - 1]) + 1
            put(j, i, rng.randint(low, max_weight))
    return ExchangeMatrix(tuple(tuple(row) for row in b))


def random_fork(n: int, max_weight: int, rng_seed: int) -> ExchangeMatrix:
    """A random fork on ``n`` vertices with all weights in ``[2, max_weight]``."""
    if n < 3:
        raise ValueError("a fork needs at least 3 vertices")
    if max_weight < 3:
        raise ValueError("max_weight must be at least 3 to satisfy the fork inequalities")
    rng = random.Random(rng_seed)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    r, rest = labels[0], labels[1:]
    cut = rng.randint(1, n - 2)
    inbound, outbound = rest[:cut], rest[cut:]
    return _fork_weights(rng, n, r, inbound, outbound, inbound, outbound, max_weight)


def reweight_fork(b: ExchangeMatrix, max_weight: int, rng_seed: int) -> ExchangeMatrix:
    """A fork with the same sign pattern as ``b`` and freshly drawn weights."""
    cert = require_fork(b)
    if max_weight < 3:
        raise ValueError("max_weight must be at least 3")
    rng = random.Random(rng_seed)
    order_in = acyclic_ordering(b, cert.inbound)
    order_out = acyclic_ordering(b, cert.outbound)
    return _fork_weights(
        rng, b.n, cert.point_of_return, cert.inbound, cert.outbound,
        order_in, order_out, max_weight,
    )


def random_fork_preserving_sequence(b: ExchangeMatrix, length: int, rng: random.Random) -> tuple[int, ...]:
    """A reduced sequence avoiding the point of return at each step."""
    r = require_fork(b).point_of_return
    w: list[int] = []
    avoid = r
    for _ in range(length):
        k = rng.choice([v for v in range(1, b.n + 1) if v != avoid])
        w.append(k)
        avoid = k
    return tuple(w)
