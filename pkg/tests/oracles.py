"""
Slow, deliberately naive reference implementations used as test oracles.

Nothing here imports from the package; each routine follows the textbook
formula as literally as possible on plain lists.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def sign(x):
    return (x > 0) - (x < 0)


def mutate_framed(m, k):
    """Mutate an n x 2n list-of-lists [B | C] at 0-based row/column k."""
    n = len(m)
    out = [row[:] for row in m]
    for i in range(n):
        for j in range(2 * n):
            if i == k or j == k:
                out[i][j] = -m[i][j]
            else:
                out[i][j] = m[i][j] + sign(m[i][k]) * max(m[i][k] * m[k][j], 0)
    return out


def framed(b):
    n = len(b)
    return [list(b[i]) + [int(i == j) for j in range(n)] for i in range(n)]


def c_matrix(b, w):
    """C^w for 1-based sequence ``w``."""
    m = framed(b)
    for k in w:
        m = mutate_framed(m, k - 1)
    n = len(b)
    return [row[n:] for row in m], [row[:n] for row in m]


def reduce_word(word):
    """Cancel ``xx`` pairs by repeated scanning until nothing changes."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                del w[i : i + 2]
                changed = True
                break
    return w


def gim_first_form(a, b, c_sign_k, k):
    """GIM mutation written with epsilon = -sgn(c_k) (0-based ``k``)."""
    n = len(a)
    eps = -c_sign_k
    out = [row[:] for row in a]
    for i in range(n):
        for j in range(n):
            if i == j:
                out[i][j] = 2
            elif j == k:
                out[i][j] = eps * sign(b[i][k]) * a[i][k]
            elif i == k:
                out[i][j] = -eps * sign(b[k][j]) * a[k][j]
            else:
                out[i][j] = a[i][j] - sign(a[i][k] * a[k][j]) * max(b[i][k] * b[k][j], 0)
    return out


def s_matrix(a, i):
    """Matrix of s_i (0-based) on row vectors: row j is e_j - a_ji e_i."""
    n = len(a)
    m = [[int(r == s) for s in range(n)] for r in range(n)]
    for j in range(n):
        m[j][i] -= a[j][i]
    return m


def matmul(x, y):
    return [[sum(x[i][t] * y[t][j] for t in range(len(y))) for j in range(len(y[0]))] for i in range(len(x))]


def l_vector(a, word):
    """l-vector of a palindromic word via explicit matrix products (1-based letters)."""
    n = len(a)
    m = len(word) // 2
    centre = word[m] - 1
    prod = [[int(r == s) for s in range(n)] for r in range(n)]
    for letter in reversed(word[:m]):
        prod = matmul(prod, s_matrix(a, letter - 1))
    row = [int(j == centre) for j in range(n)]
    return [sum(row[t] * prod[t][j] for t in range(n)) for j in range(n)]


def quadratic_brute(c, q):
    n = len(c)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    hits = set()
    for sig in product((1, -1), repeat=len(pairs)):
        total = sum(x * x for x in c)
        for s, w, (i, j) in zip(sig, q, pairs):
            total += s * w * c[i] * c[j]
        if total == 1:
            hits.add(sig)
    return hits


def segments_cross(p1, p2, p3, p4):
    """Parametric intersection of two non-parallel segments, or None."""
    p1, p2, p3, p4 = ([Fraction(v) for v in p] for p in (p1, p2, p3, p4))
    d = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
    if d == 0:
        return None
    t = ((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0])) / d
    u = ((p3[0] - p1[0]) * (p2[1] - p1[1]) - (p3[1] - p1[1]) * (p2[0] - p1[0])) / d
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))
    return None


def crossings_by_sampling(points, steps=4000):
    """Families crossed along a polyline, found by dense sampling (floats).

    Only used on polylines that stay well away from grid intersections.
    """
    import math

    out = []

    def cell(x, y):
        return (math.floor(x), math.floor(x + y), math.floor(y))

    prev = None
    for (ax, ay), (bx, by) in zip(points, points[1:]):
        ax, ay, bx, by = float(ax), float(ay), float(bx), float(by)
        for s in range(steps + 1):
            t = (s + 0.5) / (steps + 1)
            cur = cell(ax + t * (bx - ax), ay + t * (by - ay))
            if prev is not None:
                for fam in range(3):
                    if cur[fam] != prev[fam]:
                        out.append(fam)
            prev = cur
    return out
