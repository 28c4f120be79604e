"""
Admissible curves on the universal cover of the rank-3 torus.

The plane is cut by three families of lines: alpha (x in Z, vertical),
beta (x + y in Z, anti-diagonal) and gamma (y in Z, horizontal). Lattice
points are the lifts of the marked point. A curve is stored as a polyline
with exact rational vertices; its crossing word lists, in order, the
family of every grid line it crosses, translated to vertex labels through
a ``FamilyLabeling``.

Curves are built from walks in the triangulation. Each triangle has
exactly one edge in each family, so a start triangle and a word fix the
walk; the polyline visits the centroid of every triangle on it. Two
neighbouring triangles form a parallelogram, so the centroid-to-centroid
segment crosses only the shared edge, at its midpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence
import xml.etree.ElementTree as ET

from .coxeter import Word, is_reflection, reduce

Point = tuple[Fraction, Fraction]

FAMILIES = ("alpha", "beta", "gamma")


class DegenerateCrossing(ValueError):
    """A polyline meets the grid non-transversally or at a lattice point."""


def _pt(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


@dataclass(frozen=True)
class Polyline:
    points: tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence]):
        pts = tuple(_pt(p) for p in points)
        if len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        object.__setattr__(self, "points", pts)

    def reversed(self) -> "Polyline":
        return Polyline(self.points[::-1])

    def segments(self) -> list[tuple[Point, Point]]:
        return list(zip(self.points, self.points[1:]))

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return self.points[0], self.points[-1]


@dataclass(frozen=True)
class FamilyLabeling:
    """alpha -> sigma[0], beta -> sigma[1], gamma -> sigma[2]."""

    sigma: tuple[int, int, int]

    def __post_init__(self):
        s = tuple(int(v) for v in self.sigma)
        if len(s) != 3 or len(set(s)) != 3:
            raise ValueError(f"labeling {s} is not a bijection onto three labels")
        object.__setattr__(self, "sigma", s)

    def label(self, family: int) -> int:
        return self.sigma[family]

    def family(self, label: int) -> int:
        try:
            return self.sigma.index(label)
        except ValueError:
            raise ValueError(f"label {label} not in {self.sigma}") from None


def _values(p: Point) -> tuple[Fraction, Fraction, Fraction]:
    x, y = p
    return (x, x + y, y)


def _is_lattice(p: Point) -> bool:
    return p[0].denominator == 1 and p[1].denominator == 1


def _on_grid(p: Point) -> bool:
    return any(v.denominator == 1 for v in _values(p))


def raw_crossings(p: Polyline) -> list[int]:
    """Families (0, 1, 2) crossed by ``p`` in order.

    Raises ``DegenerateCrossing`` if an endpoint is off the lattice, an
    interior vertex lies on a grid line, a segment runs along a grid line
    or two lines are crossed at the same point.
    """
    pts = p.points
    for end in (pts[0], pts[-1]):
        if not _is_lattice(end):
            raise DegenerateCrossing(f"endpoint {_fmt(end)} is not a lattice point")
    for q in pts[1:-1]:
        if _on_grid(q):
            raise DegenerateCrossing(f"interior vertex {_fmt(q)} lies on a grid line")
    out: list[int] = []
    for a, b in p.segments():
        va, vb = _values(a), _values(b)
        hits: list[tuple[Fraction, int]] = []
        for fam in range(3):
            lo, hi = va[fam], vb[fam]
            if lo == hi:
                if lo.denominator == 1:
                    raise DegenerateCrossing(
                        f"segment {_fmt(a)}-{_fmt(b)} runs along a {FAMILIES[fam]} line"
                    )
                continue
            step = 1 if hi > lo else -1
            m = _next_int(lo, step)
            while (m - hi) * step < 0:
                hits.append(((m - lo) / (hi - lo), fam))
                m += step
        hits.sort()
        for (t1, f1), (t2, f2) in zip(hits, hits[1:]):
            if t1 == t2:
                x = a[0] + t1 * (b[0] - a[0])
                y = a[1] + t1 * (b[1] - a[1])
                raise DegenerateCrossing(f"crossing at grid intersection ({x}, {y})")
        out.extend(f for _, f in hits)
    return out


def _next_int(v: Fraction, step: int) -> int:
    """Smallest integer > v (step 1) or largest integer < v (step -1)."""
    if step > 0:
        return v.numerator // v.denominator + 1
    return -((-v.numerator) // v.denominator + 1)


def _fmt(p: Point) -> str:
    return f"({p[0]}, {p[1]})"


def crossing_word(p: Polyline, lab: FamilyLabeling) -> Word:
    """Labels of the crossed grid lines, in order along ``p`` (not reduced)."""
    return tuple(lab.label(f) for f in raw_crossings(p))


# ---------------------------------------------------------------------------
# intersections


def _orient(a: Point, b: Point, c: Point) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_segment(a: Point, b: Point, c: Point) -> bool:
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Intersection of closed segments ``ab`` and ``cd``.

    Returns ``None``, a single point, or the string ``"overlap"`` for
    collinear segments sharing more than one point.
    """
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 == o2 == o3 == o4 == 0:
        shared = [p for p in (a, b) if _on_segment(c, d, p)] + [p for p in (c, d) if _on_segment(a, b, p)]
        shared = sorted(set(shared))
        if not shared:
            return None
        return shared[0] if len(shared) == 1 else "overlap"
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    if o1 == 0:
        return c if _on_segment(a, b, c) else None
    if o2 == 0:
        return d if _on_segment(a, b, d) else None
    if o3 == 0:
        return a if _on_segment(c, d, a) else None
    if o4 == 0:
        return b if _on_segment(c, d, b) else None
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    t = Fraction((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])) / den
    return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def non_crossing(ps: Sequence[Polyline]) -> bool:
    """No interior intersection within or between the polylines.

    Neighbouring segments of one polyline may share their joint, and
    lattice endpoints shared by two curves do not count.
    """
    segs = []
    for ci, p in enumerate(ps):
        ends = {q for q in p.endpoints if _is_lattice(q)}
        for si, s in enumerate(p.segments()):
            segs.append((ci, si, s, ends))
    for (c1, s1, (a, b), e1), (c2, s2, (c, d), e2) in combinations(segs, 2):
        hit = segment_intersection(a, b, c, d)
        if hit is None:
            continue
        if hit == "overlap":
            return False
        if c1 == c2 and abs(s1 - s2) == 1:
            joint = b if s2 == s1 + 1 else a
            if hit == joint:
                continue
        if hit in e1 and hit in e2:
            continue
        return False
    return True


def is_admissible_curve(p: Polyline, lab: FamilyLabeling) -> bool:
    word = crossing_word(p, lab)
    if any(x == y for x, y in zip(word, word[1:])):
        return False
    return is_reflection(word) and non_crossing([p])


# ---------------------------------------------------------------------------
# triangle walks

Triangle = tuple[int, int, int]  # (a, b, 0) lower-left, (a, b, 1) upper-right half of cell (a, b)


def _neighbour(t: Triangle, family: int) -> Triangle:
    a, b, up = t
    if family == 1:
        return (a, b, 1 - up)
    if up == 0:
        return (a - 1, b, 1) if family == 0 else (a, b - 1, 1)
    return (a + 1, b, 0) if family == 0 else (a, b + 1, 0)


def _vertices(t: Triangle) -> tuple[tuple[int, int], ...]:
    a, b, up = t
    if up == 0:
        return ((a, b), (a + 1, b), (a, b + 1))
    return ((a + 1, b), (a, b + 1), (a + 1, b + 1))


def _centroid(t: Triangle) -> Point:
    a, b, up = t
    off = Fraction(2, 3) if up else Fraction(1, 3)
    return (a + off, b + off)


def _triangles_at(v: tuple[int, int]) -> list[Triangle]:
    x, y = v
    return [
        (x, y, 0), (x - 1, y, 0), (x, y - 1, 0),
        (x - 1, y - 1, 1), (x - 1, y, 1), (x, y - 1, 1),
    ]


@dataclass(frozen=True)
class CurvePath:
    start: tuple[int, int]
    triangles: tuple[Triangle, ...]
    end: tuple[int, int]

    def polyline(self) -> Polyline:
        return Polyline([self.start, *(_centroid(t) for t in self.triangles), self.end])


def triangle_walk(start: Triangle, families: Sequence[int]) -> tuple[Triangle, ...] | None:
    """The triangles visited from ``start``; ``None`` if one repeats."""
    seen = {start}
    path = [start]
    for f in families:
        nxt = _neighbour(path[-1], f)
        if nxt in seen:
            return None
        seen.add(nxt)
        path.append(nxt)
    return tuple(path)


def candidate_paths(word: Sequence[int], lab: FamilyLabeling, origin=(0, 0)) -> list[CurvePath]:
    """All triangle-walk curves for ``word`` starting at lattice point ``origin``."""
    fams = [lab.family(x) for x in word]
    out = []
    for t0 in _triangles_at(origin):
        tris = triangle_walk(t0, fams)
        if tris is None:
            continue
        for end in _vertices(tris[-1]):
            if end != tuple(origin):
                out.append(CurvePath(tuple(origin), tris, end))
    return out


def curve_for_reflection(
    r: Sequence[int], lab: FamilyLabeling, bound: int = 8
) -> Polyline | None:
    """A non-self-crossing polyline whose crossing word is exactly ``r``.

    The word fixes the walk once a start triangle is chosen, so the search
    runs over start triangles and end vertices for start points within
    Chebyshev distance ``bound`` of the origin. The construction commutes
    with translations, so in practice the origin decides. ``None`` means
    nothing was found, which does not refute existence.
    """
    word = tuple(r)
    if word != reduce(word) or not is_reflection(word):
        raise ValueError(f"{list(word)} is not a reduced reflection word")
    for origin in _offsets(bound) if bound >= 0 else []:
        for cand in candidate_paths(word, lab, origin):
            p = cand.polyline()
            if crossing_word(p, lab) == word and non_crossing([p]):
                return p
    return None


def _offsets(radius: int) -> list[tuple[int, int]]:
    pts = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    return sorted(pts, key=lambda v: (max(abs(v[0]), abs(v[1])), abs(v[0]) + abs(v[1]), v))


def curves_for_reflections(
    words: Sequence[Sequence[int]], lab: FamilyLabeling, bound: int = 2
) -> list[Polyline] | None:
    """Pairwise non-crossing curves, one per word, or ``None`` if the search is inconclusive.

    The first curve starts at the origin; the others may start at any
    lattice point within Chebyshev distance ``bound``. Curves are kept in
    disjoint sets of triangles, and the result is re-validated with the
    exact intersection test.
    """
    words = [tuple(w) for w in words]
    for w in words:
        if w != reduce(w) or not is_reflection(w):
            raise ValueError(f"{list(w)} is not a reduced reflection word")
    pools = []
    for idx, w in enumerate(words):
        origins = [(0, 0)] if idx == 0 else _offsets(bound)
        pool = []
        for o in origins:
            for cand in candidate_paths(w, lab, o):
                pool.append((cand, frozenset(cand.triangles)))
        pools.append(pool)

    chosen: list[CurvePath] = []

    def search(idx: int, used: frozenset) -> bool:
        if idx == len(words):
            return True
        for cand, tris in pools[idx]:
            if used & tris:
                continue
            chosen.append(cand)
            if search(idx + 1, used | tris):
                return True
            chosen.pop()
        return False

    if not search(0, frozenset()):
        return None
    ps = [c.polyline() for c in chosen]
    for p, w in zip(ps, words):
        if crossing_word(p, lab) != w:
            return None
    return ps if non_crossing(ps) else None


# ---------------------------------------------------------------------------
# SVG

SCALE = 100
PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
GRID = {"alpha": "#bbbbbb", "beta": "#d0d0e8", "gamma": "#bbbbbb"}


def _num(v) -> str:
    s = f"{float(v):.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _window_for(ps: Sequence[Polyline]) -> tuple[int, int, int, int]:
    if not ps:
        return (-1, -1, 2, 2)
    xs = [q[0] for p in ps for q in p.points]
    ys = [q[1] for p in ps for q in p.points]
    return (math.floor(min(xs)) - 1, math.floor(min(ys)) - 1,
            math.ceil(max(xs)) + 1, math.ceil(max(ys)) + 1)


def render_svg(
    ps: Sequence[Polyline],
    window: tuple[int, int, int, int] | None = None,
    labels: Sequence[str] | None = None,
) -> str:
    """SVG text showing the grid over ``window = (x0, y0, x1, y1)`` and the curves."""
    x0, y0, x1, y1 = window if window is not None else _window_for(ps)
    if x1 <= x0 or y1 <= y0:
        raise ValueError(f"empty window {(x0, y0, x1, y1)}")

    def sx(x):
        return _num((Fraction(x) - x0) * SCALE)

    def sy(y):
        return _num((y1 - Fraction(y)) * SCALE)

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "width": str((x1 - x0) * SCALE),
        "height": str((y1 - y0) * SCALE),
        "viewBox": f"0 0 {(x1 - x0) * SCALE} {(y1 - y0) * SCALE}",
    })
    grid = ET.SubElement(svg, "g", {"id": "grid", "stroke-width": "1", "fill": "none"})
    for x in range(x0, x1 + 1):
        ET.SubElement(grid, "line", {"class": "alpha", "stroke": GRID["alpha"],
                                     "x1": sx(x), "y1": sy(y0), "x2": sx(x), "y2": sy(y1)})
    for y in range(y0, y1 + 1):
        ET.SubElement(grid, "line", {"class": "gamma", "stroke": GRID["gamma"],
                                     "x1": sx(x0), "y1": sy(y), "x2": sx(x1), "y2": sy(y)})
    for c in range(x0 + y0 + 1, x1 + y1):
        lo_x, hi_x = max(x0, c - y1), min(x1, c - y0)
        if lo_x >= hi_x:
            continue
        ET.SubElement(grid, "line", {"class": "beta", "stroke": GRID["beta"],
                                     "x1": sx(lo_x), "y1": sy(c - lo_x), "x2": sx(hi_x), "y2": sy(c - hi_x)})
    dots = ET.SubElement(svg, "g", {"id": "lattice", "fill": "#333333"})
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            ET.SubElement(dots, "circle", {"cx": sx(x), "cy": sy(y), "r": "3"})
    curves = ET.SubElement(svg, "g", {"id": "curves", "fill": "none", "stroke-width": "3"})
    for i, p in enumerate(ps):
        attrs = {
            "stroke": PALETTE[i % len(PALETTE)],
            "points": " ".join(f"{sx(x)},{sy(y)}" for x, y in p.points),
        }
        el = ET.SubElement(curves, "polyline", attrs)
        if labels is not None and i < len(labels):
            ET.SubElement(el, "title").text = labels[i]
    return ET.tostring(svg, encoding="unicode") + "\n"
