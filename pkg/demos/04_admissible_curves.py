"""
Drawing reflections as curves on the triangulated plane.

The plane is cut by three line families (x = const, x + y = const,
y = const), labelled by a permutation sigma. A curve between lattice
points spells a word by the families it crosses; palindromic odd words
are exactly the reflections. This script finds pairwise non-crossing
curves for the reflections of Q after w = [1] and writes an SVG.
"""

from __future__ import annotations

import sys
from pathlib import Path

from cvectors import Q233
from cvectors.coxeter import reflections_along
from cvectors.curves import FamilyLabeling, crossing_word, curves_for_reflections, non_crossing, render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "curves_q_w1.svg")
lab = FamilyLabeling((2, 1, 3))

for w in ([1], [1, 2], [1, 2, 3]):
    t, _ = reflections_along(Q233, w)
    ps = curves_for_reflections(t, lab)
    print(f"w = {w}")
    for i, p in enumerate(ps, 1):
        pts = ", ".join(f"({x},{y})" for x, y in p.points)
        print(f"  eta_{i}: word {list(crossing_word(p, lab))}  via {pts}")
    print(f"  pairwise non-crossing: {non_crossing(ps)}")

t, _ = reflections_along(Q233, [1])
out.write_text(render_svg(curves_for_reflections(t, lab), labels=["eta_1", "eta_2", "eta_3"]))
print(f"\nwrote {out}")
