"""Independent intersection counter used to cross-check the curve engine.

Each passage through the polygon is a visit ``(in, out)`` of two circle
positions.  Two words cross once per linked pair: a transverse visit whose
chords interleave, or a maximal shared stretch whose two ends put the strands
on opposite sides.  Nothing here uses strand orderings.
"""

from __future__ import annotations

from .curves import (
    ArcWord, CurveWord, arc_inverse, canonical_cyclic, cyclic_reduce, free_reduce, inverse, primitive_root,
    slide_reduce,
)
from .catalog import polygon_for
from .polygon import Polygon


def _visits(poly: Polygon, obj) -> tuple[list[tuple[int, int]], bool]:
    """Visits of a reduced word and whether they wrap around cyclically."""
    if isinstance(obj, CurveWord):
        w = cyclic_reduce(obj.letters)
        n = len(w)
        return [
            (poly.side_pos(poly.entry_side(w[i - 1])), poly.side_pos(poly.exit_side(w[i])))
            for i in range(n)
        ], True
    w = free_reduce(obj.letters)
    ins = [poly.corner_pos(obj.start)] + [poly.side_pos(poly.entry_side(x)) for x in w]
    outs = [poly.side_pos(poly.exit_side(x)) for x in w] + [poly.corner_pos(obj.end)]
    return list(zip(ins, outs)), False


def _reverse(v: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(b, a) for a, b in reversed(v)]


def _interleave(m: int, a: int, b: int, c: int, d: int) -> bool:
    def between(p, lo, hi):
        return 0 < (p - lo) % m < (hi - lo) % m

    return between(c, a, b) != between(d, a, b)


def _stretch_crosses(poly: Polygon, vx, vy, i, j, cyc_x, cyc_y) -> int:
    """Crossing count of the shared stretch starting at visits i, j (0 or 1)."""
    s = vx[i][1]
    left_start = poly.ccw(s, vx[i][0]) < poly.ccw(s, vy[j][0])
    nx, ny = len(vx), len(vy)
    steps = 0
    while True:
        steps += 1
        if steps > 2 * (nx + ny) + 2:
            return 0  # never diverges: same underlying curve
        if not cyc_x and i + 1 >= nx or not cyc_y and j + 1 >= ny:
            return 0
        i, j = (i + 1) % nx, (j + 1) % ny
        ox, oy = vx[i][1], vy[j][1]
        if ox != oy:
            s2 = vx[i][0]
            left_end = poly.ccw(s2, ox) > poly.ccw(s2, oy)
            return int(left_start != left_end)
        if ox % 2:
            return 0  # both end at the same corner; endpoints slide apart


def _count_pass(poly: Polygon, vx, cx, vy, cy, transverse: bool) -> int:
    m = poly.modulus
    total = 0
    for i, (a, b) in enumerate(vx):
        for j, (c, d) in enumerate(vy):
            pts = {a, b, c, d}
            if len(pts) == 4:
                if transverse and _interleave(m, a, b, c, d):
                    total += 1
                continue
            if b == d and a != c and not b % 2:
                total += _stretch_crosses(poly, vx, vy, i, j, cx, cy)
    return total


def traced_intersection(x, y) -> int:
    """Geometric intersection number by counting linked pairs.

    A class against itself counts 0, as in the engine.
    """
    poly = polygon_for(x.surface)
    if isinstance(x, ArcWord):
        x = slide_reduce(x)
    if isinstance(y, ArcWord):
        y = slide_reduce(y)
        if x == y or x == slide_reduce(arc_inverse(y)):
            return 0
    if isinstance(x, CurveWord) and isinstance(y, CurveWord):
        rx = primitive_root(canonical_cyclic(cyclic_reduce(x.letters)))[0]
        ry = primitive_root(canonical_cyclic(cyclic_reduce(y.letters)))[0]
        if not rx or not ry or rx == ry or rx == canonical_cyclic(inverse(ry)):
            return 0
    vx, cx = _visits(poly, x)
    vy, cy = _visits(poly, y)
    if not vx or not vy:
        return 0
    return _count_pass(poly, vx, cx, vy, cy, True) + _count_pass(poly, vx, cx, _reverse(vy), cy, False)
