"""Complementary regions of a family of curves drawn in minimal position.

The strands are drawn as straight chords of a round model of the polygon;
the faces of that arrangement are glued back across the cut arcs.  Each
component of the complement is an open surface whose Euler characteristic is
``faces - glued segments``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from shapely.geometry import LineString, Point
from shapely.ops import polygonize, unary_union

from .curves import CurveWord, Drawing, _Strand, cyclic_reduce, geometric_intersection
from .surface import SurfaceModel


@dataclass(frozen=True)
class Component:
    faces: int
    glued: int
    boundaries: frozenset[str]

    @property
    def euler_characteristic(self) -> int:
        return self.faces - self.glued

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1 and not self.boundaries

    @property
    def is_peripheral_annulus(self) -> bool:
        return self.euler_characteristic == 0 and len(self.boundaries) == 1


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def complement_components(model: SurfaceModel, curves: list[CurveWord]) -> list[Component]:
    poly = model.polygon
    n = poly.nsides
    words = [CurveWord(c.surface, tuple(cyclic_reduce(c.letters))) for c in curves]
    words = [w for w in words if w.letters]
    drawing = Drawing(poly, [_Strand(poly, w) for w in words])

    # points on each side, by rank
    count = {s: 0 for s in range(n)}
    chords = []
    for si in range(len(words)):
        for a, b in drawing.chord_keys(si):
            chords.append((a, b))
            for pos, rank in (a, b):
                s = pos // 2
                count[s] = max(count[s], int(rank) + 1)

    # angular layout: side s then corner s, each side twice as wide as a corner
    unit = 2 * math.pi / (3 * n)
    jitter = 1e-4

    def side_angle(s: int, t: float) -> float:
        return 3 * s * unit + 2 * unit * t

    def point_angle(key: tuple[int, float]) -> float:
        pos, rank = key
        s = pos // 2
        m = count[s]
        # irregular offsets keep three chords from meeting in one point
        t = (rank + 1) / (m + 1) + jitter * math.sin(7.3 * (pos + 1) * (rank + 2))
        return side_angle(s, t)

    def at(theta: float, r: float = 1.0) -> tuple[float, float]:
        return (r * math.cos(theta), r * math.sin(theta))

    ring_angles = []
    for s in range(n):
        m = count[s]
        ring_angles.append(side_angle(s, 0.0))
        for rank in range(m):
            ring_angles.append(point_angle((2 * s, rank)))
        ring_angles.append(side_angle(s, 1.0))
        ring_angles.append((3 * s + 2.5) * unit)  # middle of corner s
    ring = [at(t) for t in ring_angles]
    lines = [LineString(ring + [ring[0]])]
    for a, b in chords:
        lines.append(LineString([at(point_angle(a)), at(point_angle(b))]))
    faces = list(polygonize(unary_union(lines)))

    def face_near(theta: float) -> int:
        p = Point(at(theta, 1 - 1e-7))
        for i, f in enumerate(faces):
            if f.covers(p):
                return i
        return min(range(len(faces)), key=lambda i: faces[i].distance(p))

    def segment_face(s: int, i: int) -> int:
        # segment i of side s lies between point i-1 and point i (ends: side ends)
        m = count[s]
        lo = side_angle(s, 0.0) if i == 0 else point_angle((2 * s, i - 1))
        hi = side_angle(s, 1.0) if i == m else point_angle((2 * s, i))
        return face_near((lo + hi) / 2)

    uf = _UnionFind(len(faces))
    glue_edges = []
    for g in range(1, poly.rank + 1):
        sp, sm = poly.side_of[(g, 1)], poly.side_of[(g, -1)]
        m = count[sp]
        for i in range(m + 1):
            fa, fb = segment_face(sp, i), segment_face(sm, m - i)
            glue_edges.append((fa, fb))
            uf.union(fa, fb)

    boundary_of = {}
    for b in model.boundaries:
        for j in poly.boundary_cycle_of(model.boundary_corner[b]):
            boundary_of[j] = b
    corner_face = {j: face_near((3 * j + 2.5) * unit) for j in range(n)}

    comps: dict[int, dict] = {}
    for i in range(len(faces)):
        comps.setdefault(uf.find(i), {"faces": 0, "glued": 0, "boundaries": set()})["faces"] += 1
    for fa, _ in glue_edges:
        comps[uf.find(fa)]["glued"] += 1
    for j, f in corner_face.items():
        comps[uf.find(f)]["boundaries"].add(boundary_of[j])
    return [Component(c["faces"], c["glued"], frozenset(c["boundaries"])) for c in comps.values()]


def fills_by_traversal(model: SurfaceModel, curves: list[CurveWord]) -> bool:
    """Every complementary component is a disk or an annulus around one boundary."""
    comps = complement_components(model, curves)
    return all(c.is_disk or c.is_peripheral_annulus for c in comps)


def fills_by_euler(model: SurfaceModel, curves: list[CurveWord]) -> bool:
    """Euler-characteristic accounting on the surface with its boundary capped off.

    The union of the curves is a 4-valent graph with V crossings and 2V edges,
    so ``V - 2V + F >= 2 - 2g`` with equality exactly when every face of the
    capped surface is a disk.  Filling also needs at most one boundary per face.
    """
    words = [c for c in curves if cyclic_reduce(c.letters)]
    v = 0
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            v += geometric_intersection(words[i], words[j])
    comps = complement_components(model, curves)
    f = len(comps)
    return f - v == 2 - 2 * model.genus and all(len(c.boundaries) <= 1 for c in comps)
