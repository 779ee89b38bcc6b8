"""Triangular domains in the annular neighbourhood of gamma_1.

The collar is drawn in its universal cover, the strip ``R x [0, 1]`` with
deck group the integer translations:

* gamma_1 is the core line ``r = 1/2``; the basepoint p sits at ``theta = 1/2``;
* alpha_1 crosses the collar along the vertical lines ``theta = j``;
* beta_1 crosses gamma_1 at Theta_1 = ``(EPS, 1/2)``.  Above the core (the
  ``S`` side) it meets alpha_1 once, at x_1.  Below (the ``-S`` side) it
  drifts ``m`` units, crossing alpha_1 at ``theta = 1 .. m`` when ``m > 0``
  and at ``theta = 0, -1, .. m + 1`` when ``m < 0``.

The point w lies outside the collar, so domains inside it never cover w.
A triangle with corners (Theta_1, y_1, z_1) runs along gamma_1 from Theta_1
to a lift of y_1, along alpha_1 to z_1 and back along beta_1; it is a domain
when it bounds with the triangle orientation and every region multiplicity
is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from shapely.geometry import LineString, Point, box
from shapely.ops import polygonize, unary_union

DEFAULT_BOUND = 16
EPS = 0.2  # Theta_1 sits just right of y_1
X_HEIGHT = 0.75


class WindingOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    label: str
    theta: float
    r: float
    sign: int  # +1 when beta_1 crosses the upward alpha_1 from left to right
    side: str  # "S" or "-S"


@dataclass(frozen=True)
class CollarDiagram:
    winding: int
    strands: tuple[Crossing, ...]
    points: dict = field(compare=False)
    marked: dict = field(compare=False)
    regions: tuple[str, ...] = field(compare=False, default=())

    @property
    def x1(self) -> Crossing:
        return next(c for c in self.strands if c.label == "x1")

    def negative_crossings_on_minus_side(self) -> int:
        return sum(1 for c in self.strands if c.side == "-S" and c.sign < 0)


@dataclass(frozen=True)
class TriangleDomain:
    corners: tuple[str, str, str]
    multiplicities: tuple[tuple[str, int], ...]
    n_p: int
    n_w: int

    @property
    def z(self) -> str:
        return self.corners[2]

    def to_json(self) -> dict:
        return {
            "corners": list(self.corners),
            "n_p": self.n_p,
            "n_w": self.n_w,
            "multiplicities": {k: v for k, v in self.multiplicities},
            "class": classify_domain(self),
        }


def _beta_polyline(m: int, shift: int = 0) -> list[tuple[float, float]]:
    top = (-0.4 + shift, 1.0)
    theta = (EPS + shift, 0.5)
    bottom = (EPS + m + shift, 0.0)
    return [top, theta, bottom]


def build_collar(m: int, bound: int = DEFAULT_BOUND) -> CollarDiagram:
    if abs(m) > bound:
        raise WindingOutOfRange(f"|{m}| exceeds the collar bound {bound}")
    strands = [Crossing("x1", 0.0, X_HEIGHT, -1, "S")]
    # lower beta from (EPS, 1/2) to (EPS + m, 0) meets theta = j at height r
    js = list(range(1, m + 1)) if m > 0 else list(range(0, m, -1))
    sign = 1 if m > 0 else -1
    for i, j in enumerate(js, start=1):
        t = (j - EPS) / m
        strands.append(Crossing(f"z{i}", float(j), 0.5 - 0.5 * t, sign, "-S"))
    d = CollarDiagram(
        winding=m,
        strands=tuple(strands),
        points={"y1": (0.0, 0.5), "Theta1": (EPS, 0.5), "x1": (0.0, X_HEIGHT)},
        marked={"p": (0.5, 0.5), "w": "outside the collar, beyond the S side"},
    )
    object.__setattr__(d, "regions", tuple(_regions(m)))
    _validate(d)
    return d


def _validate(d: CollarDiagram) -> None:
    xs = [c for c in d.strands if c.side == "S"]
    if len(xs) != 1:
        raise AssertionError("collar must have a single alpha/beta crossing on the S side")
    neg = d.negative_crossings_on_minus_side()
    if (neg > 0) != (d.winding <= -1):
        raise AssertionError("negative crossings on the -S side must appear exactly when m <= -1")


# ---------------------------------------------------------------------------
# regions of the collar and multiplicities


def _arrangement(m: int, lo: int, hi: int):
    lines = [LineString([(lo, 0.5), (hi, 0.5)])]
    for j in range(lo, hi + 1):
        lines.append(LineString([(j, 0.0), (j, 1.0)]))
    for k in range(lo - abs(m) - 2, hi + abs(m) + 3):
        lines.append(LineString(_beta_polyline(m, k)))
    frame = box(lo, 0.0, hi, 1.0)
    lines.append(frame.exterior)
    merged = unary_union([ln.intersection(frame) for ln in lines] + [frame.exterior])
    return [f for f in polygonize(merged) if f.area > 1e-12]


def _regions(m: int) -> list[str]:
    faces = _arrangement(m, 0, 1)
    return sorted(_canonical(m, f) for f in faces)


def _canonical(m: int, face) -> str:
    """Name of the collar region containing ``face`` (a face of the cover)."""
    p = face.representative_point()
    j = math.floor(p.x)
    base = _fundamental_faces(m)
    q = Point(p.x - j, p.y)
    for name, f in base:
        if f.covers(q):
            return name
    raise AssertionError("face does not project to a collar region")


_FUND_CACHE: dict[int, list] = {}


def _fundamental_faces(m: int):
    if m not in _FUND_CACHE:
        faces = _arrangement(m, 0, 1)
        faces.sort(key=lambda f: (f.representative_point().y > 0.5, f.centroid.x, f.centroid.y))
        named = []
        counts = {"S": 0, "mS": 0}
        for f in faces:
            side = "S" if f.representative_point().y > 0.5 else "mS"
            named.append((f"{side}{counts[side]}", f))
            counts[side] += 1
        _FUND_CACHE[m] = named
    return _FUND_CACHE[m]


def _winding(loop: list[tuple[float, float]], pt: tuple[float, float]) -> int:
    """Winding number of a closed polygonal loop around ``pt``."""
    x, y = pt
    w = 0
    n = len(loop)
    for i in range(n):
        x1, y1 = loop[i]
        x2, y2 = loop[(i + 1) % n]
        if y1 <= y < y2 and (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1) > 0:
            w += 1
        elif y2 <= y < y1 and (x2 - x1) * (y - y1) - (x - x1) * (y2 - y1) < 0:
            w -= 1
    return w


def _triangle_loop(m: int, z: Crossing) -> list[tuple[float, float]]:
    # beta_1 is straight from z_1 back to Theta_1 on either side of the core
    return [(EPS, 0.5), (z.theta, 0.5), (z.theta, z.r)]


def enumerate_triangles(d: CollarDiagram) -> list[TriangleDomain]:
    """All triangles (Theta_1, y_1, z_1) in the collar with nonnegative multiplicities."""
    m = d.winding
    lo = min(0, m) - 2
    hi = max(1, m) + 3
    faces = _arrangement(m, lo, hi)
    out = []
    for z in d.strands:
        loop = _triangle_loop(m, z)
        mult: dict[str, int] = {name: 0 for name, _ in _fundamental_faces(m)}
        # positive triangles run clockwise in this picture
        for f in faces:
            p = f.representative_point()
            w = -_winding(loop, (p.x, p.y))
            if w:
                mult[_canonical(m, f)] += w
        if any(v < 0 for v in mult.values()) or not any(mult.values()):
            continue
        n_p = _count_p(z.theta)
        n_w = 0  # w lies outside the strip, where every winding number vanishes
        out.append(
            TriangleDomain(
                corners=("Theta1", "y1", z.label),
                multiplicities=tuple(sorted((k, v) for k, v in mult.items() if v)),
                n_p=n_p,
                n_w=n_w,
            )
        )
    out.sort(key=lambda t: t.n_p)
    return out


def _count_p(j: float) -> int:
    # gamma path from Theta_1 (theta = EPS) to theta = j crosses the lifts of p at k + 1/2
    a, b = sorted((EPS, j))
    return sum(1 for k in range(math.floor(a) - 1, math.ceil(b) + 1) if a < k + 0.5 < b)


def classify_domain(t: TriangleDomain) -> str:
    if t.z == "x1" and t.n_p == 0:
        return "standard"
    return f"nonstandard({t.n_p})"


def winding_for_tau(tau) -> int:
    """Collar winding used for a given twist coefficient: its integer part."""
    return math.floor(tau)


def collar_report(m: int) -> dict:
    d = build_collar(m)
    tris = enumerate_triangles(d)
    return {
        "winding": m,
        "crossings": [
            {"label": c.label, "side": c.side, "sign": c.sign} for c in d.strands
        ],
        "triangles": [t.to_json() for t in tris],
    }
