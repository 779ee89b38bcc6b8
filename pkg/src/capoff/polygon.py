"""Identified-polygon model of a compact surface with boundary.

A surface with free fundamental group of rank N is cut along N disjoint
properly embedded arcs (the cut system) into a single disk.  The disk is a
polygon whose boundary alternates between 2N *sides* (the two copies of each
cut arc) and 2N *corners* (segments of the surface boundary).  Sides are
listed counter-clockwise; side ``g+`` and side ``g-`` are the two copies of
cut arc ``g`` and are glued with reversed orientation.

Curves and arcs are recorded by the sequence of cut arcs they cross.  A letter
``+g`` means "leave the polygon through side ``g+``", ``-g`` means "leave
through side ``g-``"; this is the free group on the cut arcs, dual to the
one-vertex spine of the surface.

Positions on the polygon circle are integers modulo ``4N``: side ``s`` sits at
``2s`` and the corner following it (between side ``s`` and ``s+1``) at
``2s + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence


class PolygonError(ValueError):
    pass


def parse_side(label: str) -> tuple[str, int]:
    if len(label) < 2 or label[-1] not in "+-":
        raise PolygonError(f"bad side label {label!r}")
    return label[:-1], (1 if label[-1] == "+" else -1)


@dataclass(frozen=True)
class Polygon:
    """The cut-open surface: side labels in counter-clockwise order."""

    sides: tuple[str, ...]
    letters: tuple[str, ...] = field(init=False)
    side_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        names: list[str] = []
        side_of: dict[tuple[int, int], int] = {}
        for s, label in enumerate(self.sides):
            name, sign = parse_side(label)
            if name not in names:
                names.append(name)
            g = names.index(name) + 1
            if (g, sign) in side_of:
                raise PolygonError(f"side {label!r} listed twice")
            side_of[(g, sign)] = s
        for g in range(1, len(names) + 1):
            if (g, 1) not in side_of or (g, -1) not in side_of:
                raise PolygonError(f"cut arc {names[g - 1]!r} must appear as both sides")
        object.__setattr__(self, "letters", tuple(names))
        object.__setattr__(self, "side_of", side_of)

    # -- basic combinatorics -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.letters)

    @property
    def nsides(self) -> int:
        return len(self.sides)

    @property
    def modulus(self) -> int:
        return 2 * len(self.sides)

    def letter_index(self, name: str) -> int:
        try:
            return self.letters.index(name) + 1
        except ValueError:
            raise PolygonError(f"unknown cut arc {name!r}") from None

    def partner(self, s: int) -> int:
        name, sign = parse_side(self.sides[s])
        return self.side_of[(self.letter_index(name), -sign)]

    def exit_side(self, letter: int) -> int:
        return self.side_of[(abs(letter), 1 if letter > 0 else -1)]

    def entry_side(self, letter: int) -> int:
        return self.side_of[(abs(letter), -1 if letter > 0 else 1)]

    def letter_leaving(self, s: int) -> int:
        """The letter recorded when a path leaves the polygon through side ``s``."""
        name, sign = parse_side(self.sides[s])
        return sign * self.letter_index(name)

    @staticmethod
    def side_pos(s: int) -> int:
        return 2 * s

    @staticmethod
    def corner_pos(j: int) -> int:
        return 2 * j + 1

    def ccw(self, start: int, end: int) -> int:
        """Counter-clockwise distance between two circle positions."""
        return (end - start) % self.modulus

    # -- boundary structure --------------------------------------------------

    def corner_successor(self, j: int) -> int:
        """Next corner met when following the surface boundary past corner ``j``."""
        return self.partner((j + 1) % self.nsides)

    def corner_predecessor(self, j: int) -> int:
        return (self.partner(j) - 1) % self.nsides

    def corner_cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        cycles = []
        for j0 in range(self.nsides):
            if j0 in seen:
                continue
            cyc = [j0]
            seen.add(j0)
            j = self.corner_successor(j0)
            while j != j0:
                cyc.append(j)
                seen.add(j)
                j = self.corner_successor(j)
            cycles.append(tuple(cyc))
        return cycles

    def boundary_cycle_of(self, j: int) -> tuple[int, ...]:
        for cyc in self.corner_cycles():
            if j in cyc:
                i = cyc.index(j)
                return cyc[i:] + cyc[:i]
        raise PolygonError(f"no corner {j}")

    def boundary_loop(self, j: int) -> list[int]:
        """Letters of the loop based at corner ``j`` running once along its boundary."""
        return [self.letter_leaving((c + 1) % self.nsides) for c in self.boundary_cycle_of(j)]

    def euler_characteristic(self) -> int:
        # the one-vertex spine has N edges
        return 1 - self.rank

    def euler_characteristic_cells(self) -> int:
        """Euler characteristic recounted from the glued polygon's cells.

        Vertices: endpoints of cut arcs after gluing (each lies on the boundary).
        Edges: cut arcs plus boundary segments.  Faces: the single polygon.
        """
        n = self.nsides
        # polygon corner-points are the 4N endpoints of sides/corner segments;
        # the endpoint between side s and corner s is glued to the start of partner(s)
        parent = list(range(2 * n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        # point 2s: start of side s, point 2s+1: end of side s
        for s in range(n):
            p = self.partner(s)
            for a, b in ((2 * s, 2 * p + 1), (2 * s + 1, 2 * p)):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        vertices = len({find(a) for a in range(2 * n)})
        edges = self.rank + n  # cut arcs + boundary segments
        return vertices - edges + 1


def validate_word(poly: Polygon, letters: Sequence[int]) -> None:
    for l in letters:
        if l == 0 or abs(l) > poly.rank:
            raise PolygonError(f"letter {l} is not a crossing of this cut system")
