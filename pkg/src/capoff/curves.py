"""Curves and arcs as crossing sequences on a cut system.

A closed curve is a cyclic word in the cut-arc letters, an arc is a linear
word together with the polygon corners holding its two endpoints.  Reduced
words are in minimal position with the cut system.

Drawing a family of reduced words in the polygon needs, for every cut arc, the
order in which the strands cross it.  That order is read off the universal
cover: two strands through the same cut arc are compared by the sequence of
turns they take until they part (``_Strand.ray``).  Strands placed this way
meet each other minimally, so counting crossing chords gives geometric
intersection numbers, and splicing a copy of ``c`` at each crossing with ``c``
realises the Dehn twist about ``c``.
"""

from __future__ import annotations

import contextlib
import contextvars
import functools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .polygon import Polygon, PolygonError, validate_word


class CurveError(ValueError):
    pass


class MalformedWord(CurveError):
    pass


class SurfaceMismatch(CurveError):
    pass


class EndpointMismatch(CurveError):
    pass


class WordLengthLimit(CurveError):
    def __init__(self, length: int, cap: int):
        super().__init__(f"reduced image has {length} letters, cap is {cap}")
        self.length = length
        self.cap = cap


class TruncationExhausted(CurveError):
    """A comparison needed more of a truncated word than was kept."""


DEFAULT_LENGTH_CAP = 10_000_000


_CAP_OVERRIDE: contextvars.ContextVar[int | None] = contextvars.ContextVar("length_cap", default=None)


def length_cap() -> int:
    override = _CAP_OVERRIDE.get()
    if override is not None:
        return override
    return int(os.environ.get("CAPOFF_LENGTH_CAP", DEFAULT_LENGTH_CAP))


@contextlib.contextmanager
def capped_length(cap: int | None):
    """Temporarily use ``cap`` as the word-length limit (``None`` keeps the current one)."""
    token = _CAP_OVERRIDE.set(cap if cap is not None else _CAP_OVERRIDE.get())
    try:
        yield
    finally:
        _CAP_OVERRIDE.reset(token)


# ---------------------------------------------------------------------------
# words


def free_reduce(letters: Sequence[int]) -> list[int]:
    out: list[int] = []
    for l in letters:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return out


def cyclic_reduce(letters: Sequence[int]) -> list[int]:
    w = free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def inverse(letters: Sequence[int]) -> list[int]:
    return [-l for l in reversed(letters)]


def _least_rotation(w: Sequence[int]) -> tuple[int, ...]:
    # Booth's algorithm would do; words here are short enough for the direct scan
    n = len(w)
    if n == 0:
        return ()
    key = lambda l: 2 * l if l > 0 else -2 * l + 1  # a < A < b < B ...
    k = [key(l) for l in w]
    best = min(range(n), key=lambda i: k[i:] + k[:i])
    return tuple(w[best:]) + tuple(w[:best])


def canonical_cyclic(letters: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of the unoriented cyclic word."""
    w = cyclic_reduce(letters)
    key = lambda t: [2 * l if l > 0 else -2 * l + 1 for l in t]
    return min(_least_rotation(w), _least_rotation(inverse(w)), key=key)


def primitive_root(letters: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Split a cyclically reduced word as ``root ** k`` with ``k`` maximal."""
    w = tuple(letters)
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d], n // d
    return w, 1


@dataclass(frozen=True)
class CurveWord:
    """A closed curve: cyclic sequence of signed cut-arc crossings."""

    surface: str
    letters: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class ArcWord:
    """A properly embedded arc from corner ``start`` to corner ``end``.

    Corners are polygon corners; each carries one marked point of the boundary
    component it belongs to.
    """

    surface: str
    letters: tuple[int, ...]
    start: int
    end: int

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class TruncatedArc:
    """Known prefix of an arc leaving corner ``start``; the rest is unknown."""

    surface: str
    letters: tuple[int, ...]
    start: int
    end: None = None

    def __len__(self) -> int:
        return len(self.letters)


# letters dropped from a truncated image, per letter of twisting block
TRUNCATION_MARGIN = 2

Curve = Union[CurveWord, ArcWord]


def _poly(surface: str) -> Polygon:
    from .catalog import polygon_for

    return polygon_for(surface)


def _check(obj: Curve) -> Polygon:
    poly = _poly(obj.surface)
    try:
        validate_word(poly, obj.letters)
    except PolygonError as exc:
        raise MalformedWord(str(exc)) from None
    if isinstance(obj, (ArcWord, TruncatedArc)):
        for j in (obj.start, obj.end) if isinstance(obj, ArcWord) else (obj.start,):
            if not 0 <= j < poly.nsides:
                raise MalformedWord(f"corner {j} does not exist")
    return poly


def reduce(obj: Curve) -> Curve:
    """Canonical reduced form (curves: unoriented cyclic canonical form)."""
    _check(obj)
    if isinstance(obj, CurveWord):
        return CurveWord(obj.surface, canonical_cyclic(obj.letters))
    return ArcWord(obj.surface, tuple(free_reduce(obj.letters)), obj.start, obj.end)


def slide_reduce(arc: ArcWord) -> ArcWord:
    """Remove half-bigons with the boundary by sliding endpoints along it.

    The result is the minimal-position representative for isotopies that move
    the endpoints within their boundary components.
    """
    poly = _check(arc)
    n = poly.nsides
    w = free_reduce(arc.letters)
    start, end = arc.start, arc.end
    changed = True
    while changed and w:
        changed = False
        s = poly.exit_side(w[0])
        if s == (start + 1) % n:
            start = poly.partner(s)
            w = w[1:]
            changed = True
        elif s == start:
            start = (poly.partner(s) - 1) % n
            w = w[1:]
            changed = True
        if not w:
            break
        s = poly.entry_side(w[-1])
        if s == (end + 1) % n:
            end = poly.partner(s)
            w = w[:-1]
            changed = True
        elif s == end:
            end = (poly.partner(s) - 1) % n
            w = w[:-1]
            changed = True
        w = free_reduce(w)
    return ArcWord(arc.surface, tuple(w), start, end)


def is_essential_arc(arc: ArcWord) -> bool:
    s = slide_reduce(arc)
    return bool(s.letters) or s.start != s.end


def arc_inverse(arc: ArcWord) -> ArcWord:
    return ArcWord(arc.surface, tuple(inverse(arc.letters)), arc.end, arc.start)


# ---------------------------------------------------------------------------
# strands: words drawn in the polygon


class _Strand:
    """A curve or arc prepared for drawing.

    ``truncated`` marks an arc prefix whose far end is unknown; rays running
    into the unknown part report ``None``.
    """

    __slots__ = ("poly", "letters", "closed", "start", "end", "truncated", "entry", "exit", "n", "M")

    def __init__(self, poly: Polygon, obj: Curve, truncated: bool = False):
        self.poly = poly
        self.letters = obj.letters
        self.closed = isinstance(obj, CurveWord)
        self.start = None if self.closed else poly.corner_pos(obj.start)
        truncated = truncated or isinstance(obj, TruncatedArc)
        self.end = None if self.closed or truncated else poly.corner_pos(obj.end)
        self.truncated = truncated
        self.entry = [2 * poly.entry_side(l) for l in obj.letters]
        self.exit = [2 * poly.exit_side(l) for l in obj.letters]
        self.n = len(obj.letters)
        self.M = poly.modulus

    # chords: pairs of circle positions; side positions refer to the crossing
    # point of a letter and are resolved to exact keys by the drawing
    def chords(self) -> list[tuple[tuple, tuple]]:
        """Chords as ``((kind, index), (kind, index))`` endpoint descriptors.

        kind ``"x"``/``"n"``: the exit/entry point of letter ``index``;
        kind ``"s"``/``"e"``: start/end corner of an arc.
        """
        n = self.n
        if self.closed:
            return [(("n", i), ("x", (i + 1) % n)) for i in range(n)]
        out = []
        if n == 0 and self.truncated:
            return out
        out.append((("s", 0), ("x", 0) if n else ("e", 0)))
        for i in range(n):
            if i + 1 < n:
                out.append((("n", i), ("x", i + 1)))
            elif not self.truncated:
                out.append((("n", i), ("e", 0)))
        return out

    def forward(self, i: int) -> Iterator[int | None]:
        """Turns taken after crossing letter ``i`` going forward."""
        M, n = self.M, self.n
        entry, exit_ = self.entry, self.exit
        if self.closed:
            t = i
            while True:
                nxt = (t + 1) % n
                yield (exit_[nxt] - entry[t]) % M
                t = nxt
        t = i
        while True:
            if t + 1 < n:
                yield (exit_[t + 1] - entry[t]) % M
                t += 1
            else:
                if self.truncated:
                    yield None
                else:
                    yield (self.end - entry[t]) % M
                return

    def backward(self, i: int) -> Iterator[int | None]:
        M, n = self.M, self.n
        entry, exit_ = self.entry, self.exit
        if self.closed:
            t = i
            while True:
                prv = (t - 1) % n
                yield (entry[prv] - exit_[t]) % M
                t = prv
        t = i
        while True:
            if t > 0:
                yield (entry[t - 1] - exit_[t]) % M
                t -= 1
            else:
                yield (self.start - exit_[t]) % M
                return

    def from_start(self) -> Iterator[int | None]:
        M = self.M
        if self.n == 0:
            if self.truncated:
                yield None
            else:
                yield (self.end - self.start) % M
            return
        yield (self.exit[0] - self.start) % M
        yield from self.forward(0)

    def from_end(self) -> Iterator[int | None]:
        M = self.M
        if self.n == 0:
            yield (self.start - self.end) % M
            return
        yield (self.entry[-1] - self.end) % M
        yield from self.backward(self.n - 1)

    def plus_ray(self, i: int) -> Iterator[int | None]:
        # the point of letter i seen from the polygon copy holding side g+
        return self.backward(i) if self.letters[i] > 0 else self.forward(i)

    def minus_ray(self, i: int) -> Iterator[int | None]:
        return self.forward(i) if self.letters[i] > 0 else self.backward(i)


def _compare_rays(r1: Iterator[int | None], r2: Iterator[int | None], limit: int) -> int | None:
    """Lexicographic comparison of turn sequences.

    Returns -1, 0 (equal through ``limit`` turns or both ended) or 1, and
    ``None`` when a truncated ray ran out before the two parted.
    """
    for _ in range(limit):
        a = next(r1, "end")
        b = next(r2, "end")
        if a is None or b is None:
            return None
        if a == "end" or b == "end":
            if a == b:
                return 0
            # a finished ray ends on a corner; the other one took a turn there
            raise AssertionError("ray ended without a corner turn")
        if a != b:
            return -1 if a < b else 1
    return 0


class Drawing:
    """Several strands drawn together in minimal position."""

    def __init__(self, poly: Polygon, strands: Sequence[_Strand], place: bool = True):
        self.poly = poly
        self.strands = list(strands)
        self._keys: dict[tuple[int, str, int], tuple[int, float]] = {}
        if place:
            self._place()

    def _limit(self, a: _Strand, b: _Strand) -> int:
        return a.n + b.n + 4

    def _cmp_points(self, p: tuple[int, int], q: tuple[int, int]) -> int:
        # ascending order of position along the side g+ (counter-clockwise)
        (sa, ia), (sb, ib) = p, q
        A, B = self.strands[sa], self.strands[sb]
        lim = self._limit(A, B)
        plus = -(_compare_rays(A.plus_ray(ia), B.plus_ray(ib), lim) or 0)
        minus = _compare_rays(A.minus_ray(ia), B.minus_ray(ib), lim) or 0
        if not plus or not minus or plus == minus:
            return plus or minus or (-1 if p < q else (1 if p > q else 0))
        # The strands cross somewhere along their shared stretch.  Decide by
        # one physical end for the whole stretch, or the crossing would be
        # drawn once per change of letter sign along it.
        la, lb = A.letters[ia], B.letters[ib]
        if sa != sb:
            ref = la if sa < sb else lb
        elif (la > 0) == (lb > 0):
            ref = la
        else:
            return plus
        return plus if ref < 0 else minus

    def _cmp_corner(self, p: tuple[int, str], q: tuple[int, str]) -> int:
        (sa, ka), (sb, kb) = p, q
        A, B = self.strands[sa], self.strands[sb]
        ra = A.from_start() if ka == "s" else A.from_end()
        rb = B.from_start() if kb == "s" else B.from_end()
        c = _compare_rays(ra, rb, self._limit(A, B))
        if c:
            return -c
        return -1 if p < q else (1 if p > q else 0)

    def _place(self) -> None:
        poly = self.poly
        on_arc: dict[int, list[tuple[int, int]]] = {}
        at_corner: dict[int, list[tuple[int, str]]] = {}
        for si, st in enumerate(self.strands):
            for i, l in enumerate(st.letters):
                on_arc.setdefault(abs(l), []).append((si, i))
            if not st.closed:
                at_corner.setdefault(st.start, []).append((si, "s"))
                if not st.truncated:
                    at_corner.setdefault(st.end, []).append((si, "e"))
        for g, pts in on_arc.items():
            pts.sort(key=functools.cmp_to_key(self._cmp_points))
            plus = 2 * poly.side_of[(g, 1)]
            minus = 2 * poly.side_of[(g, -1)]
            m = len(pts)
            for rank, (si, i) in enumerate(pts):
                l = self.strands[si].letters[i]
                kp, km = (plus, rank), (minus, m - 1 - rank)
                # the crossing point of letter l is its exit point on one side
                # and its entry point on the other
                if l > 0:
                    self._keys[(si, "x", i)] = kp
                    self._keys[(si, "n", i)] = km
                else:
                    self._keys[(si, "x", i)] = km
                    self._keys[(si, "n", i)] = kp
        for pos, pts in at_corner.items():
            pts.sort(key=functools.cmp_to_key(self._cmp_corner))
            for rank, (si, k) in enumerate(pts):
                self._keys[(si, k, 0)] = (pos, rank)

    def _position(self, si: int, desc: tuple[str, int]) -> int:
        st = self.strands[si]
        kind, i = desc
        if kind == "x":
            return st.exit[i]
        if kind == "n":
            return st.entry[i]
        return st.start if kind == "s" else st.end

    def _before(self, u: tuple[int, tuple[str, int]], v: tuple[int, tuple[str, int]]) -> bool:
        """Whether endpoint ``u`` precedes ``v`` counter-clockwise from position 0."""
        (su, du), (sv, dv) = u, v
        pu, pv = self._position(su, du), self._position(sv, dv)
        if pu != pv:
            return pu < pv
        if du[0] in "se":
            return self._cmp_corner((su, du[0]), (sv, dv[0])) < 0
        c = self._cmp_points((su, du[1]), (sv, dv[1]))
        g = abs(self.strands[su].letters[du[1]])
        return c < 0 if pu == 2 * self.poly.side_of[(g, 1)] else c > 0

    def crossings_between(self, a: int, b: int) -> int:
        """Crossings of strands ``a`` and ``b``, decided pair by pair.

        Only the relative order of one point of each strand is ever needed,
        so no global order along a side is built.
        """
        total = 0
        for x1, x2 in self.strands[a].chords():
            u1, u2 = (a, x1), (a, x2)
            if self._before(u2, u1):
                u1, u2 = u2, u1
            for y1, y2 in self.strands[b].chords():
                v1, v2 = (b, y1), (b, y2)
                in1 = self._before(u1, v1) and self._before(v1, u2)
                in2 = self._before(u1, v2) and self._before(v2, u2)
                total += in1 != in2
        return total

    def key(self, si: int, desc: tuple[str, int]) -> tuple[int, float]:
        return self._keys[(si, desc[0], desc[1])]

    def chord_keys(self, si: int) -> list[tuple[tuple, tuple]]:
        return [(self.key(si, a), self.key(si, b)) for a, b in self.strands[si].chords()]


def _interleave(a: tuple, b: tuple, c: tuple, d: tuple) -> bool:
    if a > b:
        a, b = b, a
    return (a < c < b) != (a < d < b)


def _count_crossings(ch1: Sequence[tuple], ch2: Sequence[tuple]) -> int:
    total = 0
    for a, b in ch1:
        lo, hi = (a, b) if a < b else (b, a)
        for c, d in ch2:
            if (lo < c < hi) != (lo < d < hi):
                total += 1
    return total


def _same_class(x: Curve, y: Curve) -> bool:
    if isinstance(x, CurveWord) and isinstance(y, CurveWord):
        return canonical_cyclic(x.letters) == canonical_cyclic(y.letters)
    if isinstance(x, ArcWord) and isinstance(y, ArcWord):
        return x == y or x == arc_inverse(y)
    return False


def _minimal(obj: Curve) -> Curve:
    if isinstance(obj, CurveWord):
        return CurveWord(obj.surface, tuple(cyclic_reduce(obj.letters)))
    return slide_reduce(obj)


def geometric_intersection(x: Curve, y: Curve) -> int:
    """Minimal number of transverse intersections of the two isotopy classes.

    Arcs are isotoped with their endpoints free to move along the boundary.
    Curves may be non-simple; proper powers count with multiplicity.
    """
    if x.surface != y.surface:
        raise SurfaceMismatch(f"{x.surface} vs {y.surface}")
    poly = _check(x)
    _check(y)
    x, y = _minimal(x), _minimal(y)
    if _same_class(x, y):
        return 0
    if isinstance(x, CurveWord) and not x.letters or isinstance(y, CurveWord) and not y.letters:
        return 0
    d = Drawing(poly, [_Strand(poly, x), _Strand(poly, y)], place=False)
    return d.crossings_between(0, 1)


def self_intersection(x: Curve) -> int:
    """Crossings of a word drawn against itself in minimal position."""
    poly = _check(x)
    x = _minimal(x)
    if isinstance(x, CurveWord):
        root, _ = primitive_root(_least_rotation(x.letters))
        x = CurveWord(x.surface, root)
    d = Drawing(poly, [_Strand(poly, x)])
    ch = d.chord_keys(0)
    total = 0
    for i in range(len(ch)):
        total += _count_crossings(ch[i : i + 1], ch[i + 1 :])
    return total


def is_simple(x: Curve) -> bool:
    if isinstance(x, CurveWord):
        w = cyclic_reduce(x.letters)
        if not w or primitive_root(_least_rotation(w))[1] != 1:
            return False
    return self_intersection(x) == 0


# ---------------------------------------------------------------------------
# Dehn twists


@functools.lru_cache(maxsize=256)
def _twister(poly_sides: tuple[str, ...], surface: str, letters: tuple[int, ...]):
    poly = _poly(surface)
    c = CurveWord(surface, letters)
    st = _Strand(poly, c)
    d = Drawing(poly, [st])
    per_arc: dict[int, list[int]] = {}
    for i, l in enumerate(letters):
        per_arc.setdefault(abs(l), []).append(i)
    # order of c's points along each cut arc
    order: dict[int, list[int]] = {}
    for g, idx in per_arc.items():
        plus = 2 * poly.side_of[(g, 1)]
        ranked = []
        for i in idx:
            k = d.key(0, ("x", i)) if letters[i] > 0 else d.key(0, ("n", i))
            assert k[0] == plus
            ranked.append((k[1], i))
        order[g] = [i for _, i in sorted(ranked)]
    return st, d.chord_keys(0), order


class _Uncertain(Exception):
    """The position of a letter depends on the unknown tail of a truncated arc."""


def _slot(obj_st: _Strand, i: int, c_st: _Strand, c_order: list[int]) -> int:
    """Number of c-points lying before letter ``i`` of the object along g+."""
    lim = obj_st.n + c_st.n + 4
    lo, hi = 0, len(c_order)
    while lo < hi:
        mid = (lo + hi) // 2
        j = c_order[mid]
        c = _compare_rays(obj_st.plus_ray(i), c_st.plus_ray(j), lim)
        if c is None:
            raise _Uncertain(i)
        if not c:
            c = _compare_rays(obj_st.minus_ray(i), c_st.minus_ray(j), lim)
            if c is None:
                raise _Uncertain(i)
            c = -c
            if not c:
                c = 1  # parallel to c: any side gives a valid drawing
        # c < 0: object's plus ray smaller, i.e. object further along g+
        if c < 0:
            lo = mid + 1
        else:
            hi = mid
    return lo


def twist(obj, curve: CurveWord, power: int = 1):
    """Image of ``obj`` under ``power`` right-handed Dehn twists about ``curve``.

    A ``TruncatedArc`` maps to the longest prefix of its image that the known
    letters determine, less a safety margin for cancellation with the tail.
    """
    if obj.surface != curve.surface:
        raise SurfaceMismatch(f"{obj.surface} vs {curve.surface}")
    poly = _poly(obj.surface)
    if power == 0 or not curve.letters or not obj.letters and isinstance(obj, CurveWord):
        return obj
    c_letters = tuple(cyclic_reduce(curve.letters))
    c_st, c_chords, c_order = _twister(poly.sides, curve.surface, c_letters)
    L = len(c_letters)
    truncated = isinstance(obj, TruncatedArc)
    x_st = _Strand(poly, obj)
    M = poly.modulus

    slots: dict[int, int] = {}

    # circle keys of the object's points, interleaved with c's points
    def key(desc: tuple[str, int]) -> tuple:
        kind, i = desc
        if kind in ("s", "e"):
            return ((x_st.start if kind == "s" else x_st.end), 0.0)
        l = x_st.letters[i]
        g = abs(l)
        order = c_order.get(g)
        m = len(order) if order else 0
        if i not in slots:
            slots[i] = _slot(x_st, i, c_st, order) if order else 0
        slot = slots[i]
        plus = 2 * poly.side_of[(g, 1)]
        minus = 2 * poly.side_of[(g, -1)]
        on_plus = (kind == "x") == (l > 0)
        if on_plus:
            return (plus, slot - 0.5)
        return (minus, (m - 1) - (slot - 0.5))

    fwd_blocks = []
    for j in range(L):
        rot = c_letters[j + 1 :] + c_letters[: j + 1]
        fwd_blocks.append(rot)
    c_pairs = []
    for j, (a, b) in enumerate(c_chords):
        c_pairs.append((a, b, j))

    out: list[int] = []
    chords = x_st.chords()
    n = x_st.n
    sign = 1 if power > 0 else -1
    reps = abs(power)

    def splice(P: tuple, Q: tuple) -> None:
        hits = []
        for a, b, j in c_pairs:
            if _interleave(P, Q, a, b):
                # endpoint on the counter-clockwise arc from P to Q is to the right
                right = a if _ccw_between(P, a, Q) else b
                hits.append((_ccw_dist(P, right, M), j, right == b))
        hits.sort()
        for _, j, fwd in hits:
            go_forward = fwd if sign > 0 else not fwd
            if go_forward:
                block = fwd_blocks[j]
            else:
                block = tuple(-l for l in reversed(fwd_blocks[j]))
            for _ in range(reps):
                out.extend(block)

    if isinstance(obj, CurveWord):
        keyed = [(key(a), key(b)) for a, b in chords]
        for i in range(n):
            out.append(x_st.letters[i])
            splice(*keyed[i])
        red = cyclic_reduce(out)
        _cap(len(red))
        return CurveWord(obj.surface, tuple(red))
    cut = truncated
    if not chords:
        return obj
    try:
        splice(key(chords[0][0]), key(chords[0][1]))
        for i in range(n):
            out.append(x_st.letters[i])
            if i + 1 < len(chords):
                a, b = chords[i + 1]
                splice(key(a), key(b))
    except _Uncertain:
        cut = True
    red = free_reduce(out)
    if cut:
        # the unknown tail may cancel into the end of the known part
        red = red[: max(0, len(red) - TRUNCATION_MARGIN * (abs(power) * L + 1))]
    _cap(len(red))
    if cut:
        return TruncatedArc(obj.surface, tuple(red), obj.start)
    return ArcWord(obj.surface, tuple(red), obj.start, obj.end)


def _cap(n: int) -> None:
    cap = length_cap()
    if n > cap:
        raise WordLengthLimit(n, cap)


def _ccw_between(P: tuple, X: tuple, Q: tuple) -> bool:
    """True if X lies on the open counter-clockwise arc from P to Q."""
    if P < Q:
        return P < X < Q
    return X > P or X < Q


def _ccw_dist(P: tuple, X: tuple, M: int) -> tuple:
    # counter-clockwise offset from P to X as a sortable tuple
    if X > P:
        return (0, X)
    return (1, X)


# ---------------------------------------------------------------------------
# collar winding


def _arc_from(arc: ArcWord, corner: int) -> ArcWord:
    if arc.start == corner:
        return arc
    if arc.end == corner:
        return arc_inverse(arc)
    raise EndpointMismatch(f"arc does not end at corner {corner}")


def _compare_arcs(poly: Polygon, x: ArcWord, y: ArcWord, x_truncated: bool = False) -> int:
    """Order of two arcs leaving the same corner, read in the universal cover."""
    sx = _Strand(poly, x, truncated=x_truncated)
    sy = _Strand(poly, y)
    c = _compare_rays(sx.from_start(), sy.from_start(), sx.n + sy.n + 4)
    if c is None:
        raise TruncationExhausted("arc prefix too short to compare")
    return c


def collar_intersection(image, base: ArcWord, boundary: str) -> int:
    """Winding of ``image`` relative to ``base`` in the collar of ``boundary``.

    With ``L`` the collar loop (so that the positive boundary twist sends
    ``base`` to ``L base``) let ``m`` be the largest integer with
    ``L^m base <= image`` in the order of arcs leaving the marked point.  The
    signed number of crossings with ``base`` inside the collar is ``m`` for
    ``m >= 0`` and ``m + 1`` for negative ``m`` (``m`` if the image is exactly
    ``L^m base``): partial turns do not cross.
    ``image`` may be a ``TruncatedArc``; comparisons that need its unknown
    tail raise ``TruncationExhausted``.
    """
    from .surface import _load_unchecked

    if image.surface != base.surface:
        raise SurfaceMismatch(f"{image.surface} vs {base.surface}")
    model = _load_unchecked(image.surface)
    model.check_boundary(boundary)
    poly = model.polygon
    j = model.boundary_corner[boundary]
    truncated = isinstance(image, TruncatedArc)
    if truncated:
        if image.start != j:
            raise EndpointMismatch(f"truncated image must start on {boundary}")
        img = image
    else:
        img = _arc_from(image, j)
    b = _arc_from(base, j)
    loop = list(model.collar_loops[boundary])
    inv = [-l for l in reversed(loop)]

    def shifted(m: int) -> ArcWord:
        pre = loop * m if m >= 0 else inv * (-m)
        return ArcWord(b.surface, tuple(free_reduce(pre + list(b.letters))), b.start, b.end)

    def below(m: int) -> bool:
        # L^m base <= image
        return _compare_arcs(poly, img, shifted(m), truncated) * _orientation(model, boundary) >= 0

    if below(0):
        m = 0
        while below(m + 1):
            m += 1
        return m
    m = -1
    while not below(m):
        m -= 1
    # image lies in [L^m base, L^(m+1) base): unless it equals L^m base it only
    # completes |m + 1| turns, and crossings are what the collar count sees
    if _compare_arcs(poly, img, shifted(m)) != 0:
        m += 1
    return m


def _orientation(model, boundary: str) -> int:
    """+1 if the arc order increases along the collar loop, else -1."""
    key = (model.id, boundary)
    if key not in _ORIENTATION:
        _ORIENTATION[key] = _find_orientation(model, boundary)
    return _ORIENTATION[key]


_ORIENTATION: dict[tuple[str, str], int] = {}


def _find_orientation(model, boundary: str) -> int:
    j = model.boundary_corner[boundary]
    b = _arc_from(model.test_arcs[boundary], j)
    loop = list(model.collar_loops[boundary])
    moved = ArcWord(b.surface, tuple(free_reduce(loop + list(b.letters))), b.start, b.end)
    c = _compare_arcs(model.polygon, moved, b)
    if c == 0:
        raise CurveError("collar loop does not move the test arc")
    return c
