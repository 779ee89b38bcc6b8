"""Fractional Dehn twist coefficients.

Planar surfaces use the closed form (the mapping class group is generated by
boundary twists).  Elsewhere the collar winding ``c_k`` of the k-th iterate
on the boundary's test arc satisfies ``|c_k - k tau| <= 1``; intersecting the
intervals ``[(c_k - 1)/k, (c_k + 1)/k]`` for k = 1, 2, 4, ... and pinning the
unique rational of bounded denominator gives tau exactly.

Iterates of pseudo-Anosov words grow exponentially, but ``c_k`` only depends
on a prefix of the image arc: the iteration keeps a prefix and doubles its
length whenever a comparison runs past the known letters.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .action import apply_rewrites
from .curves import (
    ArcWord,
    TruncatedArc,
    TruncationExhausted,
    WordLengthLimit,
    capped_length,
    collar_intersection,
    length_cap,
    twist,
)
from .surface import SurfaceModel, load_surface
from .words import TwistWord

DEFAULT_K_MAX = 16
DEFAULT_DENOM_BOUND = 8
INITIAL_PREFIX = 256


class Unresolved(Exception):
    """No unique rational was pinned; ``result`` carries the certified interval."""

    def __init__(self, result: "FdtcResult"):
        lo, hi = result.interval
        super().__init__(f"tau in [{lo}, {hi}] after k = {result.k_used}")
        self.result = result


@dataclass(frozen=True)
class Ambiguous:
    candidates: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class FdtcResult:
    value: Fraction | None
    interval: tuple[Fraction, Fraction]
    k_used: int
    method: str
    measurements: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def resolved(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        if self.value is not None:
            return {"tau": _frac_json(self.value)}
        lo, hi = self.interval
        return {"interval": [_frac_json(lo), _frac_json(hi)], "k_used": self.k_used}

    @classmethod
    def from_json(cls, data: dict) -> "FdtcResult":
        if "tau" in data:
            v = _frac_from(data["tau"])
            return cls(v, (v, v), 0, "stored")
        lo, hi = (_frac_from(x) for x in data["interval"])
        return cls(None, (lo, hi), int(data["k_used"]), "stored")

    def shifted(self, n: int) -> "FdtcResult":
        lo, hi = self.interval
        v = None if self.value is None else self.value + n
        return FdtcResult(v, (lo + n, hi + n), self.k_used, self.method, self.measurements)


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _frac_from(d: dict) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def rational_pin(interval: tuple[Fraction, Fraction], denom_bound: int) -> Fraction | Ambiguous:
    """The unique reduced fraction with denominator at most ``denom_bound`` in ``interval``."""
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if lo > hi:
        raise ValueError("empty interval")
    found: set[Fraction] = set()
    for q in range(1, denom_bound + 1):
        for p in range(math.ceil(lo * q), math.floor(hi * q) + 1):
            found.add(Fraction(p, q))
    if len(found) == 1:
        return found.pop()
    return Ambiguous(tuple(sorted(found)))


# ---------------------------------------------------------------------------


def _model(surface) -> SurfaceModel:
    return surface if isinstance(surface, SurfaceModel) else load_surface(surface)


def strip_boundary_twists(model: SurfaceModel, word: TwistWord, boundary: str) -> tuple[int, TwistWord]:
    """Split off ``D_B^n``; twists about other boundary components are dropped.

    Boundary twists are central, so ``word = D_B^n * rest``; twists about the
    other components commute with everything and do not move the collar of B.
    """
    n = 0
    rest = []
    for name, e in word.syllables:
        parallel = model.parallel_boundaries(name)
        if boundary in parallel:
            n += e
        elif not parallel:
            rest.append((name, e))
    return n, TwistWord(word.surface, tuple(rest))


def _prepare(model: SurfaceModel, word: TwistWord) -> TwistWord:
    if word.surface != model.id:
        from .curves import SurfaceMismatch

        raise SurfaceMismatch(f"{word.surface} vs {model.id}")
    for name in word.names():
        model.curve(name)
    return apply_rewrites(word, model.relation_rewrites)


class _Iterates:
    """Successive images of the test arc, kept as prefixes when they get long."""

    def __init__(self, model: SurfaceModel, word: TwistWord, boundary: str, prefix: int):
        self.model = model
        self.twists = [(model.curve(n), e) for n, e in reversed(word.syllables)]
        self.base = _from_corner(model.test_arcs[boundary], model.boundary_corner[boundary])
        self.boundary = boundary
        self.prefix = prefix
        self.current = self.base
        self.k = 0

    def step(self) -> None:
        obj = self.current
        for c, e in self.twists:
            obj = twist(obj, c, e)
            if len(obj.letters) > self.prefix:
                obj = TruncatedArc(obj.surface, obj.letters[: self.prefix], obj.start)
        self.current = obj
        self.k += 1

    def measure(self) -> int:
        return collar_intersection(self.current, self.base, self.boundary)


def _from_corner(arc: ArcWord, corner: int) -> ArcWord:
    if arc.start == corner:
        return arc
    return ArcWord(arc.surface, tuple(-l for l in reversed(arc.letters)), arc.end, arc.start)


def _measure_all(model: SurfaceModel, word: TwistWord, boundary: str, ks: list[int]) -> dict[int, int]:
    """``c_k`` for each requested k, enlarging the kept prefix until every comparison resolves."""
    prefix = INITIAL_PREFIX
    cap = length_cap()
    while True:
        it = _Iterates(model, word, boundary, min(prefix, cap))
        out: dict[int, int] = {}
        try:
            for k in sorted(ks):
                while it.k < k:
                    it.step()
                out[k] = it.measure()
            return out
        except TruncationExhausted:
            if prefix >= cap:
                raise WordLengthLimit(2 * prefix, cap) from None
            prefix *= 2


def fdtc_measure(surface, word: TwistWord, boundary: str, k: int) -> int:
    """``c_k``: collar winding of the k-th iterate of the test arc of ``boundary``."""
    if k < 1:
        raise ValueError("k must be positive")
    model = _model(surface)
    model.check_boundary(boundary)
    w = _prepare(model, word)
    return _measure_all(model, w, boundary, [k])[k]


def fdtc(
    surface,
    word: TwistWord,
    boundary: str,
    k_max: int = DEFAULT_K_MAX,
    denom_bound: int = DEFAULT_DENOM_BOUND,
    length_cap: int | None = None,
) -> FdtcResult:
    """Fractional Dehn twist coefficient of ``word`` at ``boundary``.

    Raises ``Unresolved`` (carrying the certified interval) when no unique
    rational with denominator at most ``denom_bound`` is pinned by ``k_max``.
    """
    model = _model(surface)
    model.check_boundary(boundary)
    w = _prepare(model, word)
    n, rest = strip_boundary_twists(model, w, boundary)
    if model.planar or not rest:
        v = Fraction(n)
        return FdtcResult(v, (v, v), 0, "closed_form")
    with capped_length(length_cap):
        res = _iterate(model.id, rest, boundary, k_max, denom_bound, _cap_key())
    res = res.shifted(n)
    if res.value is None:
        raise Unresolved(res)
    return res


def _cap_key() -> int:
    from .curves import length_cap as current

    return current()


@functools.lru_cache(maxsize=4096)
def _iterate(surface_id: str, word: TwistWord, boundary: str, k_max: int, denom_bound: int, cap: int) -> FdtcResult:
    model = load_surface(surface_id)
    ks = []
    k = 1
    while k <= k_max:
        ks.append(k)
        k *= 2
    lo, hi = Fraction(-10**9), Fraction(10**9)
    measured: list[tuple[int, int]] = []
    with capped_length(cap):
        values = _measure_lazily(model, word, boundary, ks)
        for k in ks:
            c = values(k)
            measured.append((k, c))
            lo = max(lo, Fraction(c - 1, k))
            hi = min(hi, Fraction(c + 1, k))
            pin = rational_pin((lo, hi), denom_bound)
            if not isinstance(pin, Ambiguous):
                return FdtcResult(pin, (lo, hi), k, "iteration", tuple(measured))
    return FdtcResult(None, (lo, hi), ks[-1] if ks else 0, "iteration", tuple(measured))


def _measure_lazily(model: SurfaceModel, word: TwistWord, boundary: str, ks: list[int]):
    """Measure ``c_k`` one k at a time, reusing iterates while the prefix suffices."""
    state = {"prefix": INITIAL_PREFIX, "it": None}
    cap = length_cap()

    def get(k: int) -> int:
        while True:
            it = state["it"]
            if it is None or it.k > k:
                it = state["it"] = _Iterates(model, word, boundary, min(state["prefix"], cap))
            try:
                while it.k < k:
                    it.step()
                return it.measure()
            except TruncationExhausted:
                if state["prefix"] >= cap:
                    raise WordLengthLimit(2 * state["prefix"], cap) from None
                state["prefix"] *= 2
                state["it"] = None

    return get
