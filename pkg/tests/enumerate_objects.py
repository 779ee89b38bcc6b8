"""Exhaustive lists of curves and arcs by word length, for oracle sweeps."""

import itertools
import random
from collections import defaultdict

from capoff.catalog import polygon_for
from capoff.curves import (
    ArcWord, CurveWord, canonical_cyclic, cyclic_reduce, free_reduce, inverse, is_essential_arc, primitive_root,
    slide_reduce,
)


def _letters(sid):
    r = polygon_for(sid).rank
    return [g for g in range(1, r + 1)] + [-g for g in range(1, r + 1)]


def curves_by_length(sid, max_len):
    """Primitive cyclically reduced curves, one per conjugacy class and inverse."""
    seen, out = set(), defaultdict(list)
    for n in range(1, max_len + 1):
        for w in itertools.product(_letters(sid), repeat=n):
            if len(cyclic_reduce(w)) != n:
                continue
            c = canonical_cyclic(w)
            if c in seen or primitive_root(c)[1] != 1:
                continue
            seen.add(c)
            out[n].append(CurveWord(sid, c))
    return out


def arcs_by_length(sid, max_len):
    """Essential slide-reduced arcs, one per class up to reversal."""
    poly = polygon_for(sid)
    seen, out = set(), defaultdict(list)
    for n in range(max_len + 1):
        for w in itertools.product(_letters(sid), repeat=n):
            if len(free_reduce(w)) != n:
                continue
            for s in range(poly.nsides):
                for e in range(poly.nsides):
                    a = slide_reduce(ArcWord(sid, w, s, e))
                    if not is_essential_arc(a):
                        continue
                    key = min((a.letters, a.start, a.end), (tuple(inverse(a.letters)), a.end, a.start))
                    if key not in seen:
                        seen.add(key)
                        out[len(a.letters)].append(a)
    return out


def curve_pairs(sid, total):
    """Distinct curve pairs whose lengths sum to at most ``total``."""
    by = curves_by_length(sid, total - 1)
    for l1 in sorted(by):
        for l2 in sorted(by):
            if l2 < l1 or l1 + l2 > total:
                continue
            if l1 == l2:
                yield from itertools.combinations(by[l1], 2)
            else:
                yield from itertools.product(by[l1], by[l2])


def arc_pairs(sid, arc_len, curve_total, arc_total):
    """Arc/curve pairs with lengths summing to ``curve_total`` and distinct arc pairs up to ``arc_total``."""
    arcs = arcs_by_length(sid, arc_len)
    by = curves_by_length(sid, curve_total)
    for la in sorted(arcs):
        for lc in sorted(by):
            if la + lc <= curve_total:
                yield from itertools.product(arcs[la], by[lc])
    flat = [(la, a) for la in sorted(arcs) for a in arcs[la]]
    for (la, a), (lb, b) in itertools.combinations(flat, 2):
        if la + lb <= arc_total:
            yield a, b


def random_word(rng, sid, n):
    letters = _letters(sid)
    w = [rng.choice(letters)]
    while len(w) < n:
        x = rng.choice(letters)
        if x != -w[-1]:
            w.append(x)
    return w


def random_long_pair(rng: random.Random, sid: str, lo=9, hi=16):
    """A curve or arc pair with at least one word longer than the exhaustive range."""
    poly = polygon_for(sid)

    def curve():
        while True:
            w = cyclic_reduce(random_word(rng, sid, rng.randint(lo, hi)))
            if w:
                return CurveWord(sid, tuple(w))

    def arc():
        while True:
            a = slide_reduce(ArcWord(sid, tuple(random_word(rng, sid, rng.randint(lo, hi))),
                                     rng.randrange(poly.nsides), rng.randrange(poly.nsides)))
            if is_essential_arc(a):
                return a

    kind = rng.choice(["cc", "ca", "aa"])
    x = curve() if kind[0] == "c" else arc()
    y = curve() if kind[1] == "c" else arc()
    return x, y
