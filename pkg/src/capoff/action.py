"""The action of twist words on curves and arcs."""

from __future__ import annotations

from .curves import ArcWord, CurveWord, SurfaceMismatch, TruncatedArc, reduce, twist
from .surface import load_surface
from .words import TwistWord


def apply_twist_word(obj, word: TwistWord):
    """Image of ``obj`` under the mapping class ``word`` (rightmost syllable first)."""
    if obj.surface != word.surface:
        raise SurfaceMismatch(f"{obj.surface} vs {word.surface}")
    model = load_surface(word.surface)
    for name, e in reversed(word.syllables):
        obj = twist(obj, model.curve(name), e)
    if isinstance(obj, TruncatedArc):
        return obj
    return reduce(obj)


def apply_rewrites(word: TwistWord, rewrites) -> TwistWord:
    """Shorten ``word`` with relations ``pattern = replacement``.

    The replacement must commute with every curve of the pattern (true for the
    chain relation, whose right side is disjoint from a and b).  Then every
    cyclic rotation of the pattern equals the replacement, and a run ``q`` that
    covers more than half of a rotation ``q s`` can be swapped for
    ``replacement * s^-1``.  This finds occurrences that merging of adjacent
    syllables has partly cancelled.
    """
    if not rewrites:
        return word
    rules = []
    for pattern, repl in rewrites:
        p = TwistWord(word.surface, pattern).units()
        r = TwistWord(word.surface, repl).units()
        for pat, rep in ((p, r), (_inv(p), _inv(r))):
            for i in range(len(pat)):
                rules.append((pat[i:] + pat[:i], rep))
    units = word.units()
    while True:
        best = None
        for rot, rep in rules:
            n = len(rot)
            for start in range(len(units)):
                m = 0
                while m < n and start + m < len(units) and units[start + m] == rot[m]:
                    m += 1
                if 2 * m > n + len(rep) and (best is None or m > best[1]):
                    best = (start, m, rot, rep)
        if best is None:
            break
        start, m, rot, rep = best
        rest = _inv(rot[m:])
        units = TwistWord(word.surface, tuple(units[:start] + rep + rest + units[start + m :])).units()
    return TwistWord(word.surface, tuple(units))


def _inv(units):
    return [(n, -e) for n, e in reversed(units)]
