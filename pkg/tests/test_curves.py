import itertools
import random

import pytest
from hypothesis import given, strategies as st

from capoff.curves import (
    ArcWord, CurveWord, MalformedWord, SurfaceMismatch, TruncatedArc, WordLengthLimit, arc_inverse,
    canonical_cyclic, capped_length, cyclic_reduce, free_reduce, geometric_intersection, inverse,
    is_essential_arc, is_simple, primitive_root, reduce, self_intersection, slide_reduce, twist,
)
from capoff.surface import load_surface

from strategies import curves, letters


def _random_order_reduce(word, rng):
    """Cancel a random adjacent inverse pair until none is left."""
    w = list(word)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i] == -w[i + 1]]
        if not spots:
            return w
        i = rng.choice(spots)
        del w[i : i + 2]


def test_free_reduce_examples():
    assert free_reduce([1, -1]) == []
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    assert cyclic_reduce([2, 1, 3, -2]) == [1, 3]
    assert cyclic_reduce([]) == []


def test_confluence_exhaustive_short():
    # every word of length <= 8 in two letters and inverses
    rng = random.Random(7)
    alphabet = [1, -1, 2, -2]
    for n in range(9):
        for w in itertools.product(alphabet, repeat=n):
            assert _random_order_reduce(w, rng) == free_reduce(w)


@given(letters("S1_2", 0, 50), st.integers(0, 2**32))
def test_confluence_random_orders(w, seed):
    a = _random_order_reduce(w, random.Random(seed))
    b = _random_order_reduce(w, random.Random(seed + 1))
    assert a == b == free_reduce(w)


@given(curves("S1_2"), st.integers(0, 20), st.booleans())
def test_canonical_cyclic_invariance(c, k, inv):
    w = list(c.letters)
    k %= len(w)
    v = w[k:] + w[:k]
    if inv:
        v = inverse(v)
    assert canonical_cyclic(v) == canonical_cyclic(w)


def test_primitive_root():
    assert primitive_root((1, 2, 1, 2)) == ((1, 2), 2)
    assert primitive_root((1, 2, 2)) == ((1, 2, 2), 1)


def test_malformed_words():
    with pytest.raises(MalformedWord):
        reduce(CurveWord("S1_1", (5,)))
    with pytest.raises(MalformedWord):
        reduce(ArcWord("S1_1", (), 0, 9))


@pytest.mark.parametrize("x,y,n", [(x, y, n) for x, y in (("a", "b"), ("b", "c"), ("c", "b")) for n in range(-3, 4)])
def test_twist_intersection_identity(s12, x, y, n):
    # i(t_y^n(x), x) = |n| i(x, y)^2
    cx, cy = s12.curve(x), s12.curve(y)
    image = twist(cx, cy, n)
    assert geometric_intersection(image, cx) == abs(n) * geometric_intersection(cx, cy) ** 2


def test_twist_disjoint_is_identity(s12):
    a, c = s12.curve("a"), s12.curve("c")
    assert reduce(twist(a, c, 3)) == reduce(a)


@given(curves("S1_2", 8), st.sampled_from("abcd"), st.integers(-2, 2).filter(bool))
def test_twist_inverse(s12, c, name, n):
    t = s12.curve(name)
    back = twist(twist(c, t, n), t, -n)
    assert canonical_cyclic(back.letters) == canonical_cyclic(c.letters)


@given(curves("S1_2", 8), st.sampled_from("abc"))
def test_twist_preserves_simplicity_and_intersection_with_core(s12, c, name):
    t = s12.curve(name)
    img = twist(c, t, 1)
    assert geometric_intersection(img, t) == geometric_intersection(c, t)
    assert is_simple(img) == is_simple(c)


@given(curves("S1_2", 8), curves("S1_2", 8))
def test_intersection_symmetric(x, y):
    assert geometric_intersection(x, y) == geometric_intersection(y, x)


def test_self_intersection():
    s = load_surface("S1_1")
    a, b = s.curve("a"), s.curve("b")
    assert self_intersection(a) == 0
    # a^2 is a proper power; a^2 b is the simple (2,1) curve; a^2 b^2 crosses itself once
    assert not is_simple(CurveWord("S1_1", (1, 1)))
    assert is_simple(CurveWord("S1_1", (1, 1, 2)))
    assert self_intersection(CurveWord("S1_1", (1, 1, 2, 2))) == 1
    assert is_simple(CurveWord("S1_1", (1, -2)))


def test_arcs(s12):
    arc = s12.test_arcs["B1"]
    assert is_essential_arc(arc)
    assert arc_inverse(arc_inverse(arc)) == arc
    assert geometric_intersection(arc, s12.curve("a")) == 0
    with pytest.raises(SurfaceMismatch):
        geometric_intersection(arc, load_surface("S1_1").curve("a"))


def test_slide_reduce_removes_boundary_loop(s12):
    arc = s12.test_arcs["B1"]
    loop = s12.polygon.boundary_loop(arc.start)
    longer = ArcWord(arc.surface, tuple(loop) + arc.letters, arc.start, arc.end)
    assert slide_reduce(longer) == slide_reduce(arc)


@given(st.lists(st.tuples(st.sampled_from("abcd"), st.integers(-2, 2).filter(bool)), min_size=1, max_size=5),
       st.integers(4, 24))
def test_truncated_images_agree_with_full(s12, syllables, prefix):
    arc = s12.test_arcs["B1"]
    full = arc
    for name, e in reversed(syllables):
        full = reduce(twist(full, s12.curve(name), e))
    trunc = TruncatedArc(arc.surface, arc.letters, arc.start)
    for name, e in reversed(syllables):
        trunc = twist(trunc, s12.curve(name), e)
        trunc = TruncatedArc(trunc.surface, trunc.letters[:prefix], trunc.start)
    assert full.letters[: len(trunc.letters)] == trunc.letters


def test_length_cap():
    s = load_surface("S1_1")
    with capped_length(5):
        with pytest.raises(WordLengthLimit):
            twist(s.curve("a"), s.curve("b"), 10)
