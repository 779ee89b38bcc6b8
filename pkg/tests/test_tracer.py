import random

import pytest

from capoff.curves import ArcWord, CurveWord, arc_inverse, geometric_intersection
from capoff.surface import load_surface
from capoff.tracer import traced_intersection

from enumerate_objects import arc_pairs, curve_pairs, random_long_pair


def test_known_values(s12):
    a, b, c = (s12.curve(x) for x in "abc")
    assert traced_intersection(a, b) == 1
    assert traced_intersection(a, c) == 0
    assert traced_intersection(b, c) == 1
    assert traced_intersection(s12.curve("d"), c) == 2


def test_same_class_is_zero(s12):
    a = s12.curve("a")
    assert traced_intersection(a, a) == 0
    assert traced_intersection(a, CurveWord("S1_2", a.letters * 2)) == 0
    arc = s12.test_arcs["B1"]
    assert traced_intersection(arc, arc) == traced_intersection(arc, arc_inverse(arc)) == 0


@pytest.mark.parametrize("sid", ["P", "S1_1", "S1_2"])
def test_short_exhaustive(sid):
    for x, y in curve_pairs(sid, 6):
        assert traced_intersection(x, y) == geometric_intersection(x, y), (x, y)
    for x, y in arc_pairs(sid, 1, 4, 2):
        assert traced_intersection(x, y) == geometric_intersection(x, y), (x, y)


def test_random_longer():
    rng = random.Random(11)
    for _ in range(100):
        x, y = random_long_pair(rng, rng.choice(["P", "S1_1", "S1_2"]))
        assert traced_intersection(x, y) == geometric_intersection(x, y), (x, y)
