from hypothesis import given

from capoff.action import apply_rewrites, apply_twist_word
from capoff.curves import canonical_cyclic
from capoff.surface import load_surface
from capoff.words import parse_word

from strategies import curves, twist_words


def rw(text, sid="S1_2"):
    m = load_surface(sid)
    return apply_rewrites(parse_word(text, sid), m.relation_rewrites).text()


def test_rewrite_examples():
    assert rw("(a*b)^6") == "d"
    assert rw("(b*a)^-6") == "d^-1"
    assert rw("(a*b)^13") == "d^2 * a * b"
    # (ab)^5 = (ab)^6 (ab)^-1 is shorter once (ab)^6 becomes d
    assert rw("a*(a*b)^5") == "a * d * b^-1 * a^-1"
    assert rw("a * b^-1 * c * (a*b)^-6") == "a * b^-1 * c * d^-1"


def test_rewrite_not_applied_when_longer():
    assert rw("a*b*a") == "a * b * a"


@given(curves("S1_2", 6))
def test_chain_relation_acts_like_d(c):
    s = load_surface("S1_2")
    lhs = apply_twist_word(c, parse_word("(a*b)^6", "S1_2"))
    rhs = apply_twist_word(c, parse_word("d", "S1_2"))
    assert canonical_cyclic(lhs.letters) == canonical_cyclic(rhs.letters)


@given(twist_words("S1_2", 4, 2, names="abcd"))
def test_rewrites_preserve_action(w):
    s = load_surface("S1_2")
    arc = s.test_arcs["B2"]
    w2 = apply_rewrites(w, s.relation_rewrites)
    assert apply_twist_word(arc, w) == apply_twist_word(arc, w2)


def test_composition_order():
    # leftmost syllable applied last
    s = load_surface("S1_2")
    a_then_b = apply_twist_word(s.curve("c"), parse_word("b*a", "S1_2"))
    from capoff.curves import reduce, twist

    manual = reduce(twist(twist(s.curve("c"), s.curve("a")), s.curve("b")))
    assert a_then_b == manual
