import pytest
from hypothesis import given, strategies as st

from capoff.complement import fills_by_euler, fills_by_traversal
from capoff.curves import geometric_intersection
from capoff.action import apply_twist_word
from capoff.fdtc import fdtc
from capoff.openbook import OpenBook, branched_cover, cap_off, capped_penner_sets, penner_check
from capoff.surface import CannotCapLast, load_surface
from capoff.words import TwistWord, merge, parse_word

from strategies import twist_words

PSI = "a * b^-1 * c * (a*b)^-6"


def book(text, surface="S1_2"):
    return OpenBook(surface, parse_word(text, surface))


@pytest.mark.parametrize("n", range(1, 6))
def test_cap_pants(n):
    capped = cap_off(book(f"B2^{n}*B1^-2*B3", "P"), "B1")
    assert capped.surface == "A"
    assert capped.monodromy == parse_word(f"C^{n + 1}", "A")


def test_cap_boundary_twist_is_identity():
    capped = cap_off(book("B1^5"), "B1")
    assert capped.surface == "S1_1" and capped.monodromy == TwistWord.identity("S1_1")


def test_cap_last_boundary():
    with pytest.raises(CannotCapLast):
        cap_off(book("a", "S1_1"), "d")


def test_book_validation():
    with pytest.raises(ValueError):
        OpenBook("S1_1", parse_word("a", "S1_2"))


@given(twist_words("S1_2", 4, 2), st.integers(0, 4), st.sampled_from([1, -1]))
def test_cap_invariant_under_inserting_boundary_twist(w, pos, e):
    syl = list(w.syllables)
    pos = min(pos, len(syl))
    syl.insert(pos, ("B1", e))
    with_twist = TwistWord("S1_2", merge(syl))
    assert cap_off(OpenBook("S1_2", with_twist), "B1") == cap_off(OpenBook("S1_2", w), "B1")


def test_cover_examples():
    ob = book("C^2", "A")
    assert branched_cover(ob, 1) == ob
    assert fdtc("A", branched_cover(ob, 3).monodromy, "B1").value == 6
    with pytest.raises(ValueError):
        branched_cover(ob, 0)


@given(twist_words("S1_2", 3, 2), st.integers(1, 3), st.integers(1, 3))
def test_cover_composes(w, m, n):
    ob = OpenBook("S1_2", w)
    assert branched_cover(branched_cover(ob, m), n) == branched_cover(ob, m * n)


@given(twist_words("S1_2", 3, 2), st.integers(1, 3))
def test_cover_commutes_with_capping(w, n):
    ob = OpenBook("S1_2", w)
    lhs = cap_off(branched_cover(ob, n), "B1")
    rhs = branched_cover(cap_off(ob, "B1"), n)
    # equal as mapping classes: compare actions on the capped test arc
    arc = load_surface("S1_1").test_arcs["d"]
    assert apply_twist_word(arc, lhs.monodromy) == apply_twist_word(arc, rhs.monodromy)


def test_penner_psi():
    cert = penner_check(book(PSI), ["a", "c"], ["b"])
    assert cert.certified
    assert cert.checks["auxiliary_added"] == {"d": "S-"}
    assert all(cert.checks[k] for k in ("signs_ok", "disjoint_ok", "filling_ok", "both_nonempty_used"))


def test_penner_psi_with_boundary_twists():
    assert penner_check(book(f"B1^-2*B2^3*({PSI})^2"), ["a", "c"], ["b"]).certified


def test_penner_negative_fixtures():
    c1 = penner_check(book("a^3"), ["a"], [])
    assert c1.verdict == "not_applicable" and c1.reason == "filling fails"
    c2 = penner_check(book("a*b"), ["a"], ["b"])
    assert c2.reason == "sign check fails: b has positive exponent but lies in S-"
    c3 = penner_check(book("a*b^-1"), ["a", "b"], [])
    assert c3.reason.startswith("sign check fails")
    c4 = penner_check(book("a*c*b^-1"), ["a", "b"], [])
    assert not c4.certified


def test_penner_disjointness_and_unused():
    c = penner_check(book("a*b*c^-1"), ["a", "b"], ["c"])
    assert c.reason == "disjointness fails: curves of S+ intersect"
    c = penner_check(book("a*b^-1"), ["a", "c"], ["b"])
    assert c.reason == "some curve of S+ or S- is never twisted"


def test_penner_custom_curve_word():
    # c written as crossing text
    cert = penner_check(book(PSI), ["a", "xz"], ["b"])
    assert cert.certified


def test_penner_commuting_reorder():
    w1 = book("a*c*b^-1")
    w2 = book("c*a*b^-1")
    assert penner_check(w1, ["a", "c"], ["b"]).verdict == penner_check(w2, ["a", "c"], ["b"]).verdict


def test_certified_words_act_nontrivially():
    model = load_surface("S1_2")
    for text in (PSI, "a*c*b^-1", "a^2*b^-1*c"):
        ob = book(text)
        assert penner_check(ob, ["a", "c"], ["b"]).certified
        moved = [geometric_intersection(apply_twist_word(model.curve(x), ob.monodromy), model.curve(x))
                 for x in ("a", "b", "c")]
        assert max(moved) > 0


def test_capped_book_certified():
    capped = cap_off(book(PSI), "B1")
    sp, sm = capped_penner_sets(book(PSI), "B1", ["a", "c"], ["b"])
    assert (sp, sm) == (["a"], ["b"])
    assert penner_check(capped, sp, sm).certified


def test_filling_checks_agree():
    model = load_surface("S1_2")
    fams = [["a"], ["a", "b"], ["a", "c"], ["a", "b", "c"], ["b", "c"], ["a", "b", "c", "d"], ["d"]]
    results = {}
    for fam in fams:
        curves = [model.curve(x) for x in fam]
        results[tuple(fam)] = fills_by_traversal(model, curves)
        assert results[tuple(fam)] == fills_by_euler(model, curves)
    assert results[("a", "b", "c")] and not results[("a", "b")] and not results[("a", "c")]


@pytest.mark.parametrize("n1,n2,k", [(-1, 0, 1), (2, -2, 2), (0, 1, 3)])
def test_capped_baldwin_etnyre_value(n1, n2, k):
    """The capped word is D_d^n2 ((a b^-1 a) D_d^-1)^k, whose coefficient is n2 - k."""
    parts = [f"B1^{n1}" if n1 else "", f"B2^{n2}" if n2 else "", f"({PSI})^{k}"]
    ob = book(" * ".join(p for p in parts if p))
    capped = cap_off(ob, "B1")
    assert fdtc("S1_1", capped.monodromy, "d").value == n2 - k
    assert fdtc("S1_1", parse_word("a*b^-1*a", "S1_1"), "d").value == 0
