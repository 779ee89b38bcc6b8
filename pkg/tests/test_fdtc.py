from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from capoff.census import tau_or_interval
from capoff.fdtc import Ambiguous, FdtcResult, Unresolved, fdtc, fdtc_measure, rational_pin
from capoff.words import parse_word

from strategies import twist_words

F = Fraction


def stern_brocot_fractions(lo, hi, bound):
    """All fractions of denominator <= bound in [lo, hi], by walking the Stern-Brocot tree."""
    out = set()
    base = lo.__floor__()
    # shift into [0, 1) windows and walk each unit interval independently
    for n in range(base, hi.__ceil__() + 1):
        stack = [((0, 1), (1, 1))]
        for p in (n, n + 1):
            if lo <= p <= hi:
                out.add(F(p))
        while stack:
            (a, b), (c, d) = stack.pop()
            m = (a + c, b + d)
            if m[1] > bound:
                continue
            x = n + F(*m)
            if lo <= x <= hi:
                out.add(x)
            stack.append(((a, b), m))
            stack.append((m, (c, d)))
    return out


def test_pin_examples():
    assert rational_pin((F(-13, 6), F(-11, 6)), 1) == -2
    amb = rational_pin((F(0), F(1)), 2)
    assert isinstance(amb, Ambiguous) and not amb
    assert amb.candidates == (0, F(1, 2), 1)
    # 2/3 also lies in [5/8, 7/8], so denominator 4 cannot single out 3/4
    assert rational_pin((F(5, 8), F(7, 8)), 4).candidates == (F(2, 3), F(3, 4))
    assert rational_pin((F(5, 8), F(7, 8)), 2) == Ambiguous(())
    assert rational_pin((F(11, 16), F(13, 16)), 4) == F(3, 4)
    with pytest.raises(ValueError):
        rational_pin((F(1), F(0)), 3)


@given(st.fractions(-5, 5, max_denominator=12), st.fractions(0, 2, max_denominator=12), st.integers(1, 9))
def test_pin_matches_stern_brocot(lo, width, bound):
    hi = lo + width
    expected = stern_brocot_fractions(lo, hi, bound)
    got = rational_pin((lo, hi), bound)
    if len(expected) == 1:
        assert got == expected.pop()
    else:
        assert isinstance(got, Ambiguous) and set(got.candidates) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_pants_closed_form(n):
    w = parse_word(f"B2^{n}*B1^-2*B3", "P")
    assert fdtc("P", w, "B1").value == -2
    assert fdtc("P", w, "B2").value == n
    assert fdtc("P", w, "B3").value == 1


@pytest.mark.parametrize("n", range(6))
def test_annulus_closed_form(n):
    w = parse_word(f"C^{n + 1}", "A")
    assert fdtc("A", w, "B1").value == fdtc("A", w, "B2").value == n + 1


def test_s11_examples():
    d = "d"
    assert fdtc("S1_1", parse_word("d^3", "S1_1"), d).value == 3
    assert fdtc("S1_1", parse_word("a*b^-1", "S1_1"), d).value == 0
    assert fdtc_measure("S1_1", parse_word("a*b^-1", "S1_1"), d, 4) in (-1, 0, 1)
    # (ab)^6 = d, so ab has coefficient 1/6; iterating ab^6 pins it
    assert fdtc("S1_1", parse_word("(a*b)^6", "S1_1"), d).value == 1
    with pytest.raises(Unresolved) as info:
        fdtc("S1_1", parse_word("a*b", "S1_1"), d)
    lo, hi = info.value.result.interval
    assert lo <= F(1, 6) <= hi


def test_unresolved_carries_interval():
    w = parse_word("a*b*a", "S1_1")
    with pytest.raises(Unresolved) as info:
        fdtc("S1_1", w, "d")
    assert info.value.result.interval == (F(3, 16), F(5, 16))
    assert info.value.result.to_json()["k_used"] == 16
    # (aba)^4 = (ab)^6 = d, and a smaller denominator bound pins 1/4
    assert fdtc("S1_1", w, "d", denom_bound=4).value == F(1, 4)


def test_measure_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        fdtc_measure("S1_1", parse_word("a", "S1_1"), "d", 0)


def test_json_roundtrip():
    r = fdtc("S1_1", parse_word("a*b*a", "S1_1"), "d", denom_bound=4)
    assert r.to_json() == {"tau": {"num": 1, "den": 4}}
    assert FdtcResult.from_json(r.to_json()).value == r.value
    with pytest.raises(Unresolved) as info:
        fdtc("S1_1", parse_word("a*b*a", "S1_1"), "d")
    back = FdtcResult.from_json(info.value.result.to_json())
    assert back.interval == info.value.result.interval


def _resolved(surface, w, b):
    try:
        return fdtc(surface, w, b).value
    except Unresolved:
        return None


@given(twist_words("S1_2", 3, 2), st.integers(-3, 3), st.sampled_from(["B1", "B2"]))
def test_boundary_shift(w, n, b):
    tau = _resolved("S1_2", w, b)
    if tau is None:
        return
    shifted = parse_word(f"{b}^{n}", "S1_2") * w if n else w
    assert fdtc("S1_2", shifted, b).value == tau + n
    conj = parse_word(b, "S1_2") * w * parse_word(f"{b}^-1", "S1_2")
    assert fdtc("S1_2", conj, b).value == tau


@given(twist_words("S1_1", 3, 2), st.integers(2, 3))
def test_homogeneity(w, k):
    tau = _resolved("S1_1", w, "d")
    if tau is None:
        return
    tk = _resolved("S1_1", w.power(k), "d")
    if tk is not None:
        assert tk == k * tau


@given(twist_words("S1_2", 3, 2), st.sampled_from(["B1", "B2"]))
def test_quasimorphism_envelope(w, b):
    tau = _resolved("S1_2", w, b)
    if tau is None:
        return
    for k in (1, 2, 3, 4):
        assert abs(fdtc_measure("S1_2", w, b, k) - k * tau) <= 1


def test_positive_words_nonnegative():
    for text in ("a*b", "a*c*b", "a^2*b^3*c", "B1*a*b*c"):
        w = parse_word(text, "S1_2")
        for b in ("B1", "B2"):
            # right-veering: no measured winding is negative, and the interval reaches past 0
            assert all(fdtc_measure("S1_2", w, b, k) >= 0 for k in (1, 2, 4, 8))
            assert tau_or_interval("S1_2", w, b, 16, 8).interval[1] > 0
