"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from capoff.catalog import polygon_for
from capoff.curves import CurveWord, cyclic_reduce
from capoff.surface import load_surface
from capoff.words import TwistWord

SURFACES = ["A", "P", "S1_1", "S1_2"]


def letters(surface: str, min_size=1, max_size=10):
    r = polygon_for(surface).rank
    alphabet = [g for g in range(1, r + 1)] + [-g for g in range(1, r + 1)]
    return st.lists(st.sampled_from(alphabet), min_size=min_size, max_size=max_size)


def curves(surface: str, max_size=10):
    return letters(surface, 1, max_size).map(lambda w: cyclic_reduce(w)).filter(bool).map(
        lambda w: CurveWord(surface, tuple(w))
    )


def twist_words(surface: str, max_syllables=4, max_exp=2, names=None):
    model = load_surface(surface)
    pool = sorted(names or model.generators)
    syl = st.tuples(st.sampled_from(pool), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(syl, min_size=0, max_size=max_syllables).map(lambda s: TwistWord(surface, tuple(s)))
