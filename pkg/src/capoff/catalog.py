"""Loading of the surface catalog data files."""

from __future__ import annotations

import functools
import json
from importlib import resources
from typing import Any

from .polygon import Polygon

SURFACE_IDS = ("A", "P", "S1_1", "S1_2")


class UnknownSurface(KeyError):
    pass


@functools.lru_cache(maxsize=None)
def raw(surface_id: str) -> dict[str, Any]:
    if surface_id not in SURFACE_IDS:
        raise UnknownSurface(surface_id)
    text = resources.files("capoff.data").joinpath(f"{surface_id}.json").read_text()
    return json.loads(text)


@functools.lru_cache(maxsize=None)
def polygon_for(surface_id: str) -> Polygon:
    return Polygon(tuple(raw(surface_id)["polygon"]))


def letters_from_text(poly: Polygon, text: str) -> tuple[int, ...]:
    """Crossing word from compact text: ``x`` crosses cut arc x forwards, ``X`` backwards."""
    out = []
    for ch in text.replace(" ", ""):
        if ch.islower():
            out.append(poly.letter_index(ch))
        else:
            out.append(-poly.letter_index(ch.lower()))
    return tuple(out)


def letters_to_text(poly: Polygon, letters) -> str:
    return "".join(poly.letters[l - 1] if l > 0 else poly.letters[-l - 1].upper() for l in letters)
