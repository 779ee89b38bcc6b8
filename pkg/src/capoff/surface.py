"""Catalog surfaces: generators, test arcs, collar loops and capping tables."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Mapping

from . import catalog
from .catalog import SURFACE_IDS, UnknownSurface, letters_from_text
from .curves import (
    ArcWord,
    CurveWord,
    canonical_cyclic,
    free_reduce,
    geometric_intersection,
    is_essential_arc,
    is_simple,
    twist,
)
from .polygon import Polygon
from .words import TwistWord, parse_syllables

__all__ = [
    "CannotCapLast",
    "CappingTable",
    "CatalogCorrupt",
    "NotInCatalog",
    "SurfaceModel",
    "UnknownSurface",
    "cap_surface",
    "load_surface",
    "validate_catalog",
]


class CatalogCorrupt(RuntimeError):
    pass


class NotInCatalog(LookupError):
    pass


class CannotCapLast(ValueError):
    pass


TRIVIAL = "trivial"
BOUNDARY = "boundary-parallel"


@dataclass(frozen=True)
class CappingTable:
    source: str
    capped_boundary: str
    target: str
    # name -> (kind, target curve name or None); kind is "generator", TRIVIAL or BOUNDARY
    generator_images: Mapping[str, tuple[str, str | None]]
    relation_rewrites: tuple[tuple[tuple, tuple], ...]
    letter_map: Mapping[str, str]

    def image_of(self, name: str) -> tuple[str, str | None]:
        return self.generator_images[name]

    def apply(self, word: TwistWord) -> TwistWord:
        """Image of a monodromy word: trivial twists erased, the rest renamed."""
        out = []
        for name, e in word.syllables:
            kind, target = self.generator_images[name]
            if kind != TRIVIAL:
                out.append((target, e))
        return TwistWord(self.target, tuple(out))


@dataclass(frozen=True)
class SurfaceModel:
    id: str
    genus: int
    planar: bool
    polygon: Polygon
    boundaries: tuple[str, ...]
    boundary_corner: Mapping[str, int]
    generators: Mapping[str, CurveWord]
    auxiliary: Mapping[str, CurveWord]
    boundary_generators: Mapping[str, tuple[str, ...]]
    test_arcs: Mapping[str, ArcWord]
    intersection_table: Mapping[tuple[str, str], int]
    relation_rewrites: tuple[tuple[tuple, tuple], ...]
    cappings: Mapping[str, Mapping] = field(repr=False)
    collar_loops: Mapping[str, tuple[int, ...]] = field(default_factory=dict, repr=False)

    @property
    def cut_system(self) -> tuple[str, ...]:
        return self.polygon.sides

    @property
    def twist_curves(self) -> dict[str, CurveWord]:
        return {**self.generators, **self.auxiliary}

    def curve(self, name: str) -> CurveWord:
        try:
            return self.twist_curves[name]
        except KeyError:
            from .words import UnknownGenerator

            raise UnknownGenerator(name, self.id) from None

    def boundary_twist(self, boundary: str) -> str:
        """Name of the generator parallel to ``boundary``."""
        for name, bs in self.boundary_generators.items():
            if boundary in bs:
                return name
        raise KeyError(boundary)

    def parallel_boundaries(self, name: str) -> tuple[str, ...]:
        return tuple(self.boundary_generators.get(name, ()))

    def check_boundary(self, boundary: str) -> None:
        if boundary not in self.boundaries:
            raise KeyError(f"{self.id} has no boundary {boundary!r}")

    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundaries)


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@functools.lru_cache(maxsize=None)
def _load_unchecked(surface_id: str) -> SurfaceModel:
    raw = catalog.raw(surface_id)
    poly = catalog.polygon_for(surface_id)
    try:
        gens = {k: CurveWord(surface_id, letters_from_text(poly, v)) for k, v in raw["generators"].items()}
        aux = {k: CurveWord(surface_id, letters_from_text(poly, v)) for k, v in raw.get("auxiliary", {}).items()}
        arcs = {
            b: ArcWord(surface_id, letters_from_text(poly, a["word"]), a["start"], a["end"])
            for b, a in raw["test_arcs"].items()
        }
        table = {}
        for key, v in raw["intersections"].items():
            x, y = key.split(",")
            table[_pair(x, y)] = int(v)
        rewrites = tuple(
            (parse_syllables(r["pattern"]), parse_syllables(r["replacement"])) for r in raw.get("relation_rewrites", [])
        )
        model = SurfaceModel(
            id=raw["id"],
            genus=int(raw["genus"]),
            planar=bool(raw["planar"]),
            polygon=poly,
            boundaries=tuple(raw["boundaries"]),
            boundary_corner=dict(raw["boundaries"]),
            generators=gens,
            auxiliary=aux,
            boundary_generators={k: tuple(v) for k, v in raw["boundary_generators"].items()},
            test_arcs=arcs,
            intersection_table=table,
            relation_rewrites=rewrites,
            cappings=raw.get("capping", {}),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise CatalogCorrupt(f"{surface_id}: {exc}") from exc
    loops = {}
    for b in model.boundaries:
        loops[b] = _collar_loop(model, b)
    object.__setattr__(model, "collar_loops", loops)
    return model


def _collar_loop(model: SurfaceModel, boundary: str) -> tuple[int, ...] | None:
    """Boundary loop at the marked corner, oriented as the positive boundary twist moves arcs."""
    poly = model.polygon
    j = model.boundary_corner[boundary]
    loop = poly.boundary_loop(j)
    alpha = model.test_arcs[boundary]
    base = list(alpha.letters) if alpha.start == j else [-l for l in reversed(alpha.letters)]
    try:
        gen = model.twist_curves[model.boundary_twist(boundary)]
    except KeyError:
        return None
    image = twist(_oriented(alpha, j), gen, 1).letters
    # the far end may wind around the same boundary; only the start matters
    for cand in (loop, [-l for l in reversed(loop)]):
        moved = free_reduce(cand + base)
        if image[: len(cand)] == tuple(moved[: len(cand)]):
            return tuple(cand)
    return None


def _oriented(arc: ArcWord, corner: int) -> ArcWord:
    if arc.start == corner:
        return arc
    return ArcWord(arc.surface, tuple(-l for l in reversed(arc.letters)), arc.end, arc.start)


def validate_catalog(model: SurfaceModel) -> dict:
    """Recompute every catalog invariant; the report lists all failures."""
    failures: list[str] = []
    checks: dict[str, object] = {}
    poly = model.polygon
    chi_expected = model.euler_characteristic()
    chi_spine = poly.euler_characteristic()
    chi_cells = poly.euler_characteristic_cells()
    checks["euler_characteristic"] = {"expected": chi_expected, "spine": chi_spine, "cells": chi_cells}
    if not chi_expected == chi_spine == chi_cells:
        failures.append(f"Euler characteristic {chi_spine}/{chi_cells}, expected {chi_expected}")
    cycles = poly.corner_cycles()
    if len(cycles) != len(model.boundaries):
        failures.append(f"polygon has {len(cycles)} boundary components, catalog lists {len(model.boundaries)}")
    corners = [model.boundary_corner[b] for b in model.boundaries]
    for b, j in zip(model.boundaries, corners):
        if sum(j in cyc for cyc in cycles) != 1 or any(
            poly.boundary_cycle_of(j) == poly.boundary_cycle_of(k) for k in corners if k != j
        ):
            failures.append(f"boundary {b} corner {j} does not identify a unique component")

    names = list(model.generators)
    computed: dict[str, int] = {}
    curves = model.twist_curves
    for name, c in curves.items():
        if not is_simple(c):
            failures.append(f"generator {name} is not a simple closed curve")
    for i, x in enumerate(names):
        for y in names[i:]:
            v = geometric_intersection(curves[x], curves[y])
            computed[f"{x},{y}"] = v
            stored = model.intersection_table.get(_pair(x, y))
            if stored is None:
                failures.append(f"intersection table misses ({x},{y})")
            elif stored != v:
                failures.append(f"i({x},{y}) stored {stored}, computed {v}")
    checks["intersections"] = computed

    for name, bs in model.boundary_generators.items():
        for b in bs:
            loop = poly.boundary_loop(model.boundary_corner[b])
            if canonical_cyclic(loop) != canonical_cyclic(curves[name].letters):
                failures.append(f"generator {name} is not parallel to boundary {b}")

    for b, arc in model.test_arcs.items():
        j = model.boundary_corner[b]
        cyc = poly.boundary_cycle_of(j)
        ends = [arc.start in cyc, arc.end in cyc]
        # with a single boundary component both ends necessarily lie on it
        wanted = 2 if len(model.boundaries) == 1 else 1
        if sum(ends) != wanted or arc.start != j:
            failures.append(f"test arc of {b} must leave {b} from its marked corner")
        if not is_essential_arc(arc):
            failures.append(f"test arc of {b} is inessential")

    for b in model.boundaries:
        if model.collar_loops.get(b) is None:
            failures.append(f"positive twist about {b} does not wind its test arc once around the collar")
        else:
            from .curves import collar_intersection

            arc = _oriented(model.test_arcs[b], model.boundary_corner[b])
            img = twist(arc, curves[model.boundary_twist(b)], 1)
            if collar_intersection(img, arc, b) != 1:
                failures.append(f"tau of the twist about {b} is not +1")

    for b, spec in model.cappings.items():
        try:
            _, table = cap_surface(model, b)
        except Exception as exc:  # reported, not raised
            failures.append(f"capping {b}: {exc}")
            continue
        failures.extend(_check_capping(model, table))

    return {"surface": model.id, "ok": not failures, "failures": failures, "checks": checks}


def _check_capping(model: SurfaceModel, table: CappingTable) -> list[str]:
    """Recompute generator images by pushing words through the letter map."""
    out = []
    target = _load_unchecked(table.target)
    tpoly = target.polygon
    spoly = model.polygon
    images = {g: letters_from_text(tpoly, w) for g, w in table.letter_map.items()}
    for name, curve in model.twist_curves.items():
        letters: list[int] = []
        for l in curve.letters:
            piece = images[spoly.letters[abs(l) - 1]]
            letters.extend(piece if l > 0 else [-m for m in reversed(piece)])
        img = canonical_cyclic(letters)
        kind, tname = table.generator_images.get(name, (None, None))
        if kind is None:
            out.append(f"capping {table.capped_boundary}: no image for {name}")
            continue
        if kind == TRIVIAL:
            if img:
                out.append(f"capping {table.capped_boundary}: {name} is not trivial after capping")
            continue
        expected = canonical_cyclic(target.twist_curves[tname].letters)
        if img != expected:
            out.append(f"capping {table.capped_boundary}: {name} maps to {img}, table says {tname}")
        if kind == BOUNDARY and not target.parallel_boundaries(tname):
            out.append(f"capping {table.capped_boundary}: {tname} is not boundary-parallel in {target.id}")
    if table.apply(TwistWord(model.id, ())).syllables:
        out.append("capping the identity is not the identity")
    return out


@functools.lru_cache(maxsize=None)
def load_surface(surface_id: str) -> SurfaceModel:
    """Load and validate a catalog surface."""
    if surface_id not in SURFACE_IDS:
        raise UnknownSurface(surface_id)
    model = _load_unchecked(surface_id)
    report = validate_catalog(model)
    if not report["ok"]:
        raise CatalogCorrupt(f"{surface_id}: " + "; ".join(report["failures"]))
    return model


def cap_surface(model: SurfaceModel, boundary: str) -> tuple[SurfaceModel, CappingTable]:
    """Cap ``boundary`` with a disk; returns the target surface and the capping table."""
    model.check_boundary(boundary)
    if len(model.boundaries) == 1:
        raise CannotCapLast(f"{model.id} has a single boundary component")
    spec = model.cappings.get(boundary)
    if spec is None:
        raise NotInCatalog(f"capping {boundary} of {model.id} leaves the catalog")
    images: dict[str, tuple[str, str | None]] = {}
    for name, img in spec["images"].items():
        if img == TRIVIAL:
            images[name] = (TRIVIAL, None)
        elif img.startswith(BOUNDARY + ":"):
            images[name] = (BOUNDARY, img.split(":", 1)[1])
        else:
            images[name] = ("generator", img)
    target = load_surface(spec["target"])
    table = CappingTable(
        source=model.id,
        capped_boundary=boundary,
        target=target.id,
        generator_images=images,
        relation_rewrites=target.relation_rewrites,
        letter_map=dict(spec["letter_map"]),
    )
    return target, table
