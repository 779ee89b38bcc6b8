"""Open books: capping off, cyclic branched covers and Penner certification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .action import apply_rewrites
from .catalog import letters_from_text
from .complement import fills_by_euler, fills_by_traversal
from .curves import CurveWord, canonical_cyclic, geometric_intersection
from .surface import cap_surface, load_surface
from .words import TwistWord


@dataclass(frozen=True)
class OpenBook:
    surface: str
    monodromy: TwistWord
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.monodromy.surface != self.surface:
            raise ValueError(f"monodromy lives on {self.monodromy.surface}, not {self.surface}")
        model = load_surface(self.surface)
        for name in self.monodromy.names():
            model.curve(name)


def cap_off(ob: OpenBook, boundary: str) -> OpenBook:
    """Cap ``boundary`` with a disk and extend the monodromy by the identity."""
    model = load_surface(ob.surface)
    target, table = cap_surface(model, boundary)
    word = table.apply(apply_rewrites(ob.monodromy, model.relation_rewrites))
    word = apply_rewrites(word, target.relation_rewrites)
    label = f"{ob.label} capped at {boundary}" if ob.label else None
    return OpenBook(target.id, word, label)


def branched_cover(ob: OpenBook, n: int) -> OpenBook:
    """Open book of the n-fold cyclic cover branched along the binding."""
    if n < 1:
        raise ValueError("n must be positive")
    label = f"{ob.label} cover {n}" if ob.label else None
    return OpenBook(ob.surface, ob.monodromy.power(n), label)


# ---------------------------------------------------------------------------
# Penner's construction


@dataclass(frozen=True)
class PennerCertificate:
    s_plus: tuple[str, ...]
    s_minus: tuple[str, ...]
    checks: dict
    verdict: str
    reason: str | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "pA_certified"

    def to_json(self) -> dict:
        out = {
            "s_plus": list(self.s_plus),
            "s_minus": list(self.s_minus),
            "checks": dict(self.checks),
            "verdict": self.verdict,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def resolve_curve(surface: str, spec: str | CurveWord) -> CurveWord:
    """A curve named by generator, or given as crossing text such as ``xz``."""
    if isinstance(spec, CurveWord):
        return spec
    model = load_surface(surface)
    if spec in model.twist_curves:
        return model.twist_curves[spec]
    return CurveWord(surface, letters_from_text(model.polygon, spec))


def _key(c: CurveWord) -> tuple[int, ...]:
    return canonical_cyclic(c.letters)


def penner_check(ob: OpenBook, s_plus: Iterable, s_minus: Iterable) -> PennerCertificate:
    """Certify ``ob.monodromy`` pseudo-Anosov by Penner's construction, if it applies."""
    model = load_surface(ob.surface)
    plus_names = tuple(str(x) if not isinstance(x, CurveWord) else str(x.letters) for x in s_plus)
    minus_names = tuple(str(x) if not isinstance(x, CurveWord) else str(x.letters) for x in s_minus)
    plus = [resolve_curve(ob.surface, x) for x in s_plus]
    minus = [resolve_curve(ob.surface, x) for x in s_minus]
    word = apply_rewrites(ob.monodromy, model.relation_rewrites)

    # A relation such as (a*b)^6 = d brings in an auxiliary curve; it joins the
    # set matching the sign of its twists, and the checks below still apply.
    added = {}
    named = {_key(c) for c in plus + minus}
    for name in word.names():
        if name not in model.auxiliary or _key(model.auxiliary[name]) in named:
            continue
        signs = {e > 0 for n, e in word.syllables if n == name}
        if len(signs) == 1:
            side = "S+" if signs.pop() else "S-"
            (plus if side == "S+" else minus).append(model.auxiliary[name])
            added[name] = side
    plus_keys = {_key(c) for c in plus}
    minus_keys = {_key(c) for c in minus}
    boundary_keys = {_key(model.twist_curves[g]) for g in model.boundary_generators}
    used: set[tuple[int, ...]] = set()
    sign_problem = None
    for name, e in word.syllables:
        k = _key(model.curve(name))
        if k in boundary_keys:
            continue  # boundary twists are central and keep pA classes pA
        used.add(k)
        if e > 0 and k not in plus_keys:
            where = "S-" if k in minus_keys else "neither set"
            sign_problem = sign_problem or f"{name} has positive exponent but lies in {where}"
        if e < 0 and k not in minus_keys:
            where = "S+" if k in plus_keys else "neither set"
            sign_problem = sign_problem or f"{name} has negative exponent but lies in {where}"
    if plus_keys & minus_keys:
        sign_problem = sign_problem or "a curve lies in both S+ and S-"

    disjoint_problem = None
    for label, fam in (("S+", plus), ("S-", minus)):
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                if geometric_intersection(fam[i], fam[j]):
                    disjoint_problem = disjoint_problem or f"curves of {label} intersect"

    family = list({_key(c): c for c in plus + minus}.values())
    fill_t = fills_by_traversal(model, family)
    fill_e = fills_by_euler(model, family)
    if fill_t != fill_e:
        raise RuntimeError("filling checks disagree; the complement model is inconsistent")

    all_used = (plus_keys | minus_keys) <= used and bool(plus_keys | minus_keys)
    checks = {
        "signs_ok": sign_problem is None,
        "disjoint_ok": disjoint_problem is None,
        "filling_ok": fill_t,
        "both_nonempty_used": all_used,
    }
    if added:
        checks["auxiliary_added"] = added
    reason = None
    if not checks["signs_ok"]:
        reason = f"sign check fails: {sign_problem}"
    elif not checks["disjoint_ok"]:
        reason = f"disjointness fails: {disjoint_problem}"
    elif not checks["filling_ok"]:
        reason = "filling fails"
    elif not checks["both_nonempty_used"]:
        reason = "some curve of S+ or S- is never twisted"
    verdict = "pA_certified" if reason is None else "not_applicable"
    return PennerCertificate(plus_names, minus_names, checks, verdict, reason)


def capped_penner_sets(ob: OpenBook, boundary: str, s_plus, s_minus) -> tuple[list[str], list[str]]:
    """Images of S+ and S- under capping, with trivial and boundary-parallel images dropped."""
    model = load_surface(ob.surface)
    _, table = cap_surface(model, boundary)

    def images(names):
        out = []
        for x in names:
            kind, tgt = table.image_of(x)
            if kind == "generator" and tgt not in out:
                out.append(tgt)
        return out

    return images(s_plus), images(s_minus)
