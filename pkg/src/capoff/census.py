"""Per-word analysis and the persisted census.

Words are enumerated length-lexicographically: first by number of syllables,
then by generator (catalog order) and exponent (1, -1, 2, -2, ...) of each
syllable from left to right.  Neighbouring syllables use different
generators, so every enumerated word is already in merged form.

Records are one JSON object per line.  They hold only values that a replay
reproduces exactly; run timings go to the summary instead.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Sequence

from . import __version__
from .bounds import Hypotheses, HypothesisConflict, InsufficientResolution, infer_certificates
from .fdtc import DEFAULT_DENOM_BOUND, DEFAULT_K_MAX, FdtcResult, Unresolved, fdtc
from .openbook import OpenBook, cap_off, penner_check
from .surface import CannotCapLast, NotInCatalog, load_surface
from .words import TwistWord


class OutputCorrupt(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# analysis of a single word


def tau_or_interval(surface: str, word: TwistWord, boundary: str, k_max: int, denom_bound: int) -> FdtcResult:
    try:
        return fdtc(surface, word, boundary, k_max=k_max, denom_bound=denom_bound)
    except Unresolved as exc:
        return exc.result


def sign_sets(ob: OpenBook) -> tuple[list[str], list[str]]:
    """Penner sets read off the word: positively and negatively twisted curves."""
    model = load_surface(ob.surface)
    plus, minus = [], []
    for name, e in ob.monodromy.syllables:
        if name in model.boundary_generators:
            continue
        target = plus if e > 0 else minus
        if name not in target:
            target.append(name)
    return plus, minus


def analyze(
    ob: OpenBook,
    hypotheses: Hypotheses = Hypotheses(),
    s_plus: Sequence[str] | None = None,
    s_minus: Sequence[str] | None = None,
    k_max: int = DEFAULT_K_MAX,
    denom_bound: int = DEFAULT_DENOM_BOUND,
) -> dict:
    """Coefficients, capped coefficient, Penner verdicts and certificates."""
    model = load_surface(ob.surface)
    taus = {b: tau_or_interval(ob.surface, ob.monodromy, b, k_max, denom_bound) for b in sorted(model.boundaries)}
    r = len(model.boundaries)

    if s_plus is None and s_minus is None:
        s_plus, s_minus = sign_sets(ob)
    s_plus, s_minus = list(s_plus or []), list(s_minus or [])
    pen = penner_check(ob, s_plus, s_minus)

    capped = capped_pen = capped_book = None
    if r == 2:
        try:
            capped_book = cap_off(ob, "B1")
        except (NotInCatalog, CannotCapLast):
            capped_book = None
    if capped_book is not None:
        (rest,) = load_surface(capped_book.surface).boundaries
        capped = tau_or_interval(capped_book.surface, capped_book.monodromy, rest, k_max, denom_bound)
        cp, cm = sign_sets(capped_book)
        capped_pen = penner_check(capped_book, cp, cm)

    h = hypotheses
    if h.phi_pA is None and pen.certified:
        h = replace(h, phi_pA=True)
    if h.phi0_pA is None and capped_pen is not None and capped_pen.certified:
        h = replace(h, phi0_pA=True)

    pending: list[str] = []
    error = None
    try:
        certs = infer_certificates(taus, capped, r, h)
    except InsufficientResolution as exc:
        certs, pending = exc.partial, exc.pending
    except HypothesisConflict as exc:
        certs, error = [], str(exc)

    out = {
        "surface": ob.surface,
        "word": ob.monodromy.text(),
        "fdtc": {b: t.to_json() for b, t in taus.items()},
        "capped": None,
        "penner": pen.to_json(),
        "certificates": [c.to_json() for c in certs],
    }
    if capped_book is not None:
        out["capped"] = {
            "surface": capped_book.surface,
            "word": capped_book.monodromy.text(),
            "fdtc": capped.to_json(),
            "penner": capped_pen.to_json(),
        }
    if pending:
        out["insufficient_resolution"] = pending
    if error:
        out["conflict"] = error
    return out


# ---------------------------------------------------------------------------
# enumeration


def exponent_order(bound: int) -> list[int]:
    return [s * e for e in range(1, bound + 1) for s in (1, -1)]


def enumerate_words(generators: Sequence[str], max_syllables: int, exponent_bound: int) -> Iterator[tuple]:
    exps = exponent_order(exponent_bound)
    for n in range(1, max_syllables + 1):
        for names in itertools.product(generators, repeat=n):
            if any(names[i] == names[i + 1] for i in range(n - 1)):
                continue
            for es in itertools.product(exps, repeat=n):
                yield tuple(zip(names, es))


@dataclass(frozen=True)
class CensusTask:
    surface: str
    max_syllables: int
    exponent_bound: int
    output_path: Path
    generators: tuple[str, ...] | None = None
    k_max: int = DEFAULT_K_MAX
    denom_bound: int = DEFAULT_DENOM_BOUND
    budget: int | None = None
    workers: int = 1

    def generator_list(self) -> tuple[str, ...]:
        if self.generators:
            return tuple(self.generators)
        return tuple(load_surface(self.surface).generators)


@dataclass
class CensusSummary:
    total: int = 0
    existing: int = 0
    written: int = 0
    pa_certified: int = 0
    not_lspace: int = 0
    seconds: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        return {
            "total_words": self.total,
            "existing_records": self.existing,
            "written": self.written,
            "pA_certified": self.pa_certified,
            "not_Lspace": self.not_lspace,
            "seconds": round(self.seconds, 3),
        }


def record_for(task: CensusTask, index: int, syllables: tuple) -> dict:
    word = TwistWord(task.surface, syllables)
    rec = {"index": index, "engine": __version__}
    rec.update(analyze(OpenBook(task.surface, word), k_max=task.k_max, denom_bound=task.denom_bound))
    return rec


def _dump(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"), ensure_ascii=True)


def _work(args) -> list[tuple[int, str]]:
    task, stride, offset, items = args
    return [(i, _dump(record_for(task, i, syl))) for i, syl in items[offset::stride]]


def _existing(task: CensusTask, words: list[tuple]) -> int:
    path = Path(task.output_path)
    if not path.exists():
        return 0
    count = 0
    with path.open("r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh):
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                raise OutputCorrupt(f"line {lineno + 1} is not a record") from None
            if lineno >= len(words):
                raise OutputCorrupt(f"line {lineno + 1} lies past the end of the enumeration")
            expected = TwistWord(task.surface, words[lineno]).text()
            if rec.get("index") != lineno or rec.get("word") != expected or rec.get("surface") != task.surface:
                raise OutputCorrupt(f"line {lineno + 1} does not match word {lineno} ({expected!r})")
            count += 1
    return count


def replay(task: CensusTask) -> list[int]:
    """Indices of stored records that differ from a fresh computation."""
    words = list(enumerate_words(task.generator_list(), task.max_syllables, task.exponent_bound))
    bad = []
    with Path(task.output_path).open("r", encoding="ascii") as fh:
        for i, line in enumerate(fh):
            if line.rstrip("\n") != _dump(record_for(task, i, words[i])):
                bad.append(i)
    return bad


def census(task: CensusTask) -> CensusSummary:
    t0 = time.perf_counter()
    words = list(enumerate_words(task.generator_list(), task.max_syllables, task.exponent_bound))
    summary = CensusSummary(total=len(words))
    path = Path(task.output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    done = _existing(task, words)
    summary.existing = done
    todo = list(enumerate(words))[done:]
    if task.budget is not None:
        todo = todo[: max(task.budget, 0)]

    if task.workers > 1 and len(todo) > 1:
        w = task.workers
        with ProcessPoolExecutor(max_workers=w) as pool:
            parts = list(pool.map(_work, [(task, w, k, todo) for k in range(w)]))
        lines = sorted(itertools.chain.from_iterable(parts))
    else:
        lines = _work((task, 1, 0, todo))

    with path.open("a", encoding="ascii") as fh:
        for _, line in lines:
            fh.write(line + "\n")
            rec = json.loads(line)
            summary.written += 1
            summary.pa_certified += rec["penner"]["verdict"] == "pA_certified"
            summary.not_lspace += any(c["conclusion"] == "not_Lspace" for c in rec["certificates"])
        fh.flush()
        os.fsync(fh.fileno())
    summary.seconds = time.perf_counter() - t0
    return summary
