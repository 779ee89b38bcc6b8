"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (unresolved coefficients,
surfaces missing from the catalog, conflicting hypotheses, ...), 2 on usage
errors including malformed words.
"""

from __future__ import annotations

import functools
import json
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .bounds import Hypotheses, HypothesisConflict, InsufficientResolution, infer_certificates
from .catalog import SURFACE_IDS, UnknownSurface
from .census import CensusTask, OutputCorrupt, analyze, census, replay
from .collar import WindingOutOfRange, collar_report
from .curves import CurveError, DEFAULT_LENGTH_CAP
from .fdtc import DEFAULT_DENOM_BOUND, DEFAULT_K_MAX, Unresolved, fdtc
from .openbook import OpenBook, branched_cover, cap_off, penner_check
from .surface import CannotCapLast, CatalogCorrupt, NotInCatalog, load_surface, validate_catalog
from .words import ParseError, UnknownGenerator, parse_word

DOMAIN_ERRORS = (
    Unresolved, NotInCatalog, CannotCapLast, CatalogCorrupt, WindingOutOfRange,
    HypothesisConflict, InsufficientResolution, OutputCorrupt, CurveError,
)


class DomainError(click.ClickException):
    exit_code = 1


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except UnknownSurface as exc:
            raise click.UsageError(f"unknown surface {exc.args[0]!r}; choose from {', '.join(SURFACE_IDS)}") from None
        except (ParseError, UnknownGenerator) as exc:
            raise click.UsageError(str(exc)) from None
        except DOMAIN_ERRORS as exc:
            raise DomainError(f"{type(exc).__name__}: {exc}") from None
        except KeyError as exc:
            raise click.UsageError(str(exc.args[0] if exc.args else exc)) from None

    return wrapper


def _emit(data: dict, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(data, indent=2, default=str))
        return
    for line in _lines(data):
        click.echo(line)


def _lines(data, prefix: str = ""):
    for k, v in data.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and not _is_fraction(v):
            yield from _lines(v, key + ".")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                yield from _lines(item, f"{key}[{i}].")
        else:
            yield f"{key}: {_text(v)}"


def _is_fraction(v) -> bool:
    return isinstance(v, dict) and set(v) == {"num", "den"}


def _text(v) -> str:
    if _is_fraction(v):
        return str(Fraction(v["num"], v["den"]))
    if isinstance(v, list):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _book(surface: str, word: str) -> OpenBook:
    return OpenBook(surface, parse_word(word, surface))


def _names(text: str | None) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


def _surface_option(fn):
    return click.option("--surface", required=True, help="Catalog surface: A, P, S1_1 or S1_2.")(fn)


def _word_option(fn):
    return click.option("--word", required=True, help='Monodromy, e.g. "a * b^-1 * c * (a*b)^-6".')(fn)


def _json_option(fn):
    return click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")(fn)


def _fdtc_options(fn):
    fn = click.option("--k-max", default=DEFAULT_K_MAX, show_default=True, help="Largest iterate measured.")(fn)
    fn = click.option("--denom-bound", default=DEFAULT_DENOM_BOUND, show_default=True,
                      help="Largest denominator accepted when pinning.")(fn)
    return fn


@click.group(epilog=f"Word-length cap: env CAPOFF_LENGTH_CAP (default {DEFAULT_LENGTH_CAP}).")
@click.version_option(__version__)
def main() -> None:
    """Fractional Dehn twist coefficients and capping-off inference."""


@main.command("fdtc")
@_surface_option
@_word_option
@click.option("--boundary", required=True, help="Boundary component, e.g. B1.")
@_fdtc_options
@_json_option
@_guard
def fdtc_cmd(surface, word, boundary, k_max, denom_bound, as_json):
    """Fractional Dehn twist coefficient at one boundary."""
    ob = _book(surface, word)
    res = fdtc(surface, ob.monodromy, boundary, k_max=k_max, denom_bound=denom_bound)
    _emit({"surface": surface, "word": ob.monodromy.text(), "boundary": boundary,
           **res.to_json(), "method": res.method}, as_json)


@main.command("cap")
@_surface_option
@_word_option
@click.option("--boundary", required=True, help="Boundary to cap with a disk.")
@_fdtc_options
@_json_option
@_guard
def cap_cmd(surface, word, boundary, k_max, denom_bound, as_json):
    """Cap off a boundary component and report the capped book."""
    capped = cap_off(_book(surface, word), boundary)
    model = load_surface(capped.surface)
    taus = {b: fdtc(capped.surface, capped.monodromy, b, k_max=k_max, denom_bound=denom_bound).to_json()
            for b in sorted(model.boundaries)}
    _emit({"surface": capped.surface, "word": capped.monodromy.text(), "fdtc": taus}, as_json)


@main.command("cover")
@_surface_option
@_word_option
@click.option("--n", "n", type=int, required=True, help="Degree of the cyclic branched cover.")
@click.option("--boundary", default=None, help="Also report the coefficient here.")
@_fdtc_options
@_json_option
@_guard
def cover_cmd(surface, word, n, boundary, k_max, denom_bound, as_json):
    """Open book of the n-fold cyclic cover branched along the binding."""
    if n < 1:
        raise click.BadParameter("n must be positive", param_hint="--n")
    cov = branched_cover(_book(surface, word), n)
    out = {"surface": surface, "word": cov.monodromy.text(), "n": n}
    if boundary:
        out["boundary"] = boundary
        out.update(fdtc(surface, cov.monodromy, boundary, k_max=k_max, denom_bound=denom_bound).to_json())
    _emit(out, as_json)


@main.command("penner")
@_surface_option
@_word_option
@click.option("--plus", default=None, help="Comma-separated S+ (default: positively twisted curves).")
@click.option("--minus", default=None, help="Comma-separated S- (default: negatively twisted curves).")
@_json_option
@_guard
def penner_cmd(surface, word, plus, minus, as_json):
    """Check Penner's construction for the monodromy."""
    ob = _book(surface, word)
    if plus is None and minus is None:
        from .census import sign_sets

        sp, sm = sign_sets(ob)
    else:
        sp, sm = _names(plus), _names(minus)
    _emit(penner_check(ob, sp, sm).to_json(), as_json)


@main.command("collar")
@click.option("--winding", "m", type=int, required=True, help="Winding m of beta_1 in the collar.")
@_json_option
@_guard
def collar_cmd(m, as_json):
    """Triangular domains (Theta_1, y_1, z_1) in the collar of gamma_1."""
    _emit(collar_report(m), as_json)


_HYP_FIELDS = {
    "Y_is_Lspace": bool, "Y0_is_QHS": bool, "Sigma_n_Y0_is_QHS": bool, "c_red_capped_nonzero": bool,
    "dim_HFred_Y": int, "phi_pA": bool, "phi0_pA": bool,
}


def _hypotheses(items) -> Hypotheses:
    kw = {}
    for item in items:
        name, _, value = item.partition("=")
        if name not in _HYP_FIELDS or not value:
            raise click.BadParameter(f"expected NAME=VALUE with NAME in {sorted(_HYP_FIELDS)}", param_hint="--hyp")
        if _HYP_FIELDS[name] is bool:
            if value.lower() not in ("true", "false", "yes", "no", "1", "0"):
                raise click.BadParameter(f"{name} needs a boolean", param_hint="--hyp")
            kw[name] = value.lower() in ("true", "yes", "1")
        else:
            kw[name] = int(value)
    return Hypotheses(**kw)


def _tau_value(text: str):
    if text.startswith("[") and text.endswith("]"):
        lo, hi = text[1:-1].split(",")
        return Fraction(lo.strip()), Fraction(hi.strip())
    return Fraction(text)


@main.command("infer")
@click.option("--surface", default=None, help="Catalog surface (with --word).")
@click.option("--word", default=None, help="Monodromy; coefficients are computed from it.")
@click.option("--tau", "taus", multiple=True, help="Given coefficient, BOUNDARY=VALUE or BOUNDARY=[lo,hi].")
@click.option("--capped-tau", default=None, help="Given capped coefficient (with --tau).")
@click.option("--r", "r", type=int, default=None,
              help="Boundary count for --tau input (default 2 with --capped-tau, else the number of --tau).")
@click.option("--hyp", "hyps", multiple=True, help="Hypothesis NAME=VALUE, e.g. Y0_is_QHS=true or dim_HFred_Y=2.")
@click.option("--plus", default=None, help="Penner S+ for --word.")
@click.option("--minus", default=None, help="Penner S- for --word.")
@_fdtc_options
@_json_option
@_guard
def infer_cmd(surface, word, taus, capped_tau, r, hyps, plus, minus, k_max, denom_bound, as_json):
    """Certificates implied by the coefficients and the asserted hypotheses."""
    h = _hypotheses(hyps)
    if word is not None:
        if surface is None:
            raise click.UsageError("--word needs --surface")
        sp = _names(plus) if plus is not None or minus is not None else None
        sm = _names(minus) if plus is not None or minus is not None else None
        out = analyze(_book(surface, word), h, sp, sm, k_max=k_max, denom_bound=denom_bound)
        _emit(out, as_json)
        if "conflict" in out:
            raise DomainError("HypothesisConflict: " + out["conflict"])
        return
    if not taus:
        raise click.UsageError("give --word or at least one --tau")
    data = {}
    for t in taus:
        b, _, v = t.partition("=")
        data[b] = _tau_value(v)
    capped = _tau_value(capped_tau) if capped_tau else None
    if r is None:
        r = 2 if capped is not None else len(data)
    certs = infer_certificates(data, capped, r, h)
    _emit({"certificates": [c.to_json() for c in certs]}, as_json)


@main.command("census")
@_surface_option
@click.option("--max-syllables", type=int, required=True)
@click.option("--exponent-bound", type=int, required=True)
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), required=True, help="JSONL file (appended).")
@click.option("--generators", default=None, help="Comma-separated generator names (default: catalog generators).")
@click.option("--budget", type=int, default=None, help="Most words to process in this run.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--replay", "do_replay", is_flag=True, help="Recompute stored records and report mismatches.")
@_fdtc_options
@_json_option
@_guard
def census_cmd(surface, max_syllables, exponent_bound, output, generators, budget, workers, do_replay,
               k_max, denom_bound, as_json):
    """Enumerate words, analyse each, and append one record per word."""
    task = CensusTask(surface, max_syllables, exponent_bound, output, tuple(_names(generators)) or None,
                      k_max, denom_bound, budget, workers)
    if do_replay:
        bad = replay(task)
        _emit({"mismatched_records": bad}, as_json)
        if bad:
            raise DomainError(f"OutputCorrupt: {len(bad)} records do not replay")
        return
    _emit(census(task).to_json(), as_json)


@main.command("verify-catalog")
@click.option("--surface", default=None, help="Only this surface.")
@_json_option
@_guard
def verify_catalog_cmd(surface, as_json):
    """Recompute every catalog invariant."""
    ids = [surface] if surface else ["A", "P", "S1_1", "S1_2"]
    report = {}
    for sid in ids:
        report[sid] = validate_catalog(load_surface(sid))
    _emit(report, as_json)
    if not all(r.get("ok") for r in report.values()):
        raise DomainError("catalog check failed")


if __name__ == "__main__":  # pragma: no cover
    main()
