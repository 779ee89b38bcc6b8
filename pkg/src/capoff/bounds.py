"""Inference over the capping-off implications.

Floer-theoretic facts are inputs.  The engine combines them with twist
coefficients, which may be exact or known only up to an interval, and emits
every conclusion whose hypotheses hold on the whole interval.  B1 is the
capped boundary throughout; the capped book has the single boundary B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Mapping

from .fdtc import FdtcResult

SCHEMA_VERSION = 1
SURGERY_RANGE = range(1, 5)

CITE_LSPACE = "capping-off theorem for L-spaces: c_red of the capped book vanishes"
CITE_LSPACE_R2 = "two-boundary L-space corollary: capped coefficient at most 1"
CITE_RED = "capping-off theorem for general Y with rational homology sphere Y_0"
CITE_SURGERY = "surgery corollary: dim HF+_red(Y_1/n(B1)) >= -tau_B1 + n - 1"
CITE_RED_R2 = "two-boundary corollary bounding the capped coefficient by dim HF+_red(Y)"
CITE_COVER = "branched cover corollary for two-boundary open books"
CITE_HKM = "Honda-Kazez-Matic: c_red nonzero when the single-boundary coefficient exceeds 1"
CITE_PA = "pseudo-Anosov tight books have positive coefficients (strengthened inequalities)"
CITE_TIGHT = "tight contact structures have nonnegative coefficients at every boundary"


class HypothesisConflict(ValueError):
    pass


class InsufficientResolution(Exception):
    """Some rule's threshold lies inside a coefficient interval."""

    def __init__(self, pending: list[str], partial: list["Certificate"]):
        super().__init__("interval straddles a threshold: " + "; ".join(pending))
        self.pending = pending
        self.partial = partial


@dataclass(frozen=True)
class Hypotheses:
    Y_is_Lspace: bool | None = None
    Y0_is_QHS: bool | None = None
    Sigma_n_Y0_is_QHS: bool | None = None
    c_red_capped_nonzero: bool | None = None
    dim_HFred_Y: int | None = None
    phi_pA: bool | None = None
    phi0_pA: bool | None = None

    def __post_init__(self) -> None:
        if self.dim_HFred_Y is not None and self.dim_HFred_Y < 0:
            raise ValueError("dim_HFred_Y must be nonnegative")
        if self.Y_is_Lspace is True and self.dim_HFred_Y not in (None, 0):
            raise HypothesisConflict("an L-space has dim HF+_red = 0")
        if self.Y_is_Lspace is False and self.dim_HFred_Y == 0:
            raise HypothesisConflict("dim HF+_red = 0 means Y is an L-space")

    def known(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}


@dataclass(frozen=True)
class Certificate:
    rule: str
    conclusion: str
    params: tuple = ()
    hypotheses_used: tuple[str, ...] = ()
    citation: str = ""
    inequality: str = ""
    note: str = field(default="", compare=False)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "rule": self.rule,
            "conclusion": self.conclusion,
            "params": [_num(x) for x in self.params],
            "hypotheses_used": list(self.hypotheses_used),
            "citation": self.citation,
            "inequality": self.inequality,
        }
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self) -> str:
        args = ", ".join(str(x) for x in self.params)
        head = f"{self.conclusion}({args})" if self.params else self.conclusion
        return f"{head} [{self.rule}] {self.inequality}"


def _num(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


# ---------------------------------------------------------------------------
# interval arithmetic


Interval = tuple[Fraction, Fraction]


def as_interval(value) -> Interval:
    if isinstance(value, FdtcResult):
        return value.interval if value.value is None else (value.value, value.value)
    if isinstance(value, tuple):
        lo, hi = Fraction(value[0]), Fraction(value[1])
        if lo > hi:
            raise ValueError("empty interval")
        return lo, hi
    v = Fraction(value)
    return v, v


def _fmt(iv: Interval) -> str:
    lo, hi = iv
    return str(lo) if lo == hi else f"[{lo}, {hi}]"


class _Judge:
    """Three-valued comparisons; a straddle is recorded and counts as false."""

    def __init__(self) -> None:
        self.pending: list[str] = []

    def _decide(self, always: bool, never: bool, what: str) -> bool:
        if always:
            return True
        if not never:
            self.pending.append(what)
        return False

    def lt(self, iv: Interval, t, what: str) -> bool:
        return self._decide(iv[1] < t, iv[0] >= t, f"{what} < {t}")

    def le(self, iv: Interval, t, what: str) -> bool:
        return self._decide(iv[1] <= t, iv[0] > t, f"{what} <= {t}")

    def gt(self, iv: Interval, t, what: str) -> bool:
        return self._decide(iv[0] > t, iv[1] <= t, f"{what} > {t}")

    def ge(self, iv: Interval, t, what: str) -> bool:
        return self._decide(iv[0] >= t, iv[1] < t, f"{what} >= {t}")


def _taus(fdtc_data: Mapping) -> dict[str, Interval]:
    taus = {b: as_interval(v) for b, v in fdtc_data.items()}
    if "B1" not in taus:
        raise KeyError("fdtc data must include the capped boundary B1")
    return taus


# ---------------------------------------------------------------------------
# derived hypotheses


def derive_hypotheses(fdtc_data: Mapping, r: int, h: Hypotheses, capped_fdtc=None) -> Hypotheses:
    """Add c_red(S_0, phi_0) != 0 when the capped coefficient forces it."""
    if r != 2 or capped_fdtc is None:
        return h
    cap = as_interval(capped_fdtc)
    j = _Judge()
    nonzero = j.gt(cap, 1, "capped tau") or (h.phi0_pA is True and j.ge(cap, 1, "capped tau"))
    if not nonzero:
        return h
    if h.c_red_capped_nonzero is False:
        raise HypothesisConflict(
            f"capped tau = {_fmt(cap)} forces c_red(S_0, phi_0) != 0, but it was asserted zero"
        )
    return replace(h, c_red_capped_nonzero=True)


def _derivation_certificate(cap: Interval, h: Hypotheses) -> Certificate:
    if cap[0] > 1:
        return Certificate(
            "hkm_capped_nonzero", "c_red_capped_nonzero_derived", (),
            ("r=2",), CITE_HKM, f"tau_B(S_0,phi_0) = {_fmt(cap)} > 1",
        )
    return Certificate(
        "hkm_capped_nonzero_pA", "c_red_capped_nonzero_derived", (),
        ("r=2", "phi0_pA"), CITE_HKM + "; " + CITE_PA, f"tau_B(S_0,phi_0) = {_fmt(cap)} >= 1",
    )


# ---------------------------------------------------------------------------
# certificates


def infer_certificates(fdtc_data: Mapping, capped_fdtc, r: int, h: Hypotheses) -> list[Certificate]:
    """Every certificate whose hypotheses hold on the whole of each interval.

    Raises InsufficientResolution (carrying the decided certificates) when a
    relevant threshold falls inside an interval.
    """
    taus = _taus(fdtc_data)
    t1 = taus["B1"]
    others = {b: iv for b, iv in taus.items() if b != "B1"}
    cap = as_interval(capped_fdtc) if capped_fdtc is not None else None
    user = h
    h = derive_hypotheses(fdtc_data, r, h, capped_fdtc)
    j = _Judge()
    out: list[Certificate] = []

    if h.c_red_capped_nonzero and not user.c_red_capped_nonzero and cap is not None:
        out.append(_derivation_certificate(cap, h))

    memo: dict = {}

    def cases() -> tuple[bool, list[str], bool]:
        # evaluated only when a rule consults them, so unused thresholds never straddle
        if not memo:
            c1 = j.lt(t1, -1, "tau_B1")
            neg = [b for b, iv in sorted(others.items()) if j.lt(iv, 0, f"tau_{b}")]
            memo["v"] = (c1, neg, bool(neg) and j.lt(t1, 0, "tau_B1"))
        return memo["v"]

    def negatives() -> list[str]:
        return cases()[1]

    # forward direction for an L-space
    if h.Y_is_Lspace is True and (cases()[0] or cases()[2]):
        case1, neg_other, case2 = cases()
        why = "tau_B1 < -1" if case1 else f"tau_B1 < 0 and tau_{neg_other[0]} < 0"
        if h.c_red_capped_nonzero:
            raise HypothesisConflict(f"Y is an L-space and {why}, so c_red(S_0,phi_0) = 0, yet it is nonzero")
        out.append(Certificate("lspace_capping", "c_red_capped_zero", (), ("Y_is_Lspace",), CITE_LSPACE,
                               f"{why} with tau_B1 = {_fmt(t1)}"))
        if r == 2:
            if case1 or neg_other:
                if cap is not None and j.gt(cap, 1, "capped tau"):
                    raise HypothesisConflict(f"capped tau = {_fmt(cap)} > 1 contradicts Y being an L-space")
                out.append(Certificate("lspace_capped_bound", "capped_tau_le_1", (), ("Y_is_Lspace", "r=2"),
                                       CITE_LSPACE_R2, f"{why} gives tau_B(S_0,phi_0) <= 1"))

    # forward direction with known dim HF+_red(Y)
    d = h.dim_HFred_Y
    if h.Y0_is_QHS and d is not None and h.Y_is_Lspace is not True:
        c1 = j.lt(t1, -d - 1, "tau_B1")
        neg_other = negatives()
        c2 = bool(neg_other) and j.lt(t1, -d, "tau_B1")
        if c1 or c2:
            if h.c_red_capped_nonzero:
                raise HypothesisConflict("c_red(S_0,phi_0) would vanish, yet it is nonzero")
            why = f"tau_B1 = {_fmt(t1)} < {-d - 1}" if c1 else f"tau_B1 = {_fmt(t1)} < {-d} and tau_{neg_other[0]} < 0"
            out.append(Certificate("red_capping", "c_red_capped_zero", (), ("Y0_is_QHS", "dim_HFred_Y"),
                                   CITE_RED, why))
            if r == 2:
                out.append(Certificate("red_capped_bound", "capped_tau_le_1", (), ("Y0_is_QHS", "dim_HFred_Y", "r=2"),
                                       CITE_RED_R2, why + " gives tau_B(S_0,phi_0) <= 1"))

    nonzero = bool(h.c_red_capped_nonzero)

    # contrapositive (i): Y is not an L-space
    if r == 2 and nonzero and h.Y_is_Lspace is not True:
        reason = None
        case1, neg_other, case2 = cases()
        if case1:
            reason = ("lspace_contra", f"tau_B1 = {_fmt(t1)} < -1")
        elif case2:
            reason = ("lspace_contra", f"tau_B1 = {_fmt(t1)} < 0 and tau_{neg_other[0]} < 0")
        elif h.phi_pA and j.le(t1, -1, "tau_B1"):
            reason = ("lspace_contra_pA", f"tau_B1 = {_fmt(t1)} <= -1 with phi pseudo-Anosov")
        if reason:
            rule, why = reason
            used = ["r=2", "c_red_capped_nonzero"] + (["phi_pA"] if rule.endswith("pA") else [])
            cite = CITE_LSPACE_R2 + (", strengthened for pseudo-Anosov phi" if rule.endswith("pA") else "")
            out.append(Certificate(rule, "not_Lspace", (), tuple(used), cite, why))

    # contrapositive (ii): lower bound on dim HF+_red(Y)
    if r == 2 and nonzero and h.Y0_is_QHS:
        bound = None
        if h.phi_pA:
            # dim > -tau_B1 - 1
            b = math.floor(-t1[1] - 1) + 1
            bound = ("red_contra_pA", b, f"dim HF+_red(Y) > -tau_B1 - 1 = {_fmt((-t1[1] - 1, -t1[0] - 1))}")
        else:
            b = math.ceil(-t1[1] - 1)
            text = f"dim HF+_red(Y) >= -tau_B1 - 1 = {_fmt((-t1[1] - 1, -t1[0] - 1))}"
            neg_other = negatives()
            if neg_other:
                b2 = math.ceil(-t1[1])
                if b2 > b:
                    b = b2
                    text = f"dim HF+_red(Y) >= -tau_B1 = {_fmt((-t1[1], -t1[0]))} since tau_{neg_other[0]} < 0"
            bound = ("red_contra", b, text)
        rule, b, text = bound
        if b >= 1 or rule == "red_contra_pA" and b >= 0:
            used = ["r=2", "c_red_capped_nonzero", "Y0_is_QHS"] + (["phi_pA"] if rule.endswith("pA") else [])
            cite = CITE_RED_R2 + (", strengthened for pseudo-Anosov phi" if rule.endswith("pA") else "")
            if b >= 1:
                out.append(Certificate(rule, "HFred_lower_bound", (b,), tuple(used), cite, text))
                if not any(c.conclusion == "not_Lspace" for c in out):
                    out.append(Certificate(rule, "not_Lspace", (), tuple(used), cite, text + f", so dim >= {b} > 0"))

    # surgeries on B1
    if nonzero and h.Y0_is_QHS:
        for n in SURGERY_RANGE:
            lo = -t1[1] + n - 1
            out.append(Certificate(
                "surgery_bound", "surgery_HFred_bound", (n, lo), ("Y0_is_QHS", "c_red_capped_nonzero"),
                CITE_SURGERY, f"dim HF+_red(Y_1/{n}(B1)) >= -tau_B1 + {n} - 1 = {_fmt((lo, -t1[0] + n - 1))}",
            ))

    # branched covers
    if r == 2 and cap is not None:
        if j.lt(t1, 0, "tau_B1") and j.gt(cap, 0, "capped tau"):
            n_min = _cover_threshold(t1[1], cap[0])
            out.append(Certificate(
                "cover", "cover_not_Lspace", (n_min,), ("r=2",), CITE_COVER,
                f"{n_min}*tau_B1 < -1 and {n_min}*tau_B(S_0,phi_0) > 1",
            ))
            if h.Sigma_n_Y0_is_QHS:
                out.append(Certificate(
                    "cover_red", "cover_HFred_bound", (n_min, -n_min * t1[1] - 1), ("r=2", "Sigma_n_Y0_is_QHS"),
                    CITE_COVER, f"dim HF+_red(Sigma_n) >= -n*tau_B1 - 1 = -n*{_fmt(t1)} - 1",
                    note=f"for n >= {n_min}",
                ))

    # tightness bookkeeping
    if nonzero:
        out.append(Certificate("tight_capped", "tau_nonneg_all", ("S_0",), ("c_red_capped_nonzero",), CITE_TIGHT,
                               "tau_B(S_0,phi_0) >= 0"))
        if cap is not None and j.lt(cap, 0, "capped tau"):
            raise HypothesisConflict("capped book is tight yet its coefficient is negative")

    if j.pending:
        raise InsufficientResolution(sorted(set(j.pending)), out)
    return out


def _cover_threshold(hi1: Fraction, lo_cap: Fraction) -> int:
    """Least n with n*hi1 < -1 and n*lo_cap > 1 (hi1 < 0 < lo_cap)."""
    n1 = math.floor(Fraction(-1) / hi1) + 1
    n2 = math.floor(Fraction(1) / lo_cap) + 1
    return max(n1, n2, 1)
