"""Report rendering: the versioned JSON schema and the human-readable text."""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import mpmath

from .. import __version__
from ..config import SCHEMA_VERSION
from ..algebra.polycore import IntPoly, RatInterval
from ..algebra.salem import EntropyEstimate, SalemClassification
from ..external.files import witness_to_document
from ..surfaces.k3 import K3Report, ExtensionMechanicsReport
from ..surfaces.lattice import SignatureTriple
from ..surfaces.torus import ProjectiveFlags, TorusRealizability, WitnessReport
from .poly_text import format_poly


@dataclass
class Report:
    command: str
    input: Any
    result: Dict[str, Any]
    exit_code: int = 0
    timing: Optional[float] = None
    summary: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "timing": self.timing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        return "\n".join(self.summary)


# --- number formatting ---

def decimal_string(x, digits: int) -> str:
    """Exact rational rounded half-up to a fixed number of decimals."""
    x = Fraction(x)
    scaled = x * 10 ** digits
    n = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def bracket_payload(iv: Optional[RatInterval], digits: int) -> Optional[Dict[str, Any]]:
    if iv is None:
        return None
    return {
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "approx": decimal_string(iv.midpoint, digits),
        "width": mpmath.nstr(mpmath.mpf(iv.width.numerator) / iv.width.denominator, 3),
    }


def bracket_text(iv: RatInterval, digits: int) -> str:
    return f"{decimal_string(iv.midpoint, digits)} (bracket width {mpmath.nstr(mpmath.mpf(iv.width.numerator) / iv.width.denominator, 3)})"


def poly_payload(p: IntPoly) -> Dict[str, Any]:
    return {"text": format_poly(p), "coefficients": p.descending()}


# --- per-command payloads ---

def classification_payload(v: SalemClassification, estimate: Optional[EntropyEstimate], digits: int):
    loc = v.locations
    return {
        "polynomial": poly_payload(v.input),
        "degree": v.degree,
        "monic": v.monic,
        "reciprocal": v.reciprocal,
        "is_salem": v.is_salem,
        "reason": v.reason.value,
        "cyclotomic_factors": [[n, m] for n, m in v.cyclotomic_factors],
        "core": format_poly(v.core),
        "root_locations": None if loc is None else {
            "real_gt_1": loc.n_real_gt1,
            "real_in_0_1": loc.n_real_in_0_1,
            "real_lt_minus_1": loc.n_real_lt_minus1,
            "real_in_minus_1_0": loc.n_real_in_minus1_0,
            "on_circle": loc.n_on_circle,
            "complex_off_circle": loc.n_complex_off_circle,
            "at_one": loc.at_one,
            "at_minus_one": loc.at_minus_one,
        },
        "lambda": bracket_payload(v.lam, digits),
        "entropy": entropy_payload(estimate, digits),
    }


def classification_text(v: SalemClassification, estimate: Optional[EntropyEstimate], digits: int) -> List[str]:
    lines = [f"{format_poly(v.input)}: {v.describe()}"]
    if v.is_salem:
        lines.append(f"  lambda  ~ {bracket_text(v.lam, digits)}")
    if estimate is not None:
        lines.append(f"  entropy ~ {entropy_text(estimate, digits)}")
    if v.cyclotomic_factors and not v.is_salem:
        lines.append(f"  non-cyclotomic core: {format_poly(v.core)}")
    return lines


def entropy_payload(e: Optional[EntropyEstimate], digits: int):
    if e is None:
        return None
    return {
        "value": f"{e.value:.{digits}f}",
        "error_bound": f"{e.error:.3g}",
        "lambda": bracket_payload(e.lam, digits),
        "zero": e.is_zero,
    }


def entropy_text(e: EntropyEstimate, digits: int) -> str:
    if e.is_zero:
        return "0 (cyclotomic)"
    return f"{e.value:.{digits}f} (error <= {e.error:.3g})"


def witness_report_payload(r: WitnessReport):
    return {
        "passed": r.passed,
        "checks": {name: ok for name, ok in r.checks},
        "spectral_radius": f"{r.spectral_radius:.12g}",
    }


def witness_report_text(r: WitnessReport) -> List[str]:
    lines = [f"  {'pass' if ok else 'FAIL'}  {name}" for name, ok in r.checks]
    lines.append(f"  spectral radius of F2 ~ {r.spectral_radius:.12g}")
    return lines


def projective_payload(flags: Optional[ProjectiveFlags]):
    if flags is None:
        return None
    exe = flags.exe
    return {
        "projective_torus_possible": flags.projective_torus_possible,
        "note": flags.note,
        "projective_example": flags.projective_example,
        "exe": None if exe is None else {
            "a": exe.a,
            "verdict": exe.verdict,
            "A": None if exe.A is None else [[int(x) for x in row] for row in exe.A],
            "h2_charpoly": None if exe.h2_charpoly is None else format_poly(exe.h2_charpoly),
        },
    }


def torus_payload(res: TorusRealizability, flags: Optional[ProjectiveFlags]):
    sq = res.square
    cases = res.cases
    return {
        "polynomial": poly_payload(res.S),
        "degree": res.degree,
        "realizable": res.realizable,
        "reason": res.reason,
        "case": res.case,
        "degree4_cases": None if cases is None else {
            "S(1)": cases.s_at_one, "S(-1)": cases.s_at_minus_one,
            "a": cases.a, "b": cases.b, "c": cases.c,
        },
        "successful_cofactors": [format_poly(c) for c in res.successful_cofactors],
        "square_property": None if sq is None else {
            "Q(1)": sq.q_at_one, "Q(-1)": sq.q_at_minus_one, "holds": sq.holds, "m": sq.m, "n": sq.n,
        },
        "witness": None if res.witness is None else witness_to_document(res.witness),
        "verification": None if res.verification is None else witness_report_payload(res.verification),
        "projective": projective_payload(flags),
    }


def torus_text(res: TorusRealizability, flags: Optional[ProjectiveFlags]) -> List[str]:
    verdict = "realizable" if res.realizable else "not realizable"
    lines = [f"{format_poly(res.S)}: {verdict} on a complex torus ({res.reason})"]
    if res.cases is not None:
        c = res.cases
        lines.append(f"  S(1) = {c.s_at_one}, S(-1) = {c.s_at_minus_one}; cases a={c.a} b={c.b} c={c.c}")
        if res.successful_cofactors:
            lines.append(f"  square-property cofactors: {', '.join(format_poly(p) for p in res.successful_cofactors)}")
    if res.square is not None:
        sq = res.square
        lines.append(f"  Q(1) = {sq.q_at_one}, Q(-1) = {sq.q_at_minus_one}, square property {'holds' if sq.holds else 'fails'}")
    w = res.witness
    if w is not None:
        lines.append(f"  case {w.case}: C = {format_poly(w.C)}, Q = {format_poly(w.Q)}")
        lines.append(f"  m = {w.m}, n = {w.n}, j = {w.j}, k = {w.k}, P = {format_poly(w.P)}")
        lines.append("  F1 (H^1) rows: " + "; ".join(" ".join(str(x) for x in row) for row in w.F1))
        lines.append("  F2 (H^2) rows: " + "; ".join(" ".join(str(x) for x in row) for row in w.F2))
    if res.verification is not None:
        lines.extend(witness_report_text(res.verification))
    if flags is not None:
        state = {True: "possible", False: "impossible", None: "undetermined"}[flags.projective_torus_possible]
        lines.append(f"  projective torus: {state} ({flags.note})")
        if flags.projective_example:
            lines.append(f"  known projective realization: {flags.projective_example}")
    return lines


def k3_payload(r: K3Report):
    return {
        "polynomial": poly_payload(r.S),
        "degree": r.degree,
        "verdict": r.verdict.value,
        "necessary_squares": {
            "abs_S(-1)": r.necessary.abs_at_minus_one,
            "abs_S(1)": r.necessary.abs_at_one,
            "minus_product": r.necessary.minus_product,
        },
        "product": r.product,
        "product_is_minus_one": r.product_is_minus_one,
        "gm_signature": None if r.gm_signature is None else list(r.gm_signature),
        "gm_applicable": r.gm_applicable,
        "projective_k3_possible": r.projective_k3_possible,
        "projective_kummer_possible": r.projective_kummer_possible,
        "notes": list(r.notes),
    }


def k3_text(r: K3Report) -> List[str]:
    n = r.necessary
    lines = [f"{format_poly(r.S)}: K3 verdict {r.verdict.value}",
             f"  S(-1)S(1) = {r.product}; squares |S(-1)|={n.abs_at_minus_one} |S(1)|={n.abs_at_one} "
             f"-S(-1)S(1)={n.minus_product}"]
    if r.gm_signature is not None:
        p, q = r.gm_signature
        lines.append(f"  isometry of L_({p},{q}) guaranteed: {r.gm_applicable}")
    lines.extend(f"  note: {note}" for note in r.notes)
    return lines


def signature_payload(s: SignatureTriple):
    return {"pos": s.pos, "neg": s.neg, "zero": s.zero}


def extension_payload(r: ExtensionMechanicsReport):
    eig = r.eigenspaces
    return {
        "passed": r.passed,
        "checks": {name: ok for name, ok in r.checks},
        "salem_factor": format_poly(r.salem_factor),
        "spectral_radius": f"{r.spectral_radius:.12g}",
        "ambient_signature": signature_payload(r.ambient_signature),
        "ambient_even": r.ambient_even,
        "ambient_unimodular": r.ambient_unimodular,
        "eigenspaces": None if eig is None else [
            {"tau": f"{e.tau:.12g}", "dimension": e.dimension,
             "signature": None if e.signature is None else list(e.signature),
             "residual": f"{e.residual:.3g}"}
            for e in eig.entries
        ],
    }


def extension_text(r: ExtensionMechanicsReport) -> List[str]:
    lines = [f"  extension over E8(-1): ambient signature {r.ambient_signature}, "
             f"even={r.ambient_even}, unimodular={r.ambient_unimodular}"]
    lines.extend(f"  {'pass' if ok else 'FAIL'}  {name}" for name, ok in r.checks)
    if r.eigenspaces is not None:
        for e in r.eigenspaces.entries:
            sig = "indeterminate" if e.signature is None else f"({e.signature[0]},{e.signature[1]})"
            lines.append(f"  tau ~ {e.tau:.12g}: dim {e.dimension}, signature {sig}")
    return lines
