"""Salem polynomial classification, lambda brackets, entropy and enumeration."""

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

import mpmath

from ..config import MAX_ENUMERATION_DEGREE
from ..errors import InputError, NotSalemError
from ..utils.logger import get_logger
from ..utils.settings_manager import default_tolerance, SettingsManager
from ..utils.system_info import available_memory_mb
from ..utils.threading_utils import WorkerManager
from ..utils.timing import Stopwatch
from .polycore import (
    IntPoly, RatInterval, RootLocationReport, is_palindromic, isolate_real_roots,
    refine_root, root_locations, sqrt_bracket, squarefree_decomposition,
    squarefree_part, strip_cyclotomic_factors, trace_poly,
)

logger = get_logger()


class SalemReason(Enum):
    """Why a polynomial was (or was not) classified as Salem."""
    SALEM = "salem"
    ZERO_POLYNOMIAL = "zero polynomial"
    NOT_MONIC = "not monic"
    NOT_RECIPROCAL = "not reciprocal"
    ODD_DEGREE = "odd degree"
    CONSTANT = "constant polynomial"
    OFF_CIRCLE_COMPLEX = "non-real roots off the unit circle"
    NEGATIVE_REAL_ROOTS = "negative real roots off the unit circle"
    EXTRA_REAL_PAIRS = "more than one real root pair off the unit circle"
    CYCLOTOMIC_ONLY = "product of cyclotomic polynomials (lambda = 1)"
    CYCLOTOMIC_FACTOR = "cyclotomic factor"
    NO_REAL_PAIR = "no real root pair off the unit circle"


@dataclass(frozen=True)
class SalemClassification:
    """Verdict record for one polynomial."""
    input: IntPoly
    monic: bool
    reciprocal: bool
    cyclotomic_factors: Tuple[Tuple[int, int], ...]
    core: IntPoly
    locations: Optional[RootLocationReport]
    is_salem: bool
    degree: int
    lam: Optional[RatInterval]
    reason: SalemReason

    @property
    def is_cyclotomic_only(self) -> bool:
        return self.reason is SalemReason.CYCLOTOMIC_ONLY

    def describe(self) -> str:
        if self.is_salem:
            return f"Salem, degree {self.degree}"
        if self.reason is SalemReason.CYCLOTOMIC_FACTOR:
            names = ", ".join(f"Phi_{n}^{m}" if m > 1 else f"Phi_{n}" for n, m in self.cyclotomic_factors)
            return f"not Salem: cyclotomic factor {names}"
        return f"not Salem: {self.reason.value}"


@dataclass(frozen=True)
class H2Spectrum:
    """lambda, 1/lambda and the real traces of the unit-circle eigenvalue pairs."""
    lam: RatInterval
    lam_inv: RatInterval
    unit_eigenvalue_traces: Tuple[RatInterval, ...]

    @property
    def eigenvalue_count(self) -> int:
        return 2 + 2 * len(self.unit_eigenvalue_traces)


@dataclass(frozen=True)
class EntropyEstimate:
    """log(lambda) with a rigorous error bound."""
    value: float
    error: float
    lam: RatInterval

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0 and self.error == 0.0


def _lambda_from_trace_root(r: RatInterval, tol: Fraction) -> RatInterval:
    """Map a bracket of r = lambda + 1/lambda to a bracket of lambda, rounding outward."""
    root_lo = sqrt_bracket(r.lo * r.lo - 4, tol).lo
    root_hi = sqrt_bracket(r.hi * r.hi - 4, tol).hi
    return RatInterval((r.lo + root_lo) / 2, (r.hi + root_hi) / 2)


def _lambda_bracket(S: IntPoly, tol: Fraction) -> RatInterval:
    R = squarefree_part(trace_poly(S))
    brackets = isolate_real_roots(R, 2, None, tol)
    if len(brackets) != 1:
        raise NotSalemError(f"{S} has {len(brackets)} real root pairs off the unit circle")
    r = brackets[0]
    inner_tol = tol
    lam = _lambda_from_trace_root(r, inner_tol)
    while lam.width > tol:
        inner_tol /= 16
        r = refine_root(R, r, inner_tol)
        lam = _lambda_from_trace_root(r, inner_tol)
    return lam


def classify_salem(S: IntPoly, tol=None) -> SalemClassification:
    """Decide whether S is a Salem polynomial; failures come back as reasons."""
    tol = default_tolerance() if tol is None else Fraction(tol)

    def verdict(reason, monic=False, reciprocal=False, factors=(), core=S, locations=None, lam=None):
        return SalemClassification(
            input=S, monic=monic, reciprocal=reciprocal,
            cyclotomic_factors=tuple(factors), core=core, locations=locations,
            is_salem=reason is SalemReason.SALEM, degree=S.degree, lam=lam, reason=reason,
        )

    if S.is_zero:
        return verdict(SalemReason.ZERO_POLYNOMIAL)
    monic = S.leading == 1
    reciprocal = is_palindromic(S)
    if not monic:
        return verdict(SalemReason.NOT_MONIC, reciprocal=reciprocal)
    if not reciprocal:
        return verdict(SalemReason.NOT_RECIPROCAL, monic=True)
    if S.degree % 2:
        return verdict(SalemReason.ODD_DEGREE, monic=True, reciprocal=True)
    if S.degree == 0:
        return verdict(SalemReason.CONSTANT, monic=True, reciprocal=True)

    core, factors = strip_cyclotomic_factors(S)
    locations = root_locations(S)
    common = dict(monic=True, reciprocal=True, factors=factors, core=core, locations=locations)
    if locations.n_complex_off_circle:
        return verdict(SalemReason.OFF_CIRCLE_COMPLEX, **common)
    if locations.n_real_lt_minus1:
        return verdict(SalemReason.NEGATIVE_REAL_ROOTS, **common)
    if locations.n_real_gt1 > 1:
        return verdict(SalemReason.EXTRA_REAL_PAIRS, **common)
    if core.degree == 0:
        return verdict(SalemReason.CYCLOTOMIC_ONLY, **common)
    if factors:
        return verdict(SalemReason.CYCLOTOMIC_FACTOR, **common)
    if locations.n_real_gt1 == 0:
        return verdict(SalemReason.NO_REAL_PAIR, **common)
    return verdict(SalemReason.SALEM, lam=_lambda_bracket(S, tol), **common)


def salem_lambda(S: IntPoly, tol=None) -> RatInterval:
    """Bracket of width <= tol around the Salem number of S."""
    tol = default_tolerance() if tol is None else Fraction(tol)
    verdict = classify_salem(S, tol)
    if not verdict.is_salem:
        raise NotSalemError(f"{S} is {verdict.describe()}")
    return verdict.lam


def entropy(S: IntPoly, tol=None) -> EntropyEstimate:
    """log(lambda) with error bound <= tol; zero for products of cyclotomic polynomials."""
    tol = default_tolerance() if tol is None else Fraction(tol)
    verdict = classify_salem(S, tol)
    if verdict.is_cyclotomic_only:
        return EntropyEstimate(0.0, 0.0, RatInterval(1, 1))
    if not verdict.is_salem:
        raise NotSalemError(f"{S} is {verdict.describe()}")
    lam = verdict.lam
    with mpmath.workdps(40):
        lo = mpmath.mpf(lam.lo.numerator) / lam.lo.denominator
        hi = mpmath.mpf(lam.hi.numerator) / lam.hi.denominator
        value = mpmath.log((lo + hi) / 2)
        # |log x - log mid| <= (hi - lo) / (2 lo) on the bracket
        error = (hi - lo) / (2 * lo)
        return EntropyEstimate(float(value), float(error), lam)


def h2_spectrum(Q: IntPoly, tol=None) -> H2Spectrum:
    """Eigenvalue data of a reciprocal polynomial with a single real pair off the circle."""
    tol = default_tolerance() if tol is None else Fraction(tol)
    locations = root_locations(Q)
    if locations.n_real_gt1 != 1 or locations.n_off_circle != 2:
        raise NotSalemError(f"{Q} does not have exactly one real root pair off the unit circle")
    lam = _lambda_bracket(Q, tol)
    traces = []
    for factor, multiplicity in squarefree_decomposition(trace_poly(Q)):
        for iv in isolate_real_roots(factor, -2, 2, tol):
            traces.extend([iv] * multiplicity)
    traces.extend([RatInterval(2, 2)] * (locations.at_one // 2))
    traces.extend([RatInterval(-2, -2)] * (locations.at_minus_one // 2))
    return H2Spectrum(lam=lam, lam_inv=RatInterval(1 / lam.hi, 1 / lam.lo),
                      unit_eigenvalue_traces=tuple(sorted(traces, key=lambda iv: iv.lo)))


def _palindrome(free: Tuple[int, ...]) -> IntPoly:
    """Monic reciprocal polynomial from its free coefficients c_1..c_{d/2}."""
    head = (1,) + tuple(free)
    return IntPoly(head + tuple(reversed(head[:-1])))


def _enumerate_prefix(unit):
    """Salem polynomials whose first free coefficient is fixed."""
    degree, bound, first, tol = unit
    found = []
    rest = range(-bound, bound + 1)
    for tail in itertools.product(rest, repeat=degree // 2 - 1):
        S = _palindrome((first,) + tail)
        # Salem polynomials satisfy S(1) < 0 < S(-1)
        if S(1) >= 0 or S(-1) <= 0:
            continue
        verdict = classify_salem(S, tol)
        if verdict.is_salem:
            found.append(verdict)
    return found


def enumerate_salem(degree: int, bound: int, tol=None, workers=None) -> List[SalemClassification]:
    """All Salem polynomials of the given degree with free coefficients in [-bound, bound], by lambda."""
    if degree % 2 or not 2 <= degree <= MAX_ENUMERATION_DEGREE:
        raise InputError(f"Degree must be even and between 2 and {MAX_ENUMERATION_DEGREE}, got {degree}")
    if bound < 1:
        raise InputError(f"Coefficient bound must be at least 1, got {bound}")
    tol = default_tolerance() if tol is None else Fraction(tol)
    if workers is None:
        settings_manager = SettingsManager()
        settings_manager.load_settings()
        workers = settings_manager.get("NUM_WORKERS", 1)

    units = [(degree, bound, first, tol) for first in range(-bound, bound + 1)]
    stopwatch = Stopwatch().start()
    logger.info(f"Enumerating Salem polynomials of degree {degree}, bound {bound}: "
                f"{(2 * bound + 1) ** (degree // 2)} candidates in {len(units)} units on {workers} workers")
    logger.debug(f"Available memory: {available_memory_mb()} MB")

    done = []
    manager = WorkerManager(workers, _enumerate_prefix)

    def on_result(index, result):
        done.append(index)
        if manager.unit_durations:
            stopwatch.record_unit(manager.unit_durations[-1])
        eta = stopwatch.get_eta_string(len(units) - len(done))
        logger.debug(f"Unit {index} produced {len(result)} Salem polynomials. {eta}".rstrip())

    results = manager.run_all(units, on_result=on_result)

    unique = {}
    for chunk in results:
        for verdict in chunk:
            unique.setdefault(verdict.input.coeffs, verdict)
    ordered = sorted(unique.values(), key=lambda v: (v.lam.midpoint, v.input.descending()))
    logger.info(f"Enumeration found {len(ordered)} Salem polynomials in {stopwatch.stop():.2f}s")
    return ordered
