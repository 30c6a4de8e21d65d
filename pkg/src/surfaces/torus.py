"""Entropy realizability on two-dimensional complex tori.

A Salem polynomial S is realized when some degree-six product Q = S*C has
the square property; Q is then the H^2 characteristic polynomial of the
exterior square of an integer H^1 action with characteristic polynomial P.
Everything here is exact except ``period_matrix``.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

import numpy as np

from ..config import (
    DEGREE_TWO_COFACTOR, EISENSTEIN_TORUS_SALEM, TORUS_COFACTORS, TORUS_MAX_DEGREE,
)
from ..errors import (
    InputError, NotReciprocalError, NotSalemError, PairingError, ParityError,
    RootIsolationError, SalemToolkitError,
)
from ..utils.logger import get_logger
from ..utils.settings_manager import float_setting
from ..algebra.matrices import (
    charpoly, determinant, int_matrix, matrices_equal, require_square, zeros,
)
from ..algebra.polycore import (
    IntPoly, RatInterval, exact_square_root, is_palindromic, strip_cyclotomic_factors,
)
from ..algebra.salem import classify_salem

logger = get_logger()

CASE_DEG6 = "deg6"
CASE_DEG4A = "deg4a"
CASE_DEG4B = "deg4b"
CASE_DEG4C = "deg4c"
CASE_DEG2 = "deg2"
TORUS_CASES = (CASE_DEG6, CASE_DEG4A, CASE_DEG4B, CASE_DEG4C, CASE_DEG2)

# Cofactor used to build the witness for each degree-four case
_CANONICAL_COFACTORS = {
    CASE_DEG4A: IntPoly((1, 2, 1)),
    CASE_DEG4B: IntPoly((1, -2, 1)),
    CASE_DEG4C: IntPoly((1, 0, 1)),
}


@dataclass(frozen=True)
class SexticView:
    """Q = t^6 + a t^5 + b t^4 + c t^3 + b t^2 + a t + 1."""
    a: int
    b: int
    c: int

    @classmethod
    def from_poly(cls, Q: IntPoly) -> 'SexticView':
        if Q.degree != 6:
            raise InputError(f"Expected a degree-6 polynomial, got degree {Q.degree}")
        if Q.leading != 1 or not is_palindromic(Q):
            raise NotReciprocalError(f"{Q} is not monic reciprocal")
        return cls(a=Q.coeffs[5], b=Q.coeffs[4], c=Q.coeffs[3])

    def to_poly(self) -> IntPoly:
        return IntPoly((1, self.a, self.b, self.c, self.b, self.a, 1))


@dataclass(frozen=True)
class QuarticView:
    """P = t^4 + j t^3 - a t^2 + k t + 1, paired with a SexticView."""
    j: int
    k: int
    a: int

    def to_poly(self) -> IntPoly:
        return IntPoly((1, self.k, -self.a, self.j, 1))


@dataclass(frozen=True)
class SquareProperty:
    holds: bool
    q_at_one: int
    q_at_minus_one: int
    m: Optional[int] = None
    n: Optional[int] = None


@dataclass(frozen=True)
class Degree4Cases:
    """Which of the three degree-four conditions S satisfies."""
    s_at_one: int
    s_at_minus_one: int
    a: bool
    b: bool
    c: bool

    @property
    def any(self) -> bool:
        return self.a or self.b or self.c

    @property
    def tag(self) -> Optional[str]:
        if self.a:
            return CASE_DEG4A
        if self.b:
            return CASE_DEG4B
        if self.c:
            return CASE_DEG4C
        return None


@dataclass(frozen=True)
class TorusWitness:
    """Explicit H^1 and H^2 actions realizing log(lambda) on a torus."""
    case: str
    S: IntPoly
    C: IntPoly
    Q: IntPoly
    m: int
    n: int
    j: int
    k: int
    P: IntPoly
    F1: np.ndarray = field(compare=False)
    F2: np.ndarray = field(compare=False)
    lam: RatInterval = None


@dataclass(frozen=True)
class WitnessReport:
    checks: Tuple[Tuple[str, bool], ...]
    spectral_radius: float

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self) -> List[str]:
        return [name for name, ok in self.checks if not ok]


@dataclass(frozen=True)
class TorusRealizability:
    S: IntPoly
    degree: int
    realizable: bool
    reason: str
    case: Optional[str] = None
    cases: Optional[Degree4Cases] = None
    successful_cofactors: Tuple[IntPoly, ...] = ()
    square: Optional[SquareProperty] = None
    witness: Optional[TorusWitness] = None
    verification: Optional[WitnessReport] = None


@dataclass(frozen=True)
class PeriodModel:
    gamma1: complex
    gamma2: complex
    Pi: np.ndarray = field(compare=False)
    residual: float = 0.0

    @property
    def modulus_squared(self) -> float:
        return abs(self.gamma1) ** 2


@dataclass(frozen=True)
class ExeRealizability:
    """Sufficient condition for a quadratic Salem number on E x E."""
    a: int
    verdict: str
    A: Optional[np.ndarray] = field(default=None, compare=False)
    h2_charpoly: Optional[IntPoly] = None


@dataclass(frozen=True)
class ProjectiveFlags:
    degree: int
    projective_torus_possible: Optional[bool]
    note: str
    projective_example: Optional[str] = None
    exe: Optional[ExeRealizability] = None


# --- square property and P ---

def square_property(Q: IntPoly) -> SquareProperty:
    """-Q(1) and Q(-1) both perfect squares, with their nonnegative roots."""
    SexticView.from_poly(Q)
    at_one, at_minus_one = Q(1), Q(-1)
    m = exact_square_root(-at_one)
    n = exact_square_root(at_minus_one)
    holds = m is not None and n is not None
    return SquareProperty(holds, at_one, at_minus_one, m if holds else None, n if holds else None)


def quartic_from_squares(view: SexticView, m: int, n: int) -> QuarticView:
    """j = (m+n)/2, k = (n-m)/2, checked against the coefficient identities."""
    if (m - n) % 2:
        raise ParityError(f"Square roots m={m}, n={n} have different parity")
    j, k = (m + n) // 2, (n - m) // 2
    if j * k != view.b + 1 or j * j + k * k != -view.c - 2 * view.a:
        raise ParityError(f"j={j}, k={k} violate jk = b+1 or j^2+k^2 = -c-2a for {view}")
    return QuarticView(j=j, k=k, a=view.a)


def derive_P_from_Q(Q: IntPoly) -> Tuple[IntPoly, int, int]:
    view = SexticView.from_poly(Q)
    sq = square_property(Q)
    if not sq.holds:
        raise InputError(f"{Q} does not have the square property (Q(1)={sq.q_at_one}, Q(-1)={sq.q_at_minus_one})")
    quartic = quartic_from_squares(view, sq.m, sq.n)
    return quartic.to_poly(), quartic.j, quartic.k


# --- matrices ---

def companion(P: IntPoly) -> np.ndarray:
    """Companion matrix: ones below the diagonal, last column -p_0..-p_3."""
    if P.degree != 4 or P.leading != 1 or P.coeffs[0] != 1:
        raise InputError(f"companion needs a monic quartic with constant term 1, got {P}")
    C = zeros(4, 4)
    for i in range(3):
        C[i + 1, i] = 1
    for i in range(4):
        C[i, 3] = -P.coeffs[i]
    return C


def _wedge_pairs(n: int):
    return list(combinations(range(n), 2))


def wedge_square(M: np.ndarray) -> np.ndarray:
    """Action on the exterior square in lexicographic basis e_i^e_j, i < j."""
    n = require_square(M, "wedge_square input")
    pairs = _wedge_pairs(n)
    W = zeros(len(pairs), len(pairs))
    for col, (i, j) in enumerate(pairs):
        for row, (k, l) in enumerate(pairs):
            W[row, col] = M[k, i] * M[l, j] - M[k, j] * M[l, i]
    return W


def _permutation_sign(perm) -> int:
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def wedge_gram() -> np.ndarray:
    """<u, v> defined by u ^ v = <u, v> e1^e2^e3^e4."""
    pairs = _wedge_pairs(4)
    J = zeros(6, 6)
    for r, (i, j) in enumerate(pairs):
        for c, (k, l) in enumerate(pairs):
            if len({i, j, k, l}) == 4:
                J[r, c] = _permutation_sign((i, j, k, l))
    return J


def sextic_from_quartic(P: IntPoly) -> IntPoly:
    """H^2 characteristic polynomial induced by an H^1 polynomial."""
    return charpoly(wedge_square(companion(P)))


# --- the decision procedure ---

def degree4_cases(S: IntPoly) -> Degree4Cases:
    at_one, at_minus_one = S(1), S(-1)
    return Degree4Cases(
        s_at_one=at_one,
        s_at_minus_one=at_minus_one,
        a=exact_square_root(-at_one) is not None,
        b=exact_square_root(at_minus_one) is not None,
        c=exact_square_root(-2 * at_one) is not None and exact_square_root(2 * at_minus_one) is not None,
    )


def build_witness(S: IntPoly, case: str, C: IntPoly, lam: RatInterval) -> TorusWitness:
    Q = S * C
    sq = square_property(Q)
    quartic = quartic_from_squares(SexticView.from_poly(Q), sq.m, sq.n)
    P = quartic.to_poly()
    F1 = companion(P)
    return TorusWitness(case=case, S=S, C=C, Q=Q, m=sq.m, n=sq.n, j=quartic.j, k=quartic.k,
                        P=P, F1=F1, F2=wedge_square(F1), lam=lam)


def decide_torus(S: IntPoly, tol=None) -> TorusRealizability:
    """Whether log(lambda) is the entropy of a torus automorphism, with a verified witness."""
    verdict = classify_salem(S, tol)
    if not verdict.is_salem:
        raise NotSalemError(f"{S} is {verdict.describe()}")
    d = S.degree

    if d > TORUS_MAX_DEGREE:
        return TorusRealizability(S, d, False, f"degree {d} exceeds {TORUS_MAX_DEGREE}")

    cases, successful, square = None, (), None
    if d == 6:
        square = square_property(S)
        case, C = (CASE_DEG6, IntPoly((1,))) if square.holds else (None, None)
        reason = "square property holds" if square.holds else "square property fails"
    elif d == 4:
        cases = degree4_cases(S)
        successful = tuple(IntPoly(c) for c in TORUS_COFACTORS if square_property(S * IntPoly(c)).holds)
        if bool(successful) != cases.any:
            raise SalemToolkitError(f"Cofactor search and case analysis disagree for {S}")
        case = cases.tag
        C = _CANONICAL_COFACTORS.get(case)
        if C is not None:
            square = square_property(S * C)
        reason = f"case ({case[-1]})" if case else "none of the three degree-four cases holds"
    else:
        case, C = CASE_DEG2, IntPoly(DEGREE_TWO_COFACTOR)
        square = square_property(S * C)
        reason = "every quadratic Salem number is realized"

    if case is None:
        logger.debug(f"{S}: not torus-realizable ({reason})")
        return TorusRealizability(S, d, False, reason, cases=cases, successful_cofactors=successful, square=square)

    witness = build_witness(S, case, C, verdict.lam)
    report = verify_witness(witness)
    if not report.passed:
        logger.error(f"Witness for {S} failed checks: {', '.join(report.failures)}")
        return TorusRealizability(S, d, False, f"witness failed verification: {', '.join(report.failures)}",
                                  case=case, cases=cases, successful_cofactors=successful,
                                  square=square, witness=witness, verification=report)
    logger.info(f"{S}: torus-realizable, case {case}, P = {witness.P}")
    return TorusRealizability(S, d, True, reason, case=case, cases=cases, successful_cofactors=successful,
                              square=square, witness=witness, verification=report)


def _bracket_contains_root(S: IntPoly, lam: Optional[RatInterval]) -> bool:
    if lam is None or lam.lo <= 1:
        return False
    lo, hi = S(lam.lo), S(lam.hi)
    return lo == 0 or hi == 0 or (lo < 0) != (hi < 0)


def _spectral_radius_in_bracket(w: TorusWitness) -> bool:
    """Q = S * (cyclotomic) and S changes sign on the lambda bracket."""
    if w.S.degree < 1 or w.S.leading != 1:
        return False
    quot, rem = w.Q.divmod_monic(w.S)
    if not rem.is_zero or quot.is_zero or quot.leading != 1:
        return False
    core, _ = strip_cyclotomic_factors(quot)
    if core.degree != 0:
        return False
    return classify_salem(w.S).is_salem and _bracket_contains_root(w.S, w.lam)


def verify_witness(w: TorusWitness) -> WitnessReport:
    """Re-check every witness identity; failures are reported, not raised."""
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except (InputError, ParityError, ValueError, IndexError) as e:
            logger.debug(f"Witness check '{name}' raised {e}")
            ok = False
        checks.append((name, ok))

    J = wedge_gram()
    F1 = int_matrix(w.F1)
    F2 = int_matrix(w.F2)
    check("Q = S*C", lambda: w.Q == w.S * w.C)
    check("-Q(1) = m^2 and Q(-1) = n^2", lambda: -w.Q(1) == w.m ** 2 and w.Q(-1) == w.n ** 2)
    check("P from (j, k)", lambda: w.P == quartic_from_squares(SexticView.from_poly(w.Q), w.m, w.n).to_poly()
          and (w.j, w.k) == ((w.m + w.n) // 2, (w.n - w.m) // 2))
    check("char(F1) = P", lambda: charpoly(F1) == w.P)
    check("det F1 = 1", lambda: determinant(F1) == 1)
    check("F2 = wedge(F1)", lambda: matrices_equal(F2, wedge_square(F1)))
    check("char(F2) = Q", lambda: charpoly(F2) == w.Q)
    check("F2 preserves J", lambda: matrices_equal(F2.T.dot(J).dot(F2), J))
    check("spectral radius in lambda bracket", lambda: _spectral_radius_in_bracket(w))

    try:
        radius = float(max(abs(np.linalg.eigvals(F2.astype(float)))))
    except (ValueError, np.linalg.LinAlgError):
        radius = float('nan')
    return WitnessReport(checks=tuple(checks), spectral_radius=radius)


def period_matrix(P: IntPoly, tol=None) -> PeriodModel:
    """Numeric eigen-coordinates of the H^1 action: diag(g1, g2) Pi = Pi F1^T."""
    tol = float_setting("PERIOD_TOLERANCE", 1e-9) if tol is None else float(tol)
    F1 = companion(P)
    values, vectors = np.linalg.eig(F1.astype(float))

    cluster = max(np.sqrt(tol), 10 * tol)
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(values[i] - values[j]) < cluster:
                raise RootIsolationError(f"Roots of {P} cluster within {cluster:g}")
    if any(abs(v.imag) <= cluster for v in values):
        raise PairingError(f"{P} has real roots; conjugate pairing impossible")

    upper = sorted((i for i in range(4) if values[i].imag > 0), key=lambda i: -abs(values[i]))
    if len(upper) != 2:
        raise PairingError(f"Cannot split the roots of {P} into two conjugate pairs")
    i1, i2 = upper
    g1, g2 = complex(values[i1]), complex(values[i2])
    if abs(abs(g1) * abs(g2) - 1) > cluster:
        raise PairingError(f"|gamma1| |gamma2| = {abs(g1) * abs(g2):.6g} is not 1 for {P}")

    Pi = np.array([vectors[:, i1], vectors[:, i2]])
    Pi = Pi / np.abs(Pi).max(axis=1, keepdims=True)
    residual = float(np.abs(np.diag([g1, g2]) @ Pi - Pi @ F1.astype(float).T).max())
    if residual > tol:
        raise RootIsolationError(f"Period residual {residual:.3g} exceeds {tol:g}")
    return PeriodModel(gamma1=g1, gamma2=g2, Pi=Pi, residual=residual)


# --- E x E and projectivity ---

def exe_h2_charpoly(A: np.ndarray) -> IntPoly:
    """H^2 characteristic polynomial of A acting diagonally on E x E."""
    A = int_matrix(A)
    if A.shape != (2, 2):
        raise InputError(f"Expected a 2x2 matrix, got shape {A.shape}")
    if determinant(A) not in (1, -1):
        raise InputError(f"det A must be +-1, got {determinant(A)}")
    # H^1(E x E) = H^1(E) (x) Z^2 with A on the second factor
    H1 = zeros(4, 4)
    H1[:2, :2] = A
    H1[2:, 2:] = A
    return charpoly(wedge_square(H1))


def exe_realizable_deg2(S: IntPoly) -> ExeRealizability:
    if S.degree != 2:
        raise InputError(f"Expected a quadratic t^2 - a t + 1, got {S}")
    if not classify_salem(S).is_salem:
        raise NotSalemError(f"{S} is not a Salem polynomial")
    a = -S.coeffs[1]
    m = exact_square_root(a - 2)
    if m is not None and m > 0:
        A = int_matrix([[0, 1], [1, m]])
    else:
        m = exact_square_root(a + 2)
        if m is None or m <= 2:
            return ExeRealizability(a=a, verdict="unknown")
        A = int_matrix([[0, -1], [1, m]])
    return ExeRealizability(a=a, verdict="yes", A=A, h2_charpoly=exe_h2_charpoly(A))


def projective_flags(S: IntPoly) -> ProjectiveFlags:
    if not classify_salem(S).is_salem:
        raise NotSalemError(f"{S} is not a Salem polynomial")
    d = S.degree
    if d == 6:
        return ProjectiveFlags(d, False, "an irreducible degree-six H^2 action rules out a projective torus")
    if d > TORUS_MAX_DEGREE:
        return ProjectiveFlags(d, False, f"degree {d} is not realized on any torus")
    note = "projectivity of a realizing torus is not decided by the degree alone"
    if d == 4:
        example = None
        if S == IntPoly(EISENSTEIN_TORUS_SALEM):
            example = "C/Z[zeta_3] x C/Z[zeta_3]"
        return ProjectiveFlags(d, None, note, projective_example=example)
    exe = exe_realizable_deg2(S)
    return ProjectiveFlags(d, None, note + "; E x E sufficient condition attached",
                           projective_example="E x E" if exe.verdict == "yes" else None, exe=exe)
