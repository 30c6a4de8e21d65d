"""K3 realizability checks for Salem numbers, and the lattice mechanics behind them."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..config import (
    EXTENSION_DEGREE, K3_MAX_DEGREE, PROJECTIVE_K3_MAX_DEGREE, PROJECTIVE_KUMMER_MAX_DEGREE,
    SPECIAL_CONSTRUCTION_DEGREES, TORUS_MAX_DEGREE,
)
from ..errors import (
    IndeterminateSignatureError, InputError, NotAnIsometryError, NotSalemError, RootIsolationError,
)
from ..utils.logger import get_logger
from ..algebra.matrices import charpoly, identity, int_matrix
from ..algebra.polycore import IntPoly, RatInterval, exact_square_root, strip_cyclotomic_factors
from ..algebra.salem import classify_salem
from .lattice import (
    EigenspaceReport, SignatureTriple, direct_sum, e8_minus, eigenspace_signatures,
    extend_by_identity, is_even, is_isometry, is_unimodular, kernel_sublattice, make_gram,
    signature, sublattice_contains,
)
from .torus import TorusRealizability, decide_torus

logger = get_logger()


class K3Verdict(Enum):
    REALIZABLE_THM12 = "realizable_thm12"
    REALIZABLE_DEG22 = "realizable_deg22"
    REALIZABLE_KUMMER = "realizable_kummer"
    CONDITIONS_FAIL = "conditions_fail"
    UNKNOWN = "unknown"

    @property
    def realizable(self) -> bool:
        return self.value.startswith("realizable")


@dataclass(frozen=True)
class NecessarySquares:
    """|S(-1)|, |S(1)| and -S(-1)S(1) as perfect squares."""
    abs_at_minus_one: bool
    abs_at_one: bool
    minus_product: bool

    @property
    def all(self) -> bool:
        return self.abs_at_minus_one and self.abs_at_one and self.minus_product


@dataclass(frozen=True)
class K3Report:
    S: IntPoly
    degree: int
    necessary: NecessarySquares
    product: int
    product_is_minus_one: bool
    gm_signature: Optional[Tuple[int, int]]
    gm_applicable: bool
    verdict: K3Verdict
    notes: Tuple[str, ...]
    projective_k3_possible: bool
    projective_kummer_possible: Optional[bool] = None
    torus: Optional[TorusRealizability] = None


@dataclass(frozen=True)
class ExtensionMechanicsReport:
    checks: Tuple[Tuple[str, bool], ...]
    salem_factor: IntPoly
    lam: RatInterval
    spectral_radius: float
    ambient_signature: SignatureTriple
    ambient_even: bool
    ambient_unimodular: bool
    eigenspaces: Optional[EigenspaceReport]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    @property
    def failures(self):
        return [name for name, ok in self.checks if not ok]


def necessary_squares(S: IntPoly) -> NecessarySquares:
    if S.leading != 1:
        raise InputError(f"{S} is not monic")
    at_one, at_minus_one = S(1), S(-1)
    return NecessarySquares(
        abs_at_minus_one=exact_square_root(abs(at_minus_one)) is not None,
        abs_at_one=exact_square_root(abs(at_one)) is not None,
        minus_product=exact_square_root(-at_minus_one * at_one) is not None,
    )


def gm_sufficient(S: IntPoly, p: int, q: int) -> bool:
    """Sufficient condition for S to be the characteristic polynomial of an
    isometry of the even unimodular lattice of signature (p, q)."""
    d = S.degree
    if p < 1 or q < 1:
        raise InputError(f"Signature ({p},{q}) must be positive")
    if p + q != d:
        raise InputError(f"Signature ({p},{q}) has rank {p + q}, degree is {d}")
    if not classify_salem(S).is_salem:
        raise NotSalemError(f"{S} is not a Salem polynomial")
    return d % 4 == 2 and (p - q) % 8 == 0 and S(-1) * S(1) == -1


def _gm_signature(d: int) -> Optional[Tuple[int, int]]:
    """The (p, q) with p in {3, 1}, p + q = d and p = q mod 8, if any."""
    if d % 4 != 2:
        return None
    for p in (3, 1):
        q = d - p
        if q >= 1 and (p - q) % 8 == 0:
            return p, q
    return None


def k3_classify(S: IntPoly, tol=None) -> K3Report:
    """Which known route, if any, realizes log(lambda) on a K3 surface."""
    verdict_s = classify_salem(S, tol)
    if not verdict_s.is_salem:
        raise NotSalemError(f"{S} is {verdict_s.describe()}")
    d = S.degree
    necessary = necessary_squares(S)
    product = S(-1) * S(1)
    gm_sig = _gm_signature(d)
    gm_ok = gm_sig is not None and gm_sufficient(S, *gm_sig)
    notes = []
    torus = None

    if d > K3_MAX_DEGREE:
        verdict = K3Verdict.CONDITIONS_FAIL
        notes.append(f"K3 entropies have degree at most {K3_MAX_DEGREE}")
    else:
        if d <= TORUS_MAX_DEGREE:
            torus = decide_torus(S, tol)
        if torus is not None and torus.realizable and torus.verification.passed:
            verdict = K3Verdict.REALIZABLE_KUMMER
            notes.append("a torus automorphism descends to the Kummer surface with the same entropy")
        elif d == EXTENSION_DEGREE and product == -1:
            verdict = K3Verdict.REALIZABLE_THM12
            notes.append("degree fourteen with S(-1)S(1) = -1 extends over E8(-1) to L_{3,19}")
        elif d == K3_MAX_DEGREE and product == -1:
            verdict = K3Verdict.REALIZABLE_DEG22
            notes.append("degree twenty-two with S(-1)S(1) = -1 is realized directly on L_{3,19}")
        else:
            verdict = K3Verdict.UNKNOWN
            if d == 10:
                notes.append("no trace root gives E_tau of signature (2,0) on L_{1,9}; the eigenspace method does not apply")
            if d in SPECIAL_CONSTRUCTION_DEGREES:
                notes.append(f"degree {d} has special constructions by twisting and gluing; not attempted")

    if d > PROJECTIVE_K3_MAX_DEGREE:
        notes.append(f"degree above {PROJECTIVE_K3_MAX_DEGREE}: not realizable on a projective K3 surface")
    kummer_projective = None
    if verdict is K3Verdict.REALIZABLE_KUMMER:
        kummer_projective = None if d <= PROJECTIVE_KUMMER_MAX_DEGREE else False
        if kummer_projective is False:
            notes.append(f"a projective Kummer surface only inherits degrees up to {PROJECTIVE_KUMMER_MAX_DEGREE}")

    logger.debug(f"K3 verdict for {S}: {verdict.value}")
    return K3Report(
        S=S, degree=d, necessary=necessary, product=product, product_is_minus_one=product == -1,
        gm_signature=gm_sig, gm_applicable=gm_ok, verdict=verdict, notes=tuple(notes),
        projective_k3_possible=d <= PROJECTIVE_K3_MAX_DEGREE,
        projective_kummer_possible=kummer_projective, torus=torus,
    )


def verify_extension_mechanics(f: np.ndarray, G: np.ndarray, tol=None) -> ExtensionMechanicsReport:
    """Extend f by the identity over E8(-1) and check the facts the degree-fourteen argument uses.

    Args:
        f: Integer isometry of G whose characteristic polynomial has a Salem factor
        G: Gram matrix of the lattice f acts on
        tol: Numeric tolerance for the eigenspace analysis

    Returns:
        ExtensionMechanicsReport: Per-check results plus the ambient form data
    """
    f, G = int_matrix(f), make_gram(G)
    if not is_isometry(f, G):
        raise NotAnIsometryError("f is not an isometry of G")
    char_f = charpoly(f)
    core, _ = strip_cyclotomic_factors(char_f)
    salem = classify_salem(core)
    if core.degree < 1 or not salem.is_salem:
        raise NotSalemError(f"char(f) = {char_f} has no Salem factor")

    E8 = e8_minus()
    g = extend_by_identity(f, G, E8)
    ambient = direct_sum(G, E8)
    n = G.shape[0]
    checks = []

    checks.append(("extension is an isometry", is_isometry(g, ambient)))
    checks.append(("char(g) = char(f)(t-1)^8", charpoly(g) == char_f * IntPoly((-1, 1)) ** 8))

    eigenspaces = None
    try:
        eigenspaces = eigenspace_signatures(g, ambient, tol=tol, strict=True)
        one_plane = len(eigenspaces.with_signature((2, 0))) == 1
    except (RootIsolationError, IndeterminateSignatureError) as e:
        logger.warning(f"Eigenspace analysis failed: {e}")
        one_plane = False
    checks.append(("exactly one E_tau of signature (2,0)", one_plane))

    fixed = kernel_sublattice(g, IntPoly((-1, 1)))
    eye = identity(n + 8)
    checks.append(("ker(g - 1) contains E8(-1)",
                   all(sublattice_contains(fixed, eye[n + i]) for i in range(8))))

    eigenvalues = np.linalg.eigvals(f.astype(float))
    top = eigenvalues[int(np.argmax(np.abs(eigenvalues)))]
    radius = float(abs(top))
    slack = 1e-6 * max(1.0, radius)
    checks.append(("spectral radius is a real eigenvalue in the lambda bracket",
                   abs(top.imag) <= slack and top.real > 0
                   and float(salem.lam.lo) - slack <= radius <= float(salem.lam.hi) + slack))

    report = ExtensionMechanicsReport(
        checks=tuple(checks), salem_factor=core, lam=salem.lam, spectral_radius=radius,
        ambient_signature=signature(ambient), ambient_even=is_even(ambient),
        ambient_unimodular=is_unimodular(ambient), eigenspaces=eigenspaces,
    )
    logger.info(f"Extension mechanics: {sum(ok for _, ok in checks)}/{len(checks)} checks pass, "
                f"ambient signature {report.ambient_signature}")
    return report


# Public operation name
verify_thm12_mechanics = verify_extension_mechanics
