"""Integer quadratic lattices: Gram matrices, exact signatures, isometries and sublattices."""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import sympy
from scipy.linalg import null_space

from ..errors import (
    IndeterminateSignatureError, InputError, NotAnIsometryError, RootIsolationError,
)
from ..utils.logger import get_logger
from ..utils.settings_manager import float_setting
from ..algebra.matrices import (
    block_diagonal, charpoly, determinant, identity, int_matrix, matrices_equal, matrix_poly,
    rational_inverse, require_square, to_rows, zeros,
)
from ..algebra.polycore import (
    IntPoly, RatInterval, count_roots, isolate_real_roots, squarefree_decomposition, trace_poly,
)
from .torus import wedge_gram

logger = get_logger()

# Bonds of the printed E8(-1) diagram, 1-indexed; branch node at 3
E8_BONDS = ((1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (6, 7), (7, 8))


@dataclass(frozen=True)
class SignatureTriple:
    pos: int
    neg: int
    zero: int = 0

    def __add__(self, other: 'SignatureTriple') -> 'SignatureTriple':
        return SignatureTriple(self.pos + other.pos, self.neg + other.neg, self.zero + other.zero)

    @property
    def pair(self) -> Tuple[int, int]:
        return self.pos, self.neg

    def __str__(self) -> str:
        return f"({self.pos},{self.neg})" if not self.zero else f"({self.pos},{self.neg},{self.zero})"


@dataclass(frozen=True)
class EigenspaceEntry:
    tau: float
    tau_bracket: RatInterval
    dimension: int
    signature: Optional[Tuple[int, int]]
    residual: float
    min_abs_eigenvalue: float

    @property
    def indeterminate(self) -> bool:
        return self.signature is None


@dataclass(frozen=True)
class EigenspaceReport:
    entries: Tuple[EigenspaceEntry, ...]
    tolerance: float
    margin: float

    def with_signature(self, signature: Tuple[int, int]) -> List[EigenspaceEntry]:
        return [e for e in self.entries if e.signature == tuple(signature)]

    @property
    def total_dimension(self) -> int:
        return sum(e.dimension for e in self.entries)


def make_gram(rows) -> np.ndarray:
    """Validated symmetric integer Gram matrix."""
    G = int_matrix(rows)
    n = require_square(G, "Gram matrix")
    if n < 1:
        raise InputError("Gram matrix must have rank at least 1")
    if not matrices_equal(G, G.T):
        raise InputError("Gram matrix is not symmetric")
    return G


def signature(G: np.ndarray) -> SignatureTriple:
    """Exact (pos, neg, zero) from Sturm counts on the characteristic polynomial."""
    G = make_gram(G)
    p = charpoly(G)
    zero = p.multiplicity_at(0)
    pos = count_roots(p, 0, None)
    neg = count_roots(p, None, 0)
    if pos + neg + zero != G.shape[0]:
        raise RootIsolationError(f"Eigenvalue counts {pos}+{neg}+{zero} do not match rank {G.shape[0]}")
    return SignatureTriple(pos, neg, zero)


def e8_minus() -> np.ndarray:
    G = zeros(8, 8)
    for i in range(8):
        G[i, i] = -2
    for i, j in E8_BONDS:
        G[i - 1, j - 1] = G[j - 1, i - 1] = 1
    return G


def is_isometry(M: np.ndarray, G: np.ndarray) -> bool:
    """M^T G M == G exactly."""
    M, G = int_matrix(M), make_gram(G)
    require_square(M, "isometry")
    if M.shape != G.shape:
        raise InputError(f"Matrix shape {M.shape} does not match Gram shape {G.shape}")
    return matrices_equal(M.T.dot(G).dot(M), G)


def direct_sum(G1: np.ndarray, G2: np.ndarray) -> np.ndarray:
    return block_diagonal(make_gram(G1), make_gram(G2))


def extend_by_identity(M: np.ndarray, G1: np.ndarray, G2: np.ndarray) -> np.ndarray:
    """M on G1 extended by the identity on G2."""
    if not is_isometry(M, G1):
        raise NotAnIsometryError("Matrix is not an isometry of the first summand")
    return block_diagonal(int_matrix(M), identity(make_gram(G2).shape[0]))


def is_even(G: np.ndarray) -> bool:
    G = make_gram(G)
    return all(G[i, i] % 2 == 0 for i in range(G.shape[0]))


def is_unimodular(G: np.ndarray) -> bool:
    return abs(determinant(make_gram(G))) == 1


def inverse_isometry(M: np.ndarray, G: np.ndarray) -> np.ndarray:
    """G^-1 M^T G, which is M^-1 for an isometry."""
    if not is_isometry(M, G):
        raise NotAnIsometryError("Matrix is not an isometry of the Gram form")
    M, G = int_matrix(M), make_gram(G)
    try:
        inverse = rational_inverse(G) * sympy.Matrix(to_rows(M.T.dot(G)))
    except ValueError as e:
        raise InputError(f"Gram form is degenerate: {e}")
    if any(not x.is_integer for x in inverse):
        raise NotAnIsometryError("Inverse isometry has non-integer entries")
    return int_matrix(inverse.tolist())


def l33() -> np.ndarray:
    """Even unimodular form of signature (3,3), realized on the exterior square."""
    return wedge_gram()


def l3_11() -> np.ndarray:
    return direct_sum(wedge_gram(), e8_minus())


# --- integer row reduction ---

def hnf_with_transform(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Row Hermite normal form H and unimodular U with U A = H.

    Pivots are positive; entries above a pivot lie in [0, pivot).
    Zero rows collect at the bottom. The rows of U paired with zero rows
    of H span the integer left kernel, which sympy's hermite_normal_form
    does not return; kernel_sublattice reads it from here.
    """
    if isinstance(A, np.ndarray) and A.ndim == 2:
        m, n = A.shape
    else:
        m, n = len(A), (len(A[0]) if len(A) else 0)
    H = [[int(x) for x in row] for row in A]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def subtract(i, r, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
        U[i] = [a - q * b for a, b in zip(U[i], U[r])]

    def swap(i, r):
        H[i], H[r] = H[r], H[i]
        U[i], U[r] = U[r], U[i]

    r = 0
    for c in range(n):
        if r == m:
            break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        while True:
            p = min((i for i in range(r, m) if H[i][c] != 0), key=lambda i: abs(H[i][c]))
            swap(r, p)
            for i in range(r + 1, m):
                if H[i][c]:
                    subtract(i, r, H[i][c] // H[r][c])
            if all(H[i][c] == 0 for i in range(r + 1, m)):
                break
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            subtract(i, r, H[i][c] // H[r][c])
        r += 1

    H_out = int_matrix(H) if m else np.zeros((0, n), dtype=object)
    U_out = int_matrix(U) if m else np.zeros((0, 0), dtype=object)
    return H_out, U_out


def _rank_of_hnf(H: np.ndarray) -> int:
    return sum(1 for row in H if any(x != 0 for x in row))


def kernel_sublattice(M: np.ndarray, p: IntPoly) -> np.ndarray:
    """Saturated basis (as rows) of {v : p(M) v = 0}, in Hermite normal form."""
    M = int_matrix(M)
    n = require_square(M, "matrix")
    K = matrix_poly(p, M)
    H, U = hnf_with_transform(K.T)
    rank = _rank_of_hnf(H)
    if rank == n:
        return np.zeros((0, n), dtype=object)
    kernel = U[rank:]
    basis, _ = hnf_with_transform(kernel)
    logger.debug(f"Kernel of p(M) for p = {p}: rank {n - rank} in Z^{n}")
    return basis[:_rank_of_hnf(basis)]


def is_primitive(basis: np.ndarray) -> bool:
    """Rows span a saturated sublattice: the gcd of maximal minors is 1."""
    if len(basis) == 0:
        return True
    B = int_matrix(basis)
    k = B.shape[0]
    H, _ = hnf_with_transform(B.T)
    if _rank_of_hnf(H) != k:
        return False
    product = 1
    for i in range(k):
        product *= H[i, i]
    return abs(product) == 1


def sublattice_contains(basis: np.ndarray, v) -> bool:
    """Integer membership of v in the row span of basis."""
    target = [int(x) for x in v]
    if len(basis) == 0:
        return all(x == 0 for x in target)
    H, _ = hnf_with_transform(basis)
    if H.shape[1] != len(target):
        raise InputError(f"Vector of length {len(target)} against basis of width {H.shape[1]}")
    for row in H:
        pivot = next((c for c, x in enumerate(row) if x != 0), None)
        if pivot is None:
            break
        q, rem = divmod(target[pivot], int(row[pivot]))
        if rem:
            return False
        target = [a - q * int(b) for a, b in zip(target, row)]
    return all(x == 0 for x in target)


# --- numeric eigenspaces ---

def _unit_circle_part(p: IntPoly) -> IntPoly:
    """p with its roots at +1 and -1 removed."""
    for r in (1, -1):
        for _ in range(p.multiplicity_at(r)):
            p, _ = p.divmod_monic(IntPoly((-r, 1)))
    return p


def eigenspace_signatures(M: np.ndarray, G: np.ndarray, tol=None, margin=None,
                          strict: bool = False) -> EigenspaceReport:
    """Signatures of G on E_tau = ker(M + M^-1 - tau I) for trace roots tau in (-2, 2).

    Args:
        M: Integer isometry of G
        G: Gram matrix
        tol: Numeric tolerance for tau and the kernel
        margin: Restricted-form eigenvalues closer to zero than this are indeterminate
        strict: Raise IndeterminateSignatureError instead of reporting None

    Returns:
        EigenspaceReport: One entry per tau, sorted by tau
    """
    tol = float_setting("EIGEN_TOLERANCE", 1e-9) if tol is None else float(tol)
    margin = float_setting("SIGNATURE_MARGIN", 1e-6) if margin is None else float(margin)
    M_inv = inverse_isometry(M, G)
    M, G = int_matrix(M), make_gram(G)
    n = M.shape[0]

    rest = _unit_circle_part(charpoly(M))
    if rest.degree < 1:
        logger.debug("No eigenvalues other than +-1; no eigenspaces to report")
        return EigenspaceReport((), tol, margin)

    exact_tol = Fraction(tol).limit_denominator(10 ** 18) / 1000
    taus = []
    for factor, multiplicity in squarefree_decomposition(trace_poly(rest)):
        for bracket in isolate_real_roots(factor, -2, 2, exact_tol):
            taus.append((bracket, multiplicity))
    taus.sort(key=lambda item: item[0].lo)
    values = [float(b) for b, _ in taus]
    for a, b in zip(values, values[1:]):
        if b - a <= 10 * tol:
            raise RootIsolationError(f"Trace roots {a:.12g} and {b:.12g} are within {10 * tol:g}")

    Mf = M.astype(float)
    sym = Mf + M_inv.astype(float)
    Gf = G.astype(float)
    scale = max(1.0, float(np.abs(sym).max()))
    entries = []
    for (bracket, multiplicity), tau in zip(taus, values):
        A = sym - tau * np.eye(n)
        # singular values below threshold count as kernel
        threshold = max(10 * tol, 1e-12) * scale
        norm = float(np.linalg.norm(A, 2))
        basis = null_space(A, rcond=threshold / norm if norm else 1.0)
        dim = basis.shape[1]
        if dim != 2 * multiplicity:
            logger.warning(f"E_tau for tau={tau:.12g} has dimension {dim}, expected {2 * multiplicity}")
        residual = float(np.abs(A @ basis).max()) if dim else 0.0
        restricted = basis.T @ Gf @ basis
        eig = np.linalg.eigvalsh((restricted + restricted.T) / 2) if dim else np.array([])
        min_abs = float(np.abs(eig).min()) if dim else 0.0
        if dim and min_abs <= margin:
            if strict:
                raise IndeterminateSignatureError(f"Eigenvalue {min_abs:.3g} of the form on E_tau (tau={tau:.12g}) is within {margin:g} of zero")
            logger.warning(f"Signature on E_tau for tau={tau:.12g} is indeterminate (|eigenvalue| {min_abs:.3g})")
            sig = None
        else:
            sig = (int((eig > 0).sum()), int((eig < 0).sum()))
        entries.append(EigenspaceEntry(tau=tau, tau_bracket=bracket, dimension=dim, signature=sig,
                                       residual=residual, min_abs_eigenvalue=min_abs))

    logger.info(f"Eigenspace analysis: {len(entries)} trace roots, signatures "
                f"{[e.signature for e in entries]}")
    return EigenspaceReport(tuple(entries), tol, margin)
