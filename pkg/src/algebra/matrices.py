"""Exact integer matrices: numpy object arrays with sympy for determinants and characteristic polynomials."""

from typing import Sequence

import numpy as np
import sympy

from ..errors import InputError
from .polycore import IntPoly


def int_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """Square-or-rectangular exact integer matrix (dtype=object keeps Python ints)."""
    try:
        matrix = np.array([[int(x) for x in row] for row in rows], dtype=object)
    except (TypeError, ValueError) as e:
        raise InputError(f"Matrix entries must be integers: {e}")
    if matrix.ndim != 2:
        raise InputError("Matrix rows must all have the same length")
    return matrix


def identity(n: int) -> np.ndarray:
    return int_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zeros(rows: int, cols: int) -> np.ndarray:
    return int_matrix([[0] * cols for _ in range(rows)]) if rows else np.zeros((0, cols), dtype=object)


def to_rows(matrix: np.ndarray):
    """Plain nested lists of Python ints, for serialization."""
    return [[int(x) for x in row] for row in matrix]


def require_square(matrix: np.ndarray, name: str = "matrix") -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"{name} must be square, got shape {matrix.shape}")
    return matrix.shape[0]


def _sympy(matrix: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(to_rows(matrix))


def determinant(matrix: np.ndarray) -> int:
    require_square(matrix)
    if matrix.shape[0] == 0:
        return 1
    return int(_sympy(matrix).det(method="bareiss"))


def charpoly(matrix: np.ndarray) -> IntPoly:
    """det(tI - M) as an IntPoly."""
    n = require_square(matrix)
    if n == 0:
        return IntPoly((1,))
    t = sympy.Symbol('t')
    return IntPoly.from_descending([int(c) for c in _sympy(matrix).charpoly(t).all_coeffs()])


def matrices_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.all(a == b))


def matrix_poly(p: IntPoly, matrix: np.ndarray) -> np.ndarray:
    """p(M) by Horner's rule, exactly."""
    n = require_square(matrix)
    result = zeros(n, n)
    eye = identity(n)
    for c in reversed(p.coeffs):
        result = result.dot(matrix) + eye * c
    return result


def block_diagonal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape[0], b.shape[0]
    out = zeros(n + m, n + m)
    out[:n, :n] = a
    out[n:, n:] = b
    return out


def rational_inverse(matrix: np.ndarray) -> sympy.Matrix:
    """Exact inverse over Q."""
    require_square(matrix)
    return _sympy(matrix).inv()
