"""Polynomials shared across the test modules."""

from src.algebra.polycore import IntPoly


def poly(*descending):
    return IntPoly.from_descending(list(descending))


GOLDEN = poly(1, -3, 1)
LEHMER = poly(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
SMALLEST_QUARTIC = poly(1, -1, -1, -1, 1)
SEXTIC_SQUARE = poly(1, -1, -1, 1, -1, -1, 1)
SEXTIC_NO_SQUARE = poly(1, -1, -1, -1, -1, -1, 1)

GOLDEN_LAMBDA = 2.618033988749895
LEHMER_LAMBDA = 1.176280818259917
SMALLEST_QUARTIC_LAMBDA = 1.722083805739043
