"""Polynomial text input and canonical output."""

import re
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor, implicit_multiplication_application, parse_expr, standard_transformations,
)

from ..errors import InputError
from ..algebra.polycore import IntPoly

_LIST_FORM = re.compile(r"\s*[+-]?\d+\s*(,\s*[+-]?\d+\s*)*")
_SYMBOLIC_CHARS = re.compile(r"[\s\d+\-*^().tx]+")
_REPEATED_SIGNS = re.compile(r"[+-]\s*[+-]")
_TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse_poly(text: str) -> IntPoly:
    """Parse "1,-3,1" (descending coefficients) or "t^2 - 3t + 1"."""
    if text is None or not text.strip():
        raise InputError("Empty polynomial")
    text = text.strip()
    if _LIST_FORM.fullmatch(text):
        return IntPoly.from_descending([int(part) for part in text.split(",")])
    if not _SYMBOLIC_CHARS.fullmatch(text):
        raise InputError(f"Malformed polynomial {text!r}: use descending integer coefficients or t^k terms")
    if _REPEATED_SIGNS.search(text):
        raise InputError(f"Malformed polynomial {text!r}: repeated sign operator")

    names = set(re.findall(r"[tx]", text))
    if len(names) > 1:
        raise InputError(f"Polynomial {text!r} mixes the variables t and x")
    var = sympy.Symbol(names.pop() if names else 't')
    try:
        expr = parse_expr(text, local_dict={var.name: var}, transformations=_TRANSFORMS)
        poly = sympy.Poly(expr, var)
    except (sympy.SympifyError, sympy.PolynomialError, SyntaxError, TokenError, TypeError, ValueError) as e:
        raise InputError(f"Malformed polynomial {text!r}: {e}")
    coeffs = poly.all_coeffs()
    if not all(c.is_integer for c in coeffs):
        raise InputError(f"Polynomial {text!r} has non-integer coefficients")
    return IntPoly.from_descending([int(c) for c in coeffs])


def format_poly(p: IntPoly) -> str:
    """Canonical symbolic form, e.g. "t^2 - 3t + 1"."""
    return str(p)


def format_coefficients(p: IntPoly) -> str:
    """Descending comma list, the other accepted input form."""
    return ",".join(str(c) for c in p.descending()) if not p.is_zero else "0"
