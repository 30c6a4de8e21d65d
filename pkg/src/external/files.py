"""Reading and writing witness and isometry documents."""

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..config import SCHEMA_VERSION, WEDGE_BASIS_ORDER
from ..errors import InputError
from ..utils.logger import get_logger
from ..algebra.matrices import int_matrix, to_rows
from ..algebra.polycore import IntPoly, RatInterval
from ..surfaces.lattice import make_gram
from ..surfaces.torus import TORUS_CASES, TorusWitness

logger = get_logger()

WITNESS_KIND = "witness"
ISOMETRY_KIND = "isometry"


@dataclass(frozen=True)
class IsometryDocument:
    gram: np.ndarray
    matrix: np.ndarray
    name: Optional[str] = None


def read_document(path):
    """
    Load a JSON document.

    Args:
        path (str): File to read

    Returns:
        dict: The parsed document
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            doc = json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}")
    except ValueError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
    if not isinstance(doc, dict):
        raise InputError(f"{path} does not contain a JSON object")
    logger.debug(f"Read document from {path}")
    return doc


def write_document(doc, path):
    """Write a document as indented, key-sorted JSON."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(doc, f, indent=2, sort_keys=True)
            f.write("\n")
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}")
    logger.info(f"Document written to {path}")


def document_kind(doc) -> str:
    if "case" in doc:
        return WITNESS_KIND
    if "gram" in doc and "matrix" in doc:
        return ISOMETRY_KIND
    raise InputError("Document is neither a witness (no 'case') nor an isometry (no 'gram'/'matrix')")


def _poly_field(doc, key) -> IntPoly:
    value = doc.get(key)
    if not isinstance(value, list):
        raise InputError(f"Field '{key}' must be a list of integers")
    return IntPoly.from_descending(value)


def _int_field(doc, key) -> int:
    value = doc.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InputError(f"Field '{key}' must be an integer")
    return value


def witness_to_document(w: TorusWitness) -> dict:
    """Witness as plain JSON data; polynomials are descending coefficient lists."""
    doc = {
        "schema": SCHEMA_VERSION,
        "kind": WITNESS_KIND,
        "case": w.case,
        "S": w.S.descending(),
        "C": w.C.descending(),
        "Q": w.Q.descending(),
        "m": w.m,
        "n": w.n,
        "j": w.j,
        "k": w.k,
        "P": w.P.descending(),
        "F1": to_rows(w.F1),
        "F2": to_rows(w.F2),
        "wedge_basis": WEDGE_BASIS_ORDER,
    }
    if w.lam is not None:
        doc["lambda"] = {"lo": str(w.lam.lo), "hi": str(w.lam.hi)}
    return doc


def witness_from_document(doc) -> TorusWitness:
    case = doc.get("case")
    if case not in TORUS_CASES:
        raise InputError(f"Unknown witness case {case!r}")
    basis = doc.get("wedge_basis", WEDGE_BASIS_ORDER)
    if basis != WEDGE_BASIS_ORDER:
        raise InputError(f"Unsupported wedge basis order {basis!r}")
    lam = None
    if "lambda" in doc:
        try:
            lam = RatInterval(Fraction(doc["lambda"]["lo"]), Fraction(doc["lambda"]["hi"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError(f"Malformed lambda bracket: {e}")
    try:
        F1 = int_matrix(doc["F1"])
        F2 = int_matrix(doc["F2"])
    except KeyError as e:
        raise InputError(f"Missing matrix {e}")
    return TorusWitness(
        case=case, S=_poly_field(doc, "S"), C=_poly_field(doc, "C"), Q=_poly_field(doc, "Q"),
        m=_int_field(doc, "m"), n=_int_field(doc, "n"), j=_int_field(doc, "j"), k=_int_field(doc, "k"),
        P=_poly_field(doc, "P"), F1=F1, F2=F2, lam=lam,
    )


def isometry_from_document(doc) -> IsometryDocument:
    gram = make_gram(doc["gram"])
    matrix = int_matrix(doc["matrix"])
    if matrix.shape != gram.shape:
        raise InputError(f"Matrix shape {matrix.shape} does not match Gram shape {gram.shape}")
    name = doc.get("name")
    return IsometryDocument(gram=gram, matrix=matrix, name=str(name) if name is not None else None)


def isometry_to_document(gram, matrix, name=None) -> dict:
    doc = {"gram": to_rows(gram), "matrix": to_rows(matrix)}
    if name:
        doc["name"] = name
    return doc
