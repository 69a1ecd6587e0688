# algebras/validators.py
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from errors import GradingRequiredError


@dataclass(frozen=True)
class ValidationResult:
    """Outcome of a law check; on failure `witness` holds 0-based basis positions"""
    ok: bool
    identity: Optional[str] = None
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


PASS = ValidationResult(True)


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def _nonzero(tensor: np.ndarray, axis: int) -> np.ndarray:
    return (tensor != 0).any(axis=axis)


def _double_brackets(structure: np.ndarray) -> np.ndarray:
    """T[i,j,k] = [[b_i,b_j],b_k]"""
    return np.tensordot(structure, structure, axes=([2], [0]))


def grading_result(structure: np.ndarray, grading: Sequence[int]) -> ValidationResult:
    """[L_i, L_j] inside L_{i+j mod 2} on every basis pair"""
    parity = np.array(grading, dtype=int)
    expected = (parity[:, None] + parity[None, :]) % 2
    wrong = (parity[None, None, :] != expected[:, :, None]) & (structure != 0)
    witness = _first(wrong)
    return PASS if witness is None else ValidationResult(False, "grading", witness)


def lie_result(structure: np.ndarray) -> ValidationResult:
    dim = structure.shape[0]
    if dim == 0:
        return PASS
    diagonal = np.array([[structure[i, i, k] != 0 for k in range(dim)] for i in range(dim)])
    witness = _first(diagonal.any(axis=1))
    if witness is not None:
        return ValidationResult(False, "alternating", (witness[0], witness[0]))

    symmetric = structure + structure.transpose(1, 0, 2)
    witness = _first(_nonzero(symmetric, 2))
    if witness is not None:
        return ValidationResult(False, "anticommutativity", witness)

    T = _double_brackets(structure)
    jacobi = T + T.transpose(2, 0, 1, 3) + T.transpose(1, 2, 0, 3)
    witness = _first(_nonzero(jacobi, 3))
    if witness is not None:
        return ValidationResult(False, "jacobi", witness)
    return PASS


def super_lie_result(structure: np.ndarray, grading: Optional[Sequence[int]]) -> ValidationResult:
    if grading is None:
        raise GradingRequiredError("super-Lie validation needs a Z2-grading")
    dim = structure.shape[0]
    if dim == 0:
        return PASS
    graded = grading_result(structure, grading)
    if not graded:
        return graded

    parity = np.array(grading, dtype=int)
    # eps[i,j] = (-1)^{|i||j|}
    eps = np.where(np.outer(parity, parity) % 2 == 1, -1, 1).astype(object)

    skew = structure + eps[:, :, None] * structure.transpose(1, 0, 2)
    witness = _first(_nonzero(skew, 2))
    if witness is not None:
        return ValidationResult(False, "super-anticommutativity", witness)

    T = _double_brackets(structure)
    # (-1)^{|i||k|}[[b_i,b_j],b_k] + (-1)^{|j||i|}[[b_j,b_k],b_i] + (-1)^{|k||j|}[[b_k,b_i],b_j]
    first = eps[:, None, :, None] * T
    second = eps[:, :, None, None] * T.transpose(2, 0, 1, 3)
    third = eps[None, :, :, None] * T.transpose(1, 2, 0, 3)
    witness = _first(_nonzero(first + second + third, 3))
    if witness is not None:
        return ValidationResult(False, "super-jacobi", witness)
    return PASS


def validate_lie(A) -> ValidationResult:
    """Alternating, anticommutative and Jacobi on all basis triples"""
    return lie_result(A.structure)


def validate_super_lie(A) -> ValidationResult:
    """Super-anticommutativity and super-Jacobi on homogeneous basis triples"""
    return super_lie_result(A.structure, A.grading)


def validate_grading(A) -> ValidationResult:
    if A.grading is None:
        return PASS
    return grading_result(A.structure, A.grading)
