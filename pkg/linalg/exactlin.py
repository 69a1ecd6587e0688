# linalg/exactlin.py
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import nextprime

from errors import DependentBasisError, DimensionMismatchError, UnluckyPrimeError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class RationalField:
    name: str = "QQ"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __str__(self):
        return f"GF({self.p})"


Field = Union[RationalField, PrimeField]
QQ = RationalField()


def make_prime(bits: int = 62, seed: int = 0) -> int:
    """First prime above a seeded random integer with the top bit set"""
    rng = random.Random(seed)
    start = rng.getrandbits(bits) | (1 << (bits - 1))
    return int(nextprime(start))


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.shape != (self.rows, self.cols):
            raise DimensionMismatchError(
                f"entries of shape {self.entries.shape} for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("rows of unequal length")
        entries = np.empty((len(rows), width), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                entries[i, j] = x
        return cls(len(rows), width, entries)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "DenseMatrix":
        entries = np.asarray(array).astype(object)
        return cls(entries.shape[0], entries.shape[1], entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(rows, cols, np.zeros((rows, cols), dtype=object))

    @classmethod
    def identity(cls, size: int) -> "DenseMatrix":
        entries = np.zeros((size, size), dtype=object)
        for i in range(size):
            entries[i, i] = 1
        return cls(size, size, entries)

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def select_rows(self, indices: Sequence[int]) -> "DenseMatrix":
        return DenseMatrix(len(indices), self.cols, self.entries[list(indices)].reshape(len(indices), self.cols))


def transpose(M: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(M.cols, M.rows, M.entries.T.copy())


def _integerize(row: Iterable[Scalar]) -> List[int]:
    values = [x if isinstance(x, int) else Fraction(x) for x in row]
    denominators = [x.denominator for x in values if isinstance(x, Fraction) and x.denominator != 1]
    if not denominators:
        return [int(x) for x in values]
    scale = reduce(lambda a, b: a * b // gcd(a, b), denominators, 1)
    return [int(x * scale) for x in values]


def _residue(x: Scalar, p: int) -> int:
    if isinstance(x, int):
        return x % p
    x = Fraction(x)
    if x.denominator % p == 0:
        raise UnluckyPrimeError(f"{p} divides the denominator of {x}")
    return x.numerator * pow(x.denominator, -1, p) % p


def _primitive(row: List[int]) -> Optional[Tuple[int, ...]]:
    """Row divided by its content, first nonzero entry positive; None for zero rows"""
    g = reduce(gcd, row, 0)
    if g == 0:
        return None
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in row)


def _monic(row: List[int], p: int) -> Optional[Tuple[int, ...]]:
    lead = next((x for x in row if x), 0)
    if lead == 0:
        return None
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in row)


def _prepared(M: DenseMatrix, field: Field) -> np.ndarray:
    """Field-normalized, deduplicated nonzero rows with zero columns dropped"""
    if isinstance(field, PrimeField):
        normalized = (_monic([_residue(x, field.p) for x in r], field.p) for r in M.entries)
    else:
        normalized = (_primitive(_integerize(r)) for r in M.entries)
    unique = list(dict.fromkeys(r for r in normalized if r is not None))
    if not unique:
        return np.zeros((0, 0), dtype=object)
    A = np.empty((len(unique), M.cols), dtype=object)
    for i, r in enumerate(unique):
        A[i, :] = r
    keep = np.flatnonzero((A != 0).any(axis=0))
    return A[:, keep]


def _bareiss_rank(A: np.ndarray) -> int:
    A = A.copy()
    rows, cols = A.shape
    r, previous = 0, 1
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(A[r:, c] != 0)
        if not len(nonzero):
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        if r + 1 < rows:
            below = A[r + 1:, c:]
            # exact division: every entry is a minor of the original matrix
            A[r + 1:, c:] = (A[r, c] * below - below[:, :1] * A[r, c:]) // previous
        previous = A[r, c]
        r += 1
    return r


def _gauss_rank_modp(A: np.ndarray, p: int) -> int:
    A = A.copy()
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(A[r:, c] != 0)
        if not len(nonzero):
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        if r + 1 < rows:
            below = A[r + 1:, c:]
            A[r + 1:, c:] = (below - below[:, :1] * A[r, c:]) % p
        r += 1
    return r


def rank(M: DenseMatrix, field: Field = QQ) -> int:
    """Exact rank over Q (fraction-free Bareiss) or over GF(p) (Gaussian elimination)"""
    A = _prepared(M, field)
    if A.size == 0:
        return 0
    if isinstance(field, PrimeField):
        return _gauss_rank_modp(A, field.p)
    return _bareiss_rank(A)


def echelon(M: DenseMatrix, field: Field = QQ) -> Tuple[List[int], List[int]]:
    """Pivot rows and pivot columns of row-by-row elimination in the given row order"""
    p = field.p if isinstance(field, PrimeField) else None
    basis: List[np.ndarray] = []
    pivot_rows: List[int] = []
    pivot_cols: List[int] = []
    for i in range(M.rows):
        if p is None:
            v = np.array(_integerize(M.entries[i]), dtype=object)
        else:
            v = np.array([_residue(x, p) for x in M.entries[i]], dtype=object)
        for b, c in zip(basis, pivot_cols):
            if v[c] == 0:
                continue
            if p is None:
                v = b[c] * v - v[c] * b
                g = reduce(gcd, v, 0)
                if g > 1:
                    v = v // g
            else:
                v = (v - v[c] * b) % p
        nonzero = np.flatnonzero(v != 0)
        if not len(nonzero):
            continue
        c = int(nonzero[0])
        if p is not None:
            v = (v * pow(int(v[c]), -1, p)) % p
        basis.append(v)
        pivot_rows.append(i)
        pivot_cols.append(c)
    return pivot_rows, pivot_cols


def image_basis(M: DenseMatrix, field: Field = QQ) -> List[int]:
    """Lexicographically first maximal set of independent rows"""
    return echelon(M, field)[0]


def _inverse(S: np.ndarray, field: Field) -> np.ndarray:
    size = S.shape[0]
    p = field.p if isinstance(field, PrimeField) else None
    if p is None:
        A = np.array([[Fraction(x) for x in row] for row in S], dtype=object).reshape(size, size)
        I = np.array([[Fraction(int(i == j)) for j in range(size)] for i in range(size)], dtype=object).reshape(size, size)
    else:
        A = np.array([[_residue(x, p) for x in row] for row in S], dtype=object).reshape(size, size)
        I = np.array([[int(i == j) for j in range(size)] for i in range(size)], dtype=object).reshape(size, size)
    aug = np.concatenate([A, I], axis=1)
    for c in range(size):
        nonzero = np.flatnonzero(aug[c:, c] != 0)
        if not len(nonzero):
            raise DependentBasisError("basis restricted to its pivot columns is singular")
        pivot = c + int(nonzero[0])
        if pivot != c:
            aug[[c, pivot], :] = aug[[pivot, c], :]
        if p is None:
            aug[c] = aug[c] / aug[c, c]
        else:
            aug[c] = (aug[c] * pow(int(aug[c, c]), -1, p)) % p
        for r in range(size):
            if r != c and aug[r, c] != 0:
                aug[r] = aug[r] - aug[r, c] * aug[c]
                if p is not None:
                    aug[r] %= p
    return aug[:, size:]


class SpanSolver:
    """Expresses vectors in the span of independent basis rows"""

    def __init__(self, B: DenseMatrix, field: Field = QQ):
        self.field = field
        self.size = B.rows
        pivot_rows, pivot_cols = echelon(B, field)
        if len(pivot_rows) != B.rows:
            raise DependentBasisError(f"{B.rows} basis rows span only {len(pivot_rows)} dimensions")
        self.pivot_cols = pivot_cols
        if isinstance(field, PrimeField):
            p = field.p
            self.basis = np.array([[_residue(x, p) for x in row] for row in B.entries], dtype=object)
        else:
            self.basis = np.array([[Fraction(x) for x in row] for row in B.entries], dtype=object)
        self.basis = self.basis.reshape(B.rows, B.cols)
        self.inverse = _inverse(self.basis[:, pivot_cols], field) if B.rows else np.zeros((0, 0), dtype=object)

    def _coerce(self, v: Sequence[Scalar]) -> np.ndarray:
        if len(v) != self.basis.shape[1]:
            raise DimensionMismatchError(f"vector of length {len(v)} against {self.basis.shape[1]} columns")
        if isinstance(self.field, PrimeField):
            return np.array([_residue(x, self.field.p) for x in v], dtype=object)
        return np.array([Fraction(x) for x in v], dtype=object)

    def solve(self, v: Sequence[Scalar]) -> Optional[List[Scalar]]:
        """c with c.B = v, or None when v is not in the span"""
        v = self._coerce(v)
        if self.size == 0:
            return [] if not np.any(v != 0) else None
        c = v[self.pivot_cols].dot(self.inverse)
        check = c.dot(self.basis)
        if isinstance(self.field, PrimeField):
            c = c % self.field.p
            check = check % self.field.p
        if np.any(check != v):
            return None
        return list(c)


def solve_in_span(B: DenseMatrix, v: Sequence[Scalar], field: Field = QQ) -> Optional[List[Scalar]]:
    return SpanSolver(B, field).solve(v)


def lift_symmetric(x: int, p: int) -> int:
    """Representative of x mod p in (-p/2, p/2]"""
    x %= p
    return x - p if x > p // 2 else x
