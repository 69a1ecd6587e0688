# codim/matrix.py
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import permutations, product
from math import comb, factorial, gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebras.schema import AlgebraSpec, odd_brackets_vanish
from config import config
from errors import BudgetExceededError, GradingRequiredError, InternalInconsistencyError, UsageError
from freealg.monomials import (
    ALL_BRACKETINGS,
    LEFT_NORMED,
    SPANNING_KINDS,
    Monomial,
    Signature,
    SpanningSet,
    generate_spanning_set,
    graded_signature,
    permutation_rank,
)
from linalg.exactlin import QQ, DenseMatrix, PrimeField, make_prime, rank

ORDINARY = "ordinary"
GRADED = "graded"
INT64_LIMIT = 2 ** 62


@dataclass(frozen=True, eq=False)
class EvaluationTarget:
    """A finite-dimensional algebra, or the Grassmann envelope of a graded Lie algebra"""
    algebra: AlgebraSpec
    envelope: bool = False
    mode: str = ORDINARY

    def __post_init__(self):
        if self.mode not in (ORDINARY, GRADED):
            raise UsageError(f"unknown evaluation mode {self.mode!r}")
        if self.envelope:
            if self.algebra.grading is None:
                raise GradingRequiredError(f"the Grassmann envelope of {self.algebra.name} needs a Z2-grading")
            if self.algebra.declared_class != "lie":
                raise UsageError(f"envelopes are taken of Lie algebras, {self.algebra.name} is {self.algebra.declared_class}")

    @classmethod
    def from_mode(cls, algebra: AlgebraSpec, mode: str) -> "EvaluationTarget":
        """ordinary | graded | envelope | envelope-graded"""
        if mode not in config.MODES:
            raise UsageError(f"unknown mode {mode!r}; expected one of {', '.join(config.MODES)}")
        return cls(algebra, envelope=mode.startswith("envelope"), mode=GRADED if mode.endswith("graded") else ORDINARY)

    @property
    def label(self) -> str:
        return f"G({self.algebra.name})" if self.envelope else self.algebra.name

    @property
    def graded(self) -> bool:
        return self.mode == GRADED

    @property
    def mode_name(self) -> str:
        """The command-line spelling of this target's mode"""
        if self.envelope:
            return "envelope-graded" if self.graded else "envelope"
        return self.mode

    def with_mode(self, mode: str) -> "EvaluationTarget":
        return EvaluationTarget(self.algebra, self.envelope, mode)

    def as_envelope(self) -> "EvaluationTarget":
        return EvaluationTarget(self.algebra, True, self.mode)

    def as_plain(self) -> "EvaluationTarget":
        return EvaluationTarget(self.algebra, False, self.mode)


def spanning_kind(T: EvaluationTarget, typed: bool) -> str:
    """Left-normed monomials span modulo identities exactly when the target is (super-)anticommutative
    and (super-)Jacobi with signs fixed by the variable typing"""
    A = T.algebra
    if A.declared_class == "nonassociative":
        return ALL_BRACKETINGS
    supersymmetric = T.envelope or A.declared_class == "super-lie"
    if not supersymmetric or typed:
        return LEFT_NORMED
    return LEFT_NORMED if odd_brackets_vanish(A) else ALL_BRACKETINGS


def _integer_structure(A: AlgebraSpec) -> Tuple[np.ndarray, int]:
    """Structure constants scaled to integers, and the largest absolute value"""
    values = [x for x in A.structure.flat]
    denominators = [Fraction(x).denominator for x in values]
    scale = reduce(lambda a, b: a * b // gcd(a, b), denominators, 1)
    S = np.empty(A.structure.shape, dtype=object)
    for index, x in np.ndenumerate(A.structure):
        S[index] = int(Fraction(x) * scale)
    largest = max((abs(x) for x in S.flat), default=0)
    return S, largest


def column_tuples(A: AlgebraSpec, n: int, signature: Optional[Signature] = None) -> np.ndarray:
    """Basis tuples substituted for z1..zn, lexicographic; typed slots draw from the matching parity"""
    if signature is None:
        choices = [range(A.dim)] * n
    else:
        parity = A.parity
        choices = [[a for a in range(A.dim) if parity[a] == s] for s in signature]
    tuples = np.array(list(product(*choices)), dtype=np.int64)
    return tuples.reshape(-1, n)


def _entry_bound(d: int, largest: int, n: int) -> int:
    """Largest absolute entry a degree n evaluation can reach with integer structure constants"""
    return (d * d * largest) ** (n - 1) if n > 1 else 1


def fits_int64(A: AlgebraSpec, n: int) -> bool:
    _, largest = _integer_structure(A)
    return _entry_bound(A.dim, largest, n) < INT64_LIMIT


def estimate_mb(A: AlgebraSpec, n: int, rows: int, tuple_count: int) -> float:
    """Peak working set of the matrix and its reduced copies; object entries cost a boxed int each"""
    per_entry = config.INT64_BYTES_PER_ENTRY if fits_int64(A, n) else config.OBJECT_BYTES_PER_ENTRY
    return rows * tuple_count * max(A.dim, 1) * per_entry / 2 ** 20


def _word_table(S: np.ndarray, shape: tuple, cache: Dict[tuple, np.ndarray]) -> np.ndarray:
    """V[w, k] = coordinate k of the bracketing `shape` evaluated on the basis word w"""
    if shape in cache:
        return cache[shape]
    d = S.shape[0]
    if shape == ():
        V = np.eye(d, dtype=S.dtype) if S.dtype != object else np.eye(d, dtype=np.int64).astype(object)
    else:
        left = _word_table(S, shape[0], cache)
        right = _word_table(S, shape[1], cache)
        partial = np.tensordot(left, S, axes=([1], [0]))
        V = np.tensordot(partial, right, axes=([1], [1])).transpose(0, 2, 1).reshape(-1, d)
    cache[shape] = V
    return V


@dataclass
class EvaluationMatrix:
    """Rows: spanning monomials. Columns: (basis tuple, output coordinate), tuple-major."""
    target: EvaluationTarget
    n: int
    signature: Optional[Signature]
    spanning: SpanningSet
    tuples: np.ndarray
    entries: np.ndarray
    shapes: List[tuple] = field(default_factory=list)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    def row_index(self, monomial: Monomial) -> int:
        position = self.shapes.index(monomial.shape)
        return position * factorial(self.n) + permutation_rank(monomial.leaves)

    def row(self, monomial: Monomial) -> np.ndarray:
        return self.entries[self.row_index(monomial)]

    @cached_property
    def reduced(self) -> np.ndarray:
        """Entries with zero and repeated columns dropped; row relations are unchanged"""
        E = self.entries
        if E.size == 0:
            return E.reshape(E.shape[0], 0)
        E = E[:, np.any(E != 0, axis=0)]
        if E.size and E.dtype != object:
            E = np.unique(E, axis=1)
        return E

    def exact_row(self, i: int) -> np.ndarray:
        return self.reduced[i].astype(object)

    def dense(self, indices: Optional[Sequence[int]] = None) -> DenseMatrix:
        E = self.reduced if indices is None else self.reduced[list(indices)].reshape(len(indices), self.reduced.shape[1])
        return DenseMatrix.from_array(E)

    def representative_rows(self) -> List[int]:
        """First row of every class of nonzero rows that agree up to a scalar"""
        E = self.reduced
        nonzero = np.flatnonzero(np.any(E != 0, axis=1)) if E.size else np.zeros(0, dtype=np.int64)
        if E.dtype == object or not len(nonzero):
            return nonzero.tolist()
        _, first = np.unique(_normalized(E[nonzero]), axis=0, return_index=True)
        return sorted(nonzero[first].tolist())

    def rank_matrix(self) -> DenseMatrix:
        """Primitive, sign-normalized, deduplicated rows; only the row span is preserved"""
        E = self.reduced
        E = E[np.any(E != 0, axis=1)] if E.size else E
        if E.size and E.dtype != object:
            E = np.unique(_normalized(E), axis=0)
        return DenseMatrix.from_array(E)


def _normalized(E: np.ndarray) -> np.ndarray:
    """Nonzero integer rows divided by their content, leading entry positive"""
    g = np.gcd.reduce(np.abs(E), axis=1)
    E = E // g[:, None]
    lead = E[np.arange(E.shape[0]), np.argmax(E != 0, axis=1)]
    return E * np.sign(lead)[:, None]


def evaluation_matrix(T: EvaluationTarget, n: int, signature: Optional[Signature] = None,
                      spanning: Optional[str] = None, force: bool = False) -> EvaluationMatrix:
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    A = T.algebra
    kind = spanning or spanning_kind(T, typed=signature is not None)
    if kind not in SPANNING_KINDS:
        raise UsageError(f"unknown spanning set {kind!r}")
    span = generate_spanning_set(kind, n, signature)
    shapes = list(dict.fromkeys(m.shape for m in span.monomials))
    tuples = column_tuples(A, n, signature)

    mb = estimate_mb(A, n, len(span), len(tuples))
    if mb > config.BUDGET_MB and not force:
        raise BudgetExceededError(f"evaluation matrix of {T.label} in degree {n} exceeds {config.BUDGET_MB} MB", mb)

    S, largest = _integer_structure(A)
    d = A.dim
    S = S.astype(np.int64) if _entry_bound(d, largest, n) < INT64_LIMIT else S
    dtype = S.dtype

    perms = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    weights = np.array([d ** (n - 1 - j) for j in range(n)], dtype=np.int64)
    words = np.zeros((len(perms), len(tuples)), dtype=np.int64)
    for j in range(n):
        words += tuples[:, perms[:, j]].T * weights[j]

    sign = None
    if T.envelope and n > 1:
        odd = np.array(A.parity, dtype=np.int64)[tuples] if len(tuples) else np.zeros((0, n), dtype=np.int64)
        us, vs = np.triu_indices(n, k=1)
        position = np.argsort(perms, axis=1)
        inverted = (position[:, vs] < position[:, us]).astype(np.int64)
        swaps = inverted @ (odd[:, us] * odd[:, vs]).T
        sign = 1 - 2 * (swaps % 2)
        if dtype == object:
            sign = sign.astype(object)

    cache: Dict[tuple, np.ndarray] = {}
    entries = np.zeros((len(shapes) * len(perms), len(tuples) * d), dtype=dtype)
    for i, shape in enumerate(shapes):
        V = _word_table(S, shape, cache)
        values = V[words]
        if sign is not None:
            values = values * sign[:, :, None]
        entries[i * len(perms):(i + 1) * len(perms)] = values.reshape(len(perms), len(tuples) * d)
    return EvaluationMatrix(T, n, signature, span, tuples, entries, shapes)


ARITHMETIC_MODES = ("auto", "exact", "modular", "modular-verified")


@dataclass
class Arithmetic:
    """Which field ranks are taken over, and the prime used for modular work"""
    mode: str = "auto"
    seed: int = config.SEED
    bits: int = config.PRIME_BITS
    prime: int = field(init=False)

    def __post_init__(self):
        if self.mode not in ARITHMETIC_MODES:
            raise UsageError(f"unknown arithmetic {self.mode!r}; expected one of {', '.join(ARITHMETIC_MODES)}")
        self.prime = make_prime(self.bits, self.seed)

    def exact_for(self, n: int) -> bool:
        return self.mode == "exact" or (self.mode == "auto" and n <= config.EXACT_MAX_N)

    def label(self, n: int) -> str:
        if self.exact_for(n):
            return "exact"
        return "modular-verified" if self.mode == "modular-verified" else "modular"

    def rank(self, M: DenseMatrix, n: int) -> int:
        if self.exact_for(n):
            return rank(M, QQ)
        modular = rank(M, PrimeField(self.prime))
        if self.mode == "modular-verified":
            exact = rank(M, QQ)
            if exact != modular:
                raise InternalInconsistencyError(f"rank {exact} over Q but {modular} modulo {self.prime}")
        return modular


def codimension(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                spanning: Optional[str] = None, force: bool = False) -> int:
    """c_n: rank of the ordinary evaluation matrix"""
    arithmetic = arithmetic or Arithmetic()
    E = evaluation_matrix(T.with_mode(ORDINARY), n, spanning=spanning, force=force)
    return arithmetic.rank(E.rank_matrix(), n)


def graded_codimension_part(T: EvaluationTarget, q: int, m: int, arithmetic: Optional[Arithmetic] = None,
                            spanning: Optional[str] = None, force: bool = False) -> int:
    """c_{q,m}: x1..xq substituted from L0, y1..ym from L1"""
    if not T.graded:
        raise GradingRequiredError("graded codimensions need a target in graded mode")
    if q < 0 or m < 0 or q + m < 1:
        raise ValueError(f"invalid signature ({q}, {m})")
    arithmetic = arithmetic or Arithmetic()
    E = evaluation_matrix(T, q + m, graded_signature(q, m), spanning=spanning, force=force)
    return arithmetic.rank(E.rank_matrix(), q + m)


def graded_codimension(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                       force: bool = False) -> int:
    """c_n^gr = sum over q of C(n, q) c_{q, n-q}"""
    return sum(comb(n, q) * graded_codimension_part(T, q, n - q, arithmetic, force=force) for q in range(n + 1))
