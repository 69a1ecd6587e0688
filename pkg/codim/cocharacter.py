# codim/cocharacter.py
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import nextprime

from codim.matrix import ORDINARY, Arithmetic, EvaluationTarget, evaluation_matrix
from combinatorics.partitions import (
    Partition,
    character_value,
    class_size,
    cycle_type_representative,
    dimension,
    enumerate_partitions,
)
from errors import GradingRequiredError, InternalInconsistencyError, UnluckyPrimeError
from freealg.monomials import Signature, graded_signature
from linalg.exactlin import PrimeField, SpanSolver, image_basis, lift_symmetric

CocharacterKey = Union[Partition, Tuple[Partition, Partition]]
PRIME_RETRIES = 8


class QuotientModule:
    """P_n (or P_{q,m}) modulo the identities of a target, realized as the row space of its evaluation matrix"""

    def __init__(self, T: EvaluationTarget, n: int, signature: Optional[Signature] = None,
                 arithmetic: Optional[Arithmetic] = None, force: bool = False, spanning: Optional[str] = None):
        self.arithmetic = arithmetic or Arithmetic()
        self.matrix = evaluation_matrix(T, n, signature, spanning=spanning, force=force)
        self.n = n
        self.dimension = self.arithmetic.rank(self.matrix.rank_matrix(), n)
        candidates = self.matrix.representative_rows()
        candidate_rows = self.matrix.dense(candidates)

        prime = self.arithmetic.prime
        for _ in range(PRIME_RETRIES):
            basis = [candidates[i] for i in image_basis(candidate_rows, PrimeField(prime))]
            if len(basis) == self.dimension:
                break
            prime = int(nextprime(prime))
        else:
            raise UnluckyPrimeError(f"no prime among {PRIME_RETRIES} tried keeps rank {self.dimension}")
        self.prime = prime
        self.basis = basis
        self._solver = SpanSolver(self.matrix.dense(basis), PrimeField(prime))

    def trace(self, sigma: Sequence[int]) -> int:
        """Trace of sigma on the quotient, computed modulo the prime and lifted to (-p/2, p/2]"""
        monomials = self.matrix.spanning.monomials
        total = 0
        for position, i in enumerate(self.basis):
            image = monomials[i].relabel(sigma)
            coefficients = self._solver.solve(self.matrix.exact_row(self.matrix.row_index(image)))
            if coefficients is None:
                raise InternalInconsistencyError(f"{image} left the span of the quotient basis")
            total += coefficients[position]
        return lift_symmetric(total, self.prime)


@dataclass
class Cocharacter:
    """Multiplicities of irreducible S_n (or S_q x S_m) characters; zero multiplicities are omitted"""
    n: int
    multiplicities: Dict[CocharacterKey, int] = field(default_factory=dict)
    signature: Optional[Tuple[int, int]] = None

    @property
    def graded(self) -> bool:
        return self.signature is not None

    def dimension_of(self, key: CocharacterKey) -> int:
        if self.graded:
            return dimension(key[0]) * dimension(key[1])
        return dimension(key)

    @property
    def codimension(self) -> int:
        return sum(m * self.dimension_of(key) for key, m in self.multiplicities.items())

    @property
    def colength(self) -> int:
        return sum(self.multiplicities.values())

    @property
    def max_dimension(self) -> int:
        return max((self.dimension_of(key) for key in self.multiplicities), default=0)

    def items(self) -> List[Tuple[CocharacterKey, int]]:
        return list(self.multiplicities.items())

    def top(self, count: int) -> List[Tuple[CocharacterKey, int]]:
        """The largest multiplicities, ties kept in partition order"""
        return sorted(self.items(), key=lambda item: -item[1])[:count]


def _multiplicity(total: Fraction, key) -> int:
    if total.denominator != 1 or total < 0:
        raise InternalInconsistencyError(f"multiplicity {total} of {key} is not a non-negative integer")
    return int(total)


def trace_on_quotient(T: EvaluationTarget, n: int, sigma: Sequence[int], signature: Optional[Signature] = None,
                      arithmetic: Optional[Arithmetic] = None) -> int:
    return QuotientModule(T, n, signature, arithmetic).trace(sigma)


def cocharacter(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                force: bool = False, spanning: Optional[str] = None) -> Cocharacter:
    """chi_n = sum of m_lambda chi_lambda, by orthogonality against the traces on the quotient"""
    module = QuotientModule(T.with_mode(ORDINARY), n, None, arithmetic, force, spanning)
    classes = enumerate_partitions(n)
    traces = {mu: module.trace(cycle_type_representative(mu)) for mu in classes}

    result = Cocharacter(n)
    for lam in classes:
        total = Fraction(sum(class_size(mu) * traces[mu] * character_value(lam, mu) for mu in classes), factorial(n))
        m = _multiplicity(total, lam)
        if m:
            result.multiplicities[lam] = m
    if result.codimension != module.dimension:
        raise InternalInconsistencyError(
            f"cocharacter of {T.label} in degree {n} has degree {result.codimension}, codimension is {module.dimension}")
    return result


def _pair_representative(alpha: Partition, beta: Partition, q: int, n: int) -> Tuple[int, ...]:
    first = cycle_type_representative(alpha, 0, n)
    second = cycle_type_representative(beta, q, n)
    return first[:q] + second[q:]


def graded_cocharacter(T: EvaluationTarget, q: int, m: int, arithmetic: Optional[Arithmetic] = None,
                       force: bool = False, spanning: Optional[str] = None) -> Cocharacter:
    """chi_{q,m} = sum of m_{lambda,mu} chi_lambda (x) chi_mu over S_q x S_m"""
    if not T.graded:
        raise GradingRequiredError("graded cocharacters need a target in graded mode")
    n = q + m
    module = QuotientModule(T, n, graded_signature(q, m), arithmetic, force, spanning)
    left, right = enumerate_partitions(q), enumerate_partitions(m)
    traces = {(a, b): module.trace(_pair_representative(a, b, q, n)) for a in left for b in right}

    result = Cocharacter(n, signature=(q, m))
    order = factorial(q) * factorial(m)
    for lam in left:
        for mu in right:
            total = Fraction(sum(class_size(a) * class_size(b) * trace * character_value(lam, a) * character_value(mu, b)
                                 for (a, b), trace in traces.items()), order)
            multiplicity = _multiplicity(total, (lam, mu))
            if multiplicity:
                result.multiplicities[(lam, mu)] = multiplicity
    if result.codimension != module.dimension:
        raise InternalInconsistencyError(
            f"graded cocharacter of {T.label} at ({q}, {m}) has degree {result.codimension}, "
            f"codimension is {module.dimension}")
    return result


def colength(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None) -> int:
    return cocharacter(T, n, arithmetic).colength


def graded_colength(T: EvaluationTarget, q: int, m: int, arithmetic: Optional[Arithmetic] = None) -> int:
    return graded_cocharacter(T, q, m, arithmetic).colength
