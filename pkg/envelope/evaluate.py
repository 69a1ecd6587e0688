# envelope/evaluate.py
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from algebras.schema import AlgebraSpec, bracket, evaluate_monomial
from envelope.grassmann import EnvelopeAssignment, GrassmannMonomial, grassmann_multiply, koszul_sign
from errors import DimensionMismatchError, GradingRequiredError, ParityMismatchError
from freealg.monomials import Monomial

# sorted generator tuple -> coordinates in L
EnvelopeElement = Dict[Tuple[int, ...], np.ndarray]


def _check(L: AlgebraSpec, monomial: Monomial, assignment: EnvelopeAssignment) -> None:
    if L.grading is None:
        raise GradingRequiredError(f"the Grassmann envelope of {L.name} needs a Z2-grading")
    if assignment.n != monomial.degree:
        raise DimensionMismatchError(f"assignment of {assignment.n} slots for a degree {monomial.degree} monomial")
    for slot, (a, parity) in enumerate(zip(assignment.basis, assignment.parities)):
        if L.grading[a] != parity:
            raise ParityMismatchError(f"slot {slot} holds {L.basis_names[a]} with a block of the other parity")
        if monomial.signature is not None and monomial.signature[slot] != parity:
            raise ParityMismatchError(f"variable {slot + 1} is typed {monomial.signature[slot]} but substituted with parity {parity}")


def evaluate_on_envelope(L: AlgebraSpec, monomial: Monomial, assignment: EnvelopeAssignment) -> Tuple[int, np.ndarray]:
    """(Koszul sign, value in L) of the monomial on b_{a_i} tensored with the assigned blocks"""
    _check(L, monomial, assignment)
    values = [L.basis_vector(a) for a in assignment.basis]
    return koszul_sign(monomial, assignment), evaluate_monomial(L, monomial, values)


def _add(result: EnvelopeElement, generators: Tuple[int, ...], vector: np.ndarray) -> None:
    total = result[generators] + vector if generators in result else vector
    if np.any(total != 0):
        result[generators] = total
    else:
        result.pop(generators, None)


def envelope_bracket(L: AlgebraSpec, u: EnvelopeElement, v: EnvelopeElement) -> EnvelopeElement:
    """[x (x) g, y (x) h] = [x, y] (x) gh, extended bilinearly"""
    result: EnvelopeElement = {}
    for g, x in u.items():
        for h, y in v.items():
            product = grassmann_multiply(GrassmannMonomial(g), GrassmannMonomial(h))
            if product is None:
                continue
            value = bracket(L, x, y)
            if np.any(value != 0):
                _add(result, product.generators, product.sign * value)
    return result


def truncated_envelope_oracle(L: AlgebraSpec, monomial: Monomial, assignment: EnvelopeAssignment,
                              slot_values: Optional[Sequence[EnvelopeElement]] = None) -> EnvelopeElement:
    """Literal evaluation in L (x) G on the first 2n generators"""
    _check(L, monomial, assignment)
    if slot_values is None:
        slot_values = [{tuple(sorted(block)): L.basis_vector(a)}
                       for a, block in zip(assignment.basis, assignment.blocks)]
    elif len(slot_values) != monomial.degree:
        raise DimensionMismatchError(f"{len(slot_values)} slot values for a degree {monomial.degree} monomial")

    def walk(node) -> EnvelopeElement:
        if isinstance(node, int):
            return {g: np.asarray(x, dtype=object) for g, x in slot_values[node - 1].items() if np.any(np.asarray(x) != 0)}
        return envelope_bracket(L, walk(node[0]), walk(node[1]))

    return walk(monomial.tree())


def as_envelope_element(sign: int, value: np.ndarray, assignment: EnvelopeAssignment) -> EnvelopeElement:
    """The Koszul-sign evaluation written in the oracle's form"""
    if not np.any(value != 0):
        return {}
    return {assignment.sorted_product(): sign * value}


def same_element(u: EnvelopeElement, v: EnvelopeElement) -> bool:
    if set(u) != set(v):
        return False
    return all(np.array_equal(u[g], v[g]) for g in u)


def oracle_agrees(L: AlgebraSpec, monomial: Monomial, assignment: EnvelopeAssignment) -> bool:
    sign, value = evaluate_on_envelope(L, monomial, assignment)
    return same_element(as_envelope_element(sign, value, assignment), truncated_envelope_oracle(L, monomial, assignment))
