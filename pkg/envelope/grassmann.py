# envelope/grassmann.py
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from errors import DimensionMismatchError, ParityMismatchError
from freealg.monomials import Monomial, Signature


@dataclass(frozen=True)
class GrassmannMonomial:
    """sign * e_{g1} ... e_{gk} with g1 < ... < gk; zero is represented by None"""
    generators: Tuple[int, ...] = ()
    sign: int = 1

    def __post_init__(self):
        if any(a >= b for a, b in zip(self.generators, self.generators[1:])):
            raise ValueError(f"generators must be strictly increasing: {self.generators}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def parity(self) -> int:
        return len(self.generators) % 2

    def __str__(self):
        body = "".join(f"e{g}" for g in self.generators) or "1"
        return body if self.sign > 0 else f"-{body}"


def _inversions(left: Sequence[int], right: Sequence[int]) -> int:
    return sum(1 for a in left for b in right if a > b)


def grassmann_multiply(u: Optional[GrassmannMonomial], v: Optional[GrassmannMonomial]) -> Optional[GrassmannMonomial]:
    if u is None or v is None:
        return None
    if set(u.generators) & set(v.generators):
        return None
    sign = u.sign * v.sign * (-1) ** _inversions(u.generators, v.generators)
    return GrassmannMonomial(tuple(sorted(u.generators + v.generators)), sign)


def grassmann_basis(generators: int, parity: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Sorted generator subsets of 1..generators, optionally of one parity"""
    for size in range(generators + 1):
        if parity is not None and size % 2 != parity:
            continue
        yield from combinations(range(1, generators + 1), size)


@dataclass(frozen=True)
class EnvelopeAssignment:
    """Slot i holds b_{basis[i]} tensored with a fresh block of Grassmann generators"""
    parities: Tuple[int, ...]
    basis: Tuple[int, ...]
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not (len(self.parities) == len(self.basis) == len(self.blocks)):
            raise DimensionMismatchError("parities, basis indices and blocks must cover the same slots")
        seen = set()
        for slot, (parity, block) in enumerate(zip(self.parities, self.blocks)):
            if len(block) != (1 if parity else 2):
                raise ParityMismatchError(f"slot {slot} of parity {parity} holds a block of {len(block)} generators")
            if seen & set(block):
                raise ValueError(f"slot {slot} reuses a generator")
            seen |= set(block)

    @property
    def n(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_monomial(self, slot: int) -> GrassmannMonomial:
        return GrassmannMonomial(tuple(sorted(self.blocks[slot])))

    def sorted_product(self) -> Tuple[int, ...]:
        return tuple(sorted(g for block in self.blocks for g in block))


def allocate_blocks(parities: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """One generator per odd slot, two per even slot, handed out in slot order"""
    blocks: List[Tuple[int, ...]] = []
    next_generator = 1
    for parity in parities:
        width = 1 if parity else 2
        blocks.append(tuple(range(next_generator, next_generator + width)))
        next_generator += width
    return tuple(blocks)


def allocate_assignment(L, basis_indices: Sequence[int]) -> EnvelopeAssignment:
    parities = tuple(L.parity[a] for a in basis_indices)
    return EnvelopeAssignment(parities, tuple(basis_indices), allocate_blocks(parities))


def random_assignment(L, n: int, rng, signature: Optional[Signature] = None) -> EnvelopeAssignment:
    by_parity = {p: [a for a in range(L.dim) if L.parity[a] == p] for p in (0, 1)}
    if signature is None:
        indices = [rng.randrange(L.dim) for _ in range(n)]
    else:
        if len(signature) != n:
            raise DimensionMismatchError(f"signature of length {len(signature)} for {n} slots")
        missing = [p for p in set(signature) if not by_parity[p]]
        if missing:
            raise ParityMismatchError(f"the algebra has no basis elements of parity {missing[0]}")
        indices = [rng.choice(by_parity[p]) for p in signature]
    return allocate_assignment(L, indices)


def koszul_sign(monomial: Monomial, assignment: EnvelopeAssignment) -> int:
    """Sign of the block product in leaf order against slot order; only odd blocks move"""
    if len(monomial.leaves) != assignment.n:
        raise DimensionMismatchError(f"assignment of {assignment.n} slots for a degree {monomial.degree} monomial")
    odd = [v for v in monomial.leaves if assignment.parities[v - 1]]
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    return -1 if inversions % 2 else 1
