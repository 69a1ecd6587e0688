# combinatorics/partitions.py
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation
from sympy.utilities.iterables import partitions as sympy_partitions

from errors import DimensionMismatchError, InvalidHookError

Partition = Tuple[int, ...]
CycleType = Partition
Tableau = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class HookSpec:
    """The infinite hook H(k, l): partitions with at most l boxes below row k"""
    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise InvalidHookError(f"hook arms must be non-negative, got ({self.k}, {self.l})")

    def __str__(self):
        return f"H({self.k},{self.l})"


def as_partition(parts: Iterable[int]) -> Partition:
    """Validate and freeze a weakly decreasing sequence of positive integers"""
    lam = tuple(int(p) for p in parts)
    if any(p < 1 for p in lam):
        raise ValueError(f"partition parts must be positive: {list(lam)}")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"partition parts must be weakly decreasing: {list(lam)}")
    return lam


@lru_cache(maxsize=None)
def _partitions(n: int) -> Tuple[Partition, ...]:
    if n == 0:
        return ((),)
    found = []
    for multiplicities in sympy_partitions(n):
        parts = chain.from_iterable([part] * count for part, count in multiplicities.items())
        found.append(tuple(sorted(parts, reverse=True)))
    return tuple(sorted(found, reverse=True))


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions of n in reverse-lexicographic order"""
    if n < 0:
        raise ValueError(f"cannot partition a negative number: {n}")
    return list(_partitions(n))


def conjugate(lam: Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1))


def in_hook(lam: Sequence[int], h: HookSpec) -> bool:
    lam = as_partition(lam)
    return len(lam) <= h.k or lam[h.k] <= h.l


def hook_partition(k: int, l: int, d: int) -> Partition:
    """h(k,l,d) = (l+d repeated k times, l repeated d times), a partition of kl + d(k+l)"""
    if k < 0 or l < 0 or d < 0:
        raise InvalidHookError(f"negative hook parameters ({k}, {l}, {d})")
    if k == 0 and l == 0 and d > 0:
        raise InvalidHookError("h(0,0,d) is not a partition for d > 0")
    parts = [l + d] * k + [l] * d
    return tuple(p for p in parts if p > 0)


def partitions_in_hook(h: HookSpec, n: int) -> List[Partition]:
    return [lam for lam in _partitions(n) if in_hook(lam, h)]


def count_partitions_in_hook(h: HookSpec, n: int) -> int:
    return len(partitions_in_hook(h, n))


@lru_cache(maxsize=None)
def _dimension(lam: Partition) -> int:
    if not lam:
        return 1
    columns = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= (row - j) + (columns[j] - i) - 1
    return factorial(sum(lam)) // hooks


def dimension(lam: Sequence[int]) -> int:
    """Degree of the irreducible character, by the hook-length formula"""
    return _dimension(as_partition(lam))


def _beta_numbers(lam: Partition) -> List[int]:
    size = len(lam)
    return [part + size - 1 - i for i, part in enumerate(lam)]


def _from_beta_numbers(beta: Iterable[int]) -> Partition:
    ordered = sorted(beta, reverse=True)
    size = len(ordered)
    return tuple(p for p in (b - (size - 1 - i) for i, b in enumerate(ordered)) if p > 0)


@lru_cache(maxsize=None)
def _character(lam: Partition, mu: CycleType) -> int:
    # Murnaghan-Nakayama on the abacus: removing a rim hook of length r
    # slides one bead r places down; the sign counts the beads it jumps.
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = _beta_numbers(lam)
    occupied = set(beta)
    value = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        smaller = _from_beta_numbers((occupied - {b}) | {target})
        value += (-1) ** height * _character(smaller, rest)
    return value


def character_value(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Value of the irreducible character chi_lambda on the class of cycle type mu"""
    lam, mu = as_partition(lam), as_partition(mu)
    if sum(lam) != sum(mu):
        raise DimensionMismatchError(f"character {list(lam)} evaluated on class {list(mu)} of another degree")
    return _character(lam, mu)


def centralizer_order(mu: Sequence[int]) -> int:
    """z_mu = prod i^{m_i} m_i!"""
    z = 1
    for part, count in _multiplicities(as_partition(mu)).items():
        z *= part ** count * factorial(count)
    return z


def class_size(mu: Sequence[int]) -> int:
    mu = as_partition(mu)
    return factorial(sum(mu)) // centralizer_order(mu)


def _multiplicities(lam: Partition) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for part in lam:
        counts[part] = counts.get(part, 0) + 1
    return counts


def lr_coefficient(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Number of Littlewood-Richardson tableaux of shape nu/lam and content mu"""
    lam, mu, nu = as_partition(lam), as_partition(mu), as_partition(nu)
    if sum(lam) + sum(mu) != sum(nu):
        raise DimensionMismatchError(f"|{list(lam)}| + |{list(mu)}| != |{list(nu)}|")
    if len(lam) > len(nu) or any(a > b for a, b in zip(lam, nu)):
        return 0

    inner = list(lam) + [0] * (len(nu) - len(lam))
    # reverse reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, inner[r] - 1, -1)]
    filling: Dict[Tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)

    def place(index: int) -> int:
        if index == len(cells):
            return 1
        r, c = cells[index]
        highest = len(mu)
        right = filling.get((r, c + 1))
        if right is not None:
            highest = min(highest, right)
        above = filling.get((r - 1, c))
        lowest = above + 1 if above is not None else 1
        total = 0
        for v in range(lowest, highest + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += place(index + 1)
            counts[v] -= 1
            del filling[(r, c)]
        return total

    return place(0)


def sum_dimensions_in_hook(h: HookSpec, n: int) -> int:
    return sum(_dimension(lam) for lam in partitions_in_hook(h, n))


def hook_dimension_trend(k: int, l: int, n: int) -> Tuple[int, int]:
    """(t, d_{h(k,l,t)}) for the hook partition of size n = kl + t(k+l)"""
    if k + l == 0 or n < k * l or (n - k * l) % (k + l):
        raise InvalidHookError(f"{n} is not of the form {k}*{l} + t*({k}+{l})")
    t = (n - k * l) // (k + l)
    return t, dimension(hook_partition(k, l, t))


def cycle_type_representative(mu: Sequence[int], offset: int = 0, n: Optional[int] = None) -> Tuple[int, ...]:
    """A permutation of 1..n (image tuple) whose cycles are consecutive blocks of lengths mu, starting after offset"""
    mu = as_partition(mu)
    n = offset + sum(mu) if n is None else n
    images = list(range(1, n + 1))
    start = offset
    for length in mu:
        block = list(range(start + 1, start + length + 1))
        for i, v in enumerate(block):
            images[v - 1] = block[(i + 1) % length]
        start += length
    return tuple(images)


def cycle_type(sigma: Sequence[int]) -> CycleType:
    """Cycle type of a permutation given by its 1-based images"""
    if not sigma:
        return ()
    structure = Permutation([s - 1 for s in sigma]).cycle_structure
    return tuple(sorted(chain.from_iterable([length] * count for length, count in structure.items()), reverse=True))


def permutation_sign(sigma: Sequence[int]) -> int:
    if len(sigma) < 2:
        return 1
    return Permutation([s - 1 for s in sigma]).signature()


def canonical_tableau(shape: Sequence[int], labels: Iterable[int]) -> Tableau:
    """Fill the diagram row by row with the sorted labels"""
    shape = as_partition(shape)
    ordered = sorted(labels)
    if len(ordered) != sum(shape):
        raise DimensionMismatchError(f"{len(ordered)} labels for a diagram with {sum(shape)} boxes")
    rows, start = [], 0
    for part in shape:
        rows.append(tuple(ordered[start:start + part]))
        start += part
    return tuple(rows)
