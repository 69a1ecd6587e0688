# freealg/symmetrizer.py
from itertools import permutations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from combinatorics.partitions import Tableau, conjugate, permutation_sign
from errors import TableauMismatchError
from freealg.monomials import Polynomial, act_permutation


def _columns(tableau: Tableau) -> Tableau:
    shape = tuple(len(row) for row in tableau)
    return tuple(tuple(tableau[i][j] for i in range(height)) for j, height in enumerate(conjugate(shape)))


def _block_permutations(blocks: Tableau, n: int) -> Iterator[Tuple[int, ...]]:
    """All permutations of 1..n that permute each block among itself and fix everything else"""
    choices = [list(permutations(block)) for block in blocks]
    for images in product(*choices):
        sigma = list(range(1, n + 1))
        for block, image in zip(blocks, images):
            for source, target in zip(block, image):
                sigma[source - 1] = target
        yield tuple(sigma)


def _check_tableau(tableau: Tableau, expected: Sequence[int], label: str) -> None:
    entries = sorted(v for row in tableau for v in row)
    if entries != sorted(expected):
        raise TableauMismatchError(f"{label} tableau holds {entries}, expected the indices {sorted(expected)}")
    lengths = [len(row) for row in tableau]
    if any(a < b for a, b in zip(lengths, lengths[1:])) or any(not row for row in tableau):
        raise TableauMismatchError(f"{label} tableau rows {lengths} do not form a Young diagram")


def symmetrize(tableau: Tableau, f: Polynomial) -> Polynomial:
    """(sum over row group p, column group q of sgn(q) pq) applied to f"""
    n = f.degree
    alternated = Polynomial()
    for q in _block_permutations(_columns(tableau), n):
        alternated = alternated + act_permutation(q, f).scale(permutation_sign(q))
    result = Polynomial()
    for p in _block_permutations(tableau, n):
        result = result + act_permutation(p, alternated)
    return result


def apply_young_symmetrizer(t_lambda: Tableau, t_mu: Optional[Tableau], f: Polynomial) -> Polynomial:
    """Symmetrizer of t_lambda on the even (x) indices, then of t_mu on the odd (y) indices"""
    if f.is_zero():
        return Polynomial()
    n = f.degree
    signature = f.signature
    if signature is None:
        even: List[int] = list(range(1, n + 1))
        odd: List[int] = []
    else:
        even = [v for v in range(1, n + 1) if signature[v - 1] == 0]
        odd = [v for v in range(1, n + 1) if signature[v - 1] == 1]
    _check_tableau(t_lambda, even, "even")
    if t_mu is None:
        if odd:
            raise TableauMismatchError(f"odd indices {odd} need a tableau")
    else:
        _check_tableau(t_mu, odd, "odd")

    result = symmetrize(t_lambda, f) if even else f
    if t_mu is not None and odd:
        result = symmetrize(t_mu, result)
    return result
