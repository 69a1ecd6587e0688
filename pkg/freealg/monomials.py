# freealg/monomials.py
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from errors import DimensionMismatchError, ParityMismatchError, ParityRequiredError

Shape = tuple  # () is a leaf, (left, right) a bracket
Signature = Tuple[int, ...]
Tree = Union[int, tuple]

LEFT_NORMED = "left-normed"
ALL_BRACKETINGS = "all-bracketings"
SPANNING_KINDS = (LEFT_NORMED, ALL_BRACKETINGS)


@lru_cache(maxsize=None)
def _shapes(n: int) -> Tuple[Shape, ...]:
    if n == 1:
        return ((),)
    found = []
    for i in range(1, n):
        for left in _shapes(i):
            for right in _shapes(n - i):
                found.append((left, right))
    return tuple(found)


def bracketing_shapes(n: int) -> List[Shape]:
    """Full binary bracketings of n leaves, ordered by the size of the left factor"""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    return list(_shapes(n))


@lru_cache(maxsize=None)
def _shape_ranks(n: int) -> Dict[Shape, int]:
    return {s: i for i, s in enumerate(_shapes(n))}


def shape_size(shape: Shape) -> int:
    return 1 if shape == () else shape_size(shape[0]) + shape_size(shape[1])


def left_normed_shape(n: int) -> Shape:
    shape: Shape = ()
    for _ in range(n - 1):
        shape = (shape, ())
    return shape


def shape_rank(shape: Shape) -> int:
    return _shape_ranks(shape_size(shape))[shape]


def permutation_rank(leaves: Sequence[int]) -> int:
    return Permutation([v - 1 for v in leaves]).rank() if len(leaves) > 1 else 0


def graded_signature(q: int, m: int) -> Signature:
    """x1..xq even, y1..ym odd"""
    return (0,) * q + (1,) * m


def _attach(shape: Shape, leaves: Sequence[int], start: int = 0) -> Tuple[Tree, int]:
    if shape == ():
        return leaves[start], start + 1
    left, start = _attach(shape[0], leaves, start)
    right, start = _attach(shape[1], leaves, start)
    return (left, right), start


@dataclass(frozen=True)
class Monomial:
    """A multilinear bracket monomial: a bracketing shape filled with the variables in leaf order"""
    shape: Shape
    leaves: Tuple[int, ...]
    signature: Optional[Signature] = None

    def __post_init__(self):
        n = len(self.leaves)
        if shape_size(self.shape) != n:
            raise DimensionMismatchError(f"shape with {shape_size(self.shape)} leaves filled with {n} variables")
        if sorted(self.leaves) != list(range(1, n + 1)):
            raise ValueError(f"leaves must be a permutation of 1..{n}: {self.leaves}")
        if self.signature is not None and len(self.signature) != n:
            raise DimensionMismatchError(f"signature of length {len(self.signature)} for degree {n}")

    @property
    def degree(self) -> int:
        return len(self.leaves)

    @property
    def typed(self) -> bool:
        return self.signature is not None

    @property
    def key(self) -> Tuple[int, int]:
        return shape_rank(self.shape), permutation_rank(self.leaves)

    def tree(self) -> Tree:
        return _attach(self.shape, self.leaves)[0]

    def relabel(self, sigma: Sequence[int]) -> "Monomial":
        return Monomial(self.shape, tuple(sigma[v - 1] for v in self.leaves), self.signature)

    def variable_name(self, v: int) -> str:
        if self.signature is None:
            return f"z{v}"
        parity = self.signature[v - 1]
        index = sum(1 for u in range(1, v + 1) if self.signature[u - 1] == parity)
        return f"{'y' if parity else 'x'}{index}"

    def __str__(self):
        def render(node: Tree) -> str:
            if isinstance(node, int):
                return self.variable_name(node)
            return f"[{render(node[0])},{render(node[1])}]"

        return render(self.tree())

    def __lt__(self, other: "Monomial"):
        return self.key < other.key


_TOKEN = re.compile(r"\[|\]|,|([xyz])(\d+)")


def parse_monomial(text: str) -> Monomial:
    """Inverse of printing: `[[x1,y2],y1]`, `[z2,z1]`, `z3`"""
    stripped = text.replace(" ", "")
    tokens = []
    position = 0
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if not match:
            raise ValueError(f"unexpected character {stripped[position]!r} at position {position} in {text!r}")
        tokens.append(match)
        position = match.end()

    variables: List[Tuple[str, int]] = []

    def parse(i: int) -> Tuple[Shape, int]:
        if i >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        token = tokens[i]
        if token.group(1):
            variables.append((token.group(1), int(token.group(2))))
            return (), i + 1
        if token.group(0) != "[":
            raise ValueError(f"expected a variable or '[' in {text!r}")
        left, i = parse(i + 1)
        if i >= len(tokens) or tokens[i].group(0) != ",":
            raise ValueError(f"expected ',' in {text!r}")
        right, i = parse(i + 1)
        if i >= len(tokens) or tokens[i].group(0) != "]":
            raise ValueError(f"expected ']' in {text!r}")
        return (left, right), i + 1

    shape, end = parse(0)
    if end != len(tokens):
        raise ValueError(f"trailing input in {text!r}")

    kinds = {kind for kind, _ in variables}
    if "z" in kinds and kinds != {"z"}:
        raise ValueError(f"cannot mix untyped and typed variables in {text!r}")
    if kinds == {"z"}:
        return Monomial(shape, tuple(i for _, i in variables))
    q = sum(1 for kind, _ in variables if kind == "x")
    m = len(variables) - q
    leaves = tuple(i if kind == "x" else q + i for kind, i in variables)
    return Monomial(shape, leaves, graded_signature(q, m))


@dataclass
class Polynomial:
    """Rational linear combination of monomials; zero coefficients are never stored"""
    terms: Dict[Monomial, Fraction] = field(default_factory=dict)

    @classmethod
    def from_monomial(cls, monomial: Monomial, coefficient=1) -> "Polynomial":
        return cls({monomial: Fraction(coefficient)}) if coefficient else cls()

    @classmethod
    def from_terms(cls, items: Iterable[Tuple[Monomial, object]]) -> "Polynomial":
        result = cls()
        for monomial, coefficient in items:
            result.add_term(monomial, coefficient)
        return result

    def add_term(self, monomial: Monomial, coefficient) -> None:
        if self.terms:
            sample = next(iter(self.terms))
            if sample.signature != monomial.signature or sample.degree != monomial.degree:
                raise DimensionMismatchError("monomials of one polynomial must share degree and variable typing")
        value = self.terms.get(monomial, Fraction(0)) + Fraction(coefficient)
        if value:
            self.terms[monomial] = value
        else:
            self.terms.pop(monomial, None)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        result = Polynomial(dict(self.terms))
        for monomial, coefficient in other.terms.items():
            result.add_term(monomial, coefficient)
        return result

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def scale(self, factor) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial()
        return Polynomial({m: c * factor for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def signature(self) -> Optional[Signature]:
        return next(iter(self.terms)).signature if self.terms else None

    @property
    def degree(self) -> Optional[int]:
        return next(iter(self.terms)).degree if self.terms else None

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].key)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (monomial, coefficient) in enumerate(self.sorted_terms()):
            magnitude = abs(coefficient)
            if i == 0:
                sign = "-" if coefficient < 0 else ""
            else:
                sign = " - " if coefficient < 0 else " + "
            parts.append(f"{sign}{magnitude}*{monomial}")
        return "".join(parts)


@dataclass(frozen=True)
class SpanningSet:
    kind: str
    n: int
    signature: Optional[Signature]
    monomials: Tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)

    def index(self) -> Dict[Monomial, int]:
        return {m: i for i, m in enumerate(self.monomials)}


def generate_spanning_set(kind: str, n: int, signature: Optional[Signature] = None) -> SpanningSet:
    """Monomials spanning P_n, ordered by (shape rank, permutation rank)"""
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    if kind not in SPANNING_KINDS:
        raise ValueError(f"unknown spanning set {kind!r}; expected one of {SPANNING_KINDS}")
    if signature is not None and len(signature) != n:
        raise DimensionMismatchError(f"signature of length {len(signature)} for degree {n}")
    shapes = [left_normed_shape(n)] if kind == LEFT_NORMED else bracketing_shapes(n)
    monomials = tuple(
        Monomial(shape, leaves, signature)
        for shape in shapes
        for leaves in permutations(range(1, n + 1))
    )
    return SpanningSet(kind, n, signature, monomials)


def _check_preserves(sigma: Sequence[int], signature: Signature) -> None:
    for i, image in enumerate(sigma, start=1):
        if signature[image - 1] != signature[i - 1]:
            raise ParityMismatchError(f"permutation sends variable {i} to {image} of the other parity")


def act_permutation(sigma: Sequence[int], f: Polynomial) -> Polynomial:
    """sigma.f(x1..xn) = f(x_sigma(1)..x_sigma(n)): leaf i is relabelled sigma(i)"""
    if f.is_zero():
        return Polynomial()
    if len(sigma) != f.degree:
        raise DimensionMismatchError(f"permutation of {len(sigma)} points acting in degree {f.degree}")
    if f.signature is not None:
        _check_preserves(sigma, f.signature)
    return Polynomial.from_terms((m.relabel(sigma), c) for m, c in f.terms.items())


def tilde_sign(monomial: Monomial) -> int:
    """Sign of the permutation carrying the sorted odd variables to their leaf order"""
    if monomial.signature is None:
        raise ParityRequiredError("the tilde map needs parity-typed variables")
    odd = [v for v in monomial.leaves if monomial.signature[v - 1]]
    inversions = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i] > odd[j])
    return -1 if inversions % 2 else 1


def tilde(f: Polynomial) -> Polynomial:
    if f.is_zero():
        return Polynomial()
    return Polynomial({m: c * tilde_sign(m) for m, c in f.terms.items()})


def random_polynomial(spanning: SpanningSet, rng, terms: int = 3, bound: int = 3) -> Polynomial:
    """A few spanning monomials with small nonzero integer coefficients"""
    chosen = rng.sample(range(len(spanning)), min(terms, len(spanning)))
    coefficients = [v for v in range(-bound, bound + 1) if v]
    return Polynomial.from_terms((spanning.monomials[i], rng.choice(coefficients)) for i in chosen)
