# algebras/schema.py
import json
from fractions import Fraction
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    ValidationInfo,
    field_serializer,
    field_validator,
    model_validator,
)

from algebras.validators import grading_result, lie_result, super_lie_result
from errors import DimensionMismatchError
from linalg.exactlin import DenseMatrix, rank

AlgebraClass = Literal["lie", "super-lie", "nonassociative"]


def exact(x) -> object:
    """int when integral, Fraction otherwise; accepts "p/q" strings"""
    value = Fraction(x) if not isinstance(x, Fraction) else x
    return value.numerator if value.denominator == 1 else value


def structure_tensor(table: Sequence[Sequence[Sequence[object]]], dim: int) -> np.ndarray:
    """S[i, j, k] = coefficient of b_k in [b_i, b_j]"""
    S = np.zeros((dim, dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                S[i, j, k] = exact(table[i][j][k])
    return S


class AlgebraSpec(BaseModel):
    """Finite-dimensional algebra given by structure constants over Q"""
    model_config = ConfigDict(populate_by_name=True, frozen=True, arbitrary_types_allowed=True)

    name: str = "algebra"
    dim: int = Field(ge=0)
    basis_names: List[str] = Field(alias="basis")
    table: List[List[List[Fraction]]]
    grading: Optional[Tuple[int, ...]] = None
    declared_class: AlgebraClass = Field("lie", alias="class")

    _structure: np.ndarray = PrivateAttr()

    @field_validator("basis_names")
    @classmethod
    def basis_matches_dim(cls, names, info: ValidationInfo):
        d = info.data.get("dim")
        if d is not None and len(names) != d:
            raise ValueError(f"{len(names)} basis names for dimension {d}")
        if len(set(names)) != len(names):
            raise ValueError("basis names must be distinct")
        return names

    @field_validator("table", mode="before")
    @classmethod
    def parse_rationals(cls, table):
        try:
            return [[[Fraction(str(x)) for x in cell] for cell in row] for row in table]
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"structure constants must be rationals like \"p/q\": {e}")

    @field_validator("table")
    @classmethod
    def table_matches_dim(cls, table, info: ValidationInfo):
        d = info.data.get("dim")
        if d is None:
            return table
        if len(table) != d or any(len(row) != d for row in table):
            raise ValueError(f"table must be {d}x{d}")
        if any(len(cell) != d for row in table for cell in row):
            raise ValueError(f"every table entry must hold {d} coefficients")
        return table

    @field_validator("grading")
    @classmethod
    def parities(cls, grading, info: ValidationInfo):
        if grading is None:
            return grading
        if any(g not in (0, 1) for g in grading):
            raise ValueError(f"grading entries must be 0 or 1, got {list(grading)}")
        d = info.data.get("dim")
        if d is not None and len(grading) != d:
            raise ValueError(f"grading of length {len(grading)} for dimension {d}")
        return grading

    @field_validator("declared_class")
    @classmethod
    def super_lie_needs_grading(cls, declared, info: ValidationInfo):
        if declared == "super-lie" and "grading" in info.data and info.data["grading"] is None:
            raise ValueError("a super-lie algebra needs a grading")
        return declared

    @model_validator(mode="after")
    def certify(self):
        """The product must satisfy the laws of the declared class"""
        S = structure_tensor(self.table, self.dim)
        if self.grading is not None:
            graded = grading_result(S, self.grading)
            if not graded:
                raise ValueError(f"grading is not compatible with the product at basis triple {graded.witness}")
        if self.declared_class == "lie":
            result = lie_result(S)
            if not result:
                raise ValueError(f"declared lie but {result.identity} fails at basis triple {result.witness}")
        elif self.declared_class == "super-lie":
            result = super_lie_result(S, self.grading)
            if not result:
                raise ValueError(f"declared super-lie but {result.identity} fails at basis triple {result.witness}")
        return self

    def model_post_init(self, __context) -> None:
        self._structure = structure_tensor(self.table, self.dim)

    @field_serializer("table")
    def serialize_table(self, table):
        return [[[str(x) for x in cell] for cell in row] for row in table]

    @property
    def structure(self) -> np.ndarray:
        return self._structure

    @property
    def parity(self) -> Tuple[int, ...]:
        """The grading, or all-even when the algebra carries none"""
        return self.grading if self.grading is not None else (0,) * self.dim

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=object)
        v[i] = 1
        return v

    def to_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), indent=2)


def element(A: AlgebraSpec, coordinates: Sequence[object]) -> np.ndarray:
    if len(coordinates) != A.dim:
        raise DimensionMismatchError(f"{len(coordinates)} coordinates for dimension {A.dim}")
    return np.array([exact(x) for x in coordinates], dtype=object).reshape(A.dim)


def bracket(A: AlgebraSpec, u: Sequence[object], v: Sequence[object]) -> np.ndarray:
    """Bilinear extension of the structure constants"""
    if len(u) != A.dim or len(v) != A.dim:
        raise DimensionMismatchError(f"elements of length {len(u)} and {len(v)} in dimension {A.dim}")
    u = np.asarray(u, dtype=object)
    v = np.asarray(v, dtype=object)
    left = np.tensordot(u, A.structure, axes=([0], [0]))
    return np.tensordot(v, left, axes=([0], [0]))


def dump_algebra(A: AlgebraSpec) -> str:
    return A.to_json()


def graded_dimensions(A: AlgebraSpec) -> Tuple[int, int]:
    """(dim L0, dim L1)"""
    odd = sum(A.parity)
    return A.dim - odd, odd


def odd_brackets_vanish(A: AlgebraSpec) -> bool:
    odd = [i for i, p in enumerate(A.parity) if p]
    return not any(A.structure[i, j, k] != 0 for i in odd for j in odd for k in range(A.dim))


def center_dimension(A: AlgebraSpec) -> int:
    """dim {z : [z, b_i] = 0 for every i}"""
    if A.dim == 0:
        return 0
    M = DenseMatrix.from_array(A.structure.reshape(A.dim, A.dim * A.dim))
    return A.dim - rank(M)


def is_centerless(A: AlgebraSpec) -> bool:
    return center_dimension(A) == 0


def evaluate_monomial(A: AlgebraSpec, monomial, values: Sequence[Sequence[object]]) -> np.ndarray:
    """Substitute values[v-1] for variable v and bracket along the monomial's tree"""
    if len(values) != monomial.degree:
        raise DimensionMismatchError(f"{len(values)} values for a degree {monomial.degree} monomial")

    def walk(node):
        if isinstance(node, int):
            return np.asarray(values[node - 1], dtype=object)
        return bracket(A, walk(node[0]), walk(node[1]))

    return walk(monomial.tree())
