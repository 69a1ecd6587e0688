# test_algebras.py
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from algebras.builtins import (
    builtin,
    load_algebra,
    parse_algebra,
    reference_exponent,
    truncated_envelope_algebra,
)
from algebras.schema import (
    AlgebraSpec,
    bracket,
    center_dimension,
    dump_algebra,
    element,
    graded_dimensions,
    is_centerless,
    odd_brackets_vanish,
)
from algebras.validators import validate_grading, validate_lie, validate_super_lie
from errors import AlgebraFileError, DimensionMismatchError, GradingRequiredError, UnknownBuiltinError

ALL_BUILTINS = ["metabelian", "abelian(3)", "sl2-cartan", "sl2-trivial", "heisenberg"]


def unit(dim, i):
    v = [0] * dim
    v[i] = 1
    return v


class TestBracket:
    def test_metabelian(self, metabelian):
        e, f = unit(2, 0), unit(2, 1)
        assert list(bracket(metabelian, e, f)) == f
        assert list(bracket(metabelian, f, e)) == [0, -1]
        assert list(bracket(metabelian, e, [0, 0])) == [0, 0]

    def test_sl2(self, sl2_cartan):
        e, h, f = (unit(3, i) for i in range(3))
        assert list(bracket(sl2_cartan, h, e)) == [2, 0, 0]
        assert list(bracket(sl2_cartan, h, f)) == [0, 0, -2]
        assert list(bracket(sl2_cartan, e, f)) == h

    def test_length_mismatch(self, metabelian):
        with pytest.raises(DimensionMismatchError):
            bracket(metabelian, [1, 0, 0], [0, 1])
        with pytest.raises(DimensionMismatchError):
            element(metabelian, [1])

    def test_bilinear(self, sl2, rng):
        for _ in range(50):
            u, u2, v = ([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)] for _ in range(3))
            alpha, beta = rng.randint(-3, 3), Fraction(rng.randint(-3, 3), 2)
            combined = [alpha * a + beta * b for a, b in zip(u, u2)]
            expected = alpha * bracket(sl2, u, v) + beta * bracket(sl2, u2, v)
            assert list(bracket(sl2, combined, v)) == list(expected)


class TestValidators:
    @pytest.mark.parametrize("name", ALL_BUILTINS)
    def test_builtins_are_lie(self, name):
        A = builtin(name)
        assert validate_lie(A)
        assert validate_grading(A)

    def test_failing_alternation(self):
        A = AlgebraSpec(dim=1, basis=["b"], table=[[[1]]], declared_class="nonassociative")
        result = validate_lie(A)
        assert not result.ok
        assert result.identity == "alternating"
        assert result.witness == (0, 0)

    def test_failing_jacobi(self):
        # [a,b] = c, [a,c] = a is anticommutative but not Lie
        table = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        for (i, j, k) in [(0, 1, 2), (0, 2, 0)]:
            table[i][j][k], table[j][i][k] = 1, -1
        A = AlgebraSpec(dim=3, basis=["a", "b", "c"], table=table, declared_class="nonassociative")
        result = validate_lie(A)
        assert result.identity == "jacobi"

    def test_eager_certification(self):
        with pytest.raises(ValidationError):
            AlgebraSpec(dim=1, basis=["b"], table=[[[1]]])
        with pytest.raises(ValidationError):
            AlgebraSpec(dim=2, basis=["e", "f"], grading=(0, 1), table=[[[0, 0], [1, 0]], [[-1, 0], [0, 0]]])

    def test_super_lie_degenerate(self, sl2):
        assert validate_super_lie(sl2)

    def test_super_lie_needs_grading(self):
        with pytest.raises(GradingRequiredError):
            validate_super_lie(builtin("heisenberg"))

    def test_super_anticommutativity_violation(self):
        table = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        table[0][1][2], table[1][0][2] = 1, -1
        A = AlgebraSpec(dim=3, basis=["u", "v", "w"], grading=(1, 1, 0), table=table, declared_class="nonassociative")
        assert validate_lie(A)
        result = validate_super_lie(A)
        assert result.identity == "super-anticommutativity"
        assert result.witness == (0, 1)

    @pytest.mark.parametrize("name", ["metabelian", "sl2-cartan"])
    def test_truncated_envelope_is_super_lie(self, name):
        G = truncated_envelope_algebra(builtin(name), 3)
        assert G.declared_class == "super-lie"
        assert validate_super_lie(G)

    def test_truncated_envelope_of_metabelian_is_also_lie(self, metabelian):
        G = truncated_envelope_algebra(metabelian, 3)
        assert G.dim == 8
        assert validate_lie(G)


class TestBuiltins:
    def test_metabelian(self, metabelian):
        assert metabelian.dim == 2
        assert metabelian.grading == (0, 1)
        assert int(np.count_nonzero(metabelian.structure != 0)) == 2

    def test_abelian(self, abelian3):
        assert abelian3.dim == 3
        assert not np.any(abelian3.structure != 0)
        assert builtin("abelian3").name == builtin("abelian(3)").name == "abelian(3)"

    def test_sl2_alias(self):
        assert builtin("sl2").grading == (0, 0, 0)
        assert builtin("sl2-cartan").grading == (1, 0, 1)

    def test_unknown(self):
        with pytest.raises(UnknownBuiltinError):
            builtin("so3")
        with pytest.raises(KeyError):
            builtin("e8")

    def test_properties(self, metabelian, sl2_cartan):
        assert graded_dimensions(sl2_cartan) == (1, 2)
        assert graded_dimensions(builtin("heisenberg")) == (3, 0)
        assert odd_brackets_vanish(metabelian)
        assert not odd_brackets_vanish(sl2_cartan)
        assert is_centerless(metabelian)
        assert is_centerless(sl2_cartan)
        assert center_dimension(builtin("heisenberg")) == 1
        assert center_dimension(builtin("abelian(3)")) == 3

    def test_reference_exponents(self):
        assert reference_exponent(builtin("metabelian")) == 1
        assert reference_exponent(builtin("sl2-cartan")) == 3
        assert reference_exponent(builtin("abelian(2)")) == 0


class TestFiles:
    def test_round_trip(self, tmp_path, sl2_cartan):
        path = tmp_path / "sl2.json"
        path.write_text(dump_algebra(sl2_cartan))
        loaded = load_algebra(str(path))
        assert loaded.basis_names == ["e", "h", "f"]
        assert loaded.grading == (1, 0, 1)
        assert np.array_equal(loaded.structure, sl2_cartan.structure)

    def test_rational_strings(self):
        text = '{"dim": 2, "basis": ["e", "f"], "grading": [0, 1], "class": "lie",' \
               ' "table": [[["0", "0"], ["0", "1/2"]], [["0", "-1/2"], ["0", "0"]]]}'
        A = parse_algebra(text)
        assert A.structure[0, 1, 1] == Fraction(1, 2)

    def test_json_error_position(self):
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra('{\n  "dim": 2,\n  "basis": [}\n')
        assert info.value.line == 3
        assert "line 3" in str(info.value)

    def test_schema_error(self):
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra('{"dim": 2, "basis": ["e"], "table": []}')
        assert (info.value.line, info.value.column) == (1, 12)
        assert "basis" in str(info.value)

    def test_table_shape_position(self):
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra('{\n  "dim": 2,\n  "basis": ["e", "f"],\n  "table": [[[0, 0]]]\n}')
        assert (info.value.line, info.value.column) == (4, 3)
        assert "table must be 2x2" in str(info.value)

    def test_failed_certification_points_at_table(self):
        text = '{\n  "dim": 2,\n  "basis": ["e", "f"],\n  "class": "lie",\n' \
               '  "table": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]\n}'
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra(text)
        assert info.value.line == 5
        assert "declared lie" in str(info.value)

    def test_super_lie_without_grading(self):
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra('{"dim": 1, "basis": ["e"], "class": "super-lie", "table": [[[0]]]}')
        assert "needs a grading" in str(info.value)
        assert info.value.line == 1

    def test_missing_key_has_no_position(self):
        with pytest.raises(AlgebraFileError) as info:
            parse_algebra('{"dim": 1, "basis": ["e"]}')
        assert info.value.line is None
        assert "no position in the file" in str(info.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(AlgebraFileError):
            load_algebra(str(tmp_path / "missing.json"))
