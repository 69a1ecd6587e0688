# test_codim.py
from math import comb

import pytest

from algebras.builtins import builtin, parse_algebra
from codim.cocharacter import (
    QuotientModule,
    cocharacter,
    colength,
    graded_cocharacter,
    graded_colength,
    trace_on_quotient,
)
from codim.matrix import (
    GRADED,
    Arithmetic,
    EvaluationTarget,
    codimension,
    estimate_mb,
    evaluation_matrix,
    fits_int64,
    graded_codimension,
    graded_codimension_part,
    spanning_kind,
)
from codim.report import exponent_frame, exponent_report, nth_root
from codim.sequence import check_degree_budget, codim_sequence, degree_estimate_mb
from config import config
from errors import BudgetExceededError, GradingRequiredError, UsageError
from freealg.monomials import ALL_BRACKETINGS, LEFT_NORMED, graded_signature


@pytest.fixture(scope="module")
def exact():
    return Arithmetic("exact")


class TestEvaluationMatrix:
    def test_sl2_shape(self, sl2):
        E = evaluation_matrix(EvaluationTarget(sl2), 3)
        assert E.entries.shape == (6, 27 * 3)

    def test_metabelian_degree_two(self, metabelian):
        E = evaluation_matrix(EvaluationTarget(metabelian), 2)
        assert E.entries.shape == (2, 4 * 2)
        assert codimension(EvaluationTarget(metabelian), 2) == 1

    def test_graded_columns(self, sl2_cartan):
        E = evaluation_matrix(EvaluationTarget(sl2_cartan, mode=GRADED), 3, graded_signature(1, 2))
        # x from L0 = <h>, y from L1 = <e, f>
        assert E.tuples.shape == (4, 3)
        assert set(E.tuples[:, 0]) == {1}

    def test_row_lookup(self, sl2):
        E = evaluation_matrix(EvaluationTarget(sl2), 3, spanning=ALL_BRACKETINGS)
        for i, monomial in enumerate(E.spanning.monomials):
            assert E.row_index(monomial) == i

    def test_envelope_rows_are_tilde_twists(self, sl2_cartan):
        signature = graded_signature(1, 2)
        plain = evaluation_matrix(EvaluationTarget(sl2_cartan, mode=GRADED), 3, signature)
        twisted = evaluation_matrix(EvaluationTarget(sl2_cartan, True, GRADED), 3, signature)
        for i, monomial in enumerate(plain.spanning.monomials):
            odd = [v for v in monomial.leaves if v > 1]
            sign = -1 if odd != sorted(odd) else 1
            assert list(twisted.entries[i]) == [sign * x for x in plain.entries[i]]

    def test_budget(self, sl2, monkeypatch):
        monkeypatch.setattr(config, "BUDGET_MB", 0)
        with pytest.raises(BudgetExceededError) as info:
            evaluation_matrix(EvaluationTarget(sl2), 3)
        assert info.value.estimate_mb > 0
        assert "MB" in str(info.value)
        assert evaluation_matrix(EvaluationTarget(sl2), 3, force=True).rows == 6

    def test_degree_budget(self, metabelian):
        T = EvaluationTarget(metabelian)
        with pytest.raises(BudgetExceededError):
            check_degree_budget(T, config.MAX_N_ALGEBRA + 1)
        check_degree_budget(T, config.MAX_N_ALGEBRA + 1, force=True)

    def test_envelope_budget_degree_fits_default_budget(self, sl2_cartan):
        T = EvaluationTarget(sl2_cartan, True)
        assert fits_int64(sl2_cartan, config.MAX_N_ENVELOPE)
        # 42 bracketings x 720 orderings, 729 basis tuples, 3 coordinates
        expected = 30240 * 729 * 3 * config.INT64_BYTES_PER_ENTRY / 2 ** 20
        assert degree_estimate_mb(T, config.MAX_N_ENVELOPE) == pytest.approx(expected)
        assert degree_estimate_mb(T, config.MAX_N_ENVELOPE) < 2048

    def test_estimate_charges_object_entries(self):
        A = parse_algebra('{"dim": 1, "basis": ["e"], "class": "nonassociative", "table": [[["1099511627776"]]]}')
        assert fits_int64(A, 2) and not fits_int64(A, 3)
        assert estimate_mb(A, 2, 2 ** 20, 1) == config.INT64_BYTES_PER_ENTRY
        assert estimate_mb(A, 3, 2 ** 20, 1) == config.OBJECT_BYTES_PER_ENTRY

    def test_large_constants_stay_exact(self):
        A = parse_algebra('{"dim": 1, "basis": ["e"], "class": "nonassociative", "table": [[["1099511627776"]]]}')
        E = evaluation_matrix(EvaluationTarget(A), 3, spanning=ALL_BRACKETINGS)
        assert E.entries.dtype == object
        assert set(E.entries.flat) == {2 ** 80}


class TestTargets:
    def test_envelope_needs_grading(self):
        with pytest.raises(GradingRequiredError):
            EvaluationTarget(builtin("heisenberg"), envelope=True)

    def test_modes(self, sl2_cartan):
        T = EvaluationTarget.from_mode(sl2_cartan, "envelope-graded")
        assert T.envelope and T.graded
        assert T.label == "G(sl2-cartan)"
        assert T.mode_name == "envelope-graded"
        with pytest.raises(UsageError):
            EvaluationTarget.from_mode(sl2_cartan, "super")

    def test_spanning_policy(self, metabelian, sl2_cartan):
        assert spanning_kind(EvaluationTarget(sl2_cartan), typed=False) == LEFT_NORMED
        assert spanning_kind(EvaluationTarget(sl2_cartan, True), typed=True) == LEFT_NORMED
        assert spanning_kind(EvaluationTarget(sl2_cartan, True), typed=False) == ALL_BRACKETINGS
        assert spanning_kind(EvaluationTarget(metabelian, True), typed=False) == LEFT_NORMED


class TestCodimension:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_metabelian(self, metabelian, exact, n):
        assert codimension(EvaluationTarget(metabelian), n, exact) == n - 1

    def test_degree_one(self, metabelian, abelian3):
        assert codimension(EvaluationTarget(metabelian), 1) == 1
        assert codimension(EvaluationTarget(abelian3), 1) == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_abelian(self, abelian3, n):
        assert codimension(EvaluationTarget(abelian3), n) == 0

    def test_heisenberg(self):
        T = EvaluationTarget(builtin("heisenberg"))
        assert codimension(T, 2) == 1
        assert codimension(T, 3) == 0

    def test_sl2(self, sl2):
        assert codimension(EvaluationTarget(sl2), 2) == 1
        assert codimension(EvaluationTarget(sl2), 3) == 2

    def test_modular_matches_exact(self, sl2, exact):
        T = EvaluationTarget(sl2)
        assert codimension(T, 4, Arithmetic("modular")) == codimension(T, 4, exact)
        assert codimension(T, 4, Arithmetic("modular-verified")) == codimension(T, 4, exact)

    def test_arithmetic_labels(self):
        auto = Arithmetic()
        assert auto.label(config.EXACT_MAX_N) == "exact"
        assert auto.label(config.EXACT_MAX_N + 1) == "modular"
        assert Arithmetic("modular-verified").label(3) == "modular-verified"
        with pytest.raises(UsageError):
            Arithmetic("floating")

    def test_pinned_prime(self):
        assert Arithmetic(seed=7).prime == Arithmetic(seed=7).prime
        assert Arithmetic(seed=7).prime.bit_length() == config.PRIME_BITS


class TestGradedCodimension:
    def test_metabelian_parts(self, metabelian):
        T = EvaluationTarget(metabelian, mode=GRADED)
        assert graded_codimension_part(T, 1, 0) == 1
        assert graded_codimension_part(T, 0, 1) == 1
        assert graded_codimension_part(T, 2, 0) == 0
        assert graded_codimension_part(T, 3, 1) == 1
        assert graded_codimension_part(T, 1, 2) == 0

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_metabelian_total(self, metabelian, n):
        assert graded_codimension(EvaluationTarget(metabelian, mode=GRADED), n) == n

    def test_needs_graded_mode(self, metabelian):
        with pytest.raises(GradingRequiredError):
            graded_codimension_part(EvaluationTarget(metabelian), 1, 1)

    def test_ungraded_is_all_even(self):
        T = EvaluationTarget(builtin("heisenberg"), mode=GRADED)
        assert graded_codimension_part(T, 0, 2) == 0
        assert graded_codimension_part(T, 2, 0) == 1

    @pytest.mark.parametrize("q,m", [(1, 1), (1, 2), (2, 1), (0, 3), (2, 2)])
    def test_envelope_parts_match(self, sl2_cartan, q, m):
        plain = graded_codimension_part(EvaluationTarget(sl2_cartan, mode=GRADED), q, m)
        twisted = graded_codimension_part(EvaluationTarget(sl2_cartan, True, GRADED), q, m)
        assert plain == twisted

    def test_graded_dominates(self, metabelian):
        T = EvaluationTarget(metabelian)
        for n in range(2, 6):
            assert graded_codimension(T.with_mode(GRADED), n) >= codimension(T, n)


class TestCocharacter:
    def test_metabelian_trace(self, metabelian):
        assert trace_on_quotient(EvaluationTarget(metabelian), 2, (2, 1)) == -1
        assert trace_on_quotient(EvaluationTarget(metabelian), 2, (1, 2)) == 1

    @pytest.mark.parametrize("n", range(2, 7))
    def test_metabelian(self, metabelian, n):
        D = cocharacter(EvaluationTarget(metabelian), n)
        assert D.multiplicities == {(n - 1, 1): 1}
        assert D.codimension == n - 1
        assert D.colength == 1

    def test_sl2(self, sl2):
        assert cocharacter(EvaluationTarget(sl2), 2).multiplicities == {(1, 1): 1}
        assert cocharacter(EvaluationTarget(sl2), 3).multiplicities == {(2, 1): 1}

    def test_abelian(self, abelian3):
        assert cocharacter(EvaluationTarget(abelian3), 1).multiplicities == {(1,): 1}
        assert cocharacter(EvaluationTarget(abelian3), 3).multiplicities == {}
        assert colength(EvaluationTarget(abelian3), 3) == 0

    @pytest.mark.parametrize("name,envelope,max_n", [
        ("metabelian", False, 6),
        ("abelian(3)", False, 4),
        ("sl2-cartan", False, 5),
        ("metabelian", True, 5),
        ("sl2-cartan", True, 4),
    ])
    def test_degree_matches_rank(self, name, envelope, max_n):
        T = EvaluationTarget(builtin(name), envelope)
        for n in range(1, max_n + 1):
            D = cocharacter(T, n)
            assert D.codimension == codimension(T, n)

    def test_quotient_basis_is_independent(self, sl2):
        module = QuotientModule(EvaluationTarget(sl2), 4)
        assert len(module.basis) == module.dimension
        assert module.trace(tuple(range(1, 5))) == module.dimension

    def test_graded_metabelian(self, metabelian):
        T = EvaluationTarget(metabelian, mode=GRADED)
        assert graded_cocharacter(T, 3, 1).multiplicities == {((3,), (1,)): 1}
        assert graded_cocharacter(T, 0, 1).multiplicities == {((), (1,)): 1}
        assert graded_cocharacter(T, 2, 2).multiplicities == {}
        assert graded_colength(T, 2, 1) == 1

    @pytest.mark.parametrize("q,m", [(1, 1), (1, 2), (2, 1), (0, 2), (1, 3)])
    def test_graded_degree_matches_rank(self, sl2_cartan, q, m):
        for envelope in (False, True):
            T = EvaluationTarget(sl2_cartan, envelope, GRADED)
            assert graded_cocharacter(T, q, m).codimension == graded_codimension_part(T, q, m)

    def test_graded_needs_graded_mode(self, sl2_cartan):
        with pytest.raises(GradingRequiredError):
            graded_cocharacter(EvaluationTarget(sl2_cartan), 1, 1)


class TestSequence:
    def test_metabelian_rows(self, metabelian):
        report = codim_sequence(EvaluationTarget(metabelian), range(2, 7))
        assert [row.c_n for row in report.rows] == ["1", "2", "3", "4", "5"]
        assert all(row.l_n == "1" for row in report.rows)
        assert report.reference_exponent == 1
        assert report.centerless
        assert report.ok
        assert report.rows[1].ratio == "2.000000"

    def test_json_is_deterministic(self, metabelian):
        first = codim_sequence(EvaluationTarget(metabelian), range(2, 5)).to_json()
        second = codim_sequence(EvaluationTarget(metabelian), range(2, 5)).to_json()
        assert first == second
        assert '"lambda"' in first
        assert "seconds" not in first
        assert "seconds" in codim_sequence(EvaluationTarget(metabelian), [2]).to_json(timings=True)

    def test_graded_rows(self, metabelian):
        report = codim_sequence(EvaluationTarget(metabelian, mode=GRADED), range(2, 5))
        assert [row.c_n for row in report.rows] == ["2", "3", "4"]
        parts = {(p.q, p.m): p.c for p in report.rows[1].graded_parts}
        assert parts[(2, 1)] == "1"
        assert sum(comb(3, q) * int(c) for (q, _), c in parts.items()) == 3

    def test_envelope_monotone(self, sl2_cartan):
        report = codim_sequence(EvaluationTarget(sl2_cartan, True), range(2, 5))
        values = [int(row.c_n) for row in report.rows]
        assert values == sorted(values)
        assert report.target == "G(sl2-cartan)"
        assert report.reference_exponent == 3

    def test_modular_provenance(self, sl2):
        report = codim_sequence(EvaluationTarget(sl2), [2, 3], Arithmetic("modular", seed=11))
        assert report.provenance.prime == str(Arithmetic("modular", seed=11).prime)
        assert report.provenance.seed == 11

    def test_table_and_csv(self, metabelian):
        report = codim_sequence(EvaluationTarget(metabelian), [2, 3])
        assert "(2,1)" in report.to_table()
        assert report.to_csv().splitlines()[0].startswith("n,c_n,l_n")


class TestExponentReport:
    def test_roots_decrease_toward_one(self):
        rows = exponent_report([(n, n - 1) for n in range(6, 11)])
        roots = [float(r.root) for r in rows]
        assert roots == sorted(roots, reverse=True)
        assert all(r > 1 for r in roots)

    def test_monotonicity_flag(self):
        rows = exponent_report([(2, 3), (3, 2)], centerless=True)
        assert rows[0].monotone and not rows[1].monotone
        assert all(r.monotone for r in exponent_report([(2, 3), (3, 2)]))

    def test_ratios(self):
        rows = exponent_report([(2, 2), (3, 6), (5, 10)])
        assert rows[1].ratio == "3.000000"
        assert rows[2].ratio is None

    def test_frame(self):
        frame = exponent_frame(exponent_report([(2, 1), (3, 2)]), reference=1)
        assert list(frame.columns) == ["n", "c_n", "root", "ratio", "monotone", "reference"]

    def test_roots(self):
        assert nth_root(0, 3) == "0.000000"
        assert nth_root(8, 3) == "2.000000"

    def test_negative(self):
        with pytest.raises(ValueError):
            exponent_report([(2, -1)])
