import random
from typing import Dict, List, Optional, Sequence

import pandas as pd
from tqdm import tqdm

from algebras.builtins import builtin
from algebras.schema import AlgebraSpec, graded_dimensions, is_centerless
from codim.checks import (
    check_colength_bound,
    check_conjugate_duality,
    check_graded_colength,
    check_graded_dominates,
    check_graded_strips,
    check_hook_constraint,
    check_hook_count_bound,
    check_koszul_oracle,
    check_modular_agreement,
    check_multiplicity_bound,
    check_sandwich,
    check_spanning_equivalence,
    check_tilde_identity_correspondence,
)
from codim.cocharacter import cocharacter, graded_cocharacter
from codim.matrix import ORDINARY, Arithmetic, EvaluationTarget, evaluation_matrix
from codim.report import CheckRecord, exponent_report, fail_record, pass_record
from combinatorics.partitions import HookSpec
from config import config
from errors import GradingRequiredError, UsageError
from linalg.exactlin import make_prime

COLUMNS = ["suite", "name", "n", "status", "detail", "witness"]


def _needs_grading(A: AlgebraSpec, suite: str) -> None:
    if A.grading is None:
        raise GradingRequiredError(f"the {suite} suite needs a graded algebra, {A.name} has no grading")


def hooks_suite(T: EvaluationTarget, degrees: Sequence[int], arithmetic: Arithmetic,
                force: bool = False) -> List[CheckRecord]:
    """Strip and hook shapes of cocharacters"""
    A = T.algebra
    k, l = graded_dimensions(A)
    records = []
    for n in degrees:
        if T.envelope and not T.graded:
            records.append(check_hook_constraint(cocharacter(T, n, arithmetic, force=force), HookSpec(k, l)))
            records.append(check_hook_count_bound(k, l, n))
        elif T.envelope:
            for q in range(n + 1):
                D = graded_cocharacter(T, q, n - q, arithmetic, force=force)
                records.append(check_hook_constraint(D, HookSpec(k, l)))
        elif T.graded:
            for q in range(n + 1):
                records.append(check_graded_strips(graded_cocharacter(T, q, n - q, arithmetic, force=force), k, l))
        else:
            records.append(check_hook_constraint(cocharacter(T, n, arithmetic, force=force), HookSpec(A.dim, 0)))
    return records


def duality_suite(T: EvaluationTarget, degrees: Sequence[int], arithmetic: Arithmetic,
                  force: bool = False) -> List[CheckRecord]:
    _needs_grading(T.algebra, "duality")
    return [check_conjugate_duality(T.algebra, q, n - q, arithmetic, force) for n in degrees for q in range(n + 1)]


def tilde_suite(T: EvaluationTarget, degrees: Sequence[int], samples: int, rng,
                force: bool = False) -> List[CheckRecord]:
    _needs_grading(T.algebra, "tilde")
    max_n = min(max(degrees), config.TILDE_MAX_N)
    return [check_tilde_identity_correspondence(T.algebra, samples, max_n, rng, force)]


def bounds_suite(T: EvaluationTarget, degrees: Sequence[int], arithmetic: Arithmetic,
                 force: bool = False) -> List[CheckRecord]:
    """Sandwich, colength and multiplicity bounds, graded comparisons and growth"""
    ordinary = T.with_mode(ORDINARY)
    k, l = graded_dimensions(T.algebra)
    records, sequence = [], []
    for n in degrees:
        D = cocharacter(ordinary, n, arithmetic, force=force)
        sequence.append((n, D.codimension))
        records.append(check_sandwich(D))
        if T.envelope:
            records.append(check_colength_bound(D, k, l))
            records.append(check_multiplicity_bound(D, k, l))
            records.append(check_graded_colength(ordinary, n, arithmetic, force))
        records.append(check_graded_dominates(ordinary, n, arithmetic, force))

    if is_centerless(T.algebra):
        drops = [row for row in exponent_report(sequence, centerless=True) if not row.monotone]
        if drops:
            records.append(fail_record("monotone growth", f"c_{drops[0].n}={drops[0].c_n}", drops[0].n))
        else:
            records.append(pass_record("monotone growth", max(degrees)))
    return records


def oracle_suite(T: EvaluationTarget, degrees: Sequence[int], arithmetic: Arithmetic,
                 samples: int, rng, force: bool = False) -> List[CheckRecord]:
    """Spanning sets, modular against exact ranks, Koszul signs against Grassmann arithmetic"""
    ordinary = T.with_mode(ORDINARY)
    primes = [arithmetic.prime, make_prime(arithmetic.bits, arithmetic.seed + 1)]
    records = []
    for n in degrees:
        if n <= config.EXACT_MAX_N:
            records.append(check_spanning_equivalence(ordinary, n, arithmetic, force))
            matrix = evaluation_matrix(ordinary, n, force=force)
            records.append(check_modular_agreement(matrix.rank_matrix(), primes, n))
    A = T.algebra
    if A.grading is not None and A.declared_class == "lie":
        records.append(check_koszul_oracle(A, samples, min(max(degrees), config.KOSZUL_MAX_N), rng))
    return records


def run_suite(suite: str, T: EvaluationTarget, degrees: Sequence[int], arithmetic: Optional[Arithmetic] = None,
              samples: Optional[int] = None, seed: int = config.SEED, force: bool = False) -> List[CheckRecord]:
    if suite not in config.SUITES:
        raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(config.SUITES)}")
    arithmetic = arithmetic or Arithmetic(seed=seed)
    rng = random.Random(seed)
    degrees = sorted(set(degrees))
    if suite == "hooks":
        return hooks_suite(T, degrees, arithmetic, force)
    if suite == "duality":
        return duality_suite(T, degrees, arithmetic, force)
    if suite == "tilde":
        return tilde_suite(T, degrees, samples or config.TILDE_SAMPLES, rng, force)
    if suite == "bounds":
        return bounds_suite(T, degrees, arithmetic, force)
    return oracle_suite(T, degrees, arithmetic, samples or config.KOSZUL_SAMPLES, rng, force)


def evaluate_suite(suite: str, T: EvaluationTarget, degrees: Sequence[int], **kwargs) -> Dict:
    """Run one suite and summarize it"""
    records = run_suite(suite, T, degrees, **kwargs)
    df = pd.DataFrame([{"suite": suite, **r.model_dump()} for r in records], columns=COLUMNS)
    failures = df[df["status"] == "fail"]
    return {
        "passed": failures.empty,
        "detailed_results": df,
        "total_checks": len(records),
        "failures": len(failures),
    }


if __name__ == '__main__':
    runs = [
        ("hooks", EvaluationTarget(builtin("sl2")), range(2, 6)),
        ("hooks", EvaluationTarget(builtin("sl2-cartan"), True), range(2, 5)),
        ("duality", EvaluationTarget(builtin("sl2-cartan")), range(1, 5)),
        ("tilde", EvaluationTarget(builtin("metabelian")), range(2, 6)),
        ("bounds", EvaluationTarget(builtin("metabelian"), True), range(2, 6)),
        ("oracle", EvaluationTarget(builtin("sl2-cartan"), True), range(2, 5)),
    ]
    frames = []
    for suite, T, degrees in tqdm(runs, desc="suites"):
        results = evaluate_suite(suite, T, degrees)
        marker = "✅" if results["passed"] else "❌"
        print(f"{marker} {suite} on {T.label}: {results['total_checks']} checks, {results['failures']} failed")
        frames.append(results["detailed_results"])

    print("\nAll checks:")
    print(pd.concat(frames, ignore_index=True).to_string(index=False))
