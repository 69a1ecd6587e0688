# codim/sequence.py
import time
from math import comb, factorial
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Optional, Tuple

from tqdm import tqdm

from algebras.builtins import reference_exponent
from algebras.schema import is_centerless
from codim.checks import check_sandwich
from codim.cocharacter import Cocharacter, cocharacter, graded_cocharacter
from codim.matrix import Arithmetic, EvaluationTarget, estimate_mb, spanning_kind
from codim.report import (
    CheckRecord,
    CocharacterTerm,
    CodimReport,
    CodimRow,
    GradedPart,
    Provenance,
    nth_root,
    ratio,
)
from config import config
from errors import BudgetExceededError
from freealg.monomials import LEFT_NORMED, bracketing_shapes


def degree_budget(T: EvaluationTarget) -> int:
    if T.envelope:
        return config.MAX_N_ENVELOPE
    return config.MAX_N_ALGEBRA if T.algebra.dim <= config.SMALL_ALGEBRA_DIM else config.MAX_N_LARGE


def degree_estimate_mb(T: EvaluationTarget, n: int) -> float:
    rows = factorial(n) * (1 if spanning_kind(T, T.graded) == LEFT_NORMED else len(bracketing_shapes(n)))
    return estimate_mb(T.algebra, n, rows, T.algebra.dim ** n)


def check_degree_budget(T: EvaluationTarget, n: int, force: bool = False) -> None:
    """Degrees above the configured budget need force; the message carries the matrix estimate"""
    budget = degree_budget(T)
    if n <= budget or force:
        return
    raise BudgetExceededError(f"degree {n} is above the budget of {budget} for {T.label}; pass --force to run it",
                              degree_estimate_mb(T, n))


def _terms(D: Cocharacter) -> List[CocharacterTerm]:
    if D.graded:
        q = D.signature[0]
        return [CocharacterTerm(q=q, lam=list(lam), mu=list(mu), m=m) for (lam, mu), m in D.items()]
    return [CocharacterTerm(lam=list(lam), m=m) for lam, m in D.items()]


def degree_row(T: EvaluationTarget, n: int, arithmetic: Arithmetic, force: bool = False,
               spanning: Optional[str] = None) -> Tuple[CodimRow, List[CheckRecord]]:
    """Codimension, colength and cocharacter in one degree; graded targets sum their (q, n-q) parts"""
    started = time.perf_counter()
    checks: List[CheckRecord] = []
    if T.graded:
        parts = [graded_cocharacter(T, q, n - q, arithmetic, force, spanning) for q in range(n + 1)]
        c = sum(comb(n, D.signature[0]) * D.codimension for D in parts)
        l = sum(D.colength for D in parts)
        d = max((D.max_dimension for D in parts), default=0)
        terms = [t for D in parts for t in _terms(D)]
        graded_parts = [GradedPart(q=D.signature[0], m=D.signature[1], c=str(D.codimension)) for D in parts]
    else:
        D = cocharacter(T, n, arithmetic, force, spanning)
        c, l, d, terms, graded_parts = D.codimension, D.colength, D.max_dimension, _terms(D), None
        checks.append(check_sandwich(D))
    row = CodimRow(
        n=n,
        c_n=str(c),
        l_n=str(l),
        max_dimension=str(d),
        root=nth_root(c, n),
        arithmetic=arithmetic.label(n),
        graded_parts=graded_parts,
        cocharacter=terms,
        seconds=round(time.perf_counter() - started, 3),
    )
    return row, checks


def _degree_task(args) -> Tuple[CodimRow, List[CheckRecord]]:
    return degree_row(*args)


def codim_sequence(T: EvaluationTarget, degrees: Iterable[int], arithmetic: Optional[Arithmetic] = None,
                   jobs: int = 1, force: bool = False, progress: bool = False,
                   spanning: Optional[str] = None) -> CodimReport:
    arithmetic = arithmetic or Arithmetic()
    degrees = sorted(set(degrees))
    for n in degrees:
        check_degree_budget(T, n, force)

    tasks = [(T, n, arithmetic, force, spanning) for n in degrees]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(tqdm(pool.map(_degree_task, tasks), total=len(tasks), desc=T.label, disable=not progress))
    else:
        results = [_degree_task(task) for task in tqdm(tasks, desc=T.label, disable=not progress)]

    rows, checks = [], []
    previous: Optional[CodimRow] = None
    for row, row_checks in results:
        if previous is not None and previous.n == row.n - 1:
            row.ratio = ratio(int(row.c_n), int(previous.c_n))
        rows.append(row)
        checks.extend(row_checks)
        previous = row

    modular = any(not arithmetic.exact_for(n) for n in degrees)
    provenance = Provenance(
        arithmetic=arithmetic.mode,
        prime=str(arithmetic.prime) if modular else None,
        seed=arithmetic.seed,
        spanning=spanning or spanning_kind(T, T.graded),
    )
    reference = reference_exponent(T.algebra)
    return CodimReport(
        target=T.label,
        mode=T.mode_name,
        rows=rows,
        checks=checks,
        provenance=provenance,
        reference_exponent=reference,
        centerless=is_centerless(T.algebra),
    )
