# codim/checks.py
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algebras.schema import AlgebraSpec
from codim.cocharacter import Cocharacter, cocharacter, graded_cocharacter
from codim.matrix import (
    GRADED,
    ORDINARY,
    Arithmetic,
    EvaluationMatrix,
    EvaluationTarget,
    codimension,
    evaluation_matrix,
    graded_codimension,
    spanning_kind,
)
from codim.report import CheckRecord, fail_record, info_record, pass_record
from combinatorics.partitions import HookSpec, conjugate, count_partitions_in_hook, in_hook
from envelope.evaluate import oracle_agrees
from envelope.grassmann import random_assignment
from freealg.monomials import (
    ALL_BRACKETINGS,
    LEFT_NORMED,
    Monomial,
    Polynomial,
    bracketing_shapes,
    graded_signature,
    random_polynomial,
    tilde,
)
from linalg.exactlin import QQ, DenseMatrix, PrimeField, SpanSolver, image_basis, rank


def _shape(lam) -> str:
    return f"({','.join(map(str, lam))})"


def _key(key) -> str:
    if key and isinstance(key[0], tuple):
        return " x ".join(_shape(part) for part in key)
    return _shape(key)


def colength_bound(k: int, l: int, n: int) -> int:
    return (k + l) * 2 ** (2 * k * l) * n ** (k * k + l * l + k * l)


def multiplicity_bound(k: int, l: int, n: int) -> int:
    return (k + l) * 2 ** (2 * k * l) * n ** (k * k + l * l)


def check_hook_constraint(D: Cocharacter, h: HookSpec) -> CheckRecord:
    """Ordinary multiplicities against H(k,l); graded pairs componentwise against (H(k,0), H(0,l))"""
    name = f"hook {h}"
    if D.graded:
        strip, column = HookSpec(h.k, 0), HookSpec(0, h.l)
        outside = [key for key in D.multiplicities if not (in_hook(key[0], strip) and in_hook(key[1], column))]
    else:
        outside = [lam for lam in D.multiplicities if not in_hook(lam, h)]
    if outside:
        return fail_record(name, _key(outside[0]), D.n, f"{len(outside)} shapes outside the hook")
    return pass_record(name, D.n)


def check_graded_strips(D: Cocharacter, k: int, l: int) -> CheckRecord:
    """Graded cocharacter of a plain (k,l)-graded algebra sits in (H(k,0), H(l,0))"""
    name = f"graded strips H({k},0) x H({l},0)"
    first, second = HookSpec(k, 0), HookSpec(l, 0)
    outside = [key for key in D.multiplicities if not (in_hook(key[0], first) and in_hook(key[1], second))]
    if outside:
        return fail_record(name, _key(outside[0]), D.n)
    return pass_record(name, D.n)


def check_sandwich(D: Cocharacter) -> CheckRecord:
    """max d_lambda <= c_n <= l_n * max d_lambda"""
    c, l, d = D.codimension, D.colength, D.max_dimension
    detail = f"{d} <= {c} <= {l}*{d}"
    if d <= c <= l * d:
        return pass_record("sandwich", D.n, detail)
    return fail_record("sandwich", detail, D.n, detail)


def check_colength_bound(D: Cocharacter, k: int, l: int) -> CheckRecord:
    bound = colength_bound(k, l, D.n)
    detail = f"l_n={D.colength} bound={bound}"
    if D.colength < bound:
        return pass_record("colength bound", D.n, detail)
    return fail_record("colength bound", detail, D.n, detail)


def check_multiplicity_bound(D: Cocharacter, k: int, l: int) -> CheckRecord:
    bound = multiplicity_bound(k, l, D.n)
    over = [(key, m) for key, m in D.multiplicities.items() if m > bound]
    if over:
        key, m = over[0]
        return fail_record("multiplicity bound", f"{_key(key)}: {m}", D.n, f"bound={bound}")
    return pass_record("multiplicity bound", D.n, f"bound={bound}")


def check_hook_count_bound(k: int, l: int, n: int) -> CheckRecord:
    count, bound = count_partitions_in_hook(HookSpec(k, l), n), n ** (k + l)
    detail = f"{count} partitions in H({k},{l}), bound {bound}"
    if n < 2 or count <= bound:
        return pass_record("hook count bound", n, detail)
    return fail_record("hook count bound", detail, n, detail)


def check_conjugate_duality(L: AlgebraSpec, q: int, m: int, arithmetic: Optional[Arithmetic] = None,
                            force: bool = False) -> CheckRecord:
    """m_{lambda,mu}(L) = m_{lambda,mu'}(G(L)) at signature (q, m)"""
    plain = graded_cocharacter(EvaluationTarget(L, False, GRADED), q, m, arithmetic, force=force)
    twisted = graded_cocharacter(EvaluationTarget(L, True, GRADED), q, m, arithmetic, force=force)
    expected = {(lam, conjugate(mu)): mult for (lam, mu), mult in plain.multiplicities.items()}
    name = f"conjugate duality ({q},{m})"
    for key in sorted(set(expected) | set(twisted.multiplicities)):
        if expected.get(key, 0) != twisted.multiplicities.get(key, 0):
            witness = f"{_key(key)}: {expected.get(key, 0)} vs {twisted.multiplicities.get(key, 0)}"
            return fail_record(name, witness, q + m)
    return pass_record(name, q + m, f"{len(expected)} pairs")


class _IdentityTester:
    """Kernel membership for typed polynomials of one signature on one target"""

    def __init__(self, T: EvaluationTarget, q: int, m: int, force: bool = False):
        self.matrix: EvaluationMatrix = evaluation_matrix(T, q + m, graded_signature(q, m), spanning=LEFT_NORMED,
                                                          force=force)
        self._rows = self.matrix.dense()
        self._basis: Optional[List[int]] = None
        self._solver: Optional[SpanSolver] = None

    def value(self, f: Polynomial) -> np.ndarray:
        total = np.zeros(self._rows.cols, dtype=object)
        for monomial, coefficient in f.terms.items():
            total = total + coefficient * self._rows.row(self.matrix.row_index(monomial))
        return total

    def is_identity(self, f: Polynomial) -> bool:
        return f.is_zero() or not np.any(self.value(f) != 0)

    def random_identity(self, rng) -> Optional[Polynomial]:
        """M_r minus its expansion in the image basis, for a random dependent row r"""
        if self._basis is None:
            self._basis = image_basis(self._rows, QQ)
            self._solver = SpanSolver(self._rows.select_rows(self._basis), QQ)
        dependent = sorted(set(range(self._rows.rows)) - set(self._basis))
        if not dependent:
            return None
        r = rng.choice(dependent)
        coefficients = self._solver.solve(self._rows.row(r))
        monomials = self.matrix.spanning.monomials
        f = Polynomial.from_monomial(monomials[r])
        for i, c in zip(self._basis, coefficients):
            f.add_term(monomials[i], -c)
        return f


def check_tilde_identity_correspondence(L: AlgebraSpec, samples: int, max_n: int, rng,
                                        force: bool = False) -> CheckRecord:
    """f is a graded identity of L exactly when tilde(f) is one of G(L); tilde is an involution"""
    name = "tilde correspondence"
    plain_target, envelope_target = EvaluationTarget(L, False, GRADED), EvaluationTarget(L, True, GRADED)
    signatures = [(q, n - q) for n in range(1, max_n + 1) for q in range(n + 1)]
    testers: Dict[Tuple[int, int], Tuple[_IdentityTester, _IdentityTester]] = {}
    identities = 0
    for _ in range(samples):
        q, m = rng.choice(signatures)
        if (q, m) not in testers:
            testers[(q, m)] = (_IdentityTester(plain_target, q, m, force),
                               _IdentityTester(envelope_target, q, m, force))
        plain, twisted = testers[(q, m)]
        kind = rng.randrange(3)
        f = None
        if kind == 1:
            f = plain.random_identity(rng)
        elif kind == 2:
            g = twisted.random_identity(rng)
            f = tilde(g) if g is not None else None
        if f is None:
            f = random_polynomial(plain.matrix.spanning, rng)
        g = tilde(f)
        if tilde(g) != f:
            return fail_record(name, f, q + m, "tilde is not involutive")
        left, right = plain.is_identity(f), twisted.is_identity(g)
        if left != right:
            return fail_record(name, f, q + m, f"identity of L: {left}, tilde an identity of G(L): {right}")
        identities += left
    return pass_record(name, max_n, f"{samples} samples, {identities} identities")


def check_graded_colength(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                          force: bool = False) -> CheckRecord:
    """l_{q,n-q} <= l_n for every q"""
    total = cocharacter(T.with_mode(ORDINARY), n, arithmetic, force=force).colength
    graded = T.with_mode(GRADED)
    for q in range(n + 1):
        part = graded_cocharacter(graded, q, n - q, arithmetic, force=force).colength
        if part > total:
            return fail_record("graded colength", f"l_({q},{n - q})={part} > l_n={total}", n)
    return pass_record("graded colength", n, f"l_n={total}")


def check_graded_dominates(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                           force: bool = False) -> CheckRecord:
    graded = graded_codimension(T.with_mode(GRADED), n, arithmetic, force=force)
    ordinary = codimension(T, n, arithmetic, force=force)
    detail = f"c_n^gr={graded} c_n={ordinary}"
    if graded >= ordinary:
        return pass_record("graded dominates", n, detail)
    return fail_record("graded dominates", detail, n, detail)


def check_spanning_equivalence(T: EvaluationTarget, n: int, arithmetic: Optional[Arithmetic] = None,
                               force: bool = False) -> CheckRecord:
    """Left-normed and all-bracketings ranks agree; under the all-bracketings policy the pair is only reported"""
    left = codimension(T, n, arithmetic, spanning=LEFT_NORMED, force=force)
    full = codimension(T, n, arithmetic, spanning=ALL_BRACKETINGS, force=force)
    detail = f"left-normed {left}, all bracketings {full}"
    policy = spanning_kind(T.with_mode(ORDINARY), typed=False)
    if policy == ALL_BRACKETINGS:
        return info_record("spanning equivalence", n, f"{detail} (policy: {policy})")
    if left == full:
        return pass_record("spanning equivalence", n, detail)
    return fail_record("spanning equivalence", detail, n, detail)


def check_modular_agreement(M: DenseMatrix, primes: Sequence[int], n: Optional[int] = None) -> CheckRecord:
    exact = rank(M, QQ)
    for p in primes:
        modular = rank(M, PrimeField(p))
        if modular != exact:
            return fail_record("modular agreement", f"rank {exact} over Q, {modular} mod {p}", n)
    return pass_record("modular agreement", n, f"rank {exact}")


def random_monomial(rng, n: int) -> Monomial:
    shape = rng.choice(bracketing_shapes(n))
    leaves = list(range(1, n + 1))
    rng.shuffle(leaves)
    return Monomial(shape, tuple(leaves))


def check_koszul_oracle(L: AlgebraSpec, samples: int, max_n: int, rng) -> CheckRecord:
    """Koszul-sign evaluation against literal arithmetic in the truncated Grassmann envelope"""
    for _ in range(samples):
        n = rng.randint(1, max_n)
        monomial = random_monomial(rng, n)
        assignment = random_assignment(L, n, rng)
        if not oracle_agrees(L, monomial, assignment):
            names = ",".join(L.basis_names[a] for a in assignment.basis)
            return fail_record("koszul oracle", f"{monomial} at ({names})", n)
    return pass_record("koszul oracle", max_n, f"{samples} samples")
