"""Exact integer-matrix arithmetic: Smith normal form, divisor classes up to
associates, and factorization length sets for nonsingular matrices.

Matrices are tuples of tuples of Python ints, so nothing here can overflow.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DetTooLargeError, ShapeError, SingularMatrixError
from .lengthset import LengthSet

Matrix = tuple


def mat(rows) -> Matrix:
    out = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(r) != n for r in out):
        raise ShapeError("matrix must be square and non-empty")
    return out


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def diag(*entries: int) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def mat_det(a: Matrix) -> int:
    """Fraction-free Bareiss elimination; exact for integer matrices."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: Matrix) -> bool:
    return abs(mat_det(a)) == 1


def _minor(a: Matrix, i: int, j: int) -> Matrix:
    return tuple(
        tuple(v for jj, v in enumerate(row) if jj != j)
        for ii, row in enumerate(a)
        if ii != i
    )


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return ((1,),)
    cof = [
        [(-1) ** (i + j) * mat_det(_minor(a, i, j)) for j in range(n)] for i in range(n)
    ]
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


def exact_divide(a: Matrix, scalar: int) -> Matrix | None:
    out = []
    for row in a:
        new = []
        for v in row:
            if v % scalar:
                return None
            new.append(v // scalar)
        out.append(tuple(new))
    return tuple(out)


def solve_left(b: Matrix, a: Matrix) -> Matrix | None:
    """The integer matrix X with B*X = A, or None (B nonsingular)."""
    d = mat_det(b)
    if d == 0:
        raise SingularMatrixError("left factor is singular")
    return exact_divide(mat_mul(adjugate(b), a), d)


# -- Smith normal form ------------------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """U*A*V = D with U, V unimodular and D = diag(d1..dn), di >= 0, di | di+1.

    The constructor re-verifies every invariant, so a returned result is a
    certificate."""

    U: Matrix
    D: Matrix
    V: Matrix
    A: Matrix

    def __post_init__(self):
        n = len(self.A)
        if mat_mul(mat_mul(self.U, self.A), self.V) != self.D:
            raise AssertionError("U*A*V != D")
        if not is_unimodular(self.U) or not is_unimodular(self.V):
            raise AssertionError("transforms are not unimodular")
        for i in range(n):
            for j in range(n):
                if i != j and self.D[i][j] != 0:
                    raise AssertionError("D is not diagonal")
            if self.D[i][i] < 0:
                raise AssertionError("negative invariant factor")
        for i in range(n - 1):
            d, e = self.D[i][i], self.D[i + 1][i + 1]
            if d == 0 and e != 0:
                raise AssertionError("divisibility chain broken by a zero")
            if d != 0 and e % d != 0:
                raise AssertionError("divisibility chain broken")

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i][i] for i in range(len(self.D)))

    def to_json(self) -> dict:
        return {
            "U": [list(r) for r in self.U],
            "D": [list(r) for r in self.D],
            "V": [list(r) for r in self.V],
        }


def snf(a: Matrix) -> SnfResult:
    """Smith normal form over the integers with tracked transforms.

    Pivot rule: smallest nonzero absolute value in the working block, ties
    broken row-major."""
    a = mat(a)
    if mat_det(a) == 0:
        raise SingularMatrixError("matrix must have nonzero determinant")
    n = len(a)
    m = [list(row) for row in a]
    u = [list(row) for row in identity_matrix(n)]
    v = [list(row) for row in identity_matrix(n)]

    def row_op(i: int, k: int, q: int) -> None:  # row_i -= q * row_k
        for j in range(n):
            m[i][j] -= q * m[k][j]
            u[i][j] -= q * u[k][j]

    def col_op(j: int, k: int, q: int) -> None:  # col_j -= q * col_k
        for i in range(n):
            m[i][j] -= q * m[i][k]
            v[i][j] -= q * v[i][k]

    for t in range(n):
        while True:
            pivot = None
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    val = abs(m[i][j])
                    if val and (best is None or val < best):
                        best = val
                        pivot = (i, j)
            pi, pj = pivot
            if pi != t:
                m[t], m[pi] = m[pi], m[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in m:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            if m[t][t] < 0:
                for j in range(n):
                    m[t][j] = -m[t][j]
                    u[t][j] = -u[t][j]
            dirty = False
            for i in range(t + 1, n):
                if m[i][t]:
                    row_op(i, t, m[i][t] // m[t][t])
                    dirty = dirty or m[i][t] != 0
            for j in range(t + 1, n):
                if m[t][j]:
                    col_op(j, t, m[t][j] // m[t][t])
                    dirty = dirty or m[t][j] != 0
            if dirty:
                continue
            # cross is clear; enforce divisibility of the rest of the block
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if m[i][j] % m[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(n):  # fold the offending row in, then re-eliminate
                m[t][j] += m[offender][j]
                u[t][j] += u[offender][j]
    return SnfResult(
        U=tuple(tuple(r) for r in u),
        D=tuple(tuple(r) for r in m),
        V=tuple(tuple(r) for r in v),
        A=a,
    )


def associate_equivalent(b: Matrix, c: Matrix) -> bool:
    """Two-sided associate test: B = U*C*V for unimodular U, V iff the Smith
    normal forms agree."""
    return snf(b).diagonal == snf(c).diagonal


def associate_equivalent_search(b: Matrix, c: Matrix, bound: int = 2) -> bool:
    """Oracle for the associate test: exhaust unimodular U with entries in
    [-bound, bound] and solve for V exactly.  Tiny sizes only."""
    n = len(b)
    if abs(mat_det(b)) != abs(mat_det(c)):
        return False
    for entries in itertools.product(range(-bound, bound + 1), repeat=n * n):
        u = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
        if abs(mat_det(u)) != 1:
            continue
        ub = mat_mul(u, b)
        v = solve_left(ub, c)
        if v is not None and is_unimodular(v):
            return True
    return False


# -- prime bookkeeping ----------------------------------------------------------------


def factor_multiset(value: int, det_bound: int = 10**12) -> tuple:
    """Prime factors of |value| with multiplicity, via trial division."""
    value = abs(value)
    if value > det_bound:
        raise DetTooLargeError(f"|det| = {value} exceeds bound {det_bound}")
    primes = []
    d = 2
    while d * d <= value:
        while value % d == 0:
            primes.append(d)
            value //= d
        d += 1 if d == 2 else 2
    if value > 1:
        primes.append(value)
    return tuple(primes)


# -- divisor classes up to associates -----------------------------------------------------


@dataclass(frozen=True)
class MatrixDivisorClasses:
    """Diagonal candidates covering every divisor of A up to associates.

    Candidates are the diagonals diag(p1..pn) built from pairwise disjoint
    sub-multisets of the prime multiset of det A; every divisor of A is a
    two-sided associate of one of them.  ``representatives`` lists one
    invariant-factor tuple per associate class among the candidates."""

    candidates: tuple
    representatives: tuple

    def to_json(self) -> dict:
        return {
            "candidates": [list(c) for c in self.candidates],
            "representatives": [list(r) for r in self.representatives],
        }


def matrix_divisor_classes(a: Matrix, det_bound: int = 10**12) -> MatrixDivisorClasses:
    a = mat(a)
    det = mat_det(a)
    if det == 0:
        raise SingularMatrixError("matrix must have nonzero determinant")
    n = len(a)
    primes = factor_multiset(det, det_bound)
    distinct = sorted(set(primes))
    splits_per_prime = []
    for p in distinct:
        mult = primes.count(p)
        splits_per_prime.append(
            [
                split
                for split in itertools.product(range(mult + 1), repeat=n)
                if sum(split) <= mult
            ]
        )
    candidates = set()
    for choice in itertools.product(*splits_per_prime):
        entries = []
        for i in range(n):
            val = 1
            for p, split in zip(distinct, choice):
                val *= p ** split[i]
            entries.append(val)
        candidates.add(tuple(entries))
    candidates = tuple(sorted(candidates))
    reps = sorted({snf(diag(*c)).diagonal for c in candidates})
    return MatrixDivisorClasses(candidates=candidates, representatives=tuple(reps))


# -- factorization lengths ------------------------------------------------------------------


def _ordered_factorizations(value: int, slots: int):
    """All tuples of positive ints of the given length with the given product."""
    if slots == 1:
        yield (value,)
        return
    for d in range(1, value + 1):
        if value % d == 0:
            for rest in _ordered_factorizations(value // d, slots - 1):
                yield (d,) + rest


def _lower_triangular_forms(n: int, det: int):
    """Lower-triangular matrices with positive diagonal of the given product
    and below-diagonal entries reduced modulo the row's diagonal entry.

    Every right-associate class of a nonsingular integer matrix contains
    exactly one such form, so scanning them scans all left divisors up to
    right association."""
    for diagonal in _ordered_factorizations(det, n):
        below_positions = [(i, j) for i in range(n) for j in range(i)]
        ranges = [range(diagonal[i]) for i, _ in below_positions]
        for values in itertools.product(*ranges):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = diagonal[i]
            for (i, j), val in zip(below_positions, values):
                rows[i][j] = val
            yield tuple(tuple(r) for r in rows)


def _positive_divisors(value: int) -> tuple:
    return tuple(d for d in range(1, value + 1) if value % d == 0)


def matrix_is_irreducible(b: Matrix, _memo: dict | None = None) -> bool:
    """No splitting B = C*D with both determinants of absolute value >= 2."""
    b = mat(b)
    det = abs(mat_det(b))
    if det <= 1:
        return False
    n = len(b)
    for d in _positive_divisors(det):
        if d < 2 or d > det // 2:
            continue
        for t in _lower_triangular_forms(n, d):
            if solve_left(t, b) is not None:
                return False
    return True


def matrix_length_set(a: Matrix, det_bound: int = 10**12) -> LengthSet:
    """Exact set of lengths of factorizations of A into irreducible matrices.

    Peels irreducible left divisors in canonical lower-triangular form and
    recurses on the exact quotient; any factorization can be rotated into
    this shape step by step without changing its length."""
    a = mat(a)
    det = mat_det(a)
    if det == 0:
        raise SingularMatrixError("matrix must have nonzero determinant")
    factor_multiset(det, det_bound)  # enforce the bound before recursing
    n = len(a)
    memo: dict = {}

    def rec(m: Matrix) -> frozenset:
        got = memo.get(m)
        if got is not None:
            return got
        dm = abs(mat_det(m))
        if dm == 1:
            memo[m] = frozenset({0})
            return memo[m]
        out = set()
        for d in _positive_divisors(dm):
            if d < 2:
                continue
            for t in _lower_triangular_forms(n, d):
                if not matrix_is_irreducible(t):
                    continue
                q = solve_left(t, m)
                if q is not None:
                    out |= {1 + l for l in rec(q)}
        memo[m] = frozenset(out)
        return memo[m]

    return LengthSet.make(rec(a))
