"""Integer linear algebra: Smith normal form and exact solving of A n = b
over the integers.

Every answer is self-certifying: a feasible system comes with a witness and
a kernel basis (A k = 0), an infeasible one with an integer row combination
u such that u.A vanishes modulo d while u.b does not.  Callers can (and the
tests do) verify either object by direct substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    cols = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
        for i in range(len(A))
    ]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with D = U A V, U and V unimodular, D diagonal with
    d_1 | d_2 | ... and nonnegative diagonal entries."""
    r = len(A)
    c = len(A[0]) if r else 0
    D = [list(map(int, row)) for row in A]
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, f):
        # row_dst += f * row_src
        Dd, Ds = D[dst], D[src]
        for k in range(c):
            Dd[k] += f * Ds[k]
        Ud, Us = U[dst], U[src]
        for k in range(r):
            Ud[k] += f * Us[k]

    def addmul_col(dst, src, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(r, c):
        # locate a pivot of minimal absolute value in the trailing block
        pivot = None
        for i in range(t, r):
            for j in range(t, c):
                if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, r):
                if D[i][t]:
                    f = D[i][t] // D[t][t]
                    addmul_row(i, t, -f)
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, c):
                if D[t][j]:
                    f = D[t][j] // D[t][t]
                    addmul_col(j, t, -f)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the trailing block by the pivot
            stain = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if D[i][j] % D[t][t]:
                        stain = i
                        break
                if stain is not None:
                    break
            if stain is None:
                break
            addmul_row(t, stain, 1)
        if D[t][t] < 0:
            for k in range(c):
                D[t][k] = -D[t][k]
            for k in range(r):
                U[t][k] = -U[t][k]
        t += 1
    return D, U, V


@dataclass(frozen=True)
class Certificate:
    """Integer proof that A n = b has no solution.

    ``coeffs . A == 0 (mod modulus)`` entrywise for the combination
    ``coeffs``, while ``coeffs . b == value != 0 (mod modulus)``.  A modulus
    of 0 means equality over the integers (the plain "0 = value" case).
    """

    coeffs: tuple[int, ...]
    modulus: int
    value: int

    def describe(self) -> str:
        if self.modulus == 0:
            return "0 = %d" % self.value
        return "0 = %d (mod %d)" % (self.value, self.modulus)

    def check(self, A: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
        comb = [sum(self.coeffs[i] * A[i][j] for i in range(len(A))) for j in range(len(A[0]) if A else 0)]
        rhs = sum(u * x for u, x in zip(self.coeffs, b))
        if self.modulus == 0:
            return all(x == 0 for x in comb) and rhs == self.value != 0
        return (
            all(x % self.modulus == 0 for x in comb)
            and rhs % self.modulus == self.value % self.modulus
            and self.value % self.modulus != 0
        )


@dataclass(frozen=True)
class LatticeAnswer:
    feasible: bool
    witness: tuple[int, ...] | None
    kernel: tuple[tuple[int, ...], ...]
    certificate: Certificate | None

    @property
    def unique(self) -> bool:
        return self.feasible and not self.kernel


def solve_lattice(A: Sequence[Sequence[int]], b: Sequence[int], ncols: int) -> LatticeAnswer:
    """Solve A n = b for n in Z^ncols.

    Returns a witness and kernel basis when feasible, otherwise an
    infeasibility certificate.  With no rows every n works (witness 0,
    kernel the standard basis).
    """
    rows = [list(map(int, row)) for row in A]
    rhs = [int(x) for x in b]
    if len(rows) != len(rhs):
        raise ValueError("row/right-hand-side length mismatch")
    for row in rows:
        if len(row) != ncols:
            raise ValueError("row width differs from ncols")
    if not rows:
        kernel = tuple(tuple(col) for col in identity(ncols))
        return LatticeAnswer(True, (0,) * ncols, kernel, None)

    D, U, V = smith_normal_form(rows)
    r = len(rows)
    c_vec = matvec(U, rhs)
    rank = sum(1 for i in range(min(r, ncols)) if D[i][i])
    m = [0] * ncols
    for i in range(r):
        d = D[i][i] if i < min(r, ncols) else 0
        if d:
            if c_vec[i] % d:
                cert = Certificate(tuple(U[i]), d, c_vec[i] % d)
                assert cert.check(rows, rhs)
                return LatticeAnswer(False, None, (), cert)
            m[i] = c_vec[i] // d
        elif c_vec[i]:
            cert = Certificate(tuple(U[i]), 0, c_vec[i])
            assert cert.check(rows, rhs)
            return LatticeAnswer(False, None, (), cert)
    witness = tuple(sum(V[j][k] * m[k] for k in range(ncols)) for j in range(ncols))
    kernel = tuple(
        tuple(V[j][k] for j in range(ncols)) for k in range(rank, ncols)
    )
    assert matvec(rows, witness) == rhs
    return LatticeAnswer(True, witness, kernel, None)
