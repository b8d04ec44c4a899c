"""Exact rational linear algebra, plus a fast modular rank certificate.

Everything user-facing runs over Fraction.  The one numpy routine computes
ranks mod a large prime; by minor-vanishing, rank mod p never exceeds the
rational rank, which is exactly the one-sided bound the callers need.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

CERT_PRIMES = (2147483647, 2147483629)


def row_reduce(rows, ncols: int):
    """RREF.  Returns (pivot_columns, reduced_nonzero_rows); input is not modified."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][col]
        if lead != 1:
            m[rank] = [x / lead for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return pivots, m[:rank]


def rank_exact(rows, ncols: int) -> int:
    return len(row_reduce(rows, ncols)[0])


def nullspace(rows, ncols: int):
    """Basis of the rational kernel, one vector per free column."""
    pivots, red = row_reduce(rows, ncols)
    pivset = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for prow, pcol in zip(red, pivots):
            v[pcol] = -prow[fc]
        basis.append(v)
    return basis


def solve_particular(rows, rhs, ncols: int):
    """Any solution of rows * x = rhs with free variables set to 0, or None."""
    if not rows:
        return [Fraction(0)] * ncols
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots, red = row_reduce(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for prow, pcol in zip(red, pivots):
        x[pcol] = prow[ncols]
    return x


def rank_mod_p(rows, p: int) -> int:
    """Rank of an integer matrix over F_p (vectorized elimination)."""
    if not rows or not rows[0]:
        return 0
    A = np.array(rows, dtype=np.int64) % p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = A[r + 1 :, c]
        mask = below != 0
        if mask.any():
            A[r + 1 :][mask] = (A[r + 1 :][mask] - np.outer(below[mask], A[r])) % p
        r += 1
    return r


def ldlt_pivots(G):
    """(is_positive_definite, pivots) by pivot-free LDL^T elimination.

    A symmetric rational matrix is positive definite iff elimination runs to
    completion with every pivot strictly positive; the first nonpositive pivot
    stops the scan and is included as the witness.
    """
    A = [list(row) for row in G]
    n = len(A)
    pivots: list[Fraction] = []
    for i in range(n):
        d = A[i][i]
        pivots.append(d)
        if d <= 0:
            return False, pivots
        for r in range(i + 1, n):
            if A[r][i]:
                f = A[r][i] / d
                for c in range(i, n):
                    A[r][c] -= f * A[i][c]
    return True, pivots


def inertia(G):
    """Signature (positive, negative, zero) of a symmetric rational matrix.

    Lagrange congruence diagonalization; when every active diagonal entry is
    zero but some off-diagonal is not, a row+column add restores a usable
    pivot without leaving exact arithmetic.
    """
    A = [[Fraction(x) for x in row] for row in G]
    n = len(A)
    pos = neg = zero = 0
    active = list(range(n))
    while active:
        d = next((i for i in active if A[i][i] != 0), None)
        if d is None:
            pair = next(
                ((i, j) for i in active for j in active if j > i and A[i][j] != 0), None
            )
            if pair is None:
                zero += len(active)
                break
            i, j = pair
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            continue
        a = A[d][d]
        if a > 0:
            pos += 1
        else:
            neg += 1
        active.remove(d)
        for i in active:
            if A[i][d]:
                f = A[i][d] / a
                for k in range(n):
                    A[i][k] -= f * A[d][k]
                for k in range(n):
                    A[k][i] -= f * A[k][d]
    return pos, neg, zero


def det_exact(matrix) -> Fraction:
    """Determinant by exact fraction elimination with partial pivoting."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    A = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det
