"""Small dense exact linear algebra over Q(v) used by basis computations."""
from __future__ import annotations

from .scalar import Rat, RAT_ZERO, RAT_ONE


class SingularMatrix(ArithmeticError):
    pass


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[RAT_ZERO] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a.is_zero():
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                b = Bt[j]
                if not b.is_zero():
                    row[j] = row[j] + a * b
    return out


def invert(A):
    """Inverse of a square matrix of Rat; raises SingularMatrix."""
    n = len(A)
    M = [list(row) + [RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            raise SingularMatrix(f"matrix is singular at column {col}")
        M[col], M[piv] = M[piv], M[col]
        inv_p = M[col][col].inv()
        M[col] = [x * inv_p for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def solve_vec(A_inv, v):
    """x = v . A_inv (row vector times inverse)."""
    n = len(A_inv)
    out = [RAT_ZERO] * len(A_inv[0])
    for i in range(n):
        c = v[i]
        if c.is_zero():
            continue
        for j, a in enumerate(A_inv[i]):
            if not a.is_zero():
                out[j] = out[j] + c * a
    return out


def greedy_row_basis(rows):
    """Indices of the lexicographically-first maximal independent row set."""
    kept: list[int] = []
    basis: list[list[Rat]] = []
    for idx, row in enumerate(rows):
        vec = list(row)
        for b in basis:
            lead = next((j for j, x in enumerate(b) if not x.is_zero()), None)
            if lead is not None and not vec[lead].is_zero():
                f = vec[lead] / b[lead]
                vec = [x - f * y for x, y in zip(vec, b)]
        if any(not x.is_zero() for x in vec):
            kept.append(idx)
            basis.append(vec)
    return kept
