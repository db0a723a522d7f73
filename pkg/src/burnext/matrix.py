"""Exact integer linear algebra.

Matrices are plain lists of rows of Python ints, so every entry has
arbitrary precision.  The mod-p routines use numpy since their entries
stay below p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

IntMatrix = list  # list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def matvec(A: IntMatrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: IntMatrix, ncols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def det(A: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U * A * V == S`` with ``U``, ``V`` unimodular and ``S`` in Smith form."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.V)))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def snf(A: IntMatrix, ncols: int | None = None) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    ``ncols`` is only needed when ``A`` has no rows.  Pivots are chosen as
    the smallest nonzero entry (by absolute value) of the active block.
    """
    r = len(A)
    c = len(A[0]) if r else (ncols or 0)
    S = [list(map(int, row)) for row in A]
    U = identity(r)
    V = identity(c)
    Vi = identity(c)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            S[dst] = [x + q * y for x, y in zip(S[dst], S[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src; inverse gets row_src -= q * row_dst
        if q:
            for row in S:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = S[t][t]
            for i in range(t + 1, r):
                add_row(i, t, -(S[i][t] // p))
            for j in range(t + 1, c):
                add_col(j, t, -(S[t][j] // p))
            rest = [(abs(S[i][t]), i, t) for i in range(t + 1, r) if S[i][t]]
            rest += [(abs(S[t][j]), t, j) for j in range(t + 1, c) if S[t][j]]
            if rest:
                _, i, j = min(rest)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SnfDecomposition(U, S, V, Vi)


def solve_integer(A: IntMatrix, b: Sequence[int], ncols: int | None = None) -> list[int] | None:
    """An integer solution of ``A x = b``, or ``None`` if there is none."""
    r = len(A)
    if len(b) != r:
        raise ValueError(f"dimension mismatch: {r} rows, rhs of length {len(b)}")
    c = len(A[0]) if r else (ncols or 0)
    dec = snf(A, c)
    rhs = matvec(dec.U, b)
    y = [0] * c
    for i in range(r):
        s = dec.S[i][i] if i < c else 0
        if s == 0:
            if rhs[i] != 0:
                return None
        else:
            q, rem = divmod(rhs[i], s)
            if rem:
                return None
            y[i] = q
    return matvec(dec.V, y)


def integer_kernel(A: IntMatrix, ncols: int | None = None) -> list[list[int]]:
    """A Z-basis of ``{x : A x = 0}``."""
    c = len(A[0]) if A else (ncols or 0)
    dec = snf(A, c)
    k = dec.rank
    return [[dec.V[i][j] for i in range(c)] for j in range(k, c)]


# --- prime fields ----------------------------------------------------------

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _dtype_for(p: int, ncols: int):
    return np.int64 if p * p * max(ncols, 1) < 2**62 else object


def _matmul_mod(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    # float64 products are exact while every dot product stays below 2^53
    if X.dtype != object and p * p * max(X.shape[1], 1) < 2**53:
        prod = np.rint(X.astype(np.float64) @ Y.astype(np.float64)).astype(np.int64)
        return prod % p
    return (X @ Y) % p


def _local_rref(B: np.ndarray, p: int, skip: set[int]) -> tuple[np.ndarray, list[int]]:
    B = B.copy()
    rank = 0
    pivots = []
    for col in range(B.shape[1]):
        if rank == B.shape[0]:
            break
        if col in skip:
            continue
        nz = np.nonzero(B[rank:, col])[0]
        if len(nz) == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            B[[rank, i]] = B[[i, rank]]
        inv = pow(int(B[rank, col]), -1, p)
        B[rank] = (B[rank] * inv) % p
        factors = B[:, col].copy()
        factors[rank] = 0
        rows = np.nonzero(factors)[0]
        if len(rows):
            B[rows] = (B[rows] - np.outer(factors[rows], B[rank])) % p
        pivots.append(col)
        rank += 1
    return B[:rank], pivots


def rref_mod_p(A, p: int, batch: int = 512) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p, processed in row batches.

    Returns the nonzero rows (sorted by pivot) and their pivot columns.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    ncols = A.shape[1]
    dtype = _dtype_for(p, ncols)
    E = np.zeros((0, ncols), dtype=dtype)
    pivots: list[int] = []
    for start in range(0, A.shape[0], batch):
        B = np.asarray(A[start:start + batch], dtype=dtype) % p
        if pivots:
            B = (B - _matmul_mod(B[:, pivots], E, p)) % p
        B, new = _local_rref(B, p, set(pivots))
        if new:
            if len(E):
                E = (E - _matmul_mod(E[:, new], B, p)) % p
            E = np.vstack([E, B])
            pivots += new
    order = np.argsort(pivots, kind="stable")
    return E[order], [pivots[i] for i in order]


def rank_mod_p(A, p: int) -> int:
    return len(rref_mod_p(A, p)[1])


def nullspace_mod_p(A, p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of ``{x : A x = 0 mod p}``."""
    A = np.asarray(A)
    if A.size == 0:
        n = A.shape[1] if A.ndim == 2 else (ncols or 0)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        return [[int(i == j) for i in range(n)] for j in range(n)]
    R, pivots = rref_mod_p(A, p)
    n = A.shape[1]
    basis = []
    for f in (j for j in range(n) if j not in set(pivots)):
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = int(-row[f] % p)
        basis.append(v)
    return basis
