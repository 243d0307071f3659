"""Dense mod-p linear algebra on numpy int64 arrays.

Primes sit just above 2^31, so a single product of residues fits in int64 but
sums of products do not.  Matrix products therefore use a 16-bit split of the
left factor; row operations reduce mod p after every multiply.
"""
from __future__ import annotations

import numpy as np


def _check(a: np.ndarray):
    if a.dtype != np.int64:
        raise TypeError("expected int64 array")


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow (requires b.shape[0] < 2^16)."""
    _check(a)
    _check(b)
    hi, lo = np.divmod(a, 1 << 16)
    out = ((hi @ b) % p << 16) + (lo @ b) % p
    return out % p


def apply_axis1_mod(m: np.ndarray, x: np.ndarray, p: int) -> np.ndarray:
    """Apply the square matrix m along axis 1 of a 3-d array x, mod p.

    x has shape (pre, d, post); returns y with y[a, i, b] = sum_j m[i,j] x[a,j,b].
    """
    _check(m)
    _check(x)
    hi, lo = np.divmod(m, 1 << 16)
    yh = np.einsum("ij,ajb->aib", hi, x) % p
    yl = np.einsum("ij,ajb->aib", lo, x) % p
    return ((yh << 16) + yl) % p


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank of a over F_p by in-place Gaussian elimination."""
    _check(a)
    a = a % p
    nrows, ncols = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = None
        colvals = a[rank:, col]
        nz = np.nonzero(colvals)[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), p - 2, p)
        rows = rank + 1 + np.nonzero(a[rank + 1:, col])[0]
        if rows.size:
            factors = a[rows, col] * inv % p
            a[rows, col:] = (a[rows, col:] - factors[:, None] * a[rank, col:]) % p
        rank += 1
    return rank


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (rref, pivot column list)."""
    _check(a)
    a = a % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r, col:] = a[r, col:] * inv % p
        rows = np.nonzero(a[:, col])[0]
        rows = rows[rows != r]
        if rows.size:
            factors = a[rows, col] % p
            a[rows, col:] = (a[rows, col:] - factors[:, None] * a[r, col:]) % p
        pivots.append(col)
        r += 1
    return a[:r], pivots


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right nullspace of a mod p, shape (ncols, nullity)."""
    _check(a)
    rref, pivots = rref_mod(a.copy(), p)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-int(rref[i, fc])) % p
    return basis


def column_space_rank(cols: np.ndarray, p: int) -> int:
    return rank_mod(cols.copy(), p)
