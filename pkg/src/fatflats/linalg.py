"""Exact elimination kernels.

Two independent routes are kept on purpose: fraction-free (Bareiss)
elimination over the integers for the rational lane, and vectorized
Gauss-Jordan over F_p for the fast lane.  Pivot order is deterministic
(leftmost column, topmost row) so kernel vectors are reproducible.
"""

from fractions import Fraction
from math import gcd

import numpy as np


def rref_fractions(rows):
    """Reduced row echelon form over Q.

    Returns (rref_rows, pivot_cols).  Input rows are not modified.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def matrix_rank(rows) -> int:
    return len(rref_fractions(rows)[1])


def invert_matrix(rows):
    """Exact inverse of a square rational matrix, or None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    red, pivots = rref_fractions(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


def _clear_row_denominators(row):
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in row]


def bareiss_echelon(rows):
    """Fraction-free forward elimination on rational rows.

    Returns (echelon_int_rows, pivot_cols).  Entries stay integral
    throughout (Bareiss), so no intermediate fraction blow-up.
    """
    m = [_clear_row_denominators([Fraction(x) for x in row]) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r >= len(m):
            break
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mi, mr = m[i], m[r]
            f = mi[c]
            for j in range(c, ncols):
                mi[j] = (piv * mi[j] - f * mr[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_kernel_rational(rows, ncols=None):
    """Exact rank and one deterministic kernel vector over Q.

    Returns (rank, kernel) where kernel is a list of Fractions or None
    when the matrix has full column rank.  The kernel vector sets the
    first free column to 1 and all other free columns to 0.
    """
    if not rows:
        if ncols is None:
            raise ValueError("empty matrix needs explicit ncols")
        kernel = [Fraction(0)] * ncols
        kernel[0] = Fraction(1)
        return 0, kernel
    ncols = len(rows[0])
    ech, pivots = bareiss_echelon(rows)
    rank = len(pivots)
    if rank == ncols:
        return rank, None
    pivot_set = set(pivots)
    free = next(c for c in range(ncols) if c not in pivot_set)
    kernel = [Fraction(0)] * ncols
    kernel[free] = Fraction(1)
    # Back-substitute through the integer echelon rows.
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        s = sum(Fraction(ech[i][j]) * kernel[j] for j in range(c + 1, ncols)
                if kernel[j] != 0)
        kernel[c] = -s / ech[i][c]
    return rank, kernel


def rank_kernel_modp(mat, p):
    """Rank and one deterministic kernel vector over F_p.

    ``mat`` is a 2D int64 array (copied, not modified).  Returns
    (rank, kernel) with kernel an int64 array or None at full column
    rank.  Uses Gauss-Jordan so kernel extraction is immediate.
    """
    M = np.array(mat, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        fac = M[:, c].copy()
        fac[r] = 0
        hit = np.nonzero(fac)[0]
        if hit.size:
            M[hit] = (M[hit] - fac[hit, None] * M[r][None, :]) % p
        pivots.append(c)
        r += 1
    rank = r
    if rank == ncols:
        return rank, None
    pivot_set = set(pivots)
    free = next(c for c in range(ncols) if c not in pivot_set)
    kernel = np.zeros(ncols, dtype=np.int64)
    kernel[free] = 1
    for i, c in enumerate(pivots):
        kernel[c] = (-int(M[i, free])) % p
    return rank, kernel
