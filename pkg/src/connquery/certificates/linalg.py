"""Exact rank and row bases over the rationals.

Rows are cleared of denominators first (row scaling preserves rank and row
space).  A modular elimination gives a rank lower bound for free; when it
already equals ``min(rows, cols)`` it is the exact rank.  Otherwise the
fraction-free (Bareiss) elimination over Python integers decides.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

_P = 2_147_483_647  # 2^31 - 1; products of residues fit in int64


def integer_rows(M) -> list[list[int]]:
    """Scale every row by the lcm of its denominators."""
    if isinstance(M, np.ndarray) and M.dtype.kind in "iub":
        return M.astype(np.int64).tolist()
    out = []
    for row in M:
        row = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
        lcm = math.lcm(*(x.denominator for x in row)) if row else 1
        if lcm == 1:
            out.append([x.numerator for x in row])
        else:
            out.append([x.numerator * (lcm // x.denominator) for x in row])
    return out


def _shape(rows: list[list[int]]) -> tuple[int, int]:
    return len(rows), (len(rows[0]) if rows else 0)


def _modular_pivot_rows(rows: list[list[int]]) -> list[int]:
    """Original indices of the pivot rows of an elimination modulo ``_P``.

    Each pivot row only ever has earlier pivot rows subtracted from it, so the
    picked original rows are independent mod ``_P`` and hence over ``Q``.
    """
    k, m = _shape(rows)
    if k == 0 or m == 0:
        return []
    A = np.array([[x % _P for x in r] for r in rows], dtype=np.int64)
    free = np.ones(k, dtype=bool)
    picked: list[int] = []
    for c in range(m):
        cand = np.flatnonzero(free & (A[:, c] != 0))
        if cand.size == 0:
            continue
        p = int(cand[0])
        free[p] = False
        picked.append(p)
        inv = pow(int(A[p, c]), _P - 2, _P)
        A[p] = (A[p] * inv) % _P
        rest = np.flatnonzero(free)
        if rest.size:
            f = A[rest, c].copy()
            A[rest] = (A[rest] - (np.outer(f, A[p]) % _P)) % _P
        if len(picked) == min(k, m):
            break
    return picked


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    k, m = _shape(rows)
    if k == 0 or m == 0:
        return 0
    A = np.array(rows, dtype=object)
    rank = 0
    prev = 1
    for c in range(m):
        if rank == k:
            break
        nz = [i for i in range(rank, k) if A[i, c] != 0]
        if not nz:
            continue
        p = nz[0]
        if p != rank:
            A[[rank, p]] = A[[p, rank]]
        piv = A[rank, c]
        below = A[rank + 1:]
        if len(below):
            A[rank + 1:] = (below * piv - np.outer(below[:, c], A[rank])) // prev
        prev = piv
        rank += 1
    return rank


def exact_rank(M) -> int:
    rows = integer_rows(M)
    k, m = _shape(rows)
    if k == 0 or m == 0:
        return 0
    lower = len(_modular_pivot_rows(rows))
    if lower == min(k, m):
        return lower
    return bareiss_rank(rows)


def row_basis(M) -> list[int]:
    """Indices of rows of ``M`` forming a basis of its row space."""
    rows = integer_rows(M)
    picked = _modular_pivot_rows(rows)
    if len(picked) == exact_rank(M):
        return picked
    # modular rank fell short: greedy exact selection
    chosen: list[int] = []
    for idx in range(len(rows)):
        if bareiss_rank([rows[i] for i in chosen] + [rows[idx]]) > len(chosen):
            chosen.append(idx)
    return chosen


def in_row_space(A: Sequence[Sequence], v: Sequence) -> bool:
    if len(A) == 0:
        return all(Fraction(x) == 0 for x in v)
    return exact_rank(list(A) + [list(v)]) == exact_rank(A)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> list[Fraction]:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, x)), Fraction(0)) for row in A]


def transpose_vec(A: Sequence[Sequence], y: Sequence, m: int) -> list[Fraction]:
    """``A^T y`` for a ``k x m`` matrix ``A``."""
    out = [Fraction(0)] * m
    for row, coef in zip(A, y):
        coef = Fraction(coef)
        if coef:
            for j, a in enumerate(row):
                if a:
                    out[j] += coef * a
    return out
