"""Cut-rank witnesses: matrices ``X <= M_n`` with ``X w >= tau``.

A witness and an at-least-``tau`` certificate convert into each other without
increasing rank: optimal duals of the ``beta`` programs give the rows of a
witness inside the row space of ``A``, and a row basis of a witness is a
certificate.  ``cycle_rank_check`` bounds the rank of any witness for the
unit even cycle from below by ``n / 4``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
import numpy as np

from ..graph import WeightedGraph, generate, num_slots, slot_index
from .cuts import (CutCertificate, as_certificate, check_enum_guard, cut_values, shore_mask, shores,
                   universal_cut_incidence)
from .linalg import exact_rank, integer_rows, row_basis
from .programs import beta_lp
from .verify import verify_at_least_tau

F0 = Fraction(0)


@dataclass(frozen=True)
class CutRankWitness:
    """Rows ``X_S`` indexed by ``shores`` over the slot subset ``columns``.

    ``shores=None`` means the full canonical enumeration and ``columns=None``
    all ``C(n,2)`` slots.  Omitted columns are zero, which never violates
    ``X <= M_n`` and does not change ``X w`` when ``w`` vanishes there.
    """

    n: int
    rows: tuple[tuple[Fraction, ...], ...]
    tau: Fraction
    shores: tuple[frozenset[int], ...] | None = None
    columns: tuple[int, ...] | None = None

    def __post_init__(self):
        rows = tuple(tuple(x if isinstance(x, Fraction) else Fraction(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "tau", Fraction(self.tau))
        width = num_slots(self.n) if self.columns is None else len(self.columns)
        if any(len(r) != width for r in rows):
            raise ValueError(f"witness rows need {width} entries")
        if len(rows) != len(self.row_shores()):
            raise ValueError("one witness row per shore expected")

    def row_shores(self) -> tuple[frozenset[int], ...]:
        return shores(self.n) if self.shores is None else self.shores

    def column_slots(self) -> tuple[int, ...]:
        return tuple(range(num_slots(self.n))) if self.columns is None else self.columns

    def padded(self) -> list[list[Fraction]]:
        """Rows over all ``C(n,2)`` slots, zero outside ``columns``."""
        if self.columns is None:
            return [list(r) for r in self.rows]
        out = []
        for r in self.rows:
            full = [F0] * num_slots(self.n)
            for c, x in zip(self.columns, r):
                full[c] = x
            out.append(full)
        return out

    def rank(self) -> int:
        return exact_rank(self.rows)


def witness_violations(X: CutRankWitness, g: WeightedGraph) -> list[str]:
    """Reasons ``X`` is not a feasible witness for ``g``; empty when feasible."""
    if X.n != g.n:
        return [f"witness is for n={X.n}, graph has n={g.n}"]
    if X.tau <= 0:
        return ["tau must be positive"]
    w = g.weight_vector()
    cols = X.column_slots()
    col_set = set(cols)
    outside = [i for i in range(num_slots(g.n)) if w[i] and i not in col_set]
    if outside:
        return [f"columns omit edge slots {outside} of the graph"]
    # clear denominators row by row: X_S <= chi_S  iff  L_S X_S <= L_S chi_S
    ints = np.array(integer_rows(X.rows), dtype=object).reshape(len(X.rows), len(cols))
    scale = np.array([math.lcm(*(x.denominator for x in r)) if r else 1 for r in X.rows], dtype=object)
    rows_chi = _incidence_rows(g.n, X.row_shores())[:, list(cols)].astype(object)
    over = np.any(ints > rows_chi * scale[:, None], axis=1)
    wden = math.lcm(*(x.denominator for x in w))
    wint = np.array([int(w[j] * wden) for j in cols], dtype=object)
    xw = ints.dot(wint) if len(cols) else np.zeros(len(X.rows), dtype=object)
    short = xw < X.tau * scale * wden
    problems = []
    for S, o, sh in zip(X.row_shores(), over, short):
        if o:
            problems.append(f"row {sorted(S)} exceeds the cut incidence")
        elif sh:
            problems.append(f"row {sorted(S)} has X w < tau")
    return problems


def _incidence_rows(n: int, row_shores) -> np.ndarray:
    M = universal_cut_incidence(n)
    if len(row_shores) == len(M) and row_shores == shores(n):
        return M
    return M[[shore_mask(S) - 1 for S in row_shores]]


def is_feasible(X: CutRankWitness, g: WeightedGraph) -> bool:
    return not witness_violations(X, g)


def cert_to_witness(A, g: WeightedGraph, tau) -> CutRankWitness:
    """Witness rows ``X_S = A^T v_S`` from optimal ``beta(S)`` solutions.

    ``A`` certifies at-least-``tau`` iff ``beta(S) <= w(Delta(S)) - tau`` for
    every shore (``beta = alpha`` by duality), i.e. iff every ``X_S w >= tau``.
    """
    check_enum_guard(g.n)
    A = as_certificate(A, g.n)
    tau = Fraction(tau)
    rows = []
    for S, cut in zip(shores(g.n), cut_values(g)):
        res = beta_lp(A, g, S)
        if res.value > cut - tau:
            raise ValueError(f"A does not certify a min cut of at least {tau} (shore {sorted(S)})")
        rows.append(res.row)
    X = CutRankWitness(g.n, tuple(map(tuple, rows)), tau)
    bad = witness_violations(X, g)
    assert not bad, bad
    assert exact_rank(rows) <= exact_rank(A.rows)
    return X


def witness_to_cert(X: CutRankWitness, g: WeightedGraph) -> CutCertificate:
    """A row basis of the (zero-padded) witness, checked to certify ``X.tau``."""
    bad = witness_violations(X, g)
    if bad:
        raise ValueError("infeasible witness: " + "; ".join(bad[:3]))
    if X.shores is not None and set(X.shores) != set(shores(g.n)):
        raise ValueError("a certificate needs a witness row for every shore")
    full = X.padded()
    A = CutCertificate(g.n, tuple(tuple(full[i]) for i in row_basis(full)))
    assert verify_at_least_tau(A, g, X.tau)
    return A


def cycle_slots(n: int) -> list[int]:
    """Slots of the cycle edges ``12, 23, ..., (n-1)n, n1`` in walk order."""
    return [slot_index(n, i, i + 1) for i in range(1, n)] + [slot_index(n, 1, n)]


@dataclass
class CycleBound:
    bound: Fraction
    certified: bool
    rank_y_prime: int | None = None
    rank_x: int | None = None
    normalized_trace: Fraction | None = None
    reason: str = ""


def cycle_rank_check(X: CutRankWitness, n: int) -> CycleBound:
    """Lower-bound ``rank(X)`` by ``n / 4`` for a feasible witness on the unit ``C_n``.

    ``Y`` keeps the rows of the even singletons ``{2}, {4}, ..., {n}`` and the
    cycle-edge columns; ``Y'`` adds column pairs so that column ``i`` collects
    the two edges at vertex ``2i``.  Feasibility makes ``Y'`` have positive
    diagonal, non-positive off-diagonal and positive row sums, so after
    scaling rows to unit diagonal every eigenvalue lies in ``[0, 2]`` while the
    trace is ``n / 2``.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be even and at least 4")
    if X.n != n:
        raise ValueError(f"witness is for n={X.n}")
    bound = Fraction(n, 4)
    g = generate("cycle", n)
    bad = witness_violations(X, g)
    if bad:
        return CycleBound(bound, False, reason=bad[0])
    index = {S: i for i, S in enumerate(X.row_shores())}
    col_pos = {c: i for i, c in enumerate(X.column_slots())}
    need = [frozenset({v}) for v in range(2, n + 1, 2)]
    missing = [sorted(S) for S in need if S not in index]
    if missing:
        raise ValueError(f"witness lacks rows for shores {missing}")
    cyc = [col_pos[c] for c in cycle_slots(n)]
    Y = [[X.rows[index[S]][c] for c in cyc] for S in need]
    Yp = [[r[2 * i] + r[2 * i + 1] for i in range(n // 2)] for r in Y]

    h = n // 2
    diag = [Yp[i][i] for i in range(h)]
    if any(d <= 0 for d in diag):
        return CycleBound(bound, False, reason="non-positive diagonal in Y'")
    if any(Yp[i][j] > 0 for i in range(h) for j in range(h) if i != j):
        return CycleBound(bound, False, reason="positive off-diagonal entry in Y'")
    off = [sum((-Yp[i][j] for j in range(h) if j != i), F0) / diag[i] for i in range(h)]
    if any(o > 1 for o in off):
        return CycleBound(bound, False, reason="normalized off-diagonal mass exceeds 1")
    trace = sum((Yp[i][i] / diag[i] for i in range(h)), F0)
    assert trace == Fraction(n, 2)
    rank_yp = exact_rank(Yp)
    rank_x = X.rank()
    assert rank_x >= rank_yp >= bound, (rank_x, rank_yp)
    return CycleBound(bound, True, rank_yp, rank_x, trace)


def random_cycle_witness(n: int, rng: np.random.Generator, tau=1, spread: int = 3,
                         keep: float = 0.5) -> CutRankWitness:
    """A random feasible witness for the unit ``C_n`` on the cycle columns.

    Each row starts at ``chi_S`` and subtracts random non-negative integers
    (up to ``spread``) on a random subset of columns; rows whose ``X w`` drops
    below ``tau`` are lowered less until feasible.
    """
    check_enum_guard(n)
    tau = Fraction(tau)
    cols = cycle_slots(n)
    base = universal_cut_incidence(n)[:, cols].astype(np.int64)
    drops = rng.integers(0, spread + 1, size=base.shape) * (rng.random(base.shape) > keep)
    if tau.denominator != 1:
        raise ValueError("random_cycle_witness takes an integer tau")
    t = int(tau)
    cut = base.sum(axis=1)
    if np.any(cut < t):
        raise ValueError(f"tau={t} exceeds some cycle cut")
    total = drops.sum(axis=1)
    # rows with sum below tau get their drops scaled by (cut - tau) / sum(drops)
    deficient = cut - total < t
    den = np.where(deficient, total, 1)
    num = np.where(deficient[:, None], base * den[:, None] - (cut - t)[:, None] * drops, base - drops)
    rows = [tuple(Fraction(int(x), int(d)) for x in r) for r, d in zip(num, den)]
    return CutRankWitness(n, tuple(rows), tau, None, tuple(cols))
