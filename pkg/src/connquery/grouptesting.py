"""Non-adaptive group testing run in parallel over the rows of ``A(R, S)``.

For disjoint ``R`` and ``S`` a single master query on an indicator vector
supported in ``S`` returns, for every row ``i`` in ``R``, the OR of ``A(i, j) > 0``
over the queried columns.  That is one OR query to every row at once, which is
all the primitives below need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SQRT2 = math.sqrt(2.0)


class BatchedOrOracle:
    """OR queries to the rows ``R`` of ``A(R, S)`` through a master-capable oracle."""

    def __init__(self, oracle, rows, cols):
        self.oracle = oracle
        self.rows = np.unique(np.asarray(rows, dtype=np.int64))
        self.cols = np.unique(np.asarray(cols, dtype=np.int64))
        n = oracle.n
        for name, idx in (("rows", self.rows), ("cols", self.cols)):
            if len(idx) and (idx[0] < 1 or idx[-1] > n):
                raise ValueError(f"{name} must lie in 1..{n}")
        if np.intersect1d(self.rows, self.cols).size:
            raise ValueError("row set R and column set S must be disjoint")

    def query(self, v) -> np.ndarray:
        """One OR query: ``v`` is a length-``n`` 0/1 vector supported in ``S``."""
        v = np.asarray(v).astype(bool)
        if v.shape != (self.oracle.n,):
            raise ValueError(f"v must have shape ({self.oracle.n},)")
        outside = np.flatnonzero(v)
        outside = np.setdiff1d(outside + 1, self.cols)
        if outside.size:
            raise ValueError(f"v touches coordinates outside S: {outside.tolist()}")
        return self.query_subsets(v[self.cols - 1][:, None])[:, 0]

    def query_subsets(self, V) -> np.ndarray:
        """``q`` OR queries at once; ``V`` is ``|S| x q`` over the columns of ``S``.

        Returns the ``|R| x q`` answers and charges ``q`` master queries.
        """
        V = np.asarray(V, dtype=bool)
        q = V.shape[1]
        X = np.zeros((self.oracle.n, q), dtype=bool)
        X[self.cols - 1] = V
        return self.oracle.master_batch(X)[self.rows - 1]


@dataclass
class CountEstimate:
    rows: np.ndarray
    estimates: np.ndarray
    queries: int = 0

    def is_good(self, counts) -> np.ndarray:
        """Per row: ``b <= c <= 2 b``."""
        c = np.asarray(counts, dtype=float)
        b = self.estimates
        return (b <= c) & (c <= 2 * b)


def estimate_row_counts(b: BatchedOrOracle, delta: float, seed=None, c_est: float = 24) -> CountEstimate:
    """Estimate the number of ones in every row of ``A(R, S)``.

    Geometric subsampling: at level ``t`` each column is kept with probability
    ``2^-t`` and ``r = ceil(c_est ln(1/delta))`` independent OR queries are made.
    Level 0 keeps every column, so one query there decides the zero rows
    exactly.  For the other rows the count ``c_hat`` in ``1..|S|`` maximising
    the likelihood of the positive counts seen at all levels (a row with
    ``c`` ones answers 1 at level ``t`` with probability ``1 - (1 - 2^-t)^c``)
    is found, and ``c_hat / sqrt(2)`` is returned; that estimate is good
    whenever ``c_hat`` is within a factor ``sqrt(2)`` of the true count.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    ell = len(b.cols)
    k = len(b.rows)
    if ell == 0 or k == 0:
        return CountEstimate(b.rows, np.zeros(k))
    r = math.ceil(c_est * math.log(1 / delta))
    top = math.ceil(math.log2(ell)) if ell > 1 else 0
    levels = list(range(1, top + 1))

    blocks = [np.ones((ell, 1), dtype=bool)]
    for t in levels:
        blocks.append(_keep_mask(rng, (ell, r), t))
    answers = b.query_subsets(np.concatenate(blocks, axis=1))
    queries = answers.shape[1]

    nonzero = answers[:, 0]
    est = np.zeros(k)
    if levels and nonzero.any():
        hits = answers[nonzero, 1:].reshape(-1, len(levels), r).sum(axis=2).astype(float)
        counts = np.arange(1, ell + 1, dtype=float)
        # log P(row answers 0 at level t) = c ln(1 - 2^-t)
        log_miss = np.log1p(-(2.0 ** -np.array(levels, dtype=float)))[:, None] * counts
        log_hit = np.log(-np.expm1(log_miss))
        loglik = hits @ log_hit + (r - hits) @ log_miss
        c_hat = counts[np.argmax(loglik, axis=1)]
    else:
        c_hat = np.ones(int(nonzero.sum()))
    est[nonzero] = c_hat / SQRT2
    return CountEstimate(b.rows, est, queries)


def _keep_mask(rng: np.random.Generator, shape, t: int) -> np.ndarray:
    """Independent Bernoulli(2^-t) entries."""
    if t <= 16:
        return rng.integers(0, 1 << 16, size=shape, dtype=np.uint16) < (1 << (16 - t))
    return rng.random(shape) < 2.0**-t


@dataclass
class RecoveryDesign:
    """Test-membership matrix ``D`` (``ell x k``) for recovering ``d``-sparse rows."""

    matrix: np.ndarray
    d: int
    delta: float
    individual: bool = False
    seed: object = field(default=None, repr=False)

    @property
    def ell(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]


def design_size(ell: int, d: int, delta: float, c_design: float = 3) -> int:
    return max(1, math.ceil(c_design * d * (math.log(ell) + math.log(1 / delta))))


def build_design(ell: int, d: int, delta: float, seed=None, c_design: float = 3,
                 allow_individual: bool = False) -> RecoveryDesign:
    """Bernoulli design with density ``1/(d+1)`` and
    ``k = ceil(c_design * d * (ln ell + ln(1/delta)))`` tests.

    With ``allow_individual`` the identity design (one test per item) is used
    whenever it needs no more tests than the random one.
    """
    if not 1 <= d <= ell:
        raise ValueError(f"need 1 <= d <= ell, got d={d}, ell={ell}")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    k = design_size(ell, d, delta, c_design)
    if allow_individual and k >= ell:
        return RecoveryDesign(np.eye(ell, dtype=bool), d, delta, True, seed)
    rng = np.random.default_rng(seed)
    D = rng.random((ell, k)) < 1.0 / (d + 1)
    return RecoveryDesign(D, d, delta, False, seed)


@dataclass
class RowRecovery:
    rows: np.ndarray
    supports: list  # frozenset of column labels, or None when the row FAILED
    confirmed: list  # DD-confirmed columns, reported even for FAILED rows
    queries: int = 0

    @property
    def failed(self) -> np.ndarray:
        return np.array([s is None for s in self.supports], dtype=bool)


def decode_comp_dd(D: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """COMP elimination followed by DD confirmation.

    ``D`` is the ``ell x k`` design, ``Y`` the ``rows x k`` test outcomes.
    Returns ``(confirmed, failed)``: a ``rows x ell`` Boolean matrix of items
    confirmed positive and a per-row flag set when some non-eliminated item
    stays unconfirmed or a positive test has no candidate left.
    """
    Df = D.astype(np.float32)
    Yb = Y.astype(bool)
    eliminated = ((~Yb).astype(np.float32) @ Df.T) > 0
    candidate = ~eliminated
    per_test = candidate.astype(np.float32) @ Df
    inconsistent = np.any(Yb & (per_test == 0), axis=1)
    lone = (Yb & (per_test == 1)).astype(np.float32)
    confirmed = ((lone @ Df.T) > 0) & candidate
    failed = np.any(candidate & ~confirmed, axis=1) | inconsistent
    return confirmed, failed


def recover_rows(b: BatchedOrOracle, design: RecoveryDesign) -> RowRecovery:
    """Learn the support of every row of ``A(R, S)`` with ``design.k`` OR queries."""
    if design.ell != len(b.cols):
        raise ValueError(f"design has {design.ell} items but S has {len(b.cols)} columns")
    if len(b.rows) == 0:
        return RowRecovery(b.rows, [], [], 0)
    Y = b.query_subsets(design.matrix)
    confirmed, failed = decode_comp_dd(design.matrix, Y)
    conf_sets = [frozenset(b.cols[np.flatnonzero(row)].tolist()) for row in confirmed]
    supports = [None if f else s for s, f in zip(conf_sets, failed)]
    return RowRecovery(b.rows, supports, conf_sets, design.k)


def sample_with_replacement(S, count: int, seed=None) -> np.ndarray:
    """Distinct values among ``count`` uniform draws from ``S``, sorted."""
    S = np.asarray(S)
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return S[:0]
    if len(S) == 0:
        raise ValueError("cannot sample from an empty set")
    rng = np.random.default_rng(seed)
    return np.unique(S[rng.integers(0, len(S), size=count)])
