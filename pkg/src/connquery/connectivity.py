"""Spanning forests from master queries.

``recover_one_from_all`` finds, for every row of ``A(R, S)`` that has a
positive entry, one such entry.  ``find_spanning_forest`` runs randomized
Boruvka rounds on top of it: every current component is coloured red or blue
by a fair coin, one red-to-blue edge is recovered per red vertex, and at most
one of them is kept per red component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import DisjointSets, Forest, WeightedGraph
from .grouptesting import (BatchedOrOracle, build_design, estimate_row_counts,
                           recover_rows, sample_with_replacement)
from .seeding import derive_rng


def clog2(n: int) -> int:
    return math.ceil(math.log2(n)) if n > 1 else 0


@dataclass(frozen=True)
class SpanningForestConfig:
    """Round count, per-round error budget and group-testing constants for ``n`` vertices."""

    n: int
    c_est: float = 24
    c_design: float = 3
    d_cap: int | None = None

    @property
    def rounds(self) -> int:
        return 3 * (clog2(self.n) + 10)

    T = rounds

    @property
    def delta(self) -> float:
        return 1.0 / (300 * (clog2(self.n) + 10))


C_ROFA = 16


def recover_budget(n: int) -> int:
    """Master queries allowed for one ``recover_one_from_all`` call on ``n`` vertices."""
    return C_ROFA * (clog2(n) + 1) ** 3


def master_query_budget(n: int) -> int:
    """Master queries allowed for a whole ``find_spanning_forest`` run."""
    return SpanningForestConfig(n).rounds * recover_budget(n)


def default_d_cap(n: int, delta: float) -> int:
    return math.ceil(64 * math.log(n * 3 / delta))


@dataclass
class RecoverResult:
    pairs: set = field(default_factory=set)
    failed_rows: set = field(default_factory=set)
    queries: int = 0


def bucket_index(estimate: float) -> int:
    """``i`` with ``estimate`` in ``(2^(i-1), 2^i]``; estimates at most 1 go to bucket 0."""
    return max(0, math.ceil(math.log2(estimate)))


def recover_one_from_all(oracle, R, S, delta: float, seed=None, *, c_est: float = 24,
                         c_design: float = 3, d_cap: int | None = None) -> RecoverResult:
    """For every ``i`` in ``R`` with a positive ``A(i, j)``, ``j`` in ``S``, report one such pair.

    The budget ``delta`` is split evenly between counting, sampling and
    recovery; the counting and recovery thirds are further divided by ``|R|``
    (a union bound over rows).  Rows are bucketed by estimated count, each
    bucket learns its submatrix on a random column sample, and the smallest
    confirmed column of every row is reported.  Rows whose decoding fails
    contribute no pair.
    """
    n = oracle.n
    R = np.unique(np.asarray(R, dtype=np.int64))
    S = np.unique(np.asarray(S, dtype=np.int64))
    if np.intersect1d(R, S).size:
        raise ValueError("R and S must be disjoint")
    result = RecoverResult()
    if len(R) == 0 or len(S) == 0:
        return result
    rng = np.random.default_rng(seed)
    row_delta = delta / (3 * len(R))
    if d_cap is None:
        d_cap = default_d_cap(n, delta)

    est = estimate_row_counts(BatchedOrOracle(oracle, R, S), row_delta, rng, c_est)
    result.queries += est.queries

    buckets: dict[int, list[int]] = {}
    for row, b in zip(est.rows.tolist(), est.estimates.tolist()):
        if b > 0:
            buckets.setdefault(bucket_index(b), []).append(row)

    ln_n = math.log(n)
    for i in sorted(buckets):
        rows = buckets[i]
        draws = math.ceil(32 * len(S) * ln_n / 2**i)
        # once n draws are called for, the capped sample is all of S
        H = S if draws >= n else sample_with_replacement(S, draws, rng)
        d = max(1, min(d_cap, 2 ** (i + 1), len(H)))
        design = build_design(len(H), d, row_delta, rng, c_design, allow_individual=True)
        rec = recover_rows(BatchedOrOracle(oracle, rows, H), design)
        result.queries += rec.queries
        for row, sup in zip(rec.rows.tolist(), rec.supports):
            if sup is None:
                result.failed_rows.add(row)
            elif sup:
                result.pairs.add((row, min(sup)))
    return result


def _run(oracle, n: int, seed: int, config: SpanningForestConfig,
         observer: Callable[[int, DisjointSets], None] | None = None) -> Forest:
    ds = DisjointSets(n)
    edges: list[tuple[int, int]] = []
    for rnd in range(config.rounds):
        if observer is not None:
            observer(rnd, ds)
        rng = derive_rng(seed, rnd)
        roots = ds.roots()
        red_root = dict(zip(roots, (rng.random(len(roots)) < 0.5).tolist()))
        labels = ds.labels()
        is_red = np.array([False] + [red_root[r] for r in labels[1:].tolist()])
        R = np.flatnonzero(is_red)
        S = np.flatnonzero(~is_red[1:]) + 1
        if len(R) == 0 or len(S) == 0:
            continue
        assert not np.intersect1d(R, S).size
        found = recover_one_from_all(oracle, R, S, config.delta, rng, c_est=config.c_est,
                                     c_design=config.c_design, d_cap=config.d_cap)
        chosen: dict[int, tuple[int, int]] = {}
        for i, j in sorted(found.pairs):
            chosen.setdefault(int(labels[i]), (i, j))
        for i, j in chosen.values():
            if ds.union(i, j):
                edges.append((min(i, j), max(i, j)))
    return Forest(tuple(edges))


def find_spanning_forest(oracle, n: int | None = None, seed: int = 0,
                         config: SpanningForestConfig | None = None) -> Forest:
    """Randomized Boruvka over any master-capable oracle.

    Runs ``3 (ceil(log2 n) + 10)`` rounds with per-round error budget
    ``1 / (300 (ceil(log2 n) + 10))``.  The result is always acyclic; if an
    inner recovery failed it may not span, which ``is_spanning_forest`` detects.
    """
    n = oracle.n if n is None else n
    if n != oracle.n:
        raise ValueError(f"oracle has {oracle.n} vertices, not {n}")
    config = config or SpanningForestConfig(n)
    return _run(oracle, n, seed, config)


def count_active_sets(graph: WeightedGraph, ds: DisjointSets) -> int:
    """Number of partition sets with at least one edge leaving them."""
    iu, iv = graph.edge_arrays()
    if len(iu) == 0:
        return 0
    lab = ds.labels()[1:]
    lu, lv = lab[iu], lab[iv]
    out = lu != lv
    return len(np.unique(np.concatenate([lu[out], lv[out]])))


def rounds_progress_trace(oracle, n: int | None = None, seed: int = 0,
                          config: SpanningForestConfig | None = None) -> tuple[Forest, list[int]]:
    """Run ``find_spanning_forest`` and record, at the start of every round,
    how many partition sets still have an outgoing edge.

    The counts come from the hidden graph (instrumentation, not queries).
    """
    n = oracle.n if n is None else n
    config = config or SpanningForestConfig(n)
    graph = oracle.reveal()
    trace: list[int] = []
    forest = _run(oracle, n, seed, config, lambda _, ds: trace.append(count_active_sets(graph, ds)))
    return forest, trace
