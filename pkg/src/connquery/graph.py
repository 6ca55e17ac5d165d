"""Weighted undirected graphs, generators and brute-force ground truth.

Vertices are labelled ``1..n``.  Edge slots are the 2-subsets ``{u, v}`` of
``1..n``; they are ordered lexicographically on ``(min, max)`` and that order
is shared by every module that talks about weight vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

# 2^(n-1) - 1 shores are enumerated by min_cut_brute.
MIN_CUT_GUARD = 22


def num_slots(n: int) -> int:
    return n * (n - 1) // 2


def slot_index(n: int, u: int, v: int) -> int:
    """Position of the slot ``{u, v}`` in the lexicographic slot order."""
    if u > v:
        u, v = v, u
    if not (1 <= u < v <= n):
        raise ValueError(f"invalid slot {{{u}, {v}}} for n={n}")
    return (u - 1) * (2 * n - u) // 2 + (v - u - 1)


def slots(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(1, n) for v in range(u + 1, n + 1)]


def _as_weight(w) -> Fraction:
    if isinstance(w, float) and not math.isfinite(w):
        raise ValueError(f"weight must be finite, got {w!r}")
    return Fraction(w)


@dataclass(frozen=True)
class WeightedGraph:
    """A graph ``G = (V, w)`` with non-negative exact rational weights.

    Only slots with positive weight are stored; an absent pair has weight 0.
    Use :func:`make_graph` rather than the constructor, it validates input.
    """

    n: int
    weights: Mapping[tuple[int, int], Fraction]
    _edges: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        edges = tuple(sorted((u, v, w) for (u, v), w in self.weights.items()))
        object.__setattr__(self, "weights", MappingProxyType(dict(self.weights)))
        object.__setattr__(self, "_edges", edges)

    @property
    def edges(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Positive-weight edges ``(u, v, w)`` with ``u < v``, in slot order."""
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def max_weight_bound(self) -> int:
        """Power of two ``M`` with every weight ``< M``."""
        top = max((w for _, _, w in self._edges), default=Fraction(0))
        M = 1
        while M <= top:
            M *= 2
        return M

    M = max_weight_bound

    def weight(self, u: int, v: int) -> Fraction:
        if u > v:
            u, v = v, u
        return self.weights.get((u, v), Fraction(0))

    def has_edge(self, u: int, v: int) -> bool:
        return self.weight(u, v) > 0

    def is_simple(self) -> bool:
        return all(w == 1 for _, _, w in self._edges)

    def is_integral(self) -> bool:
        return all(w.denominator == 1 for _, _, w in self._edges)

    def weight_vector(self) -> list[Fraction]:
        vec = [Fraction(0)] * num_slots(self.n)
        for u, v, w in self._edges:
            vec[slot_index(self.n, u, v)] = w
        return vec

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Zero-based endpoint arrays of the edges."""
        if not self._edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy()
        uv = np.array([(u - 1, v - 1) for u, v, _ in self._edges], dtype=np.int64)
        return uv[:, 0], uv[:, 1]

    def scaled_weights(self) -> tuple[list[int], int]:
        """Integer weights ``w * scale`` and the common ``scale``."""
        scale = math.lcm(*(w.denominator for _, _, w in self._edges)) if self._edges else 1
        return [int(w * scale) for _, _, w in self._edges], scale

    def adjacency(self) -> list[list[Fraction]]:
        A = [[Fraction(0)] * self.n for _ in range(self.n)]
        for u, v, w in self._edges:
            A[u - 1][v - 1] = w
            A[v - 1][u - 1] = w
        return A

    def cut_weight(self, shore: Iterable[int]) -> Fraction:
        """``w(Delta(S))``: total weight of edges with one endpoint in ``shore``."""
        s = set(shore)
        return sum((w for u, v, w in self._edges if (u in s) != (v in s)), Fraction(0))

    def scaled(self, factor) -> "WeightedGraph":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return WeightedGraph(self.n, {(u, v): w * factor for u, v, w in self._edges})


def make_graph(n: int, edges: Iterable[Sequence]) -> WeightedGraph:
    """Build a graph from ``(u, v, weight)`` triples (``weight`` defaults to 1).

    Weights may be ints, Fractions or ``"p/q"`` strings.  Zero-weight pairs are
    accepted but do not become edges.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    weights: dict[tuple[int, int], Fraction] = {}
    seen = set()
    for item in edges:
        if len(item) == 2:
            u, v = item
            w = 1
        else:
            u, v, w = item
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u}, {v}) out of range 1..{n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate pair {key}")
        seen.add(key)
        w = _as_weight(w)
        if w < 0:
            raise ValueError(f"negative weight {w} on {key}")
        if w > 0:
            weights[key] = w
    return WeightedGraph(n, weights)


def _cycle_edges(vertices: Sequence[int]) -> list[tuple[int, int]]:
    k = len(vertices)
    if k < 2:
        return []
    if k == 2:
        return [(vertices[0], vertices[1])]
    return [(vertices[i], vertices[(i + 1) % k]) for i in range(k)]


def generate(family: str, n: int, seed=None, *, p: float | None = None,
             parts: Sequence[int] | None = None, max_weight: int = 1) -> WeightedGraph:
    """Deterministic graph families.

    ``family`` is one of ``cycle``, ``path``, ``star``, ``complete``,
    ``edgeless``, ``erdos_renyi`` (needs ``p``; defaults to ``2 ln n / n``)
    and ``disjoint_union`` (consecutive blocks of sizes ``parts``, each block a
    cycle; defaults to two halves).  With ``max_weight > 1`` edge weights are
    drawn uniformly from ``1..max_weight`` using ``seed``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    vs = list(range(1, n + 1))
    if family == "cycle":
        pairs = _cycle_edges(vs)
    elif family == "path":
        pairs = [(i, i + 1) for i in range(1, n)]
    elif family == "star":
        pairs = [(1, v) for v in range(2, n + 1)]
    elif family == "complete":
        pairs = slots(n)
    elif family == "edgeless":
        pairs = []
    elif family in ("erdos_renyi", "er"):
        if p is None:
            p = min(1.0, 2 * math.log(n) / n) if n > 1 else 0.0
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        all_pairs = slots(n)
        keep = rng.random(len(all_pairs)) < p
        pairs = [e for e, k in zip(all_pairs, keep) if k]
    elif family == "disjoint_union":
        if parts is None:
            parts = [n // 2, n - n // 2]
        parts = [int(s) for s in parts]
        if any(s < 1 for s in parts) or sum(parts) != n:
            raise ValueError(f"parts {parts} must be positive and sum to n={n}")
        pairs = []
        start = 1
        for size in parts:
            pairs += _cycle_edges(list(range(start, start + size)))
            start += size
    else:
        raise ValueError(f"unknown graph family {family!r}")
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    if max_weight == 1:
        ws = [1] * len(pairs)
    else:
        ws = rng.integers(1, max_weight + 1, size=len(pairs)).tolist()
    return make_graph(n, [(u, v, w) for (u, v), w in zip(pairs, ws)])


class DisjointSets:
    """Union-find over ``1..n`` with union by rank, path compression and
    explicit member lists so that ``elts`` is proportional to the set size."""

    def __init__(self, n: int):
        self.n = n
        self.parent = list(range(n + 1))
        self.rank = [0] * (n + 1)
        self.members: dict[int, list[int]] = {v: [v] for v in range(1, n + 1)}

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        if self.rank[ru] == self.rank[rv]:
            self.rank[ru] += 1
        self.members[ru].extend(self.members.pop(rv))
        return True

    def elts(self, v: int) -> list[int]:
        return list(self.members[self.find(v)])

    def roots(self) -> list[int]:
        return sorted(self.members)

    def labels(self) -> np.ndarray:
        """Array ``lab`` with ``lab[v]`` the root of ``v`` (index 0 unused)."""
        lab = np.zeros(self.n + 1, dtype=np.int64)
        for root, mem in self.members.items():
            lab[mem] = root
        return lab

    def __len__(self) -> int:
        return len(self.members)

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(self.members[r]) for r in self.roots()]


@dataclass(frozen=True)
class Forest:
    edges: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.edges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.edges)


def connected_components(g: WeightedGraph) -> DisjointSets:
    ds = DisjointSets(g.n)
    for u, v, _ in g.edges:
        ds.union(u, v)
    return ds


def is_spanning_forest(g: WeightedGraph, forest: Iterable[Sequence[int]]) -> bool:
    """True iff ``forest`` is acyclic, uses only edges of ``g`` and has
    ``n - #components`` edges."""
    ds = DisjointSets(g.n)
    count = 0
    for u, v in forest:
        if not (1 <= u <= g.n and 1 <= v <= g.n) or u == v or not g.has_edge(u, v):
            return False
        if not ds.union(u, v):
            return False
        count += 1
    return count == g.n - len(connected_components(g))


def shore_masks(n: int) -> np.ndarray:
    """Canonical shore enumeration: bit ``v - 2`` of the mask marks vertex ``v``."""
    return np.arange(1, 1 << (n - 1), dtype=np.int64)


def mask_to_shore(mask: int) -> frozenset[int]:
    return frozenset(b + 2 for b in range(int(mask).bit_length()) if mask >> b & 1)


def min_cut_brute(g: WeightedGraph) -> tuple[Fraction, frozenset[int]]:
    """Minimum cut by enumerating every shore that avoids vertex 1.

    Returns the first minimising shore in canonical order.
    """
    n = g.n
    if n > MIN_CUT_GUARD:
        raise ValueError(f"min_cut_brute enumerates 2^(n-1) shores; n={n} > {MIN_CUT_GUARD}")
    if n < 2:
        raise ValueError("a cut needs at least two vertices")
    masks = shore_masks(n)
    ws, scale = g.scaled_weights()
    dtype = object if sum(ws) >= 2**62 else np.int64
    values = np.zeros(len(masks), dtype=dtype)

    def side(v):
        if v == 1:
            return np.zeros(len(masks), dtype=bool)
        return (masks >> (v - 2)) & 1 == 1

    for (u, v, _), w in zip(g.edges, ws):
        values += w * (side(u) != side(v)).astype(dtype)
    best = int(np.argmin(values))
    return Fraction(int(values[best]), scale), mask_to_shore(masks[best])
