"""Shores, their characteristic vectors, and query-matrix containers.

A shore is a non-empty vertex set avoiding vertex 1; its characteristic
vector marks the slots of ``K_n`` with exactly one endpoint inside it.  Shores
are enumerated in ascending bitmask order (bit ``v - 2`` marks vertex ``v``),
the same order :func:`connquery.graph.shore_masks` uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..graph import WeightedGraph, mask_to_shore, num_slots, shore_masks, slots

MAX_ENUM_N = 14


def check_enum_guard(n: int) -> None:
    if not 2 <= n <= MAX_ENUM_N:
        raise ValueError(f"shore enumeration needs 2 <= n <= {MAX_ENUM_N}, got n={n}")


def as_shore(n: int, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(int(v) for v in S)
    if not S:
        raise ValueError("a shore must be non-empty")
    if 1 in S:
        raise ValueError("a shore must not contain vertex 1")
    if min(S) < 1 or max(S) > n:
        raise ValueError(f"shore vertices must lie in 1..{n}")
    return S


@lru_cache(maxsize=None)
def shores(n: int) -> tuple[frozenset[int], ...]:
    """All shores of ``K_n`` in canonical order."""
    check_enum_guard(n)
    return tuple(mask_to_shore(int(m)) for m in shore_masks(n))


def shore_mask(S: Iterable[int]) -> int:
    return sum(1 << (v - 2) for v in S)


def chi(n: int, S: Iterable[int]) -> list[int]:
    """0/1 vector over the slots of ``K_n`` marking the pairs crossing ``S``."""
    S = as_shore(n, S)
    return [int((u in S) != (v in S)) for u, v in slots(n)]


def universal_cut_incidence(n: int) -> np.ndarray:
    """The shores-by-slots 0/1 matrix; row ``S`` is ``chi(n, S)``."""
    check_enum_guard(n)
    masks = shore_masks(n)
    inside = np.zeros((len(masks), n + 1), dtype=bool)
    for v in range(2, n + 1):
        inside[:, v] = (masks >> (v - 2)) & 1 == 1
    us, vs = (np.array(a, dtype=np.int64) for a in zip(*slots(n)))
    return (inside[:, us] != inside[:, vs]).astype(np.int8)


def cut_values(g: WeightedGraph) -> list[Fraction]:
    """``w(Delta(S))`` for every shore, in canonical order."""
    M = universal_cut_incidence(g.n)
    ws = g.weight_vector()
    den = math.lcm(*(w.denominator for w in ws)) if ws else 1
    ints = np.array([int(w * den) for w in ws], dtype=object)
    return [Fraction(int(v), den) for v in M.astype(object) @ ints]


@dataclass(frozen=True)
class CutCertificate:
    """A ``k x C(n,2)`` rational query matrix over the slots of ``K_n``."""

    n: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = num_slots(self.n)
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        for r in rows:
            if len(r) != m:
                raise ValueError(f"certificate rows need {m} entries for n={self.n}, got {len(r)}")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return num_slots(self.n)

    def answers(self, w: Sequence) -> list[Fraction]:
        """``A w``."""
        return [sum((a * Fraction(x) for a, x in zip(r, w) if a), Fraction(0)) for r in self.rows]

    def with_row(self, row: Sequence) -> "CutCertificate":
        return CutCertificate(self.n, self.rows + (tuple(row),))

    @classmethod
    def identity(cls, n: int) -> "CutCertificate":
        m = num_slots(n)
        return cls(n, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    @classmethod
    def empty(cls, n: int) -> "CutCertificate":
        return cls(n, ())

    @classmethod
    def cut_incidence(cls, n: int) -> "CutCertificate":
        return cls(n, tuple(tuple(int(x) for x in r) for r in universal_cut_incidence(n)))


def as_certificate(A, n: int | None = None) -> CutCertificate:
    if isinstance(A, CutCertificate):
        if n is not None and A.n != n:
            raise ValueError(f"certificate is for n={A.n}, graph has n={n}")
        return A
    if n is None:
        raise ValueError("n is required to interpret a raw matrix")
    return CutCertificate(n, tuple(tuple(r) for r in A))
