"""The three per-shore linear programs attached to a query matrix ``A``.

With ``w`` the hidden weights and ``chi`` the crossing vector of shore ``S``:

* ``alpha(S) = max <chi, z>``  s.t. ``A z = 0``, ``z <= w``
  (how much cut weight a perturbation invisible to ``A`` can remove);
* ``beta(S)  = min <w, chi> - <A w, v>``  s.t. ``A^T v <= chi``, ``v`` free
  (the dual of ``alpha``);
* ``iota(S)  = min <chi, w'>``  s.t. ``A w' = A w``, ``w' >= 0``
  (the lightest ``S``-cut among graphs ``A`` cannot tell apart from ``w``).

Substituting ``w' = w - z`` shows ``iota(S) = w(Delta(S)) - alpha(S)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..graph import WeightedGraph
from .cuts import CutCertificate, as_certificate, chi
from .linalg import transpose_vec
from .lp import LPProblem, LPResult, solve_lp

F0 = Fraction(0)


@dataclass
class BetaResult(LPResult):
    """``beta(S)`` with its optimal ``v``, the row ``A^T v`` and the slack ``chi - A^T v``."""

    v: list[Fraction] = field(default_factory=list)
    row: list[Fraction] = field(default_factory=list)
    slack: list[Fraction] = field(default_factory=list)


def _setup(A, g: WeightedGraph, S: Iterable[int]) -> tuple[CutCertificate, list[Fraction], list[int]]:
    A = as_certificate(A, g.n)
    return A, g.weight_vector(), chi(g.n, S)


def alpha_lp(A, g: WeightedGraph, S: Iterable[int]) -> LPResult:
    A, w, c = _setup(A, g, S)
    return solve_lp(LPProblem(
        c=c,
        A_eq=A.rows,
        b_eq=[0] * A.k,
        bounds=[(None, we) for we in w],
        maximize=True,
    ))


def beta_lp(A, g: WeightedGraph, S: Iterable[int]) -> BetaResult:
    A, w, c = _setup(A, g, S)
    Aw = A.answers(w)
    cols = [list(col) for col in zip(*A.rows)] if A.k else [[] for _ in range(A.m)]
    res = solve_lp(LPProblem(
        c=[-x for x in Aw],
        A_ub=cols,
        b_ub=c,
        bounds=[(None, None)] * A.k,
        offset=sum((we for we, ce in zip(w, c) if ce), F0),
    ))
    out = BetaResult(res.status, res.value, res.x, res.dual_eq, res.dual_ub)
    if res.optimal:
        out.v = list(res.x)
        out.row = transpose_vec(A.rows, out.v, A.m)
        out.slack = [ce - r for ce, r in zip(c, out.row)]
    return out


def iota_lp(A, g: WeightedGraph, S: Iterable[int]) -> LPResult:
    A, w, c = _setup(A, g, S)
    return solve_lp(LPProblem(c=c, A_eq=A.rows, b_eq=A.answers(w)))
