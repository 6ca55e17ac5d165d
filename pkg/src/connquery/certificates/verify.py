"""Deciding whether a query matrix certifies connectivity or a cut lower bound.

Every check enumerates all shores, so ``n`` is limited by the enumeration guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..graph import WeightedGraph, connected_components
from .cuts import as_certificate, check_enum_guard, chi, cut_values, shores
from .linalg import in_row_space
from .programs import alpha_lp, iota_lp


def _min_cut(values: list[Fraction]) -> Fraction:
    return min(values)


def verify_at_least_tau(A, g: WeightedGraph, tau) -> bool:
    """True iff every graph ``w'`` with ``A w' = A w`` (``w' >= 0``) has min cut ``>= tau``.

    Decided shore by shore: ``alpha(S) <= w(Delta(S)) - tau`` for all ``S``.
    """
    check_enum_guard(g.n)
    A = as_certificate(A, g.n)
    tau = Fraction(tau)
    values = cut_values(g)
    lam = _min_cut(values)
    if tau < 0 or tau > lam:
        raise ValueError(f"tau must lie in [0, lambda(g)] = [0, {lam}], got {tau}")
    for S, cut in zip(shores(g.n), values):
        if alpha_lp(A, g, S).value > cut - tau:
            return False
    return True


@dataclass
class ConCertReport:
    """Outcome of a connectivity-certificate check.

    ``tau_star`` is the least ``iota(S)`` over the shores examined; the scan
    stops at the first shore with ``iota(S) = 0``, whose optimal ``w'`` is a
    disconnected graph ``A`` cannot distinguish from ``g``.
    """

    ok: bool
    tau_star: Fraction
    shore: frozenset[int] | None = None
    counterexample: list[Fraction] | None = None
    shores_checked: int = 0


def con_cert_report(A, g: WeightedGraph) -> ConCertReport:
    check_enum_guard(g.n)
    if len(connected_components(g)) != 1:
        raise ValueError("connectivity certificates are defined for connected graphs only")
    A = as_certificate(A, g.n)
    order = sorted(shores(g.n), key=lambda S: (len(S), sorted(S)))
    best = None
    for count, S in enumerate(order, 1):
        res = iota_lp(A, g, S)
        if best is None or res.value < best[0]:
            best = (res.value, S)
        if res.value == 0:
            return ConCertReport(False, Fraction(0), S, res.x, count)
    return ConCertReport(True, best[0], best[1], None, len(order))


def verify_con_cert(A, g: WeightedGraph) -> tuple[bool, Fraction]:
    """``(ok, tau_star)`` with ``tau_star = min_S iota(S)`` (0 when ``ok`` is false)."""
    rep = con_cert_report(A, g)
    return rep.ok, rep.tau_star


def min_cut_shores(g: WeightedGraph) -> list[frozenset[int]]:
    values = cut_values(g)
    lam = _min_cut(values)
    return [S for S, v in zip(shores(g.n), values) if v == lam]


def verify_mincut_cert(A, g: WeightedGraph) -> bool:
    """Checks the sufficient construction for a minimum-cut certificate.

    True iff ``A`` certifies a min cut of at least ``lambda(g)`` and the crossing
    vector of some minimum shore lies in the row space of ``A``.  A matrix
    failing this test may still determine the minimum cut some other way.
    """
    check_enum_guard(g.n)
    A = as_certificate(A, g.n)
    lam = _min_cut(cut_values(g))
    if not verify_at_least_tau(A, g, lam):
        return False
    return any(in_row_space(A.rows, chi(g.n, S)) for S in min_cut_shores(g))
