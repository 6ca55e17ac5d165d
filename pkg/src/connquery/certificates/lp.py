"""Dense two-phase simplex in exact rational arithmetic.

Problems are stated as::

    minimize / maximize   c . x + offset
    subject to            A_eq x  = b_eq
                          A_ub x <= b_ub
                          lo_j <= x_j <= hi_j      (None = unbounded)

and reduced internally to ``min c'.y, A y = b, y >= 0, b >= 0``.  Pivoting
follows Bland's rule, so the method terminates on degenerate problems.  At an
optimum the solver returns a dual certificate and checks, exactly, primal
feasibility, dual feasibility, equal objective values and complementary
slackness before handing the result back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass
class LPProblem:
    c: Sequence
    A_eq: Sequence[Sequence] = ()
    b_eq: Sequence = ()
    A_ub: Sequence[Sequence] = ()
    b_ub: Sequence = ()
    bounds: Sequence | None = None  # per variable (lo, hi); default (0, None)
    maximize: bool = False
    offset: object = 0


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: list[Fraction] | None = None
    dual_eq: list[Fraction] = field(default_factory=list)
    dual_ub: list[Fraction] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Tableau:
    """Fraction-free tableau ``[a_1 .. a_N | b]`` over the integers.

    Every stored entry is ``D`` times its true value, where ``D`` is the
    determinant of the current basis (the initial basis is an identity, so
    ``D`` starts at 1).  A pivot on entry ``P`` replaces each other row by
    ``(P row - row[c] prow) / D``, an exact division, and sets ``D = P``.
    The objective row is carried along under the same scaling.
    """

    def __init__(self, A: list[list[int]], b: list[int], basis: list[int]):
        self.rows = [row + [rhs] for row, rhs in zip(A, b)]
        self.basis = basis
        self.D = 1

    def pivot(self, r: int, col: int, objective: list[int] | None = None) -> None:
        prow = self.rows[r]
        P, D = prow[col], self.D
        others = [row for i, row in enumerate(self.rows) if i != r]
        if objective is not None:
            others.append(objective)
        for row in others:
            f = row[col]
            if f:
                for j in range(len(row)):
                    row[j] = (row[j] * P - f * prow[j]) // D
            elif P != D:
                for j in range(len(row)):
                    if row[j]:
                        row[j] = row[j] * P // D
        self.basis[r] = col
        self.D = P
        if P < 0:
            # keep D positive so stored signs are true signs
            for row in others + [prow]:
                for j in range(len(row)):
                    row[j] = -row[j]
            self.D = -P

    def objective_row(self, cost: list[int]) -> list[int]:
        """``D`` times ``[d_1 .. d_N | -value]`` with ``d = c - c_B B^-1 A``."""
        d = [self.D * c for c in cost] + [0]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                for j, v in enumerate(row):
                    if v:
                        d[j] -= cb * v
        return d

    def run(self, cost: list[int], allowed: int) -> tuple[str, list[int]]:
        """Bland's-rule simplex over columns ``< allowed``."""
        d = self.objective_row(cost)
        while True:
            enter = next((j for j in range(allowed) if d[j] < 0), None)
            if enter is None:
                return "optimal", d
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    key = (Fraction(row[-1], a), self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded", d
            self.pivot(best[1], enter, d)

    def value(self, stored: int) -> Fraction:
        return Fraction(stored, self.D)


def _lcm_den(values) -> int:
    return math.lcm(*(v.denominator for v in values)) if values else 1


def _frac_rows(A) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in A]


def solve_lp(p: LPProblem) -> LPResult:
    c = [Fraction(v) for v in p.c]
    nv = len(c)
    A_eq, b_eq = _frac_rows(p.A_eq), [Fraction(v) for v in p.b_eq]
    A_ub, b_ub = _frac_rows(p.A_ub), [Fraction(v) for v in p.b_ub]
    if len(A_eq) != len(b_eq) or len(A_ub) != len(b_ub):
        raise ValueError("constraint rows and right-hand sides differ in length")
    for row in A_eq + A_ub:
        if len(row) != nv:
            raise ValueError("constraint row length does not match the objective")
    bounds = list(p.bounds) if p.bounds is not None else [(0, None)] * nv
    if len(bounds) != nv:
        raise ValueError("one bound pair per variable expected")
    sign = -1 if p.maximize else 1

    # x_j = shift_j + sum_k coef * y_k over the non-negative y
    cols: list[list[tuple[int, Fraction]]] = []
    shift: list[Fraction] = []
    ny = 0
    extra_ub: list[tuple[int, Fraction]] = []  # y_k <= value
    for lo, hi in bounds:
        lo = None if lo is None else Fraction(lo)
        hi = None if hi is None else Fraction(hi)
        if lo is not None and hi is not None and hi < lo:
            return LPResult("infeasible")
        if lo is not None:
            cols.append([(ny, F1)])
            shift.append(lo)
            if hi is not None:
                extra_ub.append((ny, hi - lo))
            ny += 1
        elif hi is not None:
            cols.append([(ny, -F1)])
            shift.append(hi)
            ny += 1
        else:
            cols.append([(ny, F1), (ny + 1, -F1)])
            shift.append(F0)
            ny += 2

    def lift(row: list[Fraction], rhs: Fraction) -> tuple[list[Fraction], Fraction]:
        out = [F0] * ny
        for j, a in enumerate(row):
            if a:
                rhs -= a * shift[j]
                for k, coef in cols[j]:
                    out[k] += a * coef
        return out, rhs

    cy = [F0] * ny
    const = Fraction(p.offset)
    for j, cj in enumerate(c):
        const += cj * shift[j]
        for k, coef in cols[j]:
            cy[k] += sign * cj * coef

    n_eq, n_ub, n_bd = len(A_eq), len(A_ub), len(extra_ub)
    n_slack = n_ub + n_bd
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for row, b in zip(A_eq, b_eq):
        r, b = lift(row, b)
        rows.append(r + [F0] * n_slack)
        rhs.append(b)
    for i, (row, b) in enumerate(zip(A_ub, b_ub)):
        r, b = lift(row, b)
        s = [F0] * n_slack
        s[i] = F1
        rows.append(r + s)
        rhs.append(b)
    for i, (k, ub) in enumerate(extra_ub):
        r = [F0] * ny
        r[k] = F1
        s = [F0] * n_slack
        s[n_ub + i] = F1
        rows.append(r + s)
        rhs.append(ub)

    m = len(rows)
    N = ny + n_slack
    flips = []
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
            flips.append(True)
        else:
            flips.append(False)

    # clear denominators row by row; a slack or artificial column is rescaled
    # with its row, so it stays a unit column
    scale = [_lcm_den(r + [h]) for r, h in zip(rows, rhs)]
    irows = [[int(v * s) for v in r] for r, s in zip(rows, scale)]
    irhs = [int(h * s) for h, s in zip(rhs, scale)]
    for i in range(n_eq, m):
        irows[i][ny + i - n_eq] = -1 if flips[i] else 1

    # initial basis: slack where usable, artificial otherwise
    basis = []
    art = []
    for i in range(m):
        if i >= n_eq and not flips[i]:
            basis.append(ny + i - n_eq)
        else:
            basis.append(N + len(art))
            art.append(i)
    n_art = len(art)
    full = [row + [0] * n_art for row in irows]
    for a, i in enumerate(art):
        full[i][N + a] = 1
    init_cols = list(basis)
    tab = _Tableau(full, irhs, basis)

    if n_art:
        phase1 = [0] * N + [1] * n_art
        _, d1 = tab.run(phase1, N + n_art)
        if -d1[-1] > 0:
            return LPResult("infeasible")
        # drive remaining artificials out of the basis
        for i in range(m):
            if tab.basis[i] >= N:
                col = next((j for j in range(N) if tab.rows[i][j] != 0), None)
                if col is not None:
                    tab.pivot(i, col)

    cscale = _lcm_den(cy)
    cost = [int(v * cscale) for v in cy] + [0] * (n_slack + n_art)
    # redundant rows keep an artificial basic at level 0; it never re-enters
    status, d = tab.run(cost, N)
    if status == "unbounded":
        return LPResult("unbounded")

    y = [F0] * (N + n_art)
    for i, col in enumerate(tab.basis):
        y[col] = tab.value(tab.rows[i][-1])
    # duals of the integer rows: pi_i = c_col - d_col at each initial unit column
    pi = [cost[col] - tab.value(d[col]) for col in init_cols]

    _certify(irows, irhs, cost[:N], y[:N], pi)

    x = []
    for j in range(nv):
        x.append(shift[j] + sum((coef * y[k] for k, coef in cols[j]), F0))
    # back to the original rows and objective
    pi = [(-v if f else v) * s / cscale for v, f, s in zip(pi, flips, scale)]
    value = tab.value(-d[-1]) / cscale
    obj = sign * value + const
    return LPResult(
        "optimal",
        value=obj,
        x=x,
        dual_eq=[sign * v for v in pi[:n_eq]],
        dual_ub=[sign * v for v in pi[n_eq:n_eq + n_ub]],
    )


def _certify(A, b, c, y, pi) -> None:
    """Exact optimality check for ``min c.y, A y = b, y >= 0`` with duals ``pi``."""
    m, N = len(A), len(c)
    for i in range(m):
        lhs = sum((A[i][j] * y[j] for j in range(N) if A[i][j] and y[j]), F0)
        if lhs != b[i]:
            raise ArithmeticError("simplex returned an infeasible primal")
    if any(v < 0 for v in y):
        raise ArithmeticError("simplex returned a negative variable")
    for j in range(N):
        red = c[j] - sum((pi[i] * A[i][j] for i in range(m) if A[i][j]), F0)
        if red < 0:
            raise ArithmeticError("dual infeasible at reported optimum")
        if red and y[j]:
            raise ArithmeticError("complementary slackness violated")
    primal = sum((cj * yj for cj, yj in zip(c, y)), F0)
    dual = sum((pi_i * bi for pi_i, bi in zip(pi, b)), F0)
    if primal != dual:
        raise ArithmeticError("primal and dual objective values differ")
