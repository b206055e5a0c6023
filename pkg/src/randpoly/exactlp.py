"""Exact rational linear programming by two-phase dense simplex.

Solves   max c.x  subject to  A x = b,  x >= 0   entirely over Fraction.
Bland's anti-cycling rule makes termination unconditional, and exact
arithmetic means a verdict is a verdict: no tolerances, no "almost feasible".
Problem sizes here are desk scale (tens of rows/columns), so a plain dense
tableau is the right tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LpResult:
    status: str
    objective: Fraction | None
    x: list | None  # primal solution, length = number of structural variables


def _pivot(tableau, basis, leave, enter):
    piv = tableau[leave][enter]
    inv = _ONE / piv
    tableau[leave] = [v * inv for v in tableau[leave]]
    prow = tableau[leave]
    for i in range(len(tableau)):
        if i != leave:
            f = tableau[i][enter]
            if f:
                tableau[i] = [a - f * b for a, b in zip(tableau[i], prow)]
    basis[leave] = enter


def _simplex(tableau, basis, costs, allowed):
    """Run simplex to optimality on the given tableau (maximization).

    tableau rows are [coeffs..., rhs]; costs is per-column objective;
    allowed marks columns permitted to enter the basis.  Returns the final
    objective value, or None when unbounded.  Bland's rule: entering column
    is the lowest-index one with positive reduced cost; ties in the ratio
    test break toward the lowest basis index.
    """
    m = len(tableau)
    ncols = len(costs)
    # z row: z_j - c_j for structural columns, plus current objective value.
    z = [_ZERO] * (ncols + 1)
    for i in range(m):
        cb = costs[basis[i]]
        if cb:
            row = tableau[i]
            for j in range(ncols + 1):
                if row[j]:
                    z[j] += cb * row[j]
    for j in range(ncols):
        z[j] -= costs[j]

    while True:
        enter = -1
        for j in range(ncols):
            if allowed[j] and z[j] < 0:
                enter = j
                break
        if enter < 0:
            return z[ncols]
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return None
        _pivot(tableau, basis, leave, enter)
        f = z[enter]
        if f:
            prow = tableau[leave]
            for j in range(ncols + 1):
                if prow[j]:
                    z[j] -= f * prow[j]


def solve_standard_lp(a_rows, b, c) -> LpResult:
    """Two-phase exact simplex for max c.x, A x = b, x >= 0.

    a_rows: list of rows (lists of Fraction), b: list of Fraction,
    c: list of Fraction.  Empty constraint systems are accepted.
    """
    m = len(a_rows)
    nv = len(c)
    if any(len(r) != nv for r in a_rows):
        raise ValueError("ragged constraint matrix")
    if len(b) != m:
        raise ValueError("rhs length mismatch")

    if m == 0:
        # No constraints: optimum is 0 at x=0 unless some cost is positive.
        if any(ci > 0 for ci in c):
            return LpResult(UNBOUNDED, None, None)
        return LpResult(OPTIMAL, _ZERO, [_ZERO] * nv)

    ncols = nv + m  # structural + artificial
    tableau = []
    for i in range(m):
        row = [Fraction(v) for v in a_rows[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        row.extend(_ONE if j == i else _ZERO for j in range(m))
        row.append(rhs)
        tableau.append(row)
    basis = [nv + i for i in range(m)]

    # Phase 1: drive artificials to zero.
    costs1 = [_ZERO] * nv + [Fraction(-1)] * m
    allowed = [True] * ncols
    z1 = _simplex(tableau, basis, costs1, allowed)
    if z1 is None or z1 < 0:
        # objective is -(sum of artificials); < 0 means residual remains
        return LpResult(INFEASIBLE, None, None)

    # Pivot lingering zero-valued artificials out of the basis; a row with no
    # structural entry left is redundant and can be ignored (its artificial
    # stays basic at zero and never re-enters because phase 2 bars it).
    for i in range(m):
        if basis[i] >= nv:
            enter = next((j for j in range(nv) if tableau[i][j] != 0), None)
            if enter is not None:
                _pivot(tableau, basis, i, enter)

    costs2 = [Fraction(v) for v in c] + [_ZERO] * m
    allowed = [True] * nv + [False] * m
    z2 = _simplex(tableau, basis, costs2, allowed)
    if z2 is None:
        return LpResult(UNBOUNDED, None, None)

    x = [_ZERO] * nv
    rhs_col = ncols
    for i in range(m):
        if basis[i] < nv:
            x[basis[i]] = tableau[i][rhs_col]
    return LpResult(OPTIMAL, z2, x)
