"""Numba-compiled dense two-phase simplex, the hot kernel of the float
oracle path.  Mirrors _lp_numpy exactly; keep the two in sync."""

import numpy as np
from numba import njit

RC_EPS = 1e-10    # reduced-cost threshold for entering columns
PIV_EPS = 1e-11   # minimum usable pivot element
FEAS_EPS = 1e-10  # phase-1 residual below this counts as feasible


@njit(cache=True, nogil=True)
def _pivot_loop(T, basis, z, allowed_cols, max_iter):
    m = T.shape[0]
    ncols = T.shape[1] - 1
    it = 0
    while True:
        it += 1
        if it > max_iter:
            return 3
        enter = -1
        for j in range(allowed_cols):
            if z[j] < -RC_EPS:
                enter = j
                break
        if enter < 0:
            return 0
        leave = -1
        best = 0.0
        for i in range(m):
            a = T[i, enter]
            if a > PIV_EPS:
                ratio = T[i, ncols] / a
                if leave < 0 or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return 2
        piv = T[leave, enter]
        for j in range(ncols + 1):
            T[leave, j] /= piv
        for i in range(m):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for j in range(ncols + 1):
                        T[i, j] -= f * T[leave, j]
        f = z[enter]
        if f != 0.0:
            for j in range(ncols + 1):
                z[j] -= f * T[leave, j]
        basis[leave] = enter


@njit(cache=True, nogil=True)
def simplex_standard(A, b, c):
    """max c.x s.t. A x = b, x >= 0 (float64, Bland's rule).

    Returns (status, objective, x, phase1_residual) with status
    0=optimal, 1=infeasible, 2=unbounded, 3=iteration limit.
    """
    m, nv = A.shape
    ncols = nv + m
    T = np.zeros((m, ncols + 1))
    basis = np.empty(m, dtype=np.int64)
    for i in range(m):
        sgn = 1.0 if b[i] >= 0.0 else -1.0
        for j in range(nv):
            T[i, j] = sgn * A[i, j]
        T[i, nv + i] = 1.0
        T[i, ncols] = sgn * b[i]
        basis[i] = nv + i

    max_iter = 200 * (m + ncols)
    x = np.zeros(nv)

    # phase 1: maximize -(sum of artificials); start objective is -sum(|b|)
    z = np.zeros(ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            z[j] -= T[i, j]
    for i in range(m):
        z[nv + i] += 1.0
    st = _pivot_loop(T, basis, z, ncols, max_iter)
    if st == 3:
        return 3, 0.0, x, 0.0
    resid = -z[ncols]
    if resid > FEAS_EPS:
        return 1, 0.0, x, resid

    # pivot zero-valued artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nv:
            enter = -1
            for j in range(nv):
                if abs(T[i, j]) > PIV_EPS:
                    enter = j
                    break
            if enter >= 0:
                piv = T[i, enter]
                for j in range(ncols + 1):
                    T[i, j] /= piv
                for r in range(m):
                    if r != i:
                        f = T[r, enter]
                        if f != 0.0:
                            for j in range(ncols + 1):
                                T[r, j] -= f * T[i, j]
                basis[i] = enter

    # phase 2 objective row for the real costs
    z = np.zeros(ncols + 1)
    for i in range(m):
        bi = basis[i]
        cb = c[bi] if bi < nv else 0.0
        if cb != 0.0:
            for j in range(ncols + 1):
                z[j] += cb * T[i, j]
    for j in range(nv):
        z[j] -= c[j]
    st = _pivot_loop(T, basis, z, nv, max_iter)
    if st == 3:
        return 3, 0.0, x, 0.0
    if st == 2:
        return 2, 0.0, x, 0.0
    for i in range(m):
        if basis[i] < nv:
            x[basis[i]] = T[i, ncols]
    return 0, z[ncols], x, 0.0
