"""Pure-numpy fallback for the float simplex kernel.  Same algorithm and
tolerances as _lp_numba, with vectorized pivoting; keep the two in sync."""

import numpy as np

RC_EPS = 1e-10
PIV_EPS = 1e-11
FEAS_EPS = 1e-10


def _pivot_loop(T, basis, z, allowed_cols, max_iter):
    m, w = T.shape
    ncols = w - 1
    for _ in range(max_iter):
        neg = np.nonzero(z[:allowed_cols] < -RC_EPS)[0]
        if neg.size == 0:
            return 0
        enter = int(neg[0])  # Bland: lowest index
        col = T[:, enter]
        usable = col > PIV_EPS
        if not usable.any():
            return 2
        ratios = np.full(m, np.inf)
        ratios[usable] = T[usable, ncols] / col[usable]
        best = ratios.min()
        ties = np.nonzero(ratios == best)[0]
        leave = int(ties[np.argmin(basis[ties])])
        T[leave] /= T[leave, enter]
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, T[leave])
        f = z[enter]
        if f != 0.0:
            z -= f * T[leave]
        basis[leave] = enter
    return 3


def simplex_standard(A, b, c):
    """max c.x s.t. A x = b, x >= 0 (float64, Bland's rule).

    Returns (status, objective, x, phase1_residual) with status
    0=optimal, 1=infeasible, 2=unbounded, 3=iteration limit.
    """
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    m, nv = A.shape
    ncols = nv + m
    T = np.zeros((m, ncols + 1))
    sgn = np.where(b >= 0.0, 1.0, -1.0)
    T[:, :nv] = A * sgn[:, None]
    T[np.arange(m), nv + np.arange(m)] = 1.0
    T[:, ncols] = b * sgn
    basis = nv + np.arange(m, dtype=np.int64)

    max_iter = 200 * (m + ncols)
    x = np.zeros(nv)

    z = np.zeros(ncols + 1)
    z -= T.sum(axis=0)
    z[nv:ncols] += 1.0
    st = _pivot_loop(T, basis, z, ncols, max_iter)
    if st == 3:
        return 3, 0.0, x, 0.0
    resid = -z[ncols]
    if resid > FEAS_EPS:
        return 1, 0.0, x, resid

    for i in range(m):
        if basis[i] >= nv:
            nonzero = np.nonzero(np.abs(T[i, :nv]) > PIV_EPS)[0]
            if nonzero.size:
                enter = int(nonzero[0])
                T[i] /= T[i, enter]
                factors = T[:, enter].copy()
                factors[i] = 0.0
                T -= np.outer(factors, T[i])
                basis[i] = enter

    z = np.zeros(ncols + 1)
    cb = np.where(basis < nv, c[np.minimum(basis, nv - 1)], 0.0)
    z += cb @ T
    z[:nv] -= c
    st = _pivot_loop(T, basis, z, nv, max_iter)
    if st == 3:
        return 3, 0.0, x, 0.0
    if st == 2:
        return 2, 0.0, x, 0.0
    structural = basis < nv
    x[basis[structural]] = T[structural, ncols]
    return 0, z[ncols], x, 0.0
