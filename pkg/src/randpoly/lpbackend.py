"""Backend selection for the hot float-LP kernel.

The float simplex exists twice: a numba @njit kernel (_lp_numba) and a
vectorized pure-numpy fallback (_lp_numpy).  Selection order:

* RANDPOLY_BACKEND=numpy  -> always the numpy fallback
* RANDPOLY_BACKEND=numba  -> the jit kernel, ImportError if numba is missing
* unset or "auto"         -> numba when importable, else numpy

benchmarks/bench_lp_backends.py compares the two on oracle workloads.
"""

import os

_REQUESTED = os.environ.get("RANDPOLY_BACKEND", "auto").strip().lower() or "auto"


def _load():
    if _REQUESTED not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"RANDPOLY_BACKEND must be 'numba' or 'numpy', got {_REQUESTED!r}")
    if _REQUESTED == "numpy":
        from ._lp_numpy import simplex_standard
        return "numpy", simplex_standard
    try:
        from ._lp_numba import simplex_standard
        return "numba", simplex_standard
    except ImportError:
        if _REQUESTED == "numba":
            raise
        from ._lp_numpy import simplex_standard
        return "numpy", simplex_standard


BACKEND, simplex_standard = _load()
