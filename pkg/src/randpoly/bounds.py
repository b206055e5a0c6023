"""Exact evaluators for the finite-n probability bounds and face counts.

Everything combinatorial is computed over big-integer rationals and returned
as Fraction; only the entropy function and the quadrature route are floating
point.  Probability-valued results are validated against [0, 1] rather than
clamped; the union bound is the one evaluator allowed to exceed 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np


class FormulaInconsistencyError(Exception):
    """The printed counting formula produced a value that cannot be a count."""


class UnverifiedParityWarning(UserWarning):
    """Emitted when the cyclic count is evaluated on the parity branch that
    has no brute-force validation (see cyclic_face_count)."""


def binary_entropy(p: float) -> float:
    """H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0."""
    if p < 0.0 or p > 1.0:
        raise ValueError(f"entropy argument {p} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def wendel_bound(n: int, d: int) -> Fraction:
    """sum_{i=0}^{n-d-1} C(n-1, i) / 2^(n-1), the distribution-free upper
    bound on the probability that n i.i.d. points capture a fixed point in
    their convex hull.  Empty sum (n <= d) gives 0."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    top = n - d - 1
    if top < 0:
        return Fraction(0)
    total = sum(math.comb(n - 1, i) for i in range(top + 1))
    return Fraction(total, 2 ** (n - 1))


def face_nonface_bound(n: int, d: int, k: int) -> Fraction:
    """sum_{i=0}^{n-d-2} C(n-k-1, i) / 2^(n-k-1): upper bound on the
    probability that a fixed k-subset of n i.i.d. points fails to span a
    face of the hull.  Zero when n <= d+1 (every subset of a simplex is a
    face)."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if d < 1:
        raise ValueError("need d >= 1")
    top = n - d - 2
    if top < 0:
        return Fraction(0)
    total = sum(math.comb(n - k - 1, i) for i in range(top + 1))
    return Fraction(total, 2 ** (n - k - 1))


def neighborly_failure_bound(n: int, d: int, k: int) -> Fraction:
    """C(n, k) times the single-subset bound: the union bound on the
    probability that the hull is not k-neighborly.  May exceed 1; reported
    raw because it is only useful when small."""
    return math.comb(n, k) * face_nonface_bound(n, d, k)


# ---------------------------------------------------------------------------
# depth-based containment lower bound


def _check_depth_args(n: int, d: int, a) -> None:
    if d < 1 or n < d + 1:
        raise ValueError("need d >= 1 and n >= d+1")
    if a < 0 or a > Fraction(1, 2):
        raise ValueError(f"depth parameter a={a} outside [0, 1/2]")


def depth_containment_closed_form(n: int, d: int, a) -> Fraction:
    """Closed form of the depth-a containment lower bound:

        sum_{i=d+1}^{n} C(n,i) a^i (1-a)^(n-i)  +  a^n C(n-1, d).

    This is the binomial-tail form that matches exact integration of the
    defining integral (see depth_containment_rational_integral); the variant
    with a and 1-a exchanged looks plausible but fails that cross-check.
    """
    a = Fraction(a)  # floats convert exactly (binary expansion)
    _check_depth_args(n, d, a)
    one = Fraction(1)
    tail = sum(math.comb(n, i) * a ** i * (one - a) ** (n - i)
               for i in range(d + 1, n + 1))
    return tail + a ** n * math.comb(n - 1, d)


def depth_containment_closed_form_mirrored(n: int, d: int, a) -> Fraction:
    """The a <-> (1-a) mirrored variant of the closed form:

        sum_{i=0}^{n-d-1} C(n,i) a^i (1-a)^(n-i)  +  a^n C(n-1, d).

    Retained only as the negative control: it disagrees with exact
    integration of the integral form (e.g. 246/256 instead of 35/128 at
    n=4, d=1, a=1/4) and exceeds the balanced a=1/2 value, so it must not
    be used as the bound."""
    a = Fraction(a)
    _check_depth_args(n, d, a)
    one = Fraction(1)
    head = sum(math.comb(n, i) * a ** i * (one - a) ** (n - i)
               for i in range(0, n - d))
    return head + a ** n * math.comb(n - 1, d)


def depth_containment_rational_integral(n: int, d: int, a) -> Fraction:
    """Exact rational integration of the defining integral

        (d+1) C(n, d+1) * Integral_0^a (y^(n-d-1) + (1-y)^(n-d-1)) y^d dy

    by binomial expansion of (1-y)^(n-d-1); the integrand is a polynomial,
    so this is exact and serves as the source of truth."""
    a = Fraction(a)
    _check_depth_args(n, d, a)
    m = n - d - 1
    # Integral of y^(n-1) over [0, a]
    total = a ** n / n
    # Integral of (1-y)^m y^d via expansion
    for j in range(m + 1):
        term = Fraction(math.comb(m, j) * (-1) ** j, d + j + 1) * a ** (d + j + 1)
        total += term
    return (d + 1) * math.comb(n, d + 1) * total


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _gl_panel(f, lo: float, hi: float) -> float:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return half * float(np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES)))


def _adaptive_gl(f, lo: float, hi: float, rel_tol: float = 1e-13, depth: int = 0) -> float:
    whole = _gl_panel(f, lo, hi)
    mid = 0.5 * (lo + hi)
    halves = _gl_panel(f, lo, mid) + _gl_panel(f, mid, hi)
    if abs(halves - whole) <= rel_tol * max(abs(halves), 1e-300) or depth >= 30:
        return halves
    return (_adaptive_gl(f, lo, mid, rel_tol, depth + 1)
            + _adaptive_gl(f, mid, hi, rel_tol, depth + 1))


def depth_containment_quadrature(n: int, d: int, a: float) -> float:
    """Adaptive Gauss-Legendre evaluation of the defining integral, bisecting
    panels until the estimate stabilizes to 1e-13 relative."""
    _check_depth_args(n, d, Fraction(a))
    a = float(a)
    if a == 0.0:
        return 0.0
    m = n - d - 1

    def integrand(y):
        return (y ** m + (1.0 - y) ** m) * y ** d

    integral = _adaptive_gl(integrand, 0.0, a)
    return (d + 1) * math.comb(n, d + 1) * integral


def depth_containment_lower_bound(n: int, d: int, a, method: str = "closed_form"):
    """Lower bound on the probability that the hull of n i.i.d. points
    contains a point of depth >= a.  method selects the evaluation route:
    closed_form (exact Fraction), quadrature (float, >= 12 significant
    digits), or rational_integral (exact Fraction straight from the
    integral).  All routes agree; closed_form at a=1/2 collapses exactly to
    wendel_bound(n, d)."""
    if method == "closed_form":
        return depth_containment_closed_form(n, d, a)
    if method == "quadrature":
        return depth_containment_quadrature(n, d, float(a))
    if method == "rational_integral":
        return depth_containment_rational_integral(n, d, a)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# cyclic polytope counts and the limit ratio


def cyclic_delta(count: int, d: int) -> int:
    return (count - d - 1) % 2


def cyclic_face_count(count: int, n: int, d: int) -> int:
    """Number of size-(count-n) vertex subsets spanning faces of a cyclic
    polytope with `count` vertices in dimension count-d-1:

        ((count - delta*(n-1)) / n) *
            sum_j C(count-1-j, n-1) * C(n, count-2j+delta)

    with delta = (count-d-1) mod 2 and j running to floor((count-d-1)/2).
    Evaluated exactly; a non-integer or negative value raises
    FormulaInconsistencyError.  The delta=1 branch has no independent
    validation (brute-force counts disagree on small cases), so using it
    emits UnverifiedParityWarning.
    """
    if not (count > n > d >= 1):
        raise ValueError("need count > n > d >= 1")
    delta = cyclic_delta(count, d)
    if delta == 1:
        warnings.warn(
            "unverified parity: count-d-1 is odd; this branch of the face-count "
            "formula is not validated by brute force", UnverifiedParityWarning,
            stacklevel=2)
    total = 0
    jmax = (count - d - 1) // 2
    # terms with count-2j+delta outside [0, n] vanish; skip directly to the
    # contributing range so large `count` stays cheap
    jlo = max(0, -(-(count + delta - n) // 2))  # ceil((count+delta-n)/2)
    for j in range(jlo, jmax + 1):
        upper = count - 2 * j + delta
        if upper < 0:
            continue
        total += math.comb(count - 1 - j, n - 1) * math.comb(n, upper)
    value = Fraction((count - delta * (n - 1)) * total, n)
    if value.denominator != 1 or value < 0:
        raise FormulaInconsistencyError(
            f"face-count formula returned {value} for (count={count}, n={n}, d={d})")
    return int(value)


def wendel_limit_ratio(count: int, n: int, d: int) -> Fraction:
    """cyclic_face_count(count, n, d) / C(count, n), exact.  Only defined on
    the even-parity branch (count-d-1 even) that the limiting argument uses;
    odd parity is rejected."""
    if count <= n:
        raise ValueError("need count > n")
    if cyclic_delta(count, d) != 0:
        raise ValueError("parity violation: count-d-1 must be even")
    return Fraction(cyclic_face_count(count, n, d), math.comb(count, n))


# ---------------------------------------------------------------------------
# query records for the CLI batch path


@dataclass(frozen=True)
class BoundQuery:
    n: int
    d: int
    k: Optional[int] = None
    ell: Optional[int] = None
    a: Optional[Fraction] = None
    count: Optional[int] = None  # the larger sample size of the limit ratio

    def __post_init__(self):
        if self.d < 1 or self.n < 1:
            raise ValueError("need d >= 1 and n >= 1")
        if self.k is not None and not 1 <= self.k < self.n:
            raise ValueError("need 1 <= k < n")
        if self.a is not None and not 0 <= self.a <= Fraction(1, 2):
            raise ValueError("need a in [0, 1/2]")
        if self.count is not None and self.count <= self.n:
            raise ValueError("need count > n")


@dataclass(frozen=True)
class BoundValue:
    value: object  # Fraction, int or float depending on the formula
    formula_id: str
    inputs: BoundQuery
    note: str = ""


FORMULAS = ("wendel", "face", "union", "depth", "cyclic", "limit")


def evaluate_query(formula_id: str, query: BoundQuery) -> BoundValue:
    """Dispatch a named formula against a BoundQuery; used by the CLI and
    the CSV batch mode."""
    note = ""
    if formula_id == "wendel":
        value = wendel_bound(query.n, query.d)
    elif formula_id == "face":
        if query.k is None:
            raise ValueError("face bound needs k")
        value = face_nonface_bound(query.n, query.d, query.k)
    elif formula_id == "union":
        if query.k is None:
            raise ValueError("union bound needs k")
        value = neighborly_failure_bound(query.n, query.d, query.k)
    elif formula_id == "depth":
        if query.a is None:
            raise ValueError("depth bound needs a")
        value = depth_containment_closed_form(query.n, query.d, query.a)
    elif formula_id == "cyclic":
        if query.count is None:
            raise ValueError("cyclic count needs the larger sample size N")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", UnverifiedParityWarning)
            value = cyclic_face_count(query.count, query.n, query.d)
        if any(issubclass(w.category, UnverifiedParityWarning) for w in caught):
            note = "unverified parity"
    elif formula_id == "limit":
        if query.count is None:
            raise ValueError("limit ratio needs the larger sample size N")
        value = wendel_limit_ratio(query.count, query.n, query.d)
    else:
        raise ValueError(f"unknown formula {formula_id!r}; expected one of {FORMULAS}")
    return BoundValue(value=value, formula_id=formula_id, inputs=query, note=note)
