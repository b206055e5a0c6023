"""Convex-position oracles: point-in-hull, face tests, facet enumeration,
k-neighborliness, Gale transforms.

Two decision paths share one LP formulation:

* exact path  - rational simplex over Fraction; verdicts are unconditional.
* float path  - the same LP in float64 through the hot kernel selected in
  ``lpbackend`` (numba or pure numpy), classifying by a normalized margin
  against a tolerance.

The shared LP for "p inside conv(X)" maximizes t subject to
sum(lam_i x_i) = p, sum(lam_i) = 1, lam_i >= t.  Its optimum t* is positive
exactly when p admits an all-positive convex representation, i.e. p lies in
the relative interior of the hull; t* is dimension-free (weight space), so
one tolerance works at every scale.  The face test uses the analogous LP for
aff(K) meeting conv(S minus K): free affine weights on K, convex weights on
the rest bounded below by t.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import exactlp
from .exact_linalg import RationalMatrix, null_space_basis, rank, row_reduce

INSIDE = "inside"
OUTSIDE = "outside"
BOUNDARY_OR_DEGENERATE = "boundary_or_degenerate"

DEFAULT_TOL = 1e-9
DEFAULT_SUBSET_CAP = 200_000


class OracleError(Exception):
    pass


class GeneralPositionError(OracleError):
    """Raised when d+1 points lie on a common hyperplane in a context that
    requires general position; carries the offending index set."""

    def __init__(self, indices):
        self.indices = frozenset(indices)
        super().__init__(f"points {sorted(self.indices)} lie on a common hyperplane")


class SubsetBudgetError(OracleError):
    """Combinatorial budget exceeded; the caller must decide how to proceed."""


class DegenerateSampleError(OracleError):
    """Float-path verdict was within tolerance of the decision boundary."""


@dataclass(frozen=True)
class PointCloud:
    """Ordered point set in R^d, exact-rational or floating.

    Exact clouds store points as tuples of Fraction; float clouds store an
    (n, d) float64 array.  Duplicate points are legal in the exact path but
    flagged, since downstream face conventions for coincident points are
    deliberately left undefined.
    """

    dim: int
    points: tuple | np.ndarray
    exact: bool
    label: Optional[str] = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if self.n < 1:
            raise ValueError("need at least one point")
        if self.exact:
            for p in self.points:
                if len(p) != self.dim:
                    raise ValueError("point length != dim")
                if not all(isinstance(c, Fraction) for c in p):
                    raise TypeError("exact cloud requires Fraction coordinates")
        else:
            if not isinstance(self.points, np.ndarray) or self.points.ndim != 2 \
                    or self.points.shape[1] != self.dim:
                raise ValueError("float cloud requires an (n, dim) array")

    @classmethod
    def from_exact(cls, points: Iterable[Sequence], label: Optional[str] = None) -> "PointCloud":
        pts = tuple(tuple(Fraction(c) for c in p) for p in points)
        dim = len(pts[0]) if pts else 0
        return cls(dim=dim, points=pts, exact=True, label=label)

    @classmethod
    def from_floats(cls, array, label: Optional[str] = None) -> "PointCloud":
        arr = np.asarray(array, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("expected an (n, d) array")
        return cls(dim=arr.shape[1], points=arr, exact=False, label=label)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def has_duplicates(self) -> bool:
        if self.exact:
            return len(set(self.points)) < self.n
        seen = {tuple(row) for row in self.points}
        return len(seen) < self.n

    def point(self, i: int):
        return self.points[i]

    def as_float_array(self) -> np.ndarray:
        if self.exact:
            return np.array([[float(c) for c in p] for p in self.points], dtype=np.float64)
        return self.points

    def lifted_matrix(self) -> RationalMatrix:
        """n x (d+1) matrix [coordinates | 1] used by rank tests and the
        Gale transform."""
        if not self.exact:
            raise ValueError("lifted_matrix requires an exact cloud")
        rows = [list(p) + [Fraction(1)] for p in self.points]
        return RationalMatrix.from_rows(rows)


@dataclass(frozen=True)
class FaceWitness:
    """Certificate that aff(K) meets conv(S minus K): affine coefficients on
    K summing to 1, convex coefficients on the complement summing to 1, and
    the common point both combinations evaluate to."""

    affine: dict
    convex: dict
    point: tuple


@dataclass(frozen=True)
class FaceQueryResult:
    is_face: bool
    witness: Optional[FaceWitness] = None
    degenerate: bool = False
    margin: object = None  # exact: Fraction t*; float: float t* or residual


def _resolve_mode(cloud: PointCloud, mode: Optional[str]) -> str:
    if mode is None:
        return "exact" if cloud.exact else "float"
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exact" and not cloud.exact:
        raise ValueError("exact mode requires rational inputs")
    return mode


# ---------------------------------------------------------------------------
# containment


def _containment_lp_exact(points, p):
    n = len(points)
    d = len(p)
    col_sums = [sum((pt[j] for pt in points), Fraction(0)) for j in range(d)]
    rows = []
    b = []
    for j in range(d):
        rows.append([pt[j] for pt in points] + [col_sums[j], -col_sums[j]])
        b.append(Fraction(p[j]))
    rows.append([Fraction(1)] * n + [Fraction(n), Fraction(-n)])
    b.append(Fraction(1))
    c = [Fraction(0)] * n + [Fraction(1), Fraction(-1)]
    return rows, b, c


def _affinely_spans(cloud: PointCloud) -> bool:
    return rank(cloud.lifted_matrix()) == cloud.dim + 1


def contains_point(cloud: PointCloud, p, mode: Optional[str] = None,
                   tol: float = DEFAULT_TOL) -> str:
    """Classify p against conv(cloud): inside / outside / boundary_or_degenerate.

    "inside" means interior relative to R^d, which requires the cloud to
    affinely span; hulls of lower affine dimension report
    boundary_or_degenerate for points they contain.
    """
    mode = _resolve_mode(cloud, mode)
    if len(p) != cloud.dim:
        raise ValueError(f"point has length {len(p)}, cloud dimension is {cloud.dim}")

    if mode == "exact":
        pf = [Fraction(c) for c in p]
        rows, b, c = _containment_lp_exact(cloud.points, pf)
        res = exactlp.solve_standard_lp(rows, b, c)
        if res.status == exactlp.INFEASIBLE:
            return OUTSIDE  # p not even in the affine hull
        t_star = res.objective
        if t_star < 0:
            return OUTSIDE
        if t_star == 0:
            return BOUNDARY_OR_DEGENERATE
        return INSIDE if _affinely_spans(cloud) else BOUNDARY_OR_DEGENERATE

    arr = cloud.as_float_array()
    return contains_point_array(arr, np.asarray(p, dtype=np.float64), tol)


def _pow2_scale(*arrays) -> float:
    top = 1.0
    for a in arrays:
        if a.size:
            m = float(np.max(np.abs(a)))
            if m > top:
                top = m
    return float(2.0 ** math.ceil(math.log2(top))) if top > 1.0 else 1.0


def contains_point_array(points: np.ndarray, p: np.ndarray, tol: float = DEFAULT_TOL) -> str:
    """Float-path containment on a raw (n, d) array; hot path for the
    Monte Carlo harness."""
    from .lpbackend import simplex_standard

    n, d = points.shape
    scale = _pow2_scale(points, p)
    X = points / scale
    q = p / scale
    col = X.sum(axis=0)
    A = np.empty((d + 1, n + 2), dtype=np.float64)
    A[:d, :n] = X.T
    A[:d, n] = col
    A[:d, n + 1] = -col
    A[d, :n] = 1.0
    A[d, n] = n
    A[d, n + 1] = -n
    b = np.empty(d + 1)
    b[:d] = q
    b[d] = 1.0
    c = np.zeros(n + 2)
    c[n] = 1.0
    c[n + 1] = -1.0
    status, obj, x, resid = simplex_standard(A, b, c)
    if status == 1:  # infeasible beyond kernel tolerance
        return OUTSIDE if resid > tol else BOUNDARY_OR_DEGENERATE
    t_star = obj
    if t_star >= tol:
        lifted = np.hstack([X, np.ones((n, 1))])
        if np.linalg.matrix_rank(lifted, tol=1e-8) == d + 1:
            return INSIDE
        return BOUNDARY_OR_DEGENERATE
    if t_star <= -tol:
        return OUTSIDE
    return BOUNDARY_OR_DEGENERATE


# ---------------------------------------------------------------------------
# face test (LP path)


def _face_lp_exact(points, k_idx, rest_idx):
    d = len(points[0])
    k = len(k_idx)
    r = len(rest_idx)
    rest_sums = [sum((points[j][coord] for j in rest_idx), Fraction(0)) for coord in range(d)]
    rows = []
    b = []
    for coord in range(d):
        row = []
        for i in k_idx:
            row.append(points[i][coord])   # alpha+
        for i in k_idx:
            row.append(-points[i][coord])  # alpha-
        for j in rest_idx:
            row.append(-points[j][coord])  # s_j
        row.append(-rest_sums[coord])      # t+
        row.append(rest_sums[coord])       # t-
        rows.append(row)
        b.append(Fraction(0))
    rows.append([Fraction(1)] * k + [Fraction(-1)] * k + [Fraction(0)] * r
                + [Fraction(0), Fraction(0)])
    b.append(Fraction(1))
    rows.append([Fraction(0)] * (2 * k) + [Fraction(1)] * r
                + [Fraction(r), Fraction(-r)])
    b.append(Fraction(1))
    c = [Fraction(0)] * (2 * k + r) + [Fraction(1), Fraction(-1)]
    return rows, b, c


def is_face(cloud: PointCloud, subset, mode: Optional[str] = None,
            tol: float = DEFAULT_TOL) -> FaceQueryResult:
    """Decide whether the subset's points span a face of the hull, via
    aff(K) intersect conv(S minus K) == empty.  The full set is a face by
    convention.  When the exact path answers "not a face" the result carries
    an exactly verifiable witness of the intersection.
    """
    mode = _resolve_mode(cloud, mode)
    k_idx = sorted(set(subset))
    if not k_idx:
        raise ValueError("empty subset rejected")
    if k_idx[0] < 0 or k_idx[-1] >= cloud.n:
        raise ValueError("subset indices out of range")
    if len(k_idx) == cloud.n:
        return FaceQueryResult(is_face=True)
    rest_idx = [j for j in range(cloud.n) if j not in set(k_idx)]

    if mode == "exact":
        rows, b, c = _face_lp_exact(cloud.points, k_idx, rest_idx)
        res = exactlp.solve_standard_lp(rows, b, c)
        if res.status == exactlp.INFEASIBLE:
            # the two affine hulls never meet
            return FaceQueryResult(is_face=True, margin=None)
        t_star = res.objective
        if t_star < 0:
            return FaceQueryResult(is_face=True, margin=t_star)
        k = len(k_idx)
        r = len(rest_idx)
        x = res.x
        affine = {idx: x[i] - x[k + i] for i, idx in enumerate(k_idx)}
        convex = {idx: t_star + x[2 * k + j] for j, idx in enumerate(rest_idx)}
        d = cloud.dim
        point = tuple(sum((affine[i] * cloud.points[i][coord] for i in k_idx), Fraction(0))
                      for coord in range(d))
        witness = FaceWitness(affine=affine, convex=convex, point=point)
        return FaceQueryResult(is_face=False, witness=witness, margin=t_star)

    arr = cloud.as_float_array()
    verdict, margin = face_margin_array(arr, k_idx, tol)
    if verdict == "degenerate":
        return FaceQueryResult(is_face=False, degenerate=True, margin=margin)
    return FaceQueryResult(is_face=(verdict == "face"), margin=margin)


def face_margin_array(points: np.ndarray, k_idx, tol: float = DEFAULT_TOL):
    """Float-path face verdict on a raw array.

    Returns ("face" | "not_face" | "degenerate", margin).  Margin is the
    optimal t of the face LP (weight space), or the infeasibility residual
    when the affine hulls do not meet.
    """
    from .lpbackend import simplex_standard

    n, d = points.shape
    k_idx = list(k_idx)
    rest_idx = [j for j in range(n) if j not in set(k_idx)]
    k = len(k_idx)
    r = len(rest_idx)
    scale = _pow2_scale(points)
    X = points / scale
    XK = X[k_idx]
    XR = X[rest_idx]
    rest_sum = XR.sum(axis=0)

    nv = 2 * k + r + 2
    A = np.zeros((d + 2, nv), dtype=np.float64)
    A[:d, :k] = XK.T
    A[:d, k:2 * k] = -XK.T
    A[:d, 2 * k:2 * k + r] = -XR.T
    A[:d, nv - 2] = -rest_sum
    A[:d, nv - 1] = rest_sum
    A[d, :k] = 1.0
    A[d, k:2 * k] = -1.0
    A[d + 1, 2 * k:2 * k + r] = 1.0
    A[d + 1, nv - 2] = r
    A[d + 1, nv - 1] = -r
    b = np.zeros(d + 2)
    b[d] = 1.0
    b[d + 1] = 1.0
    c = np.zeros(nv)
    c[nv - 2] = 1.0
    c[nv - 1] = -1.0
    status, obj, x, resid = simplex_standard(A, b, c)
    if status == 1:
        if resid > tol:
            return "face", resid
        return "degenerate", resid
    if obj >= tol:
        return "not_face", obj
    if obj <= -tol:
        return "face", obj
    return "degenerate", obj


# ---------------------------------------------------------------------------
# brute-force oracles (independent of the LP path)


def _det(rows) -> Fraction:
    """Exact determinant by fraction Gaussian elimination, destructive on a copy."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / inv
                m[i] = [a - f * bb for a, bb in zip(m[i], m[col])]
    return det


def _orientation(points, subset, y_index) -> int:
    """Sign of the oriented volume of (subset points, y): which side of
    the subset's hyperplane the point y lies on."""
    base = points[subset[0]]
    rows = [[points[i][j] - base[j] for j in range(len(base))] for i in subset[1:]]
    y = points[y_index]
    rows.append([y[j] - base[j] for j in range(len(base))])
    d = _det(rows)
    return (d > 0) - (d < 0)


def facets_bruteforce(cloud: PointCloud) -> set:
    """All facets of conv(cloud) as d-element index frozensets, by the exact
    sign test: a d-subset spans a facet iff every remaining point lies
    strictly on one side of its hyperplane.

    Requires an exact cloud in general position with n >= d+1; a vanishing
    orientation determinant is reported as the offending (d+1)-subset.
    """
    if not cloud.exact:
        raise ValueError("facets_bruteforce requires an exact cloud")
    d = cloud.dim
    n = cloud.n
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n < d + 1:
        raise ValueError("need at least d+1 points")
    facets = set()
    for subset in itertools.combinations(range(n), d):
        side = 0
        is_facet = True
        for y in range(n):
            if y in subset:
                continue
            s = _orientation(cloud.points, subset, y)
            if s == 0:
                raise GeneralPositionError(set(subset) | {y})
            if side == 0:
                side = s
            elif s != side:
                is_facet = False
                # keep scanning to surface general-position violations
        if is_facet:
            facets.add(frozenset(subset))
    return facets


def hull_vertices(cloud: PointCloud, facets: Optional[set] = None) -> frozenset:
    if facets is None:
        facets = facets_bruteforce(cloud)
    verts = set()
    for f in facets:
        verts |= f
    return frozenset(verts)


def is_face_bruteforce(cloud: PointCloud, subset, facets: Optional[set] = None) -> bool:
    """Independent face oracle: for a simplicial hull with all points in
    general position, a proper subset spans a face iff it is contained in a
    facet.  Points interior to the hull are not vertices, so any subset
    containing one is a non-face.
    """
    k = frozenset(subset)
    if not k:
        raise ValueError("empty subset rejected")
    if not k < set(range(cloud.n)):
        raise ValueError("subset must be a proper subset of the point indices")
    if facets is None:
        facets = facets_bruteforce(cloud)
    verts = hull_vertices(cloud, facets)
    if not k <= verts:
        return False
    return any(k <= f for f in facets)


# ---------------------------------------------------------------------------
# neighborliness


def subset_count_upto(n: int, k: int) -> int:
    return sum(math.comb(n, j) for j in range(1, k + 1))


def is_k_neighborly(cloud: PointCloud, k: int, subset_cap: int = DEFAULT_SUBSET_CAP,
                    mode: Optional[str] = None, tol: float = DEFAULT_TOL,
                    strategy: str = "vertices_then_k") -> bool:
    """True iff every subset of at most k points spans a face of the hull.

    Default strategy checks the n singletons first (all points hull
    vertices) and then only the size-k subsets: when every point is a vertex
    and the hull is simplicial, faces of faces are faces, so k-subsets being
    faces settles every smaller size.  strategy="all_sizes" sweeps every
    subset of size <= k instead.  The float path raises
    DegenerateSampleError when a subset verdict sits within tolerance of the
    boundary, so callers can discard and redraw the sample.
    """
    mode = _resolve_mode(cloud, mode)
    n = cloud.n
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if subset_count_upto(n, k) > subset_cap:
        raise SubsetBudgetError(
            f"{subset_count_upto(n, k)} subsets of size <= {k} exceed the cap {subset_cap}")
    if strategy not in ("vertices_then_k", "all_sizes"):
        raise ValueError(f"unknown strategy {strategy!r}")

    def check(idx_subset) -> bool:
        res = is_face(cloud, idx_subset, mode=mode, tol=tol)
        if res.degenerate:
            raise DegenerateSampleError(f"face margin below tol for subset {idx_subset}")
        return res.is_face

    if strategy == "all_sizes":
        sizes = range(1, k + 1)
    else:
        for i in range(n):
            if not check((i,)):
                return False
        if k == 1:
            return True
        sizes = (k,)
    for size in sizes:
        for subset in itertools.combinations(range(n), size):
            if not check(subset):
                return False
    return True


# ---------------------------------------------------------------------------
# Gale transform and moment curve


def gale_transform(cloud: PointCloud) -> PointCloud:
    """Dual configuration of N points in R^(N-d-1): rows of a kernel basis of
    the transposed lifted matrix.  The dual vectors always sum to the origin
    because the all-ones row lies in the lifted row space.
    """
    if not cloud.exact:
        raise ValueError("gale_transform requires an exact cloud")
    lifted_t = cloud.lifted_matrix().transpose()  # (d+1) x N
    reduced, rk, _ = row_reduce(lifted_t)
    if rk != cloud.dim + 1:
        raise ValueError(
            f"points do not affinely span R^{cloud.dim} (lifted rank {rk} < {cloud.dim + 1})")
    basis = null_space_basis(lifted_t)  # N x (N-d-1)
    dual_dim = basis.cols
    duals = [tuple(basis.row(i)) for i in range(basis.rows)]
    return PointCloud(dim=dual_dim, points=tuple(duals), exact=True,
                      label=(f"gale({cloud.label})" if cloud.label else None))


def moment_curve_cloud(count: int, dim: int, parameters) -> PointCloud:
    """Exact points (t, t^2, ..., t^dim) on the moment curve; strictly
    increasing parameters guarantee general position (Vandermonde)."""
    params = [Fraction(t) for t in parameters]
    if len(params) != count:
        raise ValueError(f"expected {count} parameters, got {len(params)}")
    for a, b in zip(params, params[1:]):
        if a >= b:
            raise ValueError("parameters must be strictly increasing (repeats rejected)")
    pts = [tuple(t ** e for e in range(1, dim + 1)) for t in params]
    return PointCloud.from_exact(pts, label=f"moment_curve_{count}_{dim}")


# ---------------------------------------------------------------------------
# CSV interchange


def write_cloud_csv(cloud: PointCloud, path) -> None:
    lines = [f"d={cloud.dim},n={cloud.n},exact={1 if cloud.exact else 0}"]
    if cloud.exact:
        for p in cloud.points:
            lines.append(",".join(str(c) for c in p))
    else:
        for row in cloud.points:
            lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def read_cloud_csv(path) -> PointCloud:
    if hasattr(path, "read"):
        text = path.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty cloud file")
    header = dict(part.split("=", 1) for part in lines[0].split(","))
    dim = int(header["d"])
    n = int(header["n"])
    exact = header.get("exact", "1") == "1"
    rows = lines[1:]
    if len(rows) != n:
        raise ValueError(f"header declares n={n} but file has {len(rows)} points")
    if exact:
        pts = []
        for ln in rows:
            coords = [Fraction(tok) for tok in ln.split(",")]
            if len(coords) != dim:
                raise ValueError("coordinate count != d")
            pts.append(tuple(coords))
        return PointCloud(dim=dim, points=tuple(pts), exact=True)
    arr = np.array([[float(tok) for tok in ln.split(",")] for ln in rows], dtype=np.float64)
    if arr.shape != (n, dim):
        raise ValueError("coordinate count != d")
    return PointCloud(dim=dim, points=arr, exact=False)
