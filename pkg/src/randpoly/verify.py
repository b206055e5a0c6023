"""The shipped invariant suite behind the `verify` CLI subcommand.

Each group returns CheckResult records; `run_all` aggregates them.  The
checks restate every module-level invariant: oracle cross-checks, the
quadrature/closed-form agreement, the balanced-measure identity at a=1/2,
the Gale correspondence, cyclic counts on the validated parity branch,
threshold residuals, sampler statistics and the Monte Carlo confrontations
with the exact bounds.  Monte Carlo trial counts scale with trials_scale so
quick smoke runs stay cheap; scale 1.0 runs the full counts.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bounds as bm
from . import thresholds as th
from .convex_oracle import (INSIDE, OUTSIDE, PointCloud, contains_point,
                            facets_bruteforce, gale_transform, is_face,
                            is_face_bruteforce, moment_curve_cloud, _det)
from .exact_linalg import RationalMatrix, null_space_basis, row_reduce
from .experiments import (ExperimentConfig, estimate_containment,
                          run_experiment_suite)
from .sampling import (DistributionSpec, SeededStream, depth_of_point,
                       gaussian_halfspace_mass, sample_cloud)


@dataclass(frozen=True)
class CheckResult:
    group: str
    name: str
    passed: bool
    detail: str = ""


def _result(group, name, passed, detail=""):
    return CheckResult(group=group, name=name, passed=bool(passed), detail=detail)


# ---------------------------------------------------------------------------
# random exact clouds shared by the oracle and Gale groups


def random_rational_cloud(rng: random.Random, d: int, n: int,
                          denom_cap: int = 4, coord_cap: int = 9) -> PointCloud:
    pts = [tuple(Fraction(rng.randint(-coord_cap, coord_cap), rng.randint(1, denom_cap))
                 for _ in range(d)) for _ in range(n)]
    return PointCloud.from_exact(pts)


def _gp_ok(points, d) -> bool:
    for sub in itertools.combinations(range(len(points)), d + 1):
        rows = [list(points[i]) + [Fraction(1)] for i in sub]
        if _det(rows) == 0:
            return False
    return True


def _origin_off_subset_flats(points, d) -> bool:
    for sub in itertools.combinations(range(len(points)), d):
        rows = [list(points[i]) + [Fraction(1)] for i in sub] + [[Fraction(0)] * d + [Fraction(1)]]
        if _det(rows) == 0:
            return False
    return True


def general_position_cloud(rng: random.Random, d: int, n: int) -> PointCloud:
    while True:
        cloud = random_rational_cloud(rng, d, n)
        if not cloud.has_duplicates and _gp_ok(cloud.points, d):
            return cloud


def centered_gale_cloud(rng: random.Random, d: int, count: int) -> tuple:
    """Exactly centered general-position cloud with a general-position dual
    and the origin off every subset flat; returns (cloud, dual)."""
    while True:
        raw = [[Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(d)]
               for _ in range(count)]
        cen = [sum((p[j] for p in raw), Fraction(0)) / count for j in range(d)]
        pts = [tuple(p[j] - cen[j] for j in range(d)) for p in raw]
        if len(set(pts)) < count:
            continue
        if not _gp_ok(pts, d) or not _origin_off_subset_flats(pts, d):
            continue
        cloud = PointCloud.from_exact(pts)
        try:
            dual = gale_transform(cloud)
        except ValueError:
            continue
        if dual.has_duplicates:
            continue
        if dual.dim >= 1 and not _gp_ok(dual.points, dual.dim):
            continue
        return cloud, dual


# ---------------------------------------------------------------------------
# group 1: exact linear algebra


def exact_linalg_checks(seed: int = 0, samples: int = 40) -> list:
    rng = random.Random(seed)
    group = "exact_linalg"
    idempotent = True
    kernel_exact = True
    rank_nullity = True
    for _ in range(samples):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = RationalMatrix.from_rows(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(cols)]
             for _ in range(rows)])
        red, rk, piv = row_reduce(m)
        red2, rk2, piv2 = row_reduce(red)
        if red2 != red or rk2 != rk or piv2 != piv:
            idempotent = False
        basis = null_space_basis(m)
        if basis.cols != cols - rk:
            rank_nullity = False
        if basis.cols and not m.matmul(basis).is_zero():
            kernel_exact = False
    return [
        _result(group, "rref_idempotent", idempotent),
        _result(group, "kernel_columns_exactly_annihilated", kernel_exact),
        _result(group, "rank_plus_nullity_equals_cols", rank_nullity),
    ]


# ---------------------------------------------------------------------------
# group 2: convex oracle


def face_oracle_agreement(seed: int, clouds: int, dmax: int = 4, nmax: int = 8,
                          max_subset_size: int | None = None) -> tuple:
    """LP face oracle vs the facet-containment brute force on every proper
    subset of seeded general-position clouds.  Returns (checked, mismatches)."""
    rng = random.Random(seed)
    checked = 0
    mismatches = 0
    for _ in range(clouds):
        d = rng.randint(1, dmax)
        n = rng.randint(d + 1, nmax)
        cloud = general_position_cloud(rng, d, n)
        facets = facets_bruteforce(cloud)
        top = n - 1 if max_subset_size is None else min(max_subset_size, n - 1)
        for size in range(1, top + 1):
            for subset in itertools.combinations(range(n), size):
                checked += 1
                if is_face(cloud, subset).is_face != is_face_bruteforce(
                        cloud, subset, facets=facets):
                    mismatches += 1
    return checked, mismatches


def gale_correspondence_violations(seed: int, clouds: int, dmax: int = 3) -> tuple:
    """Bidirectional origin/face check on exactly centered clouds.  The
    lifted-kernel dual pairs faces with subsets containing the configuration
    centroid, so the clouds are centered to make the origin the centroid."""
    rng = random.Random(seed)
    checked = 0
    violations = 0
    for _ in range(clouds):
        d = rng.randint(1, dmax)
        count = rng.randint(d + 2, d + 4)
        cloud, dual = centered_gale_cloud(rng, d, count)
        for j in range(dual.dim):
            if sum((p[j] for p in dual.points), Fraction(0)) != 0:
                violations += 1
        origin = tuple(Fraction(0) for _ in range(d))
        for size in range(1, count):
            for t_idx in itertools.combinations(range(count), size):
                sub = PointCloud.from_exact([cloud.points[i] for i in t_idx])
                inside = contains_point(sub, origin) == INSIDE
                comp = tuple(i for i in range(count) if i not in t_idx)
                face = is_face(dual, comp).is_face
                checked += 1
                if inside != face:
                    violations += 1
    return checked, violations


def float_exact_agreement(seed: int, clouds: int = 25, tol: float = 1e-9) -> tuple:
    """Dyadic rational clouds are exactly float-representable; wherever the
    exact margin exceeds 10*tol the float verdict must match the exact one."""
    rng = random.Random(seed)
    checked = 0
    mismatches = 0
    for _ in range(clouds):
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, 7)
        pts = [tuple(Fraction(rng.randint(-40, 40), 8) for _ in range(d))
               for _ in range(n)]
        cloud = PointCloud.from_exact(pts)
        p = tuple(Fraction(rng.randint(-40, 40), 8) for _ in range(d))
        exact_verdict = contains_point(cloud, p, mode="exact")
        float_verdict = contains_point(cloud, [float(c) for c in p],
                                       mode="float", tol=tol)
        if exact_verdict in (INSIDE, OUTSIDE):
            checked += 1
            if float_verdict != exact_verdict:
                mismatches += 1
        for size in range(1, n):
            subset = tuple(sorted(rng.sample(range(n), size)))
            er = is_face(cloud, subset, mode="exact")
            margin = er.margin
            if margin is None or abs(margin) > 10 * tol:
                fr = is_face(cloud, subset, mode="float", tol=tol)
                checked += 1
                if fr.degenerate or fr.is_face != er.is_face:
                    mismatches += 1
    return checked, mismatches


def containment_face_duality(seed: int, samples: int = 60) -> tuple:
    """p interior to conv(S) iff appending p makes the singleton {p} a
    non-face of the extended cloud (generic p)."""
    rng = random.Random(seed)
    checked = 0
    mismatches = 0
    while checked < samples:
        d = rng.randint(1, 3)
        n = rng.randint(d + 1, 7)
        cloud = general_position_cloud(rng, d, n)
        p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(d))
        verdict = contains_point(cloud, p)
        if verdict not in (INSIDE, OUTSIDE):
            continue
        extended = PointCloud.from_exact(list(cloud.points) + [p])
        singleton_face = is_face(extended, [n]).is_face
        checked += 1
        if (verdict == INSIDE) != (not singleton_face):
            mismatches += 1
    return checked, mismatches


def convex_oracle_checks(seed: int = 0, clouds: int = 40, gale_clouds: int = 12) -> list:
    group = "convex_oracle"
    out = []
    checked, bad = face_oracle_agreement(seed, clouds)
    out.append(_result(group, "lp_face_equals_bruteforce", bad == 0,
                       f"{checked} subsets, {bad} disagreements"))
    checked, bad = containment_face_duality(seed + 1)
    out.append(_result(group, "containment_matches_appended_singleton", bad == 0,
                       f"{checked} points, {bad} mismatches"))
    checked, bad = gale_correspondence_violations(seed + 2, gale_clouds)
    out.append(_result(group, "gale_correspondence_bidirectional", bad == 0,
                       f"{checked} subset pairs, {bad} violations"))
    checked, bad = float_exact_agreement(seed + 3)
    out.append(_result(group, "float_path_agrees_beyond_margin", bad == 0,
                       f"{checked} comparisons, {bad} mismatches"))
    return out


# ---------------------------------------------------------------------------
# group 3: bounds


def _face_bound_flat_form(n: int, d: int, k: int) -> Fraction:
    # the same bound indexed through a flat of dimension k-1 and sample n-k
    top = (n - k) - (d - (k - 1)) - 1
    if top < 0:
        return Fraction(0)
    return Fraction(sum(math.comb(n - k - 1, i) for i in range(top + 1)),
                    2 ** (n - k - 1))


def cyclic_delta0_bruteforce_mismatches(count_max: int = 8) -> tuple:
    """cyclic_face_count vs exhaustive face counts of moment-curve clouds in
    the dual dimension, for every valid even-parity parameter triple."""
    checked = 0
    mismatches = 0
    for count in range(3, count_max + 1):
        for d in range(1, count - 1):
            m = count - d - 1
            if m % 2 != 0 or m < 1:
                continue
            cloud = moment_curve_cloud(count, m, list(range(count)))
            facets = facets_bruteforce(cloud)
            for n in range(d + 1, count):
                size = count - n
                formula = bm.cyclic_face_count(count, n, d)
                brute = sum(1 for subset in itertools.combinations(range(count), size)
                            if is_face_bruteforce(cloud, subset, facets=facets))
                checked += 1
                if formula != brute:
                    mismatches += 1
    return checked, mismatches


def bounds_checks(nmax_identity: int = 40) -> list:
    group = "bounds"
    out = []

    ok = True
    for n in range(2, 30):
        for d in range(1, n):
            w = bm.wendel_bound(n, d)
            if not 0 <= w <= 1:
                ok = False
            if d + 1 < n and bm.wendel_bound(n, d + 1) > w:
                ok = False
            if bm.wendel_bound(n + 1, d) < w:
                ok = False
    out.append(_result(group, "wendel_monotone_in_n_and_d", ok))

    ok = all(bm.depth_containment_closed_form(n, d, Fraction(1, 2))
             == bm.wendel_bound(n, d)
             for n in range(2, nmax_identity + 1) for d in range(1, n))
    out.append(_result(group, "depth_bound_at_half_equals_wendel", ok,
                       f"exact over 1 <= d < n <= {nmax_identity}"))

    worst = 0.0
    for n in range(2, 26, 3):
        for d in range(1, n, 2):
            for a10 in range(1, 11):
                a = a10 / 20.0
                cf = float(bm.depth_containment_closed_form(n, d, a))
                q = bm.depth_containment_quadrature(n, d, a)
                if cf > 0:
                    worst = max(worst, abs(q - cf) / cf)
    out.append(_result(group, "quadrature_matches_closed_form", worst <= 1e-10,
                       f"worst relative error {worst:.2e}"))

    ok = all(bm.depth_containment_closed_form(n, d, Fraction(j, 20))
             <= bm.wendel_bound(n, d)
             for n in range(2, 20) for d in range(1, n) for j in range(0, 11))
    out.append(_result(group, "depth_bound_below_wendel", ok))

    ok = all(bm.face_nonface_bound(n, d, k) == _face_bound_flat_form(n, d, k)
             for n in range(2, 41) for k in range(1, n) for d in range(1, n))
    out.append(_result(group, "face_bound_matches_flat_index_form", ok,
                       "exact over 1 <= k < n <= 40"))

    exact = bm.depth_containment_rational_integral(4, 1, Fraction(1, 4))
    mirrored = bm.depth_containment_closed_form_mirrored(4, 1, Fraction(1, 4))
    out.append(_result(group, "mirrored_sum_fails_integral_check",
                       exact == Fraction(35, 128) and mirrored == Fraction(123, 128)
                       and mirrored != exact,
                       f"integral {exact}, mirrored {mirrored}"))

    checked, bad = cyclic_delta0_bruteforce_mismatches()
    out.append(_result(group, "cyclic_count_even_parity_bruteforce", bad == 0,
                       f"{checked} parameter triples, {bad} mismatches"))

    devs = [abs(float(bm.wendel_limit_ratio(nn, 6, 3) - Fraction(1, 2)))
            for nn in (102, 1002, 4002)]
    ok = devs[0] > devs[1] > devs[2] and devs[1] <= 0.01
    out.append(_result(group, "limit_ratio_converges_to_wendel", ok,
                       f"deviations at N=102,1002,4002: "
                       + ", ".join(f"{v:.5f}" for v in devs)))

    vals = [float(bm.neighborly_failure_bound(int(1.25 * d), d, max(1, int(0.05 * d))))
            for d in (40, 80, 160)]
    ok = vals[0] > vals[1] > vals[2]
    out.append(_result(group, "failure_bound_decreasing_at_desk_scale", ok,
                       "union bound at (alpha=1.25, beta=0.05), d=40,80,160: "
                       + ", ".join(f"{v:.3e}" for v in vals)))
    return out


# ---------------------------------------------------------------------------
# group 4: thresholds


def thresholds_checks() -> list:
    group = "thresholds"
    out = []
    pairs = th.threshold_curve(1.05, 1.95, 19)
    ok = all(abs(pn.residual) <= 1e-12 for pn, _ in pairs)
    out.append(_result(group, "residuals_within_tolerance", ok))
    ok = all(pn.beta < pd.beta for pn, pd in pairs)
    out.append(_result(group, "curve_ordering_rho_N_below_rho_D", ok))

    ok = True
    for pn, _ in pairs:
        scan = pn.scan
        below = [v for b, v in scan if b < pn.beta]
        above = [v for b, v in scan if b >= pn.beta]
        if not below or below[-1] >= 0:
            ok = False
        if above and above[0] < 0 and abs(above[0]) > 1e-12:
            ok = False
    out.append(_result(group, "sign_structure_at_bracketing_points", ok))

    ok = True
    for delta in (0.55, 0.7, 0.8, 0.95):
        alpha = 1.0 / delta
        if abs(th.rho_delta(delta, "N").beta - th.rho_N_prime(alpha).beta) > 1e-15:
            ok = False
        if abs(th.rho_delta(delta, "D").beta - (2.0 - 1.0 / delta)) > 1e-12:
            ok = False
    out.append(_result(group, "delta_parameterization_identities", ok))

    vals = [float(bm.neighborly_failure_bound(int(1.25 * d), d, max(1, int(0.05 * d))))
            for d in (40, 80, 160)]
    out.append(_result(group, "exponent_consistent_with_union_bound",
                       vals[0] > vals[1] > vals[2],
                       "negative exponent at (1.25, 0.05) shows decreasing bound"))
    return out


# ---------------------------------------------------------------------------
# group 5: sampling


def sampling_checks(seed: int = 0, trials_scale: float = 1.0) -> list:
    group = "sampling"
    out = []
    big = max(1000, int(100_000 * trials_scale))

    spec = DistributionSpec(kind="gaussian", d=3)
    a1, _ = sample_cloud(spec, 50, SeededStream(seed, 7))
    a2, _ = sample_cloud(spec, 50, SeededStream(seed, 7))
    b1, _ = sample_cloud(spec, 50, SeededStream(seed, 8))
    out.append(_result(group, "stream_determinism",
                       np.array_equal(a1, a2) and not np.array_equal(a1, b1)))

    ball = DistributionSpec(kind="ball", d=3, radius=2.0)
    pts, _ = sample_cloud(ball, big, SeededStream(seed, 1))
    radii = np.sort(np.linalg.norm(pts, axis=1) / 2.0)
    grid = (np.arange(1, big + 1)) / big
    ks = float(np.max(np.abs(radii ** 3 - grid))) + 1.0 / big
    crit = 1.6276 / math.sqrt(big)
    out.append(_result(group, "ball_radial_law_ks", ks < crit,
                       f"KS {ks:.5f} vs 1% critical {crit:.5f} at {big} draws"))
    out.append(_result(group, "ball_support_radius",
                       float(np.max(np.linalg.norm(pts, axis=1))) <= 2.0 + 1e-12))

    gpts, _ = sample_cloud(spec, big, SeededStream(seed, 2))
    means = np.abs(gpts.mean(axis=0))
    vars_ = gpts.var(axis=0)
    ok = bool(np.all(means < 4.0 / math.sqrt(big)) and np.all(np.abs(vars_ - 1) < 0.05))
    out.append(_result(group, "gaussian_moments", ok,
                       f"max |mean| {means.max():.4f}, var range "
                       f"[{vars_.min():.3f}, {vars_.max():.3f}]"))

    mix = DistributionSpec(kind="mixture", d=4)
    pts, mask = sample_cloud(mix, big, SeededStream(seed, 3))
    eps = mix.epsilon
    frac = float(mask.mean())
    z = 2.5758293035489004
    half = z * math.sqrt(eps * (1 - eps) / big)
    out.append(_result(group, "mixture_branch_frequency", abs(frac - eps) <= half,
                       f"ball-part fraction {frac:.4f} vs eps {eps:.4f} +- {half:.4f}"))
    ball_pts = pts[mask]
    ok = ball_pts.size == 0 or float(np.max(np.linalg.norm(ball_pts, axis=1))) <= eps + 1e-12
    out.append(_result(group, "mixture_ball_part_support", ok))

    rs = np.linspace(0.0, 3.0, 31)
    masses = [gaussian_halfspace_mass(r) for r in rs]
    ok = (abs(masses[0] - 0.5) < 1e-15
          and all(m1 >= m2 for m1, m2 in zip(masses, masses[1:]))
          and all(m >= 0.5 - r / math.sqrt(2 * math.pi) - 1e-12
                  for m, r in zip(masses, rs))
          and abs(gaussian_halfspace_mass(0.1) - 0.460172162723) < 1e-9)
    out.append(_result(group, "halfspace_mass_linearization", ok))

    g2 = DistributionSpec(kind="gaussian", d=2)
    ok = (abs(depth_of_point(g2, (0.0, 0.0)) - 0.5) < 1e-15
          and abs(depth_of_point(g2, (1.0, 0.0)) - 0.15865525393146) < 1e-9
          and all(depth_of_point(g2, (x, 0.3)) <= 0.5 + 1e-15
                  for x in np.linspace(-2, 2, 9)))
    out.append(_result(group, "gaussian_depth_function", ok))
    return out


# ---------------------------------------------------------------------------
# group 6: experiments


def experiments_checks(seed: int = 0, trials_scale: float = 1.0,
                       workers: int = 1) -> list:
    group = "experiments"
    out = []
    big = max(400, int(100_000 * trials_scale))
    mid = max(400, int(20_000 * trials_scale))
    estimates = []

    ok = True
    details = []
    for d, n in ((1, 2), (2, 4), (3, 6), (4, 6)):
        cfg = ExperimentConfig(spec=DistributionSpec(kind="gaussian", d=d), n=n, d=d,
                               target="containment", trials=big, seed=seed + d)
        est = estimate_containment(cfg, workers=workers)
        estimates.append(est)
        w = float(bm.wendel_bound(n, d))
        details.append(f"(d={d},n={n}): [{est.ci_low:.4f},{est.ci_high:.4f}] vs {w:.4f}")
        if not est.ci_low <= w <= est.ci_high:
            ok = False
    out.append(_result(group, "balanced_gaussian_ci_covers_wendel", ok,
                       "; ".join(details)))

    ok = True
    for d, n in ((3, 6), (4, 7)):
        for spec_text in ("gaussian", "ball:1", "mixture", "cube"):
            spec = DistributionSpec.parse(spec_text, d)
            cfg = ExperimentConfig(spec=spec, n=n, d=d, target="containment",
                                   trials=mid, seed=seed + 17 * d)
            est = estimate_containment(cfg, workers=workers)
            estimates.append(est)
            if est.mean > float(bm.wendel_bound(n, d)) + 3 * est.half_width:
                ok = False
    out.append(_result(group, "containment_below_wendel_for_all_specs", ok))

    ok = True
    details = []
    for r in (0.0, 0.25):
        a = gaussian_halfspace_mass(r)
        cfg = ExperimentConfig(spec=DistributionSpec(kind="gaussian", d=2), n=8, d=2,
                               target="containment", trials=mid, seed=seed + 31,
                               point=(r, 0.0))
        est = estimate_containment(cfg, workers=workers)
        estimates.append(est)
        lower = float(bm.depth_containment_closed_form(8, 2, a))
        details.append(f"r={r}: {est.mean:.4f} vs lower {lower:.4f}")
        if est.mean < lower - 3 * est.half_width:
            ok = False
    out.append(_result(group, "containment_above_depth_lower_bound", ok,
                       "; ".join(details)))

    frac = sum(e.discarded_degenerate for e in estimates) / sum(e.trials for e in estimates)
    out.append(_result(group, "degenerate_trial_fraction_below_0.1pct", frac < 0.001,
                       f"{frac:.5%} across {sum(e.trials for e in estimates)} trials"))

    cfg = ExperimentConfig(spec=DistributionSpec(kind="gaussian", d=3), n=6, d=3,
                           target="containment", trials=max(500, mid // 10),
                           seed=seed + 41)
    rows1 = run_experiment_suite([cfg], workers=1)
    rows8 = run_experiment_suite([cfg], workers=8)
    out.append(_result(group, "suite_rows_independent_of_workers", rows1 == rows8))
    return out


GROUPS = ("exact_linalg", "convex_oracle", "bounds", "thresholds", "sampling",
          "experiments")


def run_all(seed: int = 0, trials_scale: float = 1.0, workers: int = 1,
            groups=None) -> list:
    selected = set(groups or GROUPS)
    results = []
    if "exact_linalg" in selected:
        results += exact_linalg_checks(seed)
    if "convex_oracle" in selected:
        results += convex_oracle_checks(seed)
    if "bounds" in selected:
        results += bounds_checks()
    if "thresholds" in selected:
        results += thresholds_checks()
    if "sampling" in selected:
        results += sampling_checks(seed, trials_scale)
    if "experiments" in selected:
        results += experiments_checks(seed, trials_scale, workers)
    return results
