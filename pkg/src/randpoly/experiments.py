"""Seeded Monte Carlo harness: containment probability, face density and
k-neighborliness estimates with Wilson intervals, confronted with the exact
bounds.

Each trial draws its cloud from the stream (seed, trial_index), so any
subset of trials reproduces in isolation and aggregate results are
independent of the worker layout.  Sampled clouds are decided by the float
oracle path; a verdict within tolerance of the decision boundary discards
and redraws the trial (counted), since such configurations have probability
zero under the hypotheses and must not bias the estimators.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import bounds as bounds_mod
from .convex_oracle import (BOUNDARY_OR_DEGENERATE, INSIDE, DEFAULT_SUBSET_CAP,
                            DegenerateSampleError, PointCloud, contains_point_array,
                            face_margin_array, is_k_neighborly, subset_count_upto)
from .sampling import DistributionSpec, SeededStream, sample_cloud

WILSON_Z99 = 2.5758293035489004  # 99.5th percentile of the standard normal
MAX_REDRAWS = 1000

TARGETS = ("containment", "face_density", "neighborliness")


@dataclass(frozen=True)
class ExperimentConfig:
    spec: DistributionSpec
    n: int
    d: int
    target: str
    param: Optional[int] = None       # ell for face_density, k for neighborliness
    trials: int = 1000
    seed: int = 0
    tol: float = 1e-9
    point: Optional[tuple] = None     # containment target, default the origin
    subset_choice: str = "first"      # face_density: "first" or "random"
    subset_cap: int = DEFAULT_SUBSET_CAP

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need trials >= 1")
        if self.n < 1 or self.d < 1:
            raise ValueError("need n >= 1 and d >= 1")
        if self.spec.d != self.d:
            raise ValueError("spec dimension != config dimension")
        if self.target not in TARGETS:
            raise ValueError(f"unknown target {self.target!r}")
        if self.target == "face_density":
            if self.param is None or not 0 <= self.param <= self.d - 1:
                raise ValueError("face_density needs 0 <= ell <= d-1")
            if self.param + 1 > self.n:
                raise ValueError("need ell+1 <= n")
        if self.target == "neighborliness":
            if self.param is None or not 1 <= self.param <= self.n:
                raise ValueError("neighborliness needs 1 <= k <= n")
            if subset_count_upto(self.n, self.param) > self.subset_cap:
                raise ValueError(
                    f"subset budget exceeded: testing size <= {self.param} of "
                    f"{self.n} points needs {subset_count_upto(self.n, self.param)} "
                    f"subsets > cap {self.subset_cap}; refusing (sampled subsets "
                    "cannot certify the every-subset quantifier)")
        if self.point is not None and len(self.point) != self.d:
            raise ValueError("containment point has wrong dimension")
        if self.subset_choice not in ("first", "random"):
            raise ValueError("subset_choice must be 'first' or 'random'")


@dataclass(frozen=True)
class Estimate:
    mean: float
    ci_low: float
    ci_high: float
    trials: int
    discarded_degenerate: int
    seed: int
    warning: Optional[str] = None

    def __post_init__(self):
        if not (0.0 <= self.ci_low <= self.mean <= self.ci_high <= 1.0):
            raise ValueError("interval must satisfy 0 <= low <= mean <= high <= 1")

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z99) -> tuple:
    """Score interval for a binomial proportion; well-behaved near 0 and 1."""
    if trials < 1:
        raise ValueError("need trials >= 1")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def _make_estimate(successes: int, trials: int, discarded: int, seed: int) -> Estimate:
    lo, hi = wilson_interval(successes, trials)
    mean = successes / trials
    warning = None
    if discarded / trials >= 0.001:
        warning = (f"degenerate-trial fraction {discarded}/{trials} at or above 0.1%; "
                   "verdicts near the tolerance boundary may bias the estimate")
    return Estimate(mean=mean, ci_low=min(lo, mean), ci_high=max(hi, mean),
                    trials=trials, discarded_degenerate=discarded, seed=seed,
                    warning=warning)


def _run_trials(config: ExperimentConfig, outcome: Callable, workers: int = 1) -> Estimate:
    """outcome(points, rng) -> bool, or raises DegenerateSampleError to
    discard and redraw within the same per-trial stream."""

    def run_range(lo: int, hi: int) -> tuple:
        succ = 0
        disc = 0
        for trial in range(lo, hi):
            rng = SeededStream(config.seed, trial).generator()
            for _ in range(MAX_REDRAWS):
                pts, _ = sample_cloud(config.spec, config.n, rng)
                try:
                    if outcome(pts, rng):
                        succ += 1
                    break
                except DegenerateSampleError:
                    disc += 1
            else:
                raise RuntimeError(
                    f"trial {trial} exceeded {MAX_REDRAWS} degenerate redraws")
        return succ, disc

    trials = config.trials
    if workers <= 1:
        successes, discarded = run_range(0, trials)
    else:
        step = -(-trials // workers)
        spans = [(lo, min(lo + step, trials)) for lo in range(0, trials, step)]
        successes = discarded = 0
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for s, dd in pool.map(lambda span: run_range(*span), spans):
                successes += s
                discarded += dd
    return _make_estimate(successes, trials, discarded, config.seed)


def estimate_containment(config: ExperimentConfig, workers: int = 1) -> Estimate:
    """Fraction of trials whose hull strictly contains the target point
    (the origin unless config.point says otherwise)."""
    if config.target != "containment":
        raise ValueError("config target must be 'containment'")
    point = np.zeros(config.d) if config.point is None \
        else np.asarray(config.point, dtype=np.float64)
    tol = config.tol

    def outcome(pts, rng):
        verdict = contains_point_array(pts, point, tol)
        if verdict == BOUNDARY_OR_DEGENERATE:
            raise DegenerateSampleError("containment margin below tolerance")
        return verdict == INSIDE

    return _run_trials(config, outcome, workers)


def estimate_face_density(config: ExperimentConfig, workers: int = 1) -> Estimate:
    """Probability that an (ell+1)-subset spans a face; by exchangeability of
    i.i.d. draws this is the expected ell-face density.  The tested subset is
    the first ell+1 points, or a uniformly random one with
    subset_choice='random' (the two estimators agree in distribution)."""
    if config.target != "face_density":
        raise ValueError("config target must be 'face_density'")
    size = config.param + 1
    tol = config.tol
    random_subset = config.subset_choice == "random"
    n = config.n

    def outcome(pts, rng):
        if random_subset:
            idx = np.sort(rng.choice(n, size=size, replace=False))
        else:
            idx = np.arange(size)
        verdict, _ = face_margin_array(pts, idx, tol)
        if verdict == "degenerate":
            raise DegenerateSampleError("face margin below tolerance")
        return verdict == "face"

    return _run_trials(config, outcome, workers)


def estimate_neighborliness(config: ExperimentConfig, workers: int = 1) -> Estimate:
    """Fraction of trials whose hull is k-neighborly.  Subset testing is
    exhaustive (the budget was already enforced by the config); sampling
    subsets could only certify failure, never success."""
    if config.target != "neighborliness":
        raise ValueError("config target must be 'neighborliness'")
    k = config.param
    tol = config.tol
    cap = config.subset_cap

    def outcome(pts, rng):
        cloud = PointCloud.from_floats(pts)
        return is_k_neighborly(cloud, k, subset_cap=cap, mode="float", tol=tol)

    return _run_trials(config, outcome, workers)


# ---------------------------------------------------------------------------
# suite runner and CSV emission

SUITE_COLUMNS = ("spec", "d", "n", "target", "param", "trials", "seed", "mean",
                 "ci_low", "ci_high", "discarded", "exact_bound", "bound_kind",
                 "error")

_ESTIMATORS = {
    "containment": estimate_containment,
    "face_density": estimate_face_density,
    "neighborliness": estimate_neighborliness,
}


def matching_bound(config: ExperimentConfig) -> tuple:
    """The exact bound column for a config: (value, kind) or (None, "")."""
    if config.target == "containment":
        return bounds_mod.wendel_bound(config.n, config.d), "wendel_upper"
    if config.target == "face_density":
        k = config.param + 1
        if 1 <= k < config.n:
            return bounds_mod.face_nonface_bound(config.n, config.d, k), "face_nonface_upper"
        return None, ""
    if config.target == "neighborliness":
        if 1 <= config.param < config.n:
            return (bounds_mod.neighborly_failure_bound(config.n, config.d, config.param),
                    "neighborly_failure_upper")
        return None, ""
    return None, ""


def _fmt(v) -> str:
    if isinstance(v, float) or isinstance(v, Fraction):
        return f"{float(v):.12g}"
    return str(v)


def run_experiment_suite(configs, workers: int = 1) -> list:
    """One CSV data row per config (strings, aligned with SUITE_COLUMNS).
    Per-config failures land in the error column and the suite continues."""
    rows = []
    for config in configs:
        base = [config.spec.describe(), str(config.d), str(config.n), config.target,
                "" if config.param is None else str(config.param),
                str(config.trials), str(config.seed)]
        try:
            est = _ESTIMATORS[config.target](config, workers=workers)
            bound, kind = matching_bound(config)
            rows.append(base + [_fmt(est.mean), _fmt(est.ci_low), _fmt(est.ci_high),
                                str(est.discarded_degenerate),
                                "" if bound is None else _fmt(bound), kind, ""])
        except Exception as exc:  # noqa: BLE001 - suite must continue
            rows.append(base + ["", "", "", "", "", "", f"{type(exc).__name__}: {exc}"])
    return rows


def suite_csv_text(rows) -> str:
    return "\n".join([",".join(SUITE_COLUMNS)] + [",".join(r) for r in rows]) + "\n"


# ---------------------------------------------------------------------------
# adversarial comparison (mixture vs gaussian)


@dataclass(frozen=True)
class AdversarialReport:
    """Desk-scale comparison of the adversarial mixture against the Gaussian
    baseline.  No silent verdicts: when the face-density separation is not
    resolved at the given trial count, `inconclusive` is set and
    `suggested_trials` carries a widened trial count."""

    d: int
    n: int
    k: int
    ell: int
    trials: int
    seed: int
    gaussian_neighborly: Estimate
    mixture_neighborly: Estimate
    gaussian_face_density: Estimate
    mixture_face_density: Estimate
    gaussian_expected_nonfaces: float
    mixture_expected_nonfaces: float
    neighborliness_direction_ok: bool = field(init=False, default=False)
    face_density_separated: bool = field(init=False, default=False)
    inconclusive: bool = field(init=False, default=False)
    suggested_trials: Optional[int] = field(init=False, default=None)

    def __post_init__(self):
        slack = self.gaussian_neighborly.half_width + self.mixture_neighborly.half_width
        ok = self.mixture_neighborly.mean <= self.gaussian_neighborly.mean + slack
        object.__setattr__(self, "neighborliness_direction_ok", ok)
        combined = (self.gaussian_face_density.half_width
                    + self.mixture_face_density.half_width)
        gap = self.gaussian_face_density.mean - self.mixture_face_density.mean
        separated = gap >= combined and combined > 0
        object.__setattr__(self, "face_density_separated", separated)
        if not separated:
            object.__setattr__(self, "inconclusive", True)
            if gap > 0:
                factor = (combined / gap) ** 2
            else:
                factor = 16.0
            suggestion = int(math.ceil(self.trials * min(max(factor, 4.0), 1e4)))
            object.__setattr__(self, "suggested_trials", suggestion)

    def summary(self) -> str:
        lines = [
            f"adversarial comparison at d={self.d}, n={self.n}, k={self.k}, "
            f"ell={self.ell}, trials={self.trials}, seed={self.seed}",
            f"  P({self.k}-neighborly): gaussian={self.gaussian_neighborly.mean:.4f} "
            f"[{self.gaussian_neighborly.ci_low:.4f},{self.gaussian_neighborly.ci_high:.4f}]"
            f"  mixture={self.mixture_neighborly.mean:.4f} "
            f"[{self.mixture_neighborly.ci_low:.4f},{self.mixture_neighborly.ci_high:.4f}]",
            f"  {self.ell}-face density: gaussian={self.gaussian_face_density.mean:.4f}"
            f"  mixture={self.mixture_face_density.mean:.4f}",
            f"  expected non-face {self.k}-subsets: "
            f"gaussian={self.gaussian_expected_nonfaces:.3f} "
            f"mixture={self.mixture_expected_nonfaces:.3f} (reported, no gate)",
            f"  neighborliness direction ok (mixture <= gaussian + CI slack): "
            f"{self.neighborliness_direction_ok}",
        ]
        if self.face_density_separated:
            lines.append("  face-density separation: CONFIRMED beyond combined CI half-widths")
        else:
            lines.append(
                f"  face-density separation: INCONCLUSIVE at {self.trials} trials; "
                f"rerun with at least {self.suggested_trials} trials per spec")
        return "\n".join(lines)


def adversarial_comparison(d: int, n: int, k: int, ell: int, trials: int,
                           seed: int, tol: float = 1e-9,
                           workers: int = 1) -> AdversarialReport:
    """Run the four estimates behind the least-neighborly comparison.  Seeds
    are offset per estimate so the four runs use disjoint stream families."""
    gauss = DistributionSpec(kind="gaussian", d=d)
    mix = DistributionSpec(kind="mixture", d=d)

    def cfg(spec, target, param, offset):
        return ExperimentConfig(spec=spec, n=n, d=d, target=target, param=param,
                                trials=trials, seed=seed + offset, tol=tol)

    gn = estimate_neighborliness(cfg(gauss, "neighborliness", k, 1), workers)
    mn = estimate_neighborliness(cfg(mix, "neighborliness", k, 2), workers)
    gf = estimate_face_density(cfg(gauss, "face_density", ell, 3), workers)
    mf = estimate_face_density(cfg(mix, "face_density", ell, 4), workers)
    # expected number of non-face k-subsets = C(n,k) * P(fixed k-subset not a face)
    gk = estimate_face_density(cfg(gauss, "face_density", k - 1, 5), workers)
    mk = estimate_face_density(cfg(mix, "face_density", k - 1, 6), workers)
    combin = math.comb(n, k)
    return AdversarialReport(
        d=d, n=n, k=k, ell=ell, trials=trials, seed=seed,
        gaussian_neighborly=gn, mixture_neighborly=mn,
        gaussian_face_density=gf, mixture_face_density=mf,
        gaussian_expected_nonfaces=combin * (1.0 - gk.mean),
        mixture_expected_nonfaces=combin * (1.0 - mk.mean))
