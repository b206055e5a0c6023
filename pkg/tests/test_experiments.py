import math
from fractions import Fraction

import numpy as np
import pytest

from randpoly import bounds as bm
from randpoly.experiments import (SUITE_COLUMNS, AdversarialReport, Estimate,
                                  ExperimentConfig, adversarial_comparison,
                                  estimate_containment, estimate_face_density,
                                  estimate_neighborliness, matching_bound,
                                  run_experiment_suite, suite_csv_text,
                                  wilson_interval)
from randpoly.sampling import DistributionSpec


def cfg(spec_text, d, n, target, param=None, trials=500, seed=0, **kw):
    return ExperimentConfig(spec=DistributionSpec.parse(spec_text, d), n=n, d=d,
                            target=target, param=param, trials=trials, seed=seed,
                            **kw)


class TestWilson:
    def test_contains_the_proportion(self):
        lo, hi = wilson_interval(40, 100)
        assert lo <= 0.4 <= hi

    def test_extremes_stay_in_unit_interval(self):
        lo, hi = wilson_interval(0, 50)
        assert lo == 0.0 and 0 < hi < 0.2
        lo, hi = wilson_interval(50, 50)
        assert 0.8 < lo < 1 and hi == 1.0

    def test_width_shrinks_with_trials(self):
        w1 = np.diff(wilson_interval(50, 100))[0]
        w2 = np.diff(wilson_interval(500, 1000))[0]
        assert w2 < w1


class TestConfigValidation:
    def test_target_checked(self):
        with pytest.raises(ValueError):
            cfg("gaussian", 3, 6, "volume")

    def test_face_density_needs_valid_ell(self):
        with pytest.raises(ValueError):
            cfg("gaussian", 3, 6, "face_density", param=3)
        with pytest.raises(ValueError):
            cfg("gaussian", 3, 6, "face_density")

    def test_neighborliness_budget_refused_explicitly(self):
        with pytest.raises(ValueError, match="budget"):
            cfg("gaussian", 4, 40, "neighborliness", param=12)

    def test_spec_dimension_must_match(self):
        with pytest.raises(ValueError):
            ExperimentConfig(spec=DistributionSpec(kind="gaussian", d=2), n=6, d=3,
                             target="containment", trials=10, seed=0)


class TestContainment:
    def test_gaussian_matches_wendel_at_small_size(self):
        est = estimate_containment(cfg("gaussian", 1, 2, "containment", trials=20000))
        assert est.ci_low <= 0.5 <= est.ci_high

    def test_non_spanning_cloud_estimates_zero(self):
        est = estimate_containment(cfg("gaussian", 3, 3, "containment", trials=300))
        assert est.mean == 0.0
        assert est.discarded_degenerate == 0

    def test_point_target_supported(self):
        est = estimate_containment(cfg("gaussian", 2, 8, "containment", trials=2000,
                                       point=(0.25, 0.0)))
        lower = float(bm.depth_containment_closed_form(8, 2, 0.40129367431582916))
        assert est.mean >= lower - 3 * est.half_width

    def test_wrong_target_rejected(self):
        with pytest.raises(ValueError):
            estimate_containment(cfg("gaussian", 2, 4, "face_density", param=1))


class TestFaceDensity:
    def test_simplex_density_is_one(self):
        for ell in (0, 1, 2):
            est = estimate_face_density(cfg("gaussian", 3, 4, "face_density",
                                            param=ell, trials=200))
            assert est.mean == 1.0

    def test_respects_face_bound(self):
        est = estimate_face_density(cfg("gaussian", 10, 12, "face_density",
                                        param=3, trials=2000))
        bound = float(bm.face_nonface_bound(12, 10, 4))
        assert est.mean >= 1.0 - bound - 3 * est.half_width

    def test_estimator_variants_agree(self):
        fixed = estimate_face_density(cfg("gaussian", 4, 8, "face_density",
                                          param=1, trials=4000, seed=3))
        rand = estimate_face_density(cfg("gaussian", 4, 8, "face_density",
                                         param=1, trials=4000, seed=4,
                                         subset_choice="random"))
        assert fixed.ci_low <= rand.ci_high and rand.ci_low <= fixed.ci_high


class TestNeighborliness:
    def test_simplex_always_neighborly(self):
        est = estimate_neighborliness(cfg("gaussian", 4, 5, "neighborliness",
                                          param=2, trials=150))
        assert est.mean == 1.0

    def test_failure_fraction_respects_union_bound(self):
        est = estimate_neighborliness(cfg("gaussian", 12, 15, "neighborliness",
                                          param=2, trials=400))
        bound = float(bm.neighborly_failure_bound(15, 12, 2))
        assert 1.0 - est.mean <= bound + 3 * est.half_width


class TestSuite:
    def test_empty_suite_has_header_only(self):
        assert suite_csv_text([]) == ",".join(SUITE_COLUMNS) + "\n"

    def test_rows_identical_across_worker_counts(self):
        config = cfg("gaussian", 3, 6, "containment", trials=600, seed=11)
        rows1 = run_experiment_suite([config], workers=1)
        rows8 = run_experiment_suite([config], workers=8)
        assert rows1 == rows8

    def test_bound_columns(self):
        value, kind = matching_bound(cfg("gaussian", 3, 6, "containment"))
        assert value == Fraction(1, 2) and kind == "wendel_upper"
        value, kind = matching_bound(cfg("gaussian", 10, 12, "face_density", param=3))
        assert value == bm.face_nonface_bound(12, 10, 4)
        value, kind = matching_bound(cfg("gaussian", 12, 15, "neighborliness", param=2))
        assert value == bm.neighborly_failure_bound(15, 12, 2)

    def test_errors_recorded_not_raised(self):
        good = cfg("gaussian", 3, 6, "containment", trials=50)
        bad = cfg("gaussian", 3, 6, "containment", trials=50)
        object.__setattr__(bad, "target", "neighborliness")  # force a late failure
        object.__setattr__(bad, "param", None)
        rows = run_experiment_suite([good, bad])
        err_col = SUITE_COLUMNS.index("error")
        assert rows[0][err_col] == ""
        assert rows[1][err_col] != ""

    def test_estimate_invariants(self):
        est = estimate_containment(cfg("cube", 3, 6, "containment", trials=500))
        assert 0.0 <= est.ci_low <= est.mean <= est.ci_high <= 1.0
        assert est.discarded_degenerate / est.trials < 0.001


class TestScalingShadow:
    def test_neighborliness_nondecreasing_in_dimension_within_slack(self):
        # fixed vertex ratio 1.25, k = max(1, d // 20); the limit theorem says
        # the probability tends to one, so desk-scale estimates may not drop
        # by more than the combined CI slack as d grows
        prev = None
        for d in (6, 9, 12):
            n = int(1.25 * d)
            k = max(1, d // 20)
            est = estimate_neighborliness(cfg("gaussian", d, n, "neighborliness",
                                              param=k, trials=500, seed=100 + d))
            if prev is not None:
                assert est.mean >= prev.mean - (est.half_width + prev.half_width)
            prev = est


class TestAdversarial:
    def test_report_shape_and_no_silent_verdict(self):
        report = adversarial_comparison(d=6, n=8, k=2, ell=2, trials=200, seed=5)
        assert isinstance(report, AdversarialReport)
        assert report.face_density_separated or (
            report.inconclusive and report.suggested_trials > report.trials)
        text = report.summary()
        assert "neighborliness direction" in text
        assert ("CONFIRMED" in text) or ("INCONCLUSIVE" in text)
        assert report.gaussian_expected_nonfaces >= 0
