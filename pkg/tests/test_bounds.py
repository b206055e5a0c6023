import math
import warnings
from fractions import Fraction

import pytest

from randpoly import bounds as bm
from randpoly.bounds import (BoundQuery, FormulaInconsistencyError,
                             UnverifiedParityWarning, evaluate_query)
from randpoly.verify import _face_bound_flat_form, cyclic_delta0_bruteforce_mismatches

F = Fraction


class TestBinaryEntropy:
    def test_symmetric_maximum(self):
        assert bm.binary_entropy(0.5) == 1.0

    def test_limit_convention_at_endpoints(self):
        assert bm.binary_entropy(0.0) == 0.0
        assert bm.binary_entropy(1.0) == 0.0

    def test_quarter_value(self):
        assert abs(bm.binary_entropy(0.25) - 0.8112781245) < 1e-9

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            bm.binary_entropy(-0.1)
        with pytest.raises(ValueError):
            bm.binary_entropy(1.1)


class TestWendelBound:
    def test_simplex_case_single_term(self):
        for d in range(1, 12):
            assert bm.wendel_bound(d + 1, d) == F(1, 2 ** d)

    def test_two_points_on_line(self):
        assert bm.wendel_bound(2, 1) == F(1, 2)

    def test_six_points_three_dims(self):
        assert bm.wendel_bound(6, 3) == F(1, 2)

    def test_empty_sum_when_too_few_points(self):
        assert bm.wendel_bound(3, 5) == 0

    def test_monotone_and_in_unit_interval(self):
        for n in range(2, 25):
            for d in range(1, n):
                w = bm.wendel_bound(n, d)
                assert 0 <= w <= 1
                assert bm.wendel_bound(n + 1, d) >= w
                assert bm.wendel_bound(n, d + 1) <= w


class TestFaceBounds:
    def test_zero_for_simplex_range(self):
        assert bm.face_nonface_bound(5, 6, 2) == 0
        assert bm.face_nonface_bound(7, 6, 2) == 0

    def test_nine_six_two(self):
        assert bm.face_nonface_bound(9, 6, 2) == F(7, 64)

    def test_flat_index_form_identity(self):
        for n in range(2, 41):
            for k in range(1, n):
                for d in range(1, n):
                    assert bm.face_nonface_bound(n, d, k) == _face_bound_flat_form(n, d, k)

    def test_union_bound_values(self):
        assert bm.neighborly_failure_bound(9, 6, 2) == F(63, 16)  # vacuous, > 1
        assert bm.neighborly_failure_bound(20, 16, 2) == F(29260, 131072)

    def test_union_bound_zero_in_simplex_range(self):
        assert bm.neighborly_failure_bound(7, 6, 2) == 0

    def test_k_range_enforced(self):
        with pytest.raises(ValueError):
            bm.face_nonface_bound(5, 3, 5)
        with pytest.raises(ValueError):
            bm.face_nonface_bound(5, 3, 0)


class TestDepthContainment:
    def test_zero_depth_gives_zero(self):
        assert bm.depth_containment_closed_form(7, 2, 0) == 0
        assert bm.depth_containment_quadrature(7, 2, 0.0) == 0.0

    def test_reference_value_exact(self):
        expected = F(35, 128)
        assert bm.depth_containment_rational_integral(4, 1, F(1, 4)) == expected
        assert bm.depth_containment_closed_form(4, 1, F(1, 4)) == expected
        assert abs(bm.depth_containment_quadrature(4, 1, 0.25) - float(expected)) < 1e-12

    def test_mirrored_variant_fails_the_integral_check(self):
        mirrored = bm.depth_containment_closed_form_mirrored(4, 1, F(1, 4))
        assert mirrored == F(246, 256)
        assert mirrored != F(35, 128)
        # it even exceeds the balanced a=1/2 value, so it cannot be the bound
        assert mirrored > bm.depth_containment_closed_form(4, 1, F(1, 2))

    def test_balanced_identity_with_wendel(self):
        for n in range(2, 41):
            for d in range(1, n):
                assert bm.depth_containment_closed_form(n, d, F(1, 2)) == \
                    bm.wendel_bound(n, d)

    def test_closed_form_never_exceeds_wendel(self):
        for n in range(2, 16):
            for d in range(1, n):
                for j in range(0, 11):
                    assert bm.depth_containment_closed_form(n, d, F(j, 20)) <= \
                        bm.wendel_bound(n, d)

    def test_quadrature_agrees_with_closed_form(self):
        for n in range(2, 22, 4):
            for d in range(1, n, 3):
                for a in (0.05, 0.2, 0.35, 0.5):
                    cf = float(bm.depth_containment_closed_form(n, d, a))
                    q = bm.depth_containment_quadrature(n, d, a)
                    assert q == pytest.approx(cf, rel=1e-10)

    def test_rational_integral_equals_closed_form(self):
        for n in range(2, 14):
            for d in range(1, n):
                a = F(3, 10)
                assert bm.depth_containment_rational_integral(n, d, a) == \
                    bm.depth_containment_closed_form(n, d, a)

    def test_domain_enforced(self):
        with pytest.raises(ValueError):
            bm.depth_containment_closed_form(5, 2, F(3, 4))
        with pytest.raises(ValueError):
            bm.depth_containment_quadrature(2, 2, 0.2)
        with pytest.raises(ValueError):
            bm.depth_containment_lower_bound(5, 2, F(1, 4), method="nope")


class TestCyclicCount:
    def test_hexagon_edges_and_vertices(self):
        assert bm.cyclic_face_count(6, 4, 3) == 6
        assert bm.cyclic_face_count(6, 5, 3) == 6

    def test_even_parity_matches_bruteforce(self):
        checked, mismatches = cyclic_delta0_bruteforce_mismatches(count_max=8)
        assert checked > 0
        assert mismatches == 0

    def test_odd_parity_warns_unverified(self):
        with pytest.warns(UnverifiedParityWarning):
            value = bm.cyclic_face_count(6, 3, 2)
        assert value == 0  # the printed formula's output, flagged not trusted

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            bm.cyclic_face_count(6, 6, 3)
        with pytest.raises(ValueError):
            bm.cyclic_face_count(6, 4, 0)


class TestLimitRatio:
    def test_parity_enforced(self):
        with pytest.raises(ValueError, match="parity"):
            bm.wendel_limit_ratio(101, 6, 3)

    def test_ratio_is_rational_and_nonnegative(self):
        r = bm.wendel_limit_ratio(102, 6, 3)
        assert isinstance(r, Fraction) and r >= 0

    def test_convergence_to_wendel_value(self):
        target = F(1, 2)
        devs = [abs(bm.wendel_limit_ratio(N, 6, 3) - target)
                for N in (102, 1002, 4002)]
        assert devs[0] > devs[1] > devs[2]
        assert float(devs[1]) <= 0.01


class TestQueryRecords:
    def test_invariants_validated(self):
        with pytest.raises(ValueError):
            BoundQuery(n=5, d=0)
        with pytest.raises(ValueError):
            BoundQuery(n=5, d=2, k=5)
        with pytest.raises(ValueError):
            BoundQuery(n=5, d=2, a=F(3, 4))
        with pytest.raises(ValueError):
            BoundQuery(n=5, d=2, count=5)

    def test_dispatch(self):
        bv = evaluate_query("wendel", BoundQuery(n=6, d=3))
        assert bv.value == F(1, 2)
        bv = evaluate_query("union", BoundQuery(n=9, d=6, k=2))
        assert bv.value == F(63, 16)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            bv = evaluate_query("cyclic", BoundQuery(n=3, d=2, count=6))
        assert bv.note == "unverified parity"
        with pytest.raises(ValueError):
            evaluate_query("nope", BoundQuery(n=6, d=3))

    def test_theorem_shadow_union_bound_decreases_in_d(self):
        vals = [bm.neighborly_failure_bound(int(1.25 * d), d, max(1, int(0.05 * d)))
                for d in (40, 80, 160)]
        assert vals[0] > vals[1] > vals[2]
