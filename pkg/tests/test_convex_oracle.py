import io
import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from randpoly.convex_oracle import (BOUNDARY_OR_DEGENERATE, INSIDE, OUTSIDE,
                                    DegenerateSampleError, GeneralPositionError,
                                    PointCloud, SubsetBudgetError, contains_point,
                                    contains_point_array, face_margin_array,
                                    facets_bruteforce, gale_transform, is_face,
                                    is_face_bruteforce, is_k_neighborly,
                                    moment_curve_cloud, read_cloud_csv,
                                    write_cloud_csv)
from randpoly.verify import general_position_cloud

F = Fraction


def exact(points):
    return PointCloud.from_exact(points)


SQUARE = exact([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = exact([(0, 0), (1, 0), (0, 1)])
SIMPLEX3 = exact([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


class TestContainsPoint:
    def test_origin_between_two_points_on_line(self):
        assert contains_point(exact([(-1,), (2,)]), (F(0),)) == INSIDE

    def test_centroid_of_simplex_is_interior(self):
        c = (F(1, 4), F(1, 4), F(1, 4))
        assert contains_point(SIMPLEX3, c) == INSIDE

    def test_point_beyond_hypotenuse_is_outside(self):
        assert contains_point(TRIANGLE, (F(3, 5), F(3, 5))) == OUTSIDE

    def test_vertex_is_boundary(self):
        assert contains_point(TRIANGLE, (F(0), F(0))) == BOUNDARY_OR_DEGENERATE

    def test_edge_midpoint_is_boundary(self):
        assert contains_point(TRIANGLE, (F(1, 2), F(0))) == BOUNDARY_OR_DEGENERATE

    def test_flat_cloud_never_inside(self):
        flat = exact([(0, 0), (1, 0), (2, 0)])
        assert contains_point(flat, (F(1), F(0))) == BOUNDARY_OR_DEGENERATE
        assert contains_point(flat, (F(1), F(1))) == OUTSIDE

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            contains_point(TRIANGLE, (F(0),))

    def test_exact_mode_requires_rational_cloud(self):
        cloud = PointCloud.from_floats(np.zeros((2, 1)) + [[0.0], [1.0]])
        with pytest.raises(ValueError):
            contains_point(cloud, (0.5,), mode="exact")

    def test_float_path_matches_exact_on_clear_cases(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        assert contains_point_array(pts, np.array([0.25, 0.25])) == INSIDE
        assert contains_point_array(pts, np.array([0.6, 0.6])) == OUTSIDE
        assert contains_point_array(pts, np.array([0.5, 0.0])) == BOUNDARY_OR_DEGENERATE


class TestIsFace:
    def test_segment_endpoint_is_face(self):
        assert is_face(exact([(-1,), (2,)]), [0]).is_face

    def test_square_diagonal_is_not_a_face_with_witness(self):
        res = is_face(SQUARE, [0, 3])
        assert not res.is_face
        w = res.witness
        assert w.point == (F(1, 2), F(1, 2))
        # certificate verifies exactly
        assert sum(w.affine.values()) == 1
        assert sum(w.convex.values()) == 1
        assert all(v >= 0 for v in w.convex.values())
        for coord in range(2):
            aff_pt = sum(w.affine[i] * SQUARE.points[i][coord] for i in w.affine)
            conv_pt = sum(w.convex[j] * SQUARE.points[j][coord] for j in w.convex)
            assert aff_pt == conv_pt == w.point[coord]

    def test_every_subset_of_simplex_is_face(self):
        for size in range(1, 5):
            for subset in itertools.combinations(range(4), size):
                assert is_face(SIMPLEX3, subset).is_face

    def test_full_set_is_face_by_convention(self):
        assert is_face(SQUARE, [0, 1, 2, 3]).is_face

    def test_empty_subset_rejected(self):
        with pytest.raises(ValueError):
            is_face(SQUARE, [])

    def test_interior_point_subsets_are_not_faces(self):
        with_center = exact([(0, 0), (4, 0), (0, 4), (1, 1)])
        assert not is_face(with_center, [3]).is_face
        assert not is_face(with_center, [0, 3]).is_face

    def test_float_path_square_diagonal(self):
        pts = SQUARE.as_float_array()
        verdict, margin = face_margin_array(pts, [0, 3])
        assert verdict == "not_face" and margin > 0
        verdict, margin = face_margin_array(pts, [0, 1])
        assert verdict == "face"


class TestBruteForce:
    def test_triangle_edges(self):
        assert facets_bruteforce(TRIANGLE) == {frozenset(p) for p in [(0, 1), (0, 2), (1, 2)]}

    def test_square_has_four_boundary_edges(self):
        facets = facets_bruteforce(SQUARE)
        assert len(facets) == 4
        assert frozenset((0, 3)) not in facets
        assert frozenset((1, 2)) not in facets

    def test_simplex_has_four_facets(self):
        assert len(facets_bruteforce(SIMPLEX3)) == 4

    def test_general_position_violation_reported(self):
        collinear = exact([(0, 0), (1, 1), (2, 2), (0, 1)])
        with pytest.raises(GeneralPositionError) as err:
            facets_bruteforce(collinear)
        assert {0, 1, 2} <= err.value.indices

    def test_interior_point_makes_containing_subsets_nonfaces(self):
        with_center = exact([(0, 0), (4, 0), (0, 4), (1, 1)])
        facets = facets_bruteforce(with_center)
        assert not is_face_bruteforce(with_center, [3], facets=facets)
        assert is_face_bruteforce(with_center, [0], facets=facets)

    def test_agreement_with_lp_oracle_on_seeded_clouds(self):
        rng = random.Random(5)
        for _ in range(8):
            d = rng.randint(1, 3)
            n = rng.randint(d + 1, 7)
            cloud = general_position_cloud(rng, d, n)
            facets = facets_bruteforce(cloud)
            for size in range(1, n):
                for subset in itertools.combinations(range(n), size):
                    assert is_face(cloud, subset).is_face == \
                        is_face_bruteforce(cloud, subset, facets=facets)


class TestKNeighborly:
    def test_simplex_is_two_neighborly(self):
        assert is_k_neighborly(SIMPLEX3, 2)

    def test_square_fails_at_two(self):
        assert not is_k_neighborly(SQUARE, 2)

    def test_square_passes_at_one(self):
        assert is_k_neighborly(SQUARE, 1)

    def test_moment_curve_eight_points_in_r4(self):
        cloud = moment_curve_cloud(8, 4, list(range(8)))
        assert is_k_neighborly(cloud, 2)

    def test_strategies_agree(self):
        with_center = exact([(0, 0), (4, 0), (0, 4), (1, 1)])
        for cloud in (SQUARE, SIMPLEX3, with_center):
            for k in (1, 2):
                assert is_k_neighborly(cloud, k, strategy="vertices_then_k") == \
                    is_k_neighborly(cloud, k, strategy="all_sizes")

    def test_budget_refusal(self):
        cloud = moment_curve_cloud(24, 4, list(range(24)))
        with pytest.raises(SubsetBudgetError):
            is_k_neighborly(cloud, 12, subset_cap=1000)

    def test_float_degeneracy_raises(self):
        # square in float: diagonal LP is clean, but a cloud with a point on
        # an edge sits exactly on the face boundary
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.0], [0.0, 1.0]])
        with pytest.raises(DegenerateSampleError):
            is_k_neighborly(PointCloud.from_floats(pts), 2, mode="float")


class TestGale:
    def test_three_points_on_line(self):
        dual = gale_transform(exact([(-1,), (1,), (3,)]))
        assert dual.dim == 1
        v = [p[0] for p in dual.points]
        assert v[0] != 0
        assert v[1] == -2 * v[0]
        assert v[2] == v[0]

    def test_dual_vectors_sum_to_origin(self):
        rng = random.Random(3)
        for _ in range(5):
            d = rng.randint(1, 3)
            n = rng.randint(d + 2, d + 4)
            cloud = general_position_cloud(rng, d, n)
            dual = gale_transform(cloud)
            assert dual.dim == n - d - 1
            for j in range(dual.dim):
                assert sum((p[j] for p in dual.points), F(0)) == 0

    def test_rank_deficiency_reported(self):
        flat = exact([(0, 0), (1, 0), (2, 0), (3, 0)])
        with pytest.raises(ValueError, match="affinely span"):
            gale_transform(flat)


class TestMomentCurve:
    def test_small_parabola_points(self):
        cloud = moment_curve_cloud(3, 2, [0, 1, 2])
        assert cloud.points == ((F(0), F(0)), (F(1), F(1)), (F(2), F(4)))

    def test_hexagon_has_six_edges(self):
        cloud = moment_curve_cloud(6, 2, [0, 1, 2, 3, 4, 5])
        assert len(facets_bruteforce(cloud)) == 6

    def test_repeated_parameters_rejected(self):
        with pytest.raises(ValueError):
            moment_curve_cloud(3, 2, [0, 0, 1])
        with pytest.raises(ValueError):
            moment_curve_cloud(3, 2, [2, 1, 0])


class TestCloudCsv:
    def test_exact_round_trip(self):
        cloud = exact([(F(1, 2), F(-3)), (F(2, 7), F(0))])
        buf = io.StringIO()
        write_cloud_csv(cloud, buf)
        back = read_cloud_csv(io.StringIO(buf.getvalue()))
        assert back.exact and back.points == cloud.points

    def test_float_round_trip(self):
        cloud = PointCloud.from_floats(np.array([[0.125, -2.5], [3.25, 0.0]]))
        buf = io.StringIO()
        write_cloud_csv(cloud, buf)
        back = read_cloud_csv(io.StringIO(buf.getvalue()))
        assert not back.exact
        assert np.array_equal(back.points, cloud.points)

    def test_header_mismatch_rejected(self):
        with pytest.raises(ValueError):
            read_cloud_csv(io.StringIO("d=2,n=3,exact=1\n1,2\n"))

    def test_duplicates_flagged(self):
        cloud = exact([(1, 1), (1, 1), (0, 0)])
        assert cloud.has_duplicates
