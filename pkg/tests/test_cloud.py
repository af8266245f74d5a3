import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracdim import (PointCloud, closed_ball, diameter, distance,
                     hausdorff_distance, interval_plus_point_cloud)
from oracles import brute_hausdorff

TOL = 1e-12


class TestDistance:
    def test_identity(self, grid11):
        for i in range(grid11.n):
            assert distance(grid11, i, i) == 0.0

    def test_interval_plus_point_endpoints(self):
        # the endpoints 1 and 2 of the motivating set [0,1] u {2}
        cloud = interval_plus_point_cloud(4)
        i_one = int(np.flatnonzero(cloud.coords[:, 0] == 1.0)[0])
        i_two = int(np.flatnonzero(cloud.coords[:, 0] == 2.0)[0])
        assert distance(cloud, i_one, i_two) == 1.0

    def test_l1_disjoint_supports(self):
        # x = 0.5 e_0, y = 0.25 e_3: hand sum over the union of supports
        from fracdim import SparseVec, sparse_cloud
        cloud = sparse_cloud([SparseVec.from_dict({0: 0.5}),
                              SparseVec.from_dict({3: 0.25})])
        assert cloud.metric == "l1"
        assert distance(cloud, 0, 1) == pytest.approx(0.75, abs=TOL)

    def test_symmetry(self, grid11):
        assert distance(grid11, 2, 7) == distance(grid11, 7, 2)

    def test_index_out_of_range(self, grid11):
        with pytest.raises(IndexError):
            distance(grid11, 0, 99)


class TestDiameter:
    def test_singleton_and_empty(self, grid11):
        assert diameter(grid11, grid11.subset([4])) == 0.0
        assert diameter(grid11, grid11.subset([])) == 0.0

    def test_grid_extremes(self, grid11):
        assert diameter(grid11) == pytest.approx(1.0, abs=TOL)

    def test_cantor_level2_both_endpoints(self):
        pts = [0, 1 / 9, 2 / 9, 1 / 3, 2 / 3, 7 / 9, 8 / 9, 1.0]
        cloud = PointCloud(pts)
        assert diameter(cloud) == pytest.approx(1.0, abs=TOL)


class TestClosedBall:
    def test_radius_zero(self, grid11):
        assert list(closed_ball(grid11, 5, 0.0).indices) == [5]

    def test_boundary_included(self, grid11):
        ball = closed_ball(grid11, 5, 0.25)
        assert [round(grid11.coords[i, 0], 1) for i in ball.indices] == [0.3, 0.4, 0.5, 0.6, 0.7]

    def test_isolated_point(self):
        cloud = interval_plus_point_cloud(4)
        i_two = cloud.n - 1
        assert list(closed_ball(cloud, i_two, 0.9).indices) == [i_two]

    def test_monotone_in_radius(self, grid11):
        small = set(closed_ball(grid11, 3, 0.15).indices)
        large = set(closed_ball(grid11, 3, 0.35).indices)
        assert small <= large

    def test_diameter_at_most_2r(self, grid11):
        for radius in (0.1, 0.25, 0.4):
            for center in range(grid11.n):
                ball = closed_ball(grid11, center, radius)
                assert diameter(grid11, ball) <= 2 * radius + TOL

    def test_negative_radius(self, grid11):
        with pytest.raises(ValueError):
            closed_ball(grid11, 0, -0.1)


class TestHausdorff:
    def test_identical(self, grid11):
        other = PointCloud(np.arange(11) * 0.1)
        assert hausdorff_distance(grid11, other) == 0.0

    def test_directed_asymmetry(self):
        a = PointCloud([[0.0]])
        b = PointCloud([[0.0], [1.0]])
        assert hausdorff_distance(a, b) == pytest.approx(1.0, abs=TOL)

    def test_shifted_grid(self, grid11):
        shifted = PointCloud(np.arange(11) * 0.1 + 0.03)
        expected = brute_hausdorff(grid11.coords, shifted.coords)
        got = hausdorff_distance(grid11, shifted)
        assert got == pytest.approx(expected, abs=TOL)
        assert got == pytest.approx(0.03, abs=TOL)

    def test_incompatible_modes(self, grid11):
        l1_cloud = PointCloud([[0.0, 0], [1.0, 1]], metric="l1")
        with pytest.raises(ValueError):
            hausdorff_distance(grid11, l1_cloud)
        m = PointCloud.from_matrix([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            hausdorff_distance(m, m)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_metric_axioms(self, data):
        def cloud(tag):
            pts = data.draw(st.lists(
                st.integers(min_value=0, max_value=60), min_size=1, max_size=8,
                unique=True), label=tag)
            return PointCloud(np.asarray(pts, dtype=float) / 7.0)

        a, b, c = cloud("a"), cloud("b"), cloud("c")
        ab, ba = hausdorff_distance(a, b), hausdorff_distance(b, a)
        assert ab == ba
        ac, cb = hausdorff_distance(a, c), hausdorff_distance(c, b)
        assert ab <= ac + cb + TOL

    def test_matches_bruteforce_2d(self):
        rng = np.random.default_rng(7)
        a = PointCloud(rng.uniform(size=(9, 2)))
        b = PointCloud(rng.uniform(size=(6, 2)))
        assert hausdorff_distance(a, b) == pytest.approx(
            brute_hausdorff(a.coords, b.coords), abs=1e-10)


class TestConstruction:
    def test_duplicates_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            PointCloud([[0.0], [0.0], [1.0]])

    def test_matrix_validation(self):
        PointCloud.from_matrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
        with pytest.raises(ValueError, match="symmetric"):
            PointCloud.from_matrix([[0, 1], [2, 0]])
        with pytest.raises(ValueError, match="nonnegative"):
            PointCloud.from_matrix([[0, -1], [-1, 0]])
        with pytest.raises(ValueError, match="triangle"):
            PointCloud.from_matrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
        with pytest.raises(ValueError, match="duplicate"):
            PointCloud.from_matrix([[0, 0], [0, 0]])

    def test_matrix_triangle_exhaustive_midsize(self):
        rng = np.random.default_rng(3)
        pts = rng.uniform(size=(150, 2))
        diff = pts[:, None] - pts[None, :]
        dmat = np.sqrt((diff ** 2).sum(axis=2))
        np.fill_diagonal(dmat, 0.0)
        dmat = np.minimum(dmat, dmat.T)
        cloud = PointCloud.from_matrix(dmat)
        assert cloud.n == 150
        bad = dmat.copy()
        bad[10, 20] = bad[20, 10] = 3.5  # breaks triangle via any third point
        with pytest.raises(ValueError, match="triangle"):
            PointCloud.from_matrix(bad)

    def test_matrix_sampled_above_limit(self):
        rng = np.random.default_rng(4)
        pts = rng.uniform(size=(250, 1))
        dmat = np.abs(pts - pts.T)
        np.fill_diagonal(dmat, 0.0)
        dmat = np.minimum(dmat, dmat.T)
        assert PointCloud.from_matrix(dmat).n == 250

    def test_subset_validation(self, grid11):
        with pytest.raises(IndexError):
            grid11.subset([0, 99])
        sub = grid11.subset([5, 2, 2, 9])
        assert list(sub.indices) == [2, 5, 9]
