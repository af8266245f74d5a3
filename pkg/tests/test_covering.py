import numpy as np
import pytest

from fracdim import (PointCloud, cantor_cloud, covering_number,
                     maximal_separated_family, packing_number, validate_cover,
                     validate_packing)
from oracles import (certified_cover_count_1d, exact_cover_oracle,
                     exact_pack_oracle, random_metric_cloud)

TOL = 1e-12


class TestCoveringExamples:
    def test_single_point(self, grid11):
        for r in (0.01, 1.0, 5.0):
            res = covering_number(grid11.subset([3]), r)
            assert res.count == 1 and res.exact

    def test_two_points_no_joint_part(self, two_points):
        res = covering_number(two_points.all_indices(), 0.5, mode="exact")
        assert res.count == 2

    def test_grid_r035(self, grid11):
        # frozen from the subset-DP oracle: three parts suffice and are needed
        sub = grid11.all_indices()
        dmat = np.abs(grid11.coords - grid11.coords.T)
        assert exact_cover_oracle(dmat, 0.35) == 3
        res = covering_number(sub, 0.35, mode="exact")
        assert res.count == 3 and res.exact
        assert validate_cover(sub, res, 0.35)

    def test_invalid_inputs(self, grid11):
        with pytest.raises(ValueError):
            covering_number(grid11.all_indices(), 0.0)
        with pytest.raises(ValueError):
            covering_number(grid11.all_indices(), 0.1, mode="nope")

    def test_exact_above_cutoff_rejected(self):
        rng = np.random.default_rng(0)
        cloud = PointCloud.from_matrix(random_metric_cloud(rng, 25, 2))
        with pytest.raises(ValueError, match="cutoff"):
            covering_number(cloud.all_indices(), 0.3, mode="exact", exact_cutoff=20)
        # auto mode falls back to greedy instead
        res = covering_number(cloud.all_indices(), 0.3, mode="auto", exact_cutoff=20)
        assert not res.exact


class TestPackingExamples:
    def test_singleton(self, grid11):
        res = packing_number(grid11.subset([0]), 0.7)
        assert res.count == 1

    def test_grid_sep025(self, grid11):
        dmat = np.abs(grid11.coords - grid11.coords.T)
        assert exact_pack_oracle(dmat, 0.25) == 4
        res = packing_number(grid11.all_indices(), 0.25, mode="exact")
        assert res.count == 4
        assert validate_packing(res, 0.25)

    def test_two_far_points(self, two_points):
        res = packing_number(two_points.all_indices(), 2.0)
        assert res.count == 1

    def test_sep_nonpositive(self, grid11):
        with pytest.raises(ValueError):
            packing_number(grid11.all_indices(), 0.0)

    def test_exact_above_cutoff_rejected(self):
        rng = np.random.default_rng(1)
        cloud = PointCloud.from_matrix(random_metric_cloud(rng, 25, 2))
        with pytest.raises(ValueError, match="cutoff"):
            packing_number(cloud.all_indices(), 0.3, mode="exact", exact_cutoff=20)


class TestMaximalSeparatedFamily:
    def test_singleton_subset(self, grid11):
        fam = maximal_separated_family(grid11.subset([4]), 0.5, seed=4)
        assert list(fam.indices) == [4]

    def test_grid_fixed_scan(self, grid11):
        fam = maximal_separated_family(grid11.all_indices(), 0.25, seed=0)
        assert [round(grid11.coords[i, 0], 1) for i in fam.indices] == [0.0, 0.3, 0.6, 0.9]

    def test_two_points(self, two_points):
        fam = maximal_separated_family(two_points.all_indices(), 0.4, seed=0)
        assert list(fam.indices) == [0, 1]

    def test_seed_not_in_subset(self, grid11):
        with pytest.raises(ValueError):
            maximal_separated_family(grid11.subset([0, 1]), 0.5, seed=7)

    def test_maximality(self, grid11):
        fam = maximal_separated_family(grid11.all_indices(), 0.25, seed=5)
        chosen = set(fam.indices)
        for i in range(grid11.n):
            if i in chosen:
                continue
            dists = [grid11.distance(i, j) for j in chosen]
            assert min(dists) < 0.25 - TOL


class TestOracleAgreement:
    """Exact solvers against the independent subset-DP / subset-scan oracles."""

    def test_random_matrix_clouds(self):
        rng = np.random.default_rng(42)
        for _ in range(25):
            n = int(rng.integers(4, 11))
            dmat = random_metric_cloud(rng, n, int(rng.integers(1, 4)))
            cloud = PointCloud.from_matrix(dmat)
            sub = cloud.all_indices()
            finite = dmat[dmat > 0]
            for q in (0.25, 0.5, 0.75):
                r = float(np.quantile(finite, q))
                res = covering_number(sub, r, mode="exact")
                assert res.count == exact_cover_oracle(dmat, r)
                assert validate_cover(sub, res, r)
                greedy = covering_number(sub, r, mode="greedy")
                assert greedy.count >= res.count
                assert validate_cover(sub, greedy, r)
                pk = packing_number(sub, r, mode="exact")
                assert pk.count == exact_pack_oracle(dmat, r)
                gpk = packing_number(sub, r, mode="greedy")
                assert gpk.count <= pk.count
                assert validate_packing(gpk, r)

    def test_sweep_matches_bb_and_oracle_on_1d(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            n = int(rng.integers(4, 13))
            coords = np.sort(rng.choice(200, size=n, replace=False)) / 37.0
            sorted_cloud = PointCloud(coords)  # sweep path
            shuffled = coords.copy()
            rng.shuffle(shuffled)
            dmat = np.abs(shuffled[:, None] - shuffled[None, :])
            generic_cloud = PointCloud.from_matrix(dmat)  # branch-and-bound path
            r = float(np.quantile(dmat[dmat > 0], 0.4))
            a = covering_number(sorted_cloud.all_indices(), r, mode="exact").count
            b = covering_number(generic_cloud.all_indices(), r, mode="exact").count
            assert a == b == exact_cover_oracle(dmat, r)
            assert a == certified_cover_count_1d(coords, r)


class TestProperties:
    def test_sandwich(self, grid11):
        sub = grid11.all_indices()
        for r in (0.15, 0.25, 0.35, 0.5):
            cover = covering_number(sub, r, mode="exact")
            pack = packing_number(sub, r * (1 + 1e-9) + 4 * TOL, mode="exact")
            assert pack.count <= cover.count

    def test_sandwich_random_metric(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            dmat = random_metric_cloud(rng, 9, 2)
            cloud = PointCloud.from_matrix(dmat)
            r = float(np.quantile(dmat[dmat > 0], 0.5))
            cover = covering_number(cloud.all_indices(), r, mode="exact")
            pack = packing_number(cloud.all_indices(), r * (1 + 1e-9) + 4 * TOL,
                                  mode="exact")
            assert pack.count <= cover.count

    def test_monotone_in_r(self, grid11):
        sub = grid11.all_indices()
        counts = [covering_number(sub, r, mode="exact").count
                  for r in (0.1, 0.2, 0.3, 0.5, 1.0)]
        assert counts == sorted(counts, reverse=True)

    def test_cantor_ball_cover_is_exact(self):
        cloud = cantor_cloud(5)
        sub = cloud.all_indices()
        for r in (3.0 ** -2, 3.0 ** -3):
            res = covering_number(sub, r, mode="exact")
            assert res.exact
            assert res.count == certified_cover_count_1d(cloud.coords[:, 0], r)

    def test_determinism(self, grid11):
        sub = grid11.all_indices()
        a = covering_number(sub, 0.35, mode="exact")
        b = covering_number(sub, 0.35, mode="exact")
        assert [list(p.indices) for p in a.parts] == [list(p.indices) for p in b.parts]
        pa = packing_number(sub, 0.25, mode="greedy")
        pb = packing_number(sub, 0.25, mode="greedy")
        assert list(pa.witnesses.indices) == list(pb.witnesses.indices)
