"""Finite metric point clouds: distances, balls, diameters, Hausdorff metric.

A cloud is an immutable finite metric space given either by coordinate
points under a named metric (``euclidean`` or ``l1``) or by an explicit
distance matrix.  All operations here are pure functions; nothing mutates
shared state, so concurrent use is safe.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .config import DEFAULT_TOL

COORDINATE_METRICS = ("euclidean", "l1")
METRICS = COORDINATE_METRICS + ("matrix",)

# Explicit matrices are triangle-checked exhaustively up to this size,
# by deterministic sampling (10*n triples) above it.
_TRIANGLE_EXHAUSTIVE_LIMIT = 200


class PointCloud:
    """Immutable finite metric space.

    Coordinate mode stores an (n, d) float array; matrix mode stores a
    validated symmetric nonnegative matrix with zero diagonal.  Duplicate
    points (zero off-diagonal distance) are rejected at construction:
    separation checks downstream presuppose distinct points, and silently
    merging would hide generator bugs.
    """

    def __init__(self, points=None, metric: str = "euclidean",
                 matrix=None, meta: Optional[dict] = None,
                 tol: float = DEFAULT_TOL):
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
        self.metric = metric
        self.meta = dict(meta) if meta else {}
        self._tol = float(tol)
        self._diam: Optional[float] = None
        if metric == "matrix":
            if matrix is None:
                raise ValueError("matrix mode requires a distance matrix")
            self.coords = None
            self.matrix = _validated_matrix(np.asarray(matrix, dtype=float), tol)
            self.n = self.matrix.shape[0]
        else:
            if points is None:
                raise ValueError("coordinate mode requires points")
            if matrix is not None:
                raise ValueError("matrix only allowed with metric='matrix'")
            self.coords = _validated_coords(points)
            self.matrix = None
            self.n = self.coords.shape[0]
        self._sorted_1d = (
            self.coords is not None
            and self.coords.shape[1] == 1
            and bool(np.all(np.diff(self.coords[:, 0]) > 0))
        )

    @classmethod
    def from_matrix(cls, matrix, meta: Optional[dict] = None,
                    tol: float = DEFAULT_TOL) -> "PointCloud":
        return cls(metric="matrix", matrix=matrix, meta=meta, tol=tol)

    @property
    def dim(self) -> Optional[int]:
        return None if self.coords is None else self.coords.shape[1]

    @property
    def sorted_1d(self) -> bool:
        """True when points are one coordinate, strictly increasing by index.

        On such clouds 1-D sweep algorithms are exact, enabling fast paths.
        """
        return self._sorted_1d

    def distances_from(self, i: int) -> np.ndarray:
        """Vector of distances from point ``i`` to every point."""
        self._check_index(i)
        if self.matrix is not None:
            return self.matrix[i]
        diff = self.coords - self.coords[i]
        if self.metric == "euclidean":
            if self.coords.shape[1] == 1:
                return np.abs(diff[:, 0])
            return np.sqrt(np.einsum("ij,ij->i", diff, diff))
        return np.abs(diff).sum(axis=1)

    def distance(self, i: int, j: int) -> float:
        self._check_index(i)
        self._check_index(j)
        if self.matrix is not None:
            return float(self.matrix[i, j])
        return float(self.distances_from(i)[j])

    def diam(self) -> float:
        if self._diam is None:
            if self.n <= 1:
                self._diam = 0.0
            elif self.matrix is not None:
                self._diam = float(self.matrix.max())
            elif self.sorted_1d:
                self._diam = float(self.coords[-1, 0] - self.coords[0, 0])
            else:
                self._diam = max(float(self.distances_from(i).max()) for i in range(self.n))
        return self._diam

    def all_indices(self) -> "Subset":
        return Subset(self, np.arange(self.n, dtype=np.int64))

    def subset(self, indices: Iterable[int]) -> "Subset":
        return Subset(self, np.asarray(sorted(set(int(i) for i in indices)), dtype=np.int64))

    def min_positive_gap(self) -> float:
        """Smallest nonzero pairwise distance (the cloud's point resolution)."""
        if self.n <= 1:
            return 0.0
        if self.sorted_1d:
            return float(np.diff(self.coords[:, 0]).min())
        best = np.inf
        for i in range(self.n - 1):
            row = self.distances_from(i)[i + 1:]
            best = min(best, float(row.min()))
        return best

    def _check_index(self, i: int) -> None:
        if not 0 <= int(i) < self.n:
            raise IndexError(f"point index {i} out of range for cloud of size {self.n}")

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, metric={self.metric!r})"


@dataclass(frozen=True)
class Subset:
    """Sorted duplicate-free list of point indices into one cloud."""

    cloud: PointCloud
    indices: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        object.__setattr__(self, "indices", idx)
        if idx.ndim != 1:
            raise ValueError("indices must be one-dimensional")
        if idx.size:
            if idx[0] < 0 or idx[-1] >= self.cloud.n:
                raise IndexError("subset index out of range")
            if np.any(np.diff(idx) <= 0):
                raise ValueError("subset indices must be sorted and unique")

    def __len__(self) -> int:
        return int(self.indices.size)

    def coords_1d(self) -> np.ndarray:
        """Coordinates for sorted-1-D clouds (ascending along the subset)."""
        return self.cloud.coords[self.indices, 0]

    def __repr__(self) -> str:
        return f"Subset({len(self)} of {self.cloud.n})"


def _validated_coords(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("points must form a non-empty 2-D array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("points must be finite")
    uniq = np.unique(arr, axis=0)
    if uniq.shape[0] != arr.shape[0]:
        raise ValueError("duplicate points rejected (zero pairwise distance)")
    return arr


def _validated_matrix(m: np.ndarray, tol: float) -> np.ndarray:
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError("distance matrix must be square and non-empty")
    if not np.all(np.isfinite(m)):
        raise ValueError("distance matrix must be finite")
    if np.any(m < 0):
        raise ValueError("distances must be nonnegative")
    if np.any(np.abs(m - m.T) > tol):
        raise ValueError("distance matrix must be symmetric")
    n = m.shape[0]
    if np.any(np.diag(m) != 0):
        raise ValueError("diagonal must be zero")
    off = m + np.diag(np.full(n, np.inf))
    if n > 1 and off.min() <= 0:
        raise ValueError("duplicate points rejected (zero off-diagonal distance)")
    if n <= _TRIANGLE_EXHAUSTIVE_LIMIT:
        for j in range(n):
            if np.any(m > m[:, j, None] + m[None, j, :] + tol):
                raise ValueError("triangle inequality violated")
    else:
        # O(n^3) would dominate; a fixed-seed sample keeps runs reproducible.
        rng = np.random.default_rng(1234)
        trip = rng.integers(0, n, size=(10 * n, 3))
        i, j, k = trip[:, 0], trip[:, 1], trip[:, 2]
        if np.any(m[i, k] > m[i, j] + m[j, k] + tol):
            raise ValueError("triangle inequality violated (sampled)")
    return m


def distance(cloud: PointCloud, i: int, j: int) -> float:
    """Distance between points ``i`` and ``j`` under the cloud's metric."""
    return cloud.distance(i, j)


def diameter(cloud: PointCloud, subset: Optional[Subset] = None) -> float:
    """Max pairwise distance within ``subset`` (whole cloud if omitted).

    Empty and singleton subsets have diameter 0.
    """
    if subset is None:
        return cloud.diam()
    idx = subset.indices
    if idx.size <= 1:
        return 0.0
    if cloud.sorted_1d:
        c = subset.coords_1d()
        return float(c[-1] - c[0])
    return max(float(cloud.distances_from(int(i))[idx].max()) for i in idx[:-1])


def closed_ball(cloud: PointCloud, center: int, radius: float,
                tol: float = DEFAULT_TOL) -> Subset:
    """Indices within ``radius`` (inclusive, + tol) of ``center``; always contains it."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    cloud._check_index(center)
    if cloud.sorted_1d:
        x = cloud.coords[center, 0]
        lo = int(np.searchsorted(cloud.coords[:, 0], x - radius - tol, side="left"))
        hi = int(np.searchsorted(cloud.coords[:, 0], x + radius + tol, side="right"))
        return Subset(cloud, np.arange(lo, hi, dtype=np.int64))
    row = cloud.distances_from(center)
    return Subset(cloud, np.flatnonzero(row <= radius + tol).astype(np.int64))


def _directed_hausdorff(a: PointCloud, b: PointCloud) -> float:
    """sup over points of ``a`` of the distance to the nearest point of ``b``."""
    if a.sorted_1d and b.sorted_1d:
        xs = a.coords[:, 0]
        ys = b.coords[:, 0]
        pos = np.clip(np.searchsorted(ys, xs), 1, ys.size - 1) if ys.size > 1 else np.zeros(xs.size, int)
        left = np.abs(xs - ys[pos - 1]) if ys.size > 1 else np.abs(xs - ys[0])
        right = np.abs(xs - ys[pos]) if ys.size > 1 else left
        return float(np.minimum(left, right).max())
    worst = 0.0
    chunk = 256
    for start in range(0, a.n, chunk):
        block = a.coords[start:start + chunk]
        if a.metric == "euclidean":
            d = np.sqrt(((block[:, None, :] - b.coords[None, :, :]) ** 2).sum(axis=2))
        else:
            d = np.abs(block[:, None, :] - b.coords[None, :, :]).sum(axis=2)
        worst = max(worst, float(d.min(axis=1).max()))
    return worst


def hausdorff_distance(a: PointCloud, b: PointCloud) -> float:
    """Smallest r with each cloud inside the closed r-neighborhood of the other."""
    if a.n == 0 or b.n == 0:
        raise ValueError("Hausdorff distance requires non-empty clouds")
    if a.metric == "matrix" or b.metric == "matrix":
        raise ValueError("incompatible metric modes: explicit-matrix clouds share no ambient space")
    if a.metric != b.metric or a.dim != b.dim:
        raise ValueError("incompatible metric modes")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))
