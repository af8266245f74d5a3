"""Covering numbers and packings on subsets of a finite metric cloud.

Exact covering is minimum clique cover on the graph whose edges join points
at distance <= r (equivalently, coloring its complement); exact packing is
maximum independent set at separation >= sep.  Both run branch-and-bound on
generic metrics up to a size cutoff.  Sorted 1-D clouds take a sweep fast
path that is provably optimal at any size: the leftmost uncovered point must
start some part, and widening that part to everything within r never hurts.

Greedy modes always pick the lowest-index candidate first, so witnesses are
reproducible across runs and platforms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .cloud import Subset
from .config import DEFAULT_EXACT_CUTOFF, DEFAULT_TOL


@dataclass
class CoverResult:
    count: int
    parts: List[Subset]
    exact: bool


@dataclass
class PackResult:
    count: int
    witnesses: Subset
    exact: bool


def _sweep_cover_parts(subset: Subset, r: float, tol: float) -> List[np.ndarray]:
    """Greedy sweep on a sorted-1-D subset; optimal (see module docstring)."""
    coords = subset.coords_1d()
    idx = subset.indices
    parts = []
    start = 0
    while start < idx.size:
        stop = int(np.searchsorted(coords, coords[start] + r + tol, side="right"))
        parts.append(idx[start:stop])
        start = stop
    return parts


def _sweep_pack(subset: Subset, sep: float, tol: float,
                seed_pos: int = 0) -> np.ndarray:
    """Greedy sweep packing from position ``seed_pos``; optimal for seed 0."""
    coords = subset.coords_1d()
    idx = subset.indices
    chosen = [seed_pos]
    pos = seed_pos
    while True:
        nxt = int(np.searchsorted(coords, coords[pos] + sep - tol, side="left"))
        if nxt >= idx.size:
            break
        chosen.append(nxt)
        pos = nxt
    return idx[np.asarray(chosen, dtype=np.int64)]


def _greedy_cover_parts(subset: Subset, r: float, tol: float) -> List[np.ndarray]:
    """Extract maximal diameter-<=r parts, each seeded at the lowest uncovered index."""
    cloud = subset.cloud
    remaining = subset.indices.copy()
    parts = []
    while remaining.size:
        drow = cloud.distances_from(int(remaining[0]))[remaining]
        member = np.zeros(remaining.size, dtype=bool)
        member[0] = True
        maxd = drow
        for t in range(1, remaining.size):
            if maxd[t] <= r + tol:
                member[t] = True
                maxd = np.maximum(maxd, cloud.distances_from(int(remaining[t]))[remaining])
        parts.append(remaining[member])
        remaining = remaining[~member]
    return parts


def _greedy_pack_indices(subset: Subset, sep: float, tol: float,
                         seed: Optional[int] = None) -> np.ndarray:
    """Maximal separated family by lowest-index scan, optionally pinned to ``seed``."""
    cloud = subset.cloud
    idx = subset.indices
    chosen: List[int] = []
    if seed is not None:
        chosen.append(int(seed))
    for i in idx:
        i = int(i)
        if seed is not None and i == seed:
            continue
        row = cloud.distances_from(i)
        if all(row[c] >= sep - tol for c in chosen):
            chosen.append(i)
    return np.asarray(sorted(chosen), dtype=np.int64)


def _separated_lower_bound(subset: Subset, r: float, tol: float) -> np.ndarray:
    """A family pairwise > r + tol apart: a valid lower-bound witness for N_r."""
    cloud = subset.cloud
    chosen: List[int] = []
    for i in subset.indices:
        i = int(i)
        row = cloud.distances_from(i)
        if all(row[c] > r + tol for c in chosen):
            chosen.append(i)
    return np.asarray(chosen, dtype=np.int64)


def _bb_min_clique_cover(subset: Subset, r: float, tol: float) -> List[np.ndarray]:
    """Exact minimum partition into diameter-<=r parts, branch-and-bound.

    Vertices are assigned in index order to an existing compatible part or a
    fresh one; a fixed exploration order keeps the witness deterministic.
    """
    idx = subset.indices
    m = idx.size
    if m == 0:
        return []
    cloud = subset.cloud
    dmat = np.empty((m, m))
    for a in range(m):
        dmat[a] = cloud.distances_from(int(idx[a]))[idx]
    compat = dmat <= r + tol

    best_parts = [list(p) for p in
                  ([np.flatnonzero(np.isin(idx, part)) for part in _greedy_cover_parts(subset, r, tol)])]
    best_parts = [[int(v) for v in p] for p in best_parts]
    best = len(best_parts)
    lb = len(_separated_lower_bound(subset, r, tol))
    if best == lb:
        return [idx[np.asarray(sorted(p))] for p in best_parts]

    parts: List[List[int]] = []
    out: List[List[List[int]]] = [best_parts]
    best_box = [best]

    def dfs(v: int) -> None:
        if len(parts) >= best_box[0]:
            return
        if v == m:
            if len(parts) < best_box[0]:
                best_box[0] = len(parts)
                out[0] = [list(p) for p in parts]
            return
        for p in parts:
            if all(compat[v, u] for u in p):
                p.append(v)
                dfs(v + 1)
                p.pop()
        if len(parts) + 1 < best_box[0]:
            parts.append([v])
            dfs(v + 1)
            parts.pop()

    dfs(0)
    return [idx[np.asarray(sorted(p))] for p in out[0]]


def _bb_max_separated(subset: Subset, sep: float, tol: float) -> np.ndarray:
    """Exact maximum family with pairwise distance >= sep, branch-and-bound."""
    idx = subset.indices
    m = idx.size
    if m == 0:
        return idx.copy()
    cloud = subset.cloud
    ok = np.empty((m, m), dtype=bool)
    for a in range(m):
        ok[a] = cloud.distances_from(int(idx[a]))[idx] >= sep - tol
    np.fill_diagonal(ok, False)

    best_set: List[int] = []

    def dfs(v: int, chosen: List[int]) -> None:
        if len(chosen) + (m - v) <= len(best_set):
            return
        if v == m:
            if len(chosen) > len(best_set):
                best_set[:] = chosen
            return
        if all(ok[v, u] for u in chosen):
            chosen.append(v)
            dfs(v + 1, chosen)
            chosen.pop()
        dfs(v + 1, chosen)

    dfs(0, [])
    return idx[np.asarray(sorted(best_set), dtype=np.int64)]


def covering_number(subset: Subset, r: float, mode: str = "auto",
                    tol: float = DEFAULT_TOL,
                    exact_cutoff: int = DEFAULT_EXACT_CUTOFF) -> CoverResult:
    """Minimal (exact) or bounding (greedy) count of diameter-<=r parts covering ``subset``.

    ``auto`` solves exactly whenever it can (sorted-1-D sweep at any size,
    branch-and-bound within the cutoff) and falls back to greedy above it.
    Greedy counts are upper bounds on the true covering number.
    """
    if mode not in ("exact", "greedy", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    if not r > 0:
        raise ValueError("r must be positive")
    cloud = subset.cloud
    if len(subset) == 0:
        return CoverResult(0, [], True)
    if cloud.sorted_1d:
        parts = _sweep_cover_parts(subset, r, tol)
        return CoverResult(len(parts), [Subset(cloud, p) for p in parts], True)
    if mode == "exact" or (mode == "auto" and len(subset) <= exact_cutoff):
        if len(subset) > exact_cutoff:
            raise ValueError(
                f"exact covering requested on {len(subset)} points, cutoff {exact_cutoff}")
        parts = _bb_min_clique_cover(subset, r, tol)
        return CoverResult(len(parts), [Subset(cloud, p) for p in parts], True)
    parts = _greedy_cover_parts(subset, r, tol)
    return CoverResult(len(parts), [Subset(cloud, p) for p in parts], False)


def packing_number(subset: Subset, sep: float, mode: str = "greedy",
                   tol: float = DEFAULT_TOL,
                   exact_cutoff: int = DEFAULT_EXACT_CUTOFF) -> PackResult:
    """Maximum (exact) or maximal (greedy) family with pairwise distance >= sep.

    A greedy family is maximal, hence a valid witness and lower bound on the
    exact packing number.
    """
    if mode not in ("exact", "greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    if not sep > 0:
        raise ValueError("sep must be positive")
    cloud = subset.cloud
    if len(subset) == 0:
        return PackResult(0, Subset(cloud, np.empty(0, dtype=np.int64)), True)
    if cloud.sorted_1d:
        wit = _sweep_pack(subset, sep, tol)
        return PackResult(len(wit), Subset(cloud, wit), True)
    if mode == "exact":
        if len(subset) > exact_cutoff:
            raise ValueError(
                f"exact packing requested on {len(subset)} points, cutoff {exact_cutoff}")
        wit = _bb_max_separated(subset, sep, tol)
        return PackResult(len(wit), Subset(cloud, wit), True)
    wit = _greedy_pack_indices(subset, sep, tol)
    return PackResult(len(wit), Subset(cloud, wit), False)


def maximal_separated_family(subset: Subset, sep: float, seed: int,
                             tol: float = DEFAULT_TOL) -> Subset:
    """Greedy maximal sep-separated family containing ``seed``, lowest index first."""
    if not sep > 0:
        raise ValueError("sep must be positive")
    seed = int(seed)
    if seed not in subset.indices:
        raise ValueError("seed must belong to the subset")
    return Subset(subset.cloud, _greedy_pack_indices(subset, sep, tol, seed=seed))


def validate_cover(subset: Subset, result: CoverResult, r: float,
                   tol: float = DEFAULT_TOL) -> bool:
    """Independent witness check: parts jointly cover and each has diameter <= r."""
    from .cloud import diameter

    covered = np.unique(np.concatenate([p.indices for p in result.parts])) \
        if result.parts else np.empty(0, dtype=np.int64)
    if not np.array_equal(covered, subset.indices):
        return False
    if result.count != len(result.parts):
        return False
    return all(diameter(subset.cloud, p) <= r + tol for p in result.parts)


def validate_packing(result: PackResult, sep: float, tol: float = DEFAULT_TOL) -> bool:
    """Independent witness check: all pairwise distances >= sep (within tol)."""
    idx = result.witnesses.indices
    if result.count != idx.size:
        return False
    cloud = result.witnesses.cloud
    for a in range(idx.size - 1):
        row = cloud.distances_from(int(idx[a]))[idx[a + 1:]]
        if np.any(row < sep - tol):
            return False
    return True
