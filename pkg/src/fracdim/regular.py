"""(k, l)-regular families: the machine-checkable certificate objects.

A family assigns a cloud point to every label sequence s over {0..l-1} up
to a finite depth, subject to
  (child) parent at level n and its child differ by at most 2^(-k*n-1),
  (sep)   distinct labels at level n are at least 2^(-k*n+2) apart,
  (strong) optionally, the 0-child reuses the parent point exactly.

Verification checks the definition directly and reports every violation.
Search builds families recursively: the candidate children of a node at
level n are the points of the closed ball of radius 2^(-k*n-1), and an
assigned child set must be pairwise 2^(-k*(n+1)+2)-separated.  Because the
child and sep constraints at earlier levels already force separation across
branches (for k >= 2 the cross-branch gap is at least (8/3)*2^(-k*(j+1)) at
the split level j, which dominates every deeper requirement), subtrees are
feasible or not independently of their siblings; the search memoizes
subtree outcomes per (point, level, remaining-depth) and is therefore
exhaustive whenever the node-expansion budget is not hit.  Every returned
family is re-checked by the verifier before being handed out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .cloud import PointCloud, Subset, closed_ball
from .config import DEFAULT_BUDGET, DEFAULT_EXACT_CUTOFF, DEFAULT_TOL
from .covering import (_separated_lower_bound, covering_number,
                       _greedy_cover_parts)

Label = Tuple[int, ...]


def child_radius(k: int, level: int) -> float:
    """Max distance from a level-``level`` parent to its children."""
    return 2.0 ** (-k * level - 1)


def level_separation(k: int, level: int) -> float:
    """Min distance between distinct labels at ``level``."""
    return 2.0 ** (-k * level + 2)


def label_str(label: Label) -> str:
    return ".".join(str(c) for c in label)


def parse_label(text: str) -> Label:
    return () if text == "" else tuple(int(p) for p in text.split("."))


@dataclass
class RegularFamily:
    """Labeled tree of point indices: s in l^{<=depth} -> point index."""

    k: int
    l: int
    depth: int
    strong: bool
    assign: Dict[Label, int]

    def __post_init__(self) -> None:
        if self.k < 2 or self.l < 2:
            raise ValueError("need k >= 2 and l >= 2")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        expected = sum(self.l ** n for n in range(self.depth + 1))
        if len(self.assign) != expected:
            raise ValueError(
                f"assignment must cover all {expected} labels up to depth {self.depth}")
        for lab in self.assign:
            if len(lab) > self.depth or any(not 0 <= c < self.l for c in lab):
                raise ValueError(f"invalid label {lab!r}")

    def labels_at(self, n: int) -> List[Label]:
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        return sorted(lab for lab in self.assign if len(lab) == n)

    def truncated(self, new_depth: int) -> "RegularFamily":
        """Restriction to labels of length <= new_depth (closes the class)."""
        if not 0 <= new_depth <= self.depth:
            raise ValueError("new_depth outside family depth")
        assign = {lab: i for lab, i in self.assign.items() if len(lab) <= new_depth}
        return RegularFamily(self.k, self.l, new_depth, self.strong, assign)

    def to_dict(self) -> dict:
        labels = sorted(self.assign, key=lambda u: (len(u), u))
        return {
            "k": self.k, "l": self.l, "depth": self.depth, "strong": self.strong,
            "assign": {label_str(lab): int(self.assign[lab]) for lab in labels},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RegularFamily":
        assign = {parse_label(s): int(i) for s, i in data["assign"].items()}
        return cls(int(data["k"]), int(data["l"]), int(data["depth"]),
                   bool(data["strong"]), assign)


@dataclass(frozen=True)
class Violation:
    kind: str          # "child" | "sep" | "strong"
    s: Label
    t: Label
    measured: float
    required: float

    def to_dict(self) -> dict:
        return {"kind": self.kind, "s": label_str(self.s), "t": label_str(self.t),
                "measured": self.measured, "required": self.required}


@dataclass
class RegularityReport:
    ok: bool
    violations: List[Violation]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def _pairwise_distances(cloud: PointCloud, idx: np.ndarray) -> np.ndarray:
    if cloud.matrix is not None:
        return cloud.matrix[np.ix_(idx, idx)]
    sub = cloud.coords[idx]
    diff = sub[:, None, :] - sub[None, :, :]
    if cloud.metric == "euclidean":
        return np.sqrt((diff ** 2).sum(axis=2))
    return np.abs(diff).sum(axis=2)


def verify_regular(cloud: PointCloud, family: RegularFamily,
                   tol: float = DEFAULT_TOL) -> RegularityReport:
    """Check the regularity definition directly; report every violation.

    Inequalities are evaluated on the permissive side of ``tol``.  The strong
    condition is point identity, which on a duplicate-free cloud is index
    identity.
    """
    for lab, idx in family.assign.items():
        if not 0 <= idx < cloud.n:
            raise IndexError(f"label {label_str(lab)!r} assigned out-of-range index {idx}")
    violations: List[Violation] = []
    for n in range(family.depth):
        req = child_radius(family.k, n)
        for s in family.labels_at(n):
            row = cloud.distances_from(family.assign[s])
            for c in range(family.l):
                t = s + (c,)
                d = float(row[family.assign[t]])
                if d > req + tol:
                    violations.append(Violation("child", s, t, d, req))
    for n in range(1, family.depth + 1):
        labs = family.labels_at(n)
        idx = np.asarray([family.assign[s] for s in labs], dtype=np.int64)
        req = level_separation(family.k, n)
        dmat = _pairwise_distances(cloud, idx)
        bad = np.argwhere(np.triu(dmat < req - tol, k=1))
        for a, b in bad:
            violations.append(Violation("sep", labs[a], labs[b], float(dmat[a, b]), req))
    if family.strong:
        for n in range(family.depth):
            for s in family.labels_at(n):
                t = s + (0,)
                if family.assign[t] != family.assign[s]:
                    d = cloud.distance(family.assign[s], family.assign[t])
                    violations.append(Violation("strong", s, t, d, 0.0))
    return RegularityReport(not violations, violations)


@dataclass
class SearchResult:
    """Outcome of one certificate search.

    ``family is None`` with ``exhausted`` means "not found within budget";
    with the budget intact it means "absent" (the search is exhaustive).
    """

    family: Optional[RegularFamily]
    exhausted: bool
    expansions: int


class _BudgetExhausted(Exception):
    pass


class _Search:
    def __init__(self, cloud: PointCloud, k: int, l: int, strong: bool,
                 budget: int, tol: float):
        self.cloud = cloud
        self.k = k
        self.l = l
        self.strong = strong
        self.budget = budget
        self.tol = tol
        self.expansions = 0
        self._frag: Dict[Tuple[int, int, int], Optional[dict]] = {}
        self._plausible: Dict[Tuple[int, int, int], bool] = {}

    def _tick(self) -> None:
        self.expansions += 1
        if self.expansions > self.budget:
            raise _BudgetExhausted

    def _pack_upper_bound(self, indices: np.ndarray, sep: float) -> int:
        """Upper bound on the size of a sep-separated subset of ``indices``."""
        m = int(indices.size)
        if m <= 1:
            return m
        if self.cloud.sorted_1d:
            coords = self.cloud.coords[indices, 0]
            count = 0
            pos = 0
            while pos < m:
                count += 1
                pos = int(np.searchsorted(coords, coords[pos] + sep - self.tol, side="left"))
            return count
        # Any cover by parts of diameter < sep admits at most one separated
        # point per part, so a greedy cover count bounds the packing.
        if sep <= 3 * self.tol:
            return m
        sub = Subset(self.cloud, indices)
        return len(_greedy_cover_parts(sub, sep - 3 * self.tol, self.tol))

    def _is_plausible(self, point: int, level: int, rest: int) -> bool:
        """One-step lookahead: necessary condition for a feasible subtree."""
        if rest <= 0:
            return True
        key = (point, level, rest)
        if key not in self._plausible:
            pool = closed_ball(self.cloud, point, child_radius(self.k, level), self.tol)
            ub = self._pack_upper_bound(pool.indices, level_separation(self.k, level + 1))
            self._plausible[key] = ub >= self.l
        return self._plausible[key]

    def subtree(self, point: int, level: int, rest: int) -> Optional[dict]:
        """Assignment fragment of a depth-``rest`` subtree rooted at ``point``, or None."""
        key = (point, level, rest)
        if key in self._frag:
            return self._frag[key]
        self._tick()
        frag = self._expand(point, level, rest)
        self._frag[key] = frag
        return frag

    def _expand(self, point: int, level: int, rest: int) -> Optional[dict]:
        if rest == 0:
            return {(): point}
        sep = level_separation(self.k, level + 1)
        pool = closed_ball(self.cloud, point, child_radius(self.k, level), self.tol).indices
        # cheapest rejection first: even the unfiltered pool cannot hold l
        # children at the required separation
        if self._pack_upper_bound(pool, sep) < self.l:
            return None
        if self.strong and self.subtree(point, level + 1, rest - 1) is None:
            return None
        cands = [int(q) for q in pool
                 if (not self.strong or q != point)
                 and self._is_plausible(int(q), level + 1, rest - 1)]
        need = self.l - 1 if self.strong else self.l
        if need > 0:
            arr = np.asarray(cands, dtype=np.int64)
            if self._pack_upper_bound(arr, sep) < need:
                return None
        chosen0 = [point] if self.strong else []
        children = self._find_children(cands, chosen0, sep, level, rest, need)
        if children is None:
            return None
        ordered = ([point] + children) if self.strong else children
        frag = {(): point}
        for c, q in enumerate(ordered):
            sub = self._frag[(q, level + 1, rest - 1)]
            for lab, v in sub.items():
                frag[(c,) + lab] = v
        return frag

    def _sep_ok(self, q: int, chosen: List[int], sep: float) -> bool:
        if not chosen:
            return True
        row = self.cloud.distances_from(q)
        return all(row[c] >= sep - self.tol for c in chosen)

    def _find_children(self, cands: List[int], chosen0: List[int], sep: float,
                       level: int, rest: int, need: int) -> Optional[List[int]]:
        """Lexicographically first feasible separated child set, ascending index."""
        if need == 0:
            return []
        if self.cloud.sorted_1d:
            # Greedy leftmost is maximizing in 1-D even with a pinned seed:
            # replacing an optimal pick by an earlier compatible one only
            # grows every later gap.
            chosen = list(chosen0)
            picks: List[int] = []
            for q in cands:
                if self._sep_ok(q, chosen, sep) and self.subtree(q, level + 1, rest - 1) is not None:
                    picks.append(q)
                    chosen.append(q)
                    if len(picks) == need:
                        return picks
            return None
        return self._dfs_children(cands, 0, list(chosen0), [], sep, level, rest, need)

    def _dfs_children(self, cands: List[int], pos: int, chosen: List[int],
                      picks: List[int], sep: float, level: int, rest: int,
                      need: int) -> Optional[List[int]]:
        if len(picks) == need:
            return list(picks)
        if len(picks) + (len(cands) - pos) < need:
            return None
        for i in range(pos, len(cands)):
            q = cands[i]
            if not self._sep_ok(q, chosen, sep):
                continue
            if self.subtree(q, level + 1, rest - 1) is None:
                continue
            self._tick()
            chosen.append(q)
            picks.append(q)
            found = self._dfs_children(cands, i + 1, chosen, picks, sep, level, rest, need)
            picks.pop()
            chosen.pop()
            if found is not None:
                return found
            # exclude q and keep scanning: q may block too many later picks
        return None


def search_regular(cloud: PointCloud, k: int, l: int, depth: int,
                   strong: bool = False, budget: int = DEFAULT_BUDGET,
                   tol: float = DEFAULT_TOL) -> SearchResult:
    """Search for a (k, l)-regular family of the given depth.

    Root candidates are tried in index order; child sets in lexicographic
    index order, so the first success is deterministic.  The found family is
    re-verified against the definition before being returned.
    """
    if k < 2 or l < 2:
        raise ValueError("need k >= 2 and l >= 2")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    searcher = _Search(cloud, k, l, strong, budget, tol)
    try:
        for root in range(cloud.n):
            frag = searcher.subtree(root, 0, depth)
            if frag is not None:
                family = RegularFamily(k, l, depth, strong, dict(frag))
                report = verify_regular(cloud, family, tol)
                if not report.ok:
                    raise RuntimeError(
                        "internal error: search produced a family failing verification")
                return SearchResult(family, False, searcher.expansions)
    except _BudgetExhausted:
        return SearchResult(None, True, searcher.expansions)
    return SearchResult(None, False, searcher.expansions)


def choose_parameters(C: float, beta: float, alpha: float) -> Tuple[int, int]:
    """Smallest k >= 5 whose l = floor(C * 2^((k-4)*beta)) certifies more than alpha."""
    if not C > 0:
        raise ValueError("C must be positive")
    if not beta > alpha >= 0:
        raise ValueError("need beta > alpha >= 0")
    k = 5
    while True:
        l = math.floor(C * 2.0 ** ((k - 4) * beta))
        if l >= 2 and math.log2(l) / k > alpha:
            return k, l
        k += 1


def level_points(family: RegularFamily, n: int, cloud: PointCloud) -> Subset:
    """Distinct assigned points at level ``n`` (strong families collapse reuse)."""
    if n > family.depth:
        raise ValueError(f"level {n} exceeds family depth {family.depth}")
    idx = np.unique(np.asarray([family.assign[s] for s in family.labels_at(n)],
                               dtype=np.int64))
    return Subset(cloud, idx)


def _cover_count_lower_bound(subset: Subset, r: float, tol: float,
                             exact_cutoff: int) -> int:
    """A certified lower bound on the covering number of ``subset`` at ``r``."""
    if subset.cloud.sorted_1d or len(subset) <= exact_cutoff:
        return covering_number(subset, r, mode="exact", tol=tol,
                               exact_cutoff=exact_cutoff).count
    # Points pairwise farther than r + tol must land in distinct parts.
    return int(_separated_lower_bound(subset, r, tol).size)


def certificate_scaling_check(cloud: PointCloud, family: RegularFamily,
                              tol: float = DEFAULT_TOL,
                              exact_cutoff: int = DEFAULT_EXACT_CUTOFF) -> bool:
    """Machine-check the covering-count chain behind the certified bound.

    For every deepest-level point x and every scale-bracket index pair
    (n >= 1, m >= 0) with n + m + 1 <= depth, the ball B(x, R) must need at
    least l^m parts of diameter r to cover its deepest-level points.  Each
    bracket is probed at its two representable extremes; counts are
    lower-bounded by certified quantities only, never by greedy covers.
    """
    report = verify_regular(cloud, family, tol)
    if not report.ok:
        raise ValueError("certificate_scaling_check requires a verified family")
    k, l, depth = family.k, family.l, family.depth
    deepest = level_points(family, depth, cloud)
    for n in range(1, depth):
        for m in range(0, depth - n):
            rep_pairs = (
                (2.0 ** (-k * n + 2), 2.0 ** (-k * (n + m))),          # hard corner
                (2.0 ** (-k * (n - 1) + 1), 2.0 ** (-k * (n + m + 1) + 1)),  # outer corner
            )
            needed = l ** m
            for x in deepest.indices:
                for R, r in rep_pairs:
                    ball = closed_ball(cloud, int(x), R, tol)
                    inter = np.intersect1d(ball.indices, deepest.indices)
                    count = _cover_count_lower_bound(Subset(cloud, inter), r, tol,
                                                     exact_cutoff)
                    if count < needed:
                        return False
    return True
