"""The cluster set of an intersection matrix and its nesting structure.

A cluster is a pair (I, n): a maximal index set whose points pairwise
intersect to depth at least n.  The matrix must be in canonical order
(Hypothesis: rows weakly decreasing right of the diagonal), which makes
every cluster a contiguous interval; maximal depth-n clusters are then
exactly the maximal runs of consecutive indices with e[i][i+1] >= n.
Singletons are excluded: their twists act trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .errors import IntervalOutOfRange, NotCanonicallyOrdered
from .intersection import IntersectionMatrix, satisfies_interval_hypothesis


@dataclass(frozen=True)
class Cluster:
    """Interval {start, ..., start+length-1} at nesting depth >= 1."""

    start: int
    length: int
    depth: int

    def __post_init__(self):
        if self.start < 1 or self.length < 2 or self.depth < 1:
            raise IntervalOutOfRange(
                f"bad cluster (start={self.start}, length={self.length}, depth={self.depth})"
            )

    @property
    def interval(self) -> tuple[int, int]:
        return (self.start, self.length)

    @property
    def end(self) -> int:
        """Last index of the interval (inclusive)."""
        return self.start + self.length - 1

    def indices(self) -> range:
        return range(self.start, self.end + 1)

    def contains_interval(self, other: "Cluster") -> bool:
        return self.start <= other.start and other.end <= self.end

    def __str__(self) -> str:
        return f"({{{self.start}..{self.end}}}, {self.depth})"


@dataclass(frozen=True)
class ClusterForest:
    d: int
    clusters: tuple[Cluster, ...]

    def __post_init__(self):
        for c in self.clusters:
            if c.end > self.d:
                raise IntervalOutOfRange(f"cluster {c} exceeds d = {self.d}")
        ordered = tuple(sorted(self.clusters, key=lambda c: (c.depth, c.start)))
        object.__setattr__(self, "clusters", ordered)

    def __len__(self) -> int:
        return len(self.clusters)

    def to_json_list(self) -> list[dict[str, Any]]:
        return [
            {"interval": [c.start, c.length], "depth": c.depth} for c in self.clusters
        ]


def compute_clusters(m: IntersectionMatrix) -> ClusterForest:
    """All pairs (I, n) with |I| >= 2, pairwise e >= n and I maximal.

    Requires canonical order; raises NotCanonicallyOrdered otherwise
    (equivalently, some maximal subset would not be an interval).
    """
    if not satisfies_interval_hypothesis(m):
        raise NotCanonicallyOrdered(
            "matrix is not in canonical order; apply canonical_order first"
        )
    clusters: list[Cluster] = []
    for n in range(1, m.max_depth() + 1):
        i = 0
        while i < m.d:
            j = i
            while j + 1 < m.d and m.e[j][j + 1] >= n:
                j += 1
            if j > i:
                clusters.append(Cluster(start=i + 1, length=j - i + 1, depth=n))
            i = j + 1
    return ClusterForest(m.d, tuple(clusters))


@dataclass(frozen=True)
class TreeNode:
    cluster: Cluster
    children: tuple["TreeNode", ...]


def nesting_tree(forest: ClusterForest) -> tuple[TreeNode, ...]:
    """Roots of the containment tree.

    The parent of (I, n) is the unique deepest cluster whose disk contains
    it: (J, m) with J containing I, m <= n and (J, m) != (I, n); within a
    fixed interval the depths chain outward.
    """

    def parent_of(c: Cluster) -> Optional[Cluster]:
        containers = [
            other
            for other in forest.clusters
            if other != c and other.contains_interval(c) and other.depth <= c.depth
        ]
        if not containers:
            return None
        return max(containers, key=lambda o: (o.depth, -o.length))

    children: dict[Cluster, list[Cluster]] = {c: [] for c in forest.clusters}
    roots: list[Cluster] = []
    for c in forest.clusters:
        p = parent_of(c)
        if p is None:
            roots.append(c)
        else:
            children[p].append(c)

    def build(c: Cluster) -> TreeNode:
        kids = sorted(children[c], key=lambda o: (o.start, o.depth))
        return TreeNode(c, tuple(build(k) for k in kids))

    return tuple(build(r) for r in sorted(roots, key=lambda o: (o.start, o.depth)))


def tree_to_text(roots: tuple[TreeNode, ...]) -> str:
    lines: list[str] = []

    def walk(node: TreeNode, indent: int) -> None:
        lines.append("  " * indent + str(node.cluster))
        for child in node.children:
            walk(child, indent + 1)

    for r in roots:
        walk(r, 0)
    return "\n".join(lines)
