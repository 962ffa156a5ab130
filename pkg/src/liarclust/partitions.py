"""Partitions of the ground set {0, ..., n-1}.

A Partition is stored canonically: elements sorted inside each cluster,
clusters sorted by their smallest element.  Enumeration walks restricted
growth strings, which visits every partition exactly once and in an order
that tests elsewhere rely on ("canonical enumeration order").  Counting is
done independently of enumeration via the usual recurrences, so each side
can audit the other.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cache, cached_property
from typing import Iterable, Iterator

from .limits import check_enumeration_n


@dataclass(frozen=True)
class Partition:
    """A partition of {0..n-1} into nonempty clusters, held in canonical form."""

    n: int
    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n}")
        if any(not c for c in self.clusters):
            raise ValueError("empty cluster")
        canon = tuple(sorted((tuple(sorted(c)) for c in self.clusters), key=lambda c: c[0]))
        seen: set[int] = set()
        for cluster in canon:
            for x in cluster:
                if not 0 <= x < self.n:
                    raise ValueError(f"element {x} out of range for n={self.n}")
                if x in seen:
                    raise ValueError(f"element {x} appears twice")
                seen.add(x)
        if len(seen) != self.n:
            raise ValueError("clusters do not cover the ground set")
        object.__setattr__(self, "clusters", canon)

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Partition":
        """Build from a cluster-id sequence indexed by element."""
        labels = tuple(labels)
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(len(labels), tuple(tuple(g) for g in groups.values()))

    @cached_property
    def labels(self) -> tuple[int, ...]:
        """Element -> cluster index (clusters in canonical order)."""
        out = [0] * self.n
        for idx, cluster in enumerate(self.clusters):
            for x in cluster:
                out[x] = idx
        return tuple(out)

    @property
    def k(self) -> int:
        return len(self.clusters)

    def same_cluster(self, u: int, v: int) -> int:
        """+1 when u and v share a cluster, -1 otherwise."""
        if u == v:
            raise ValueError("same_cluster needs two distinct elements")
        labels = self.labels
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"pair ({u}, {v}) out of range for n={self.n}")
        return 1 if labels[u] == labels[v] else -1

    def to_json_dict(self) -> dict:
        return {"n": self.n, "clusters": [list(c) for c in self.clusters]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Partition":
        return cls(int(data["n"]), tuple(tuple(c) for c in data["clusters"]))


def _restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All length-n restricted growth strings, lexicographically."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    cap = [1] * n  # cap[i] = max(a[:i]) + 1, the one new label position i may open
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] >= cap[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m = max(cap[i] - 1, a[i]) + 1
        for j in range(i + 1, n):
            a[j] = 0
            cap[j] = m


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0..n-1}, in canonical enumeration order."""
    check_enumeration_n(n)
    for labels in _restricted_growth_strings(n):
        yield Partition.from_labels(labels)


def enumerate_k_partitions(n: int, k: int) -> Iterator[Partition]:
    """Every partition with exactly k clusters, in canonical enumeration order."""
    check_enumeration_n(n)
    if not 0 <= k <= n:
        return
    target = k - 1
    for labels in _restricted_growth_strings(n):
        if (max(labels) if labels else -1) == target:
            yield Partition.from_labels(labels)


@cache
def k_partition_label_tuples(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Label tuples of all k-clustered partitions; cached for hot loops."""
    check_enumeration_n(n)
    if not 0 < k <= n:
        return ()
    target = k - 1
    return tuple(
        labels for labels in _restricted_growth_strings(n) if max(labels) == target
    )


@cache
def stirling2(n: int, k: int) -> int:
    """Number of partitions of an n-set into exactly k nonempty clusters."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@cache
def bell(n: int) -> int:
    """Number of partitions of an n-set."""
    if n < 0:
        raise ValueError("bell needs a nonnegative argument")
    return sum(stirling2(n, k) for k in range(n + 1))


def random_k_partition(n: int, k: int, rng: random.Random) -> Partition:
    """Uniform random partition of {0..n-1} into exactly k clusters.

    Samples uniform surjections onto k labels and rejects non-surjective
    draws; every k-partition has exactly k! labelings, so the induced
    distribution over partitions is uniform.
    """
    if not 0 < k <= n:
        raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")
    while True:
        labels = [rng.randrange(k) for _ in range(n)]
        if len(set(labels)) == k:
            return Partition.from_labels(labels)
