"""Adaptive learners that recover a hidden partition from same-cluster queries.

Every learner here follows one scheme: keep a list of clusters found so
far, take the next unplaced element, and compare it against one
representative per existing cluster until a comparison comes back positive.
Variants differ in the order elements are processed, in whether the number
of clusters is known in advance (which saves all comparisons against the
final cluster), in whether each logical comparison is repeated until l+1
equal answers accumulate (which makes the result immune to l lies), and in
whether the comparisons of one element-versus-everyone step are issued as a
single parallel round.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..partitions import Partition


@dataclass(frozen=True)
class Transcript:
    """What a learner did: every query with its answer and round, plus the result.

    records holds (u, v, answer, round) tuples in the order the physical
    queries were issued.  Sequential learners use one round per query;
    parallel learners share a round index across a batch.
    """

    records: tuple[tuple[int, int, int, int], ...]
    result: Partition
    rounds: int

    @property
    def queries(self) -> int:
        return len(self.records)

    def to_json_dict(self) -> dict:
        return {
            "records": [list(r) for r in self.records],
            "result": self.result.to_json_dict(),
            "rounds": self.rounds,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Transcript":
        records = tuple(tuple(int(x) for x in rec) for rec in data["records"])
        return cls(records, Partition.from_json_dict(data["result"]), int(data["rounds"]))


def _checked_answer(oracle, u: int, v: int) -> int:
    s = oracle.answer(u, v)
    if s not in (1, -1):
        raise ValueError(f"oracle returned {s!r} for ({u}, {v}), expected +1 or -1")
    return s


def _resolve_pair(oracle, u, v, l, records, round_start):
    """Ask (u, v) until one sign has occurred l+1 times; return (sign, next round)."""
    pos = neg = 0
    r = round_start
    while True:
        s = _checked_answer(oracle, u, v)
        records.append((u, v, s, r))
        r += 1
        if s == 1:
            pos += 1
            if pos == l + 1:
                return 1, r
        else:
            neg += 1
            if neg == l + 1:
                return -1, r


def _insertion_sweep(n, oracle, order, k, l) -> Transcript:
    """Core insertion pass over the elements in the given order.

    k is None when the number of clusters is unknown.  When k is known and
    k clusters already exist, an element is compared against the first k-1
    representatives only: all-negative forces it into the last cluster.
    Each logical comparison is resolved by l+1 matching answers.
    """
    if n < 1:
        raise ValueError(f"need at least one element, got n={n}")
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of range(n)")
    if k is not None and not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if l < 0:
        raise ValueError(f"lie tolerance must be nonnegative, got {l}")

    clusters: list[list[int]] = []
    records: list[tuple[int, int, int, int]] = []
    r = 0
    for v in order:
        limit = len(clusters) if k is None else min(len(clusters), k - 1)
        placed = False
        for idx in range(limit):
            sign, r = _resolve_pair(oracle, v, clusters[idx][0], l, records, r)
            if sign == 1:
                clusters[idx].append(v)
                placed = True
                break
        if not placed:
            if k is not None and len(clusters) == k:
                clusters[-1].append(v)
            else:
                clusters.append([v])
    result = Partition(n, tuple(tuple(c) for c in clusters))
    return Transcript(tuple(records), result, r)


def insertion_cluster(n, oracle) -> Transcript:
    """Place elements 0..n-1 in ascending order, opening clusters as needed."""
    return _insertion_sweep(n, oracle, range(n), None, 0)


def insertion_cluster_known_k(n, k, oracle) -> Transcript:
    """Insertion with the cluster count known: skips the last cluster's checks."""
    return _insertion_sweep(n, oracle, range(n), k, 0)


def randomized_insertion(n, oracle, seed) -> Transcript:
    """Insertion over a uniformly random element order drawn from seed."""
    order = list(range(n))
    random.Random(seed).shuffle(order)
    return _insertion_sweep(n, oracle, order, None, 0)


def randomized_insertion_known_k(n, k, oracle, seed) -> Transcript:
    order = list(range(n))
    random.Random(seed).shuffle(order)
    return _insertion_sweep(n, oracle, order, k, 0)


def robust_insertion(n, l, oracle) -> Transcript:
    """Insertion where every comparison repeats until l+1 equal answers."""
    return _insertion_sweep(n, oracle, range(n), None, l)


def robust_insertion_known_k(n, k, l, oracle) -> Transcript:
    return _insertion_sweep(n, oracle, range(n), k, l)


def _parallel_sweep(n, oracle, max_rounds) -> Transcript:
    """One round per cluster: the representative queries everything unplaced.

    With max_rounds set to k-1 the loop stops early and whatever remains
    forms the final cluster without any queries.
    """
    if n < 1:
        raise ValueError(f"need at least one element, got n={n}")
    remaining = list(range(n))
    clusters: list[list[int]] = []
    records: list[tuple[int, int, int, int]] = []
    rounds = 0
    while remaining and (max_rounds is None or rounds < max_rounds):
        rep = remaining[0]
        rest = remaining[1:]
        answers = [_checked_answer(oracle, rep, w) for w in rest]
        for w, s in zip(rest, answers):
            records.append((rep, w, s, rounds))
        clusters.append([rep] + [w for w, s in zip(rest, answers) if s == 1])
        remaining = [w for w, s in zip(rest, answers) if s == -1]
        rounds += 1
    if remaining:
        clusters.append(remaining)
    result = Partition(n, tuple(tuple(c) for c in clusters))
    return Transcript(tuple(records), result, rounds)


def parallel_insertion(n, oracle) -> Transcript:
    """Cluster discovery in rounds, one round per cluster found."""
    return _parallel_sweep(n, oracle, None)


def parallel_insertion_known_k(n, k, oracle) -> Transcript:
    """Parallel discovery that stops after k-1 rounds; the rest is one cluster."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return _parallel_sweep(n, oracle, k - 1)


class _RepeatUntilAgreement:
    """Oracle adapter that repeats each incoming query until l+1 equal answers."""

    def __init__(self, oracle, l: int, records: list) -> None:
        self._oracle = oracle
        self.n = oracle.n
        self._l = l
        self._records = records

    def answer(self, u: int, v: int) -> int:
        pos = neg = 0
        while True:
            s = _checked_answer(self._oracle, u, v)
            self._records.append((u, v, s, len(self._records)))
            if s == 1:
                pos += 1
                if pos == self._l + 1:
                    return 1
            else:
                neg += 1
                if neg == self._l + 1:
                    return -1


def robustify(learner, l: int):
    """Lift a lie-intolerant learner to tolerate l lies by repetition.

    learner must be a callable of a single oracle argument returning a
    Transcript (bind n, k, or seeds beforehand).  The wrapped learner
    drives the original sequentially and answers each of its queries by
    majority once one sign reaches l+1 occurrences, so any answer source
    that lies at most l times per logical comparison sequence cannot flip a
    resolved comparison.  The returned transcript records physical queries,
    one round each.
    """
    if l < 0:
        raise ValueError(f"lie tolerance must be nonnegative, got {l}")

    def robust_learner(oracle) -> Transcript:
        records: list[tuple[int, int, int, int]] = []
        inner = learner(_RepeatUntilAgreement(oracle, l, records))
        return Transcript(tuple(records), inner.result, len(records))

    return robust_learner
