"""Nonadaptive query plans: ask a fixed set of pairs, then decode all at once.

A plan lists every pair it will query, with a multiplicity for robust
variants that repeat queries.  Plans built here are minimal for their
setting: a star for two clusters, everything except a perfect matching
between the two halves for three clusters, everything except a single pair
for four or more clusters, and the complete pair set when the cluster count
is unknown.  Each plan carries the name of the decoder that can reconstruct
the hidden partition from truthful answers; decoders validate as they go
and raise InfeasibleAnswersError when no partition the plan can name
explains the answers, or AmbiguousAnswersError when more than one does.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

from ..instance import SignedInstance
from ..limits import check_enumeration_n
from ..partitions import Partition, enumerate_k_partitions, enumerate_partitions

Pair = tuple[int, int]

DECODER_STAR = "star"
DECODER_SPLIT_MATCHING = "split_matching"
DECODER_ALL_BUT_ONE = "all_but_one"
DECODER_COMPLETE = "complete"

_DECODERS = (
    DECODER_STAR,
    DECODER_SPLIT_MATCHING,
    DECODER_ALL_BUT_ONE,
    DECODER_COMPLETE,
)


class DecodeError(ValueError):
    """Base class for decoding failures."""


class InfeasibleAnswersError(DecodeError):
    """No partition the plan can name produces these answers."""


class AmbiguousAnswersError(DecodeError):
    """More than one partition explains the answers equally well."""


@dataclass(frozen=True)
class QueryPlan:
    """A fixed multiset of pair queries plus the decoder that inverts them.

    k_mode is the promised number of clusters, or None when the decoder
    works without one.  queries holds (u, v, multiplicity) with u < v, each
    pair at most once.
    """

    n: int
    k_mode: int | None
    queries: tuple[tuple[int, int, int], ...]
    decoder_id: str

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least two elements, got n={self.n}")
        if self.k_mode is not None and not 1 <= self.k_mode <= self.n:
            raise ValueError(f"k_mode {self.k_mode} out of range for n={self.n}")
        if self.decoder_id not in _DECODERS:
            raise ValueError(f"unknown decoder {self.decoder_id!r}")
        seen = set()
        for u, v, m in self.queries:
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad pair ({u}, {v}) for n={self.n}")
            if m < 1:
                raise ValueError(f"multiplicity must be positive, got {m}")
            if (u, v) in seen:
                raise ValueError(f"pair ({u}, {v}) listed twice")
            seen.add((u, v))

    @property
    def total_queries(self) -> int:
        return sum(m for _, _, m in self.queries)

    def pairs(self) -> tuple[Pair, ...]:
        return tuple((u, v) for u, v, _ in self.queries)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k_mode": self.k_mode,
            "queries": [list(q) for q in self.queries],
            "decoder": self.decoder_id,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "QueryPlan":
        queries = tuple(tuple(int(x) for x in q) for q in data["queries"])
        k_mode = data["k_mode"]
        return cls(int(data["n"]), None if k_mode is None else int(k_mode), queries, data["decoder"])


def _all_pairs(n: int) -> list[Pair]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def build_plan(n: int, k: int | None = None) -> QueryPlan:
    """The minimal nonadaptive plan for n elements and promised k clusters.

    With k unknown every pair must be asked.  With k known the plan leaves
    some pairs silent: n-1 star queries suffice for k=2; for k=3 the pairs
    of a perfect matching between the two halves stay unasked; for k >= 4
    exactly one pair stays unasked.  Known-k plans require 2 <= k < n.
    """
    if n < 2:
        raise ValueError(f"need at least two elements, got n={n}")
    if k is None:
        queries = tuple((u, v, 1) for u, v in _all_pairs(n))
        return QueryPlan(n, None, queries, DECODER_COMPLETE)
    if not 2 <= k < n:
        raise ValueError(f"known-k plans need 2 <= k < n, got k={k}, n={n}")
    if k == 2:
        queries = tuple((0, v, 1) for v in range(1, n))
        return QueryPlan(n, 2, queries, DECODER_STAR)
    if k == 3 and n >= 5:
        half = (n + 1) // 2
        silent = {(i, half + i) for i in range(n - half)}
        queries = tuple((u, v, 1) for u, v in _all_pairs(n) if (u, v) not in silent)
        return QueryPlan(n, 3, queries, DECODER_SPLIT_MATCHING)
    # k >= 4, and the one boundary case (n=4, k=3) where the same shape works:
    # ask everything except the single pair (n-2, n-1).
    silent_pair = (n - 2, n - 1)
    queries = tuple((u, v, 1) for u, v in _all_pairs(n) if (u, v) != silent_pair)
    return QueryPlan(n, k, queries, DECODER_ALL_BUT_ONE)


def robust_plan(plan: QueryPlan, l: int) -> QueryPlan:
    """Repeat every query 2l+1 times so strict majorities survive l lies."""
    if l < 0:
        raise ValueError(f"lie tolerance must be nonnegative, got {l}")
    queries = tuple((u, v, m * (2 * l + 1)) for u, v, m in plan.queries)
    return replace(plan, queries=queries)


def truthful_answers(plan: QueryPlan, hidden: Partition) -> list[tuple[int, int, int]]:
    """The answer list a truthful source produces for this plan."""
    if hidden.n != plan.n:
        raise ValueError(f"partition is over {hidden.n} elements, plan over {plan.n}")
    out = []
    for u, v, m in plan.queries:
        s = hidden.same_cluster(u, v)
        out.extend([(u, v, s)] * m)
    return out


def _group_answers(plan: QueryPlan, answers) -> dict[Pair, list[int]]:
    """Bucket raw (u, v, sign) records per plan pair, validating coverage."""
    want = {(u, v): m for u, v, m in plan.queries}
    got: dict[Pair, list[int]] = {pair: [] for pair in want}
    for item in answers:
        u, v, s = item
        key = (min(u, v), max(u, v))
        if key not in want:
            raise ValueError(f"answer for pair {key} which the plan never asks")
        if s not in (1, -1):
            raise ValueError(f"answer sign must be +1 or -1, got {s!r}")
        got[key].append(s)
    for pair, m in want.items():
        if len(got[pair]) != m:
            raise ValueError(
                f"pair {pair} answered {len(got[pair])} times, plan asks {m}"
            )
    return got


def decode_plan(plan: QueryPlan, answers) -> Partition:
    """Reconstruct the partition from one answer per planned query.

    answers is an iterable of (u, v, sign).  Plans with repeated queries
    must go through majority_decode instead.
    """
    if any(m != 1 for _, _, m in plan.queries):
        raise ValueError("plan repeats queries; decode with majority_decode")
    grouped = _group_answers(plan, answers)
    signs = {pair: sgns[0] for pair, sgns in grouped.items()}
    return _dispatch(plan, signs)


def majority_decode(plan: QueryPlan, answers, l: int) -> Partition:
    """Decode a repeated plan by strict per-pair majority.

    With every pair asked 2l+1 times, any answer source lying at most l
    times per pair cannot flip a majority, so the result matches what the
    truthful answers would decode to.
    """
    if l < 0:
        raise ValueError(f"lie tolerance must be nonnegative, got {l}")
    grouped = _group_answers(plan, answers)
    signs = {}
    for pair, sgns in grouped.items():
        pos = sum(1 for s in sgns if s == 1)
        neg = len(sgns) - pos
        if pos == neg:
            raise InfeasibleAnswersError(f"pair {pair} answered to an exact tie")
        signs[pair] = 1 if pos > neg else -1
    base = replace(plan, queries=tuple((u, v, 1) for u, v, _ in plan.queries))
    return _dispatch(base, signs)


def _check_plan_shape(plan: QueryPlan) -> None:
    """Verify the query set has the structure its decoder relies on."""
    asked = set(plan.pairs())
    missing = set(_all_pairs(plan.n)) - asked
    if plan.decoder_id == DECODER_STAR:
        if plan.k_mode != 2 or asked != {(0, v) for v in range(1, plan.n)}:
            raise ValueError("star decoder needs k_mode 2 and exactly the star of 0")
    elif plan.decoder_id == DECODER_COMPLETE:
        if missing:
            raise ValueError("complete decoder needs every pair queried")
    elif plan.decoder_id == DECODER_ALL_BUT_ONE:
        if plan.k_mode is None or len(missing) != 1:
            raise ValueError("all_but_one decoder needs known k and one silent pair")
    else:
        if plan.k_mode != 3:
            raise ValueError("split_matching decoder needs k_mode 3")
        half = (plan.n + 1) // 2
        touched: set[int] = set()
        for u, v in missing:
            if (u < half) == (v < half):
                raise ValueError("silent pairs must cross the two halves")
            if u in touched or v in touched:
                raise ValueError("silent pairs must form a matching")
            touched.update((u, v))


def _dispatch(plan: QueryPlan, signs: dict[Pair, int]) -> Partition:
    _check_plan_shape(plan)
    if plan.decoder_id == DECODER_STAR:
        return _decode_star(plan, signs)
    if plan.decoder_id == DECODER_COMPLETE:
        return _decode_complete(plan, signs)
    if plan.decoder_id == DECODER_ALL_BUT_ONE:
        return _decode_all_but_one(plan, signs)
    return _decode_split_matching(plan, signs)


def _validated(plan: QueryPlan, signs: dict[Pair, int], clusters) -> Partition:
    """Build the partition and check it explains every answer exactly."""
    cleaned = tuple(tuple(sorted(c)) for c in clusters if c)
    covered = sorted(x for c in cleaned for x in c)
    if covered != list(range(plan.n)):
        raise InfeasibleAnswersError("answers do not describe a partition")
    p = Partition(plan.n, cleaned)
    if plan.k_mode is not None and p.k != plan.k_mode:
        raise InfeasibleAnswersError(
            f"answers describe {p.k} clusters, plan promises {plan.k_mode}"
        )
    for (u, v), s in signs.items():
        if p.same_cluster(u, v) != s:
            raise InfeasibleAnswersError(f"answer for {(u, v)} contradicts the rest")
    return p


def _decode_star(plan: QueryPlan, signs: dict[Pair, int]) -> Partition:
    with_zero = [0] + [v for v in range(1, plan.n) if signs[(0, v)] == 1]
    other = [v for v in range(1, plan.n) if signs[(0, v)] == -1]
    return _validated(plan, signs, [with_zero, other])


def _decode_complete(plan: QueryPlan, signs: dict[Pair, int]) -> Partition:
    parent = list(range(plan.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), s in signs.items():
        if s == 1:
            parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for x in range(plan.n):
        groups.setdefault(find(x), []).append(x)
    return _validated(plan, signs, list(groups.values()))


def _pos_components(members, signs: dict[Pair, int]) -> list[list[int]]:
    """Connected components of the positive answers within a fully queried set."""
    parent = {x: x for x in members}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if signs[(min(u, v), max(u, v))] == 1:
                parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for x in members:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda c: c[0])


def _decode_all_but_one(plan: QueryPlan, signs: dict[Pair, int]) -> Partition:
    k = plan.k_mode
    silent = set(_all_pairs(plan.n)) - set(signs)
    (a, b) = silent.pop()
    core = [x for x in range(plan.n) if x not in (a, b)]
    comps = _pos_components(core, signs)

    def attachments(x):
        hits = []
        for i, comp in enumerate(comps):
            if any(signs[(min(x, w), max(x, w))] == 1 for w in comp):
                hits.append(i)
        return hits

    at_a, at_b = attachments(a), attachments(b)
    if len(at_a) > 1 or len(at_b) > 1:
        raise InfeasibleAnswersError("an element joins two separated groups")
    r = len(comps)
    clusters = [list(c) for c in comps]
    if r == k:
        if not at_a or not at_b:
            raise InfeasibleAnswersError("too many clusters for the promised count")
        clusters[at_a[0]].append(a)
        clusters[at_b[0]].append(b)
    elif r == k - 1:
        if at_a and at_b:
            raise InfeasibleAnswersError("too few clusters for the promised count")
        if at_a:
            clusters[at_a[0]].append(a)
            clusters.append([b])
        elif at_b:
            clusters[at_b[0]].append(b)
            clusters.append([a])
        else:
            clusters.append([a, b])
    elif r == k - 2:
        if at_a or at_b:
            raise InfeasibleAnswersError("cluster count cannot reach the promise")
        clusters.append([a])
        clusters.append([b])
    else:
        raise InfeasibleAnswersError(f"answers show {r} groups, impossible for k={k}")
    return _validated(plan, signs, clusters)


def _decode_split_matching(plan: QueryPlan, signs: dict[Pair, int]) -> Partition:
    """Decoder for the three-cluster plan that skips a cross-half matching.

    Within each half every pair is answered, so each half splits into
    definite groups.  A half showing two or three groups pins down two or
    three of the clusters; the other elements are then placed by their
    answers toward already placed elements, with the one genuinely
    deferrable element (its only unqueried partner is a singleton group)
    resolved by trying the few completions that remain.
    """
    n = plan.n
    half = (n + 1) // 2
    upper = list(range(half))
    lower = list(range(half, n))
    comps_u = _pos_components(upper, signs)
    comps_l = _pos_components(lower, signs)
    if len(comps_u) >= 2:
        side, side_comps = upper, comps_u
    elif len(comps_l) >= 2:
        side, side_comps = lower, comps_l
    else:
        raise InfeasibleAnswersError("no half shows two groups; three clusters need one")
    if len(side_comps) > 3:
        raise InfeasibleAnswersError("a half shows more than three groups")

    # Cluster slots 0, 1, 2; slot 2 starts empty when the side shows two groups.
    assignment: dict[int, int] = {}
    for slot, comp in enumerate(side_comps):
        for x in comp:
            assignment[x] = slot
    others = [x for x in range(n) if x not in assignment]

    def sign_between(x, y):
        return signs.get((min(x, y), max(x, y)))

    changed = True
    while changed:
        changed = False
        for v in others:
            if v in assignment:
                continue
            hits = set()
            excluded = set()
            for w, slot in assignment.items():
                s = sign_between(v, w)
                if s == 1:
                    hits.add(slot)
                elif s == -1:
                    excluded.add(slot)
            if len(hits) > 1:
                raise InfeasibleAnswersError("an element joins two separated groups")
            if len(hits) == 1:
                assignment[v] = hits.pop()
                changed = True
                continue
            candidates = {0, 1, 2} - excluded
            if not candidates:
                raise InfeasibleAnswersError("an element is shut out of every cluster")
            if len(candidates) == 1:
                assignment[v] = candidates.pop()
                changed = True

    stalled = [v for v in others if v not in assignment]
    options = []
    for v in stalled:
        excluded = {
            assignment[w]
            for w in assignment
            if sign_between(v, w) == -1
        }
        options.append(sorted({0, 1, 2} - excluded))
    assert len(stalled) <= 2, "more than two unplaced elements cannot happen"

    valid: list[Partition] = []
    for combo in product(*options):
        slots: list[list[int]] = [[], [], []]
        for x, slot in assignment.items():
            slots[slot].append(x)
        for v, slot in zip(stalled, combo):
            slots[slot].append(v)
        if any(not s for s in slots):
            continue
        try:
            p = _validated(plan, signs, slots)
        except InfeasibleAnswersError:
            continue
        if p not in valid:
            valid.append(p)
    if not valid:
        raise InfeasibleAnswersError("no three-cluster partition explains the answers")
    if len(valid) > 1:
        raise AmbiguousAnswersError("answers leave more than one valid reading")
    return valid[0]


def plan_decodable(plan: QueryPlan, l: int = 0) -> bool:
    """Whether the plan's answer vectors separate all its candidate partitions.

    Candidates are the k_mode-cluster partitions (or all partitions when
    k_mode is None).  With lie tolerance l, separation means every two
    candidates disagree on queries of total multiplicity more than 2l, so
    no l lies can make one look like another.
    """
    if l < 0:
        raise ValueError(f"lie tolerance must be nonnegative, got {l}")
    check_enumeration_n(plan.n)
    if plan.k_mode is None:
        candidates = list(enumerate_partitions(plan.n))
    else:
        candidates = list(enumerate_k_partitions(plan.n, plan.k_mode))
    pairs = plan.pairs()
    mults = [m for _, _, m in plan.queries]
    vectors = [tuple(p.same_cluster(u, v) for u, v in pairs) for p in candidates]
    if l == 0:
        return len(set(vectors)) == len(vectors)
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            distance = sum(
                m for m, x, y in zip(mults, vectors[i], vectors[j]) if x != y
            )
            if distance <= 2 * l:
                return False
    return True
