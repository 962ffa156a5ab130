"""The adversarial same-cluster game.

A questioner repeatedly names a pair of elements; a responder answers +1
(same cluster) or -1 (different), by any rule it likes, as long as some
partition into exactly k clusters violates answers of total weight at most
l.  The game ends when exactly one such partition remains: at that point
the answers determine the partition even against l lies, so the number of
queries played is exactly the cost of learning it.  This module provides

  * GameState: the running record of one game, with incremental
    disagreement costs against every candidate k-partition;
  * responder_answer: the concrete adversary used by the oracle layer,
    which answers "different" whenever some zero-cost explanation still
    allows it and, when cornered, commits to an expensive alternative
    explanation to drag the game out;
  * exact_game_value: the game-theoretic value under optimal play on both
    sides, by memoized alpha-beta search over capped cost vectors.

The search identifies positions up to relabeling of the ground set, and
caps every recorded cost at l+1: a partition past the lie budget is out of
the game no matter how much further weight it collects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache

from .coloring import SimpleGraph, k_inseparable
from .instance import SignedInstance
from .partitions import Partition, k_partition_label_tuples

Pair = tuple[int, int]

_INF = 1 << 30


class SearchBudgetExceededError(RuntimeError):
    """The minimax search ran out of its node budget before finishing."""

    def __init__(self, nodes: int, best_known: int | None) -> None:
        self.nodes = nodes
        self.best_known = best_known
        detail = f"game-value search exceeded its node budget after {nodes} nodes"
        if best_known is not None:
            detail += f"; partial lower bound on the value: {best_known}"
        super().__init__(detail)


@cache
def _pair_list(n: int) -> tuple[Pair, ...]:
    return tuple((u, v) for u in range(n) for v in range(u + 1, n))


@cache
def _join_masks(n: int, k: int) -> dict[Pair, int]:
    """Per pair: bitmask over k-partition indices that put the pair together."""
    labels = k_partition_label_tuples(n, k)
    masks: dict[Pair, int] = {}
    for u, v in _pair_list(n):
        m = 0
        for i, lab in enumerate(labels):
            if lab[u] == lab[v]:
                m |= 1 << i
        masks[(u, v)] = m
    return masks


def _first_use_labels(labels: tuple[int, ...]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


@cache
def _relabel_tables(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Index permutations of the k-partition list induced by relabeling {0..n-1}.

    For table t, the state vector of the relabeled position is
    (cost[t[0]], cost[t[1]], ...); taking the minimum over all tables gives a
    canonical key for positions that differ only by element names.
    """
    labels = k_partition_label_tuples(n, k)
    index_of = {lab: i for i, lab in enumerate(labels)}
    tables: set[tuple[int, ...]] = set()
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        forward = [
            index_of[_first_use_labels(tuple(lab[inv[u]] for u in range(n)))]
            for lab in labels
        ]
        t = [0] * len(labels)
        for i, j in enumerate(forward):
            t[j] = i
        tables.add(tuple(t))
    return tuple(sorted(tables))


class GameState:
    """One running game: parameters, the signed instance, and the history.

    Disagreement costs against every k-partition are maintained
    incrementally so terminality checks and lookaheads cost one scan.
    """

    def __init__(self, n: int, k: int, l: int) -> None:
        if not 0 < k <= n:
            raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")
        if l < 0:
            raise ValueError(f"lie budget must be nonnegative, got {l}")
        self.n = n
        self.k = k
        self.l = l
        self.instance = SignedInstance(n)
        self.history: list[tuple[int, int, int]] = []
        self._labels = k_partition_label_tuples(n, k)
        self._index_of = {lab: i for i, lab in enumerate(self._labels)}
        self._join = _join_masks(n, k)
        self._costs = [0] * len(self._labels)

    @property
    def costs(self) -> tuple[int, ...]:
        """Current disagreement cost of every candidate k-partition."""
        return tuple(self._costs)

    def cost_of(self, p: Partition) -> int:
        idx = self._index_of.get(p.labels)
        if idx is None:
            raise ValueError(f"partition does not have k={self.k} clusters")
        return self._costs[idx]

    def min_cost(self) -> int:
        return min(self._costs)

    def _disagree_bit(self, u: int, v: int, answer: int, idx: int) -> bool:
        joined = self._join[(min(u, v), max(u, v))] >> idx & 1
        return bool(joined) != (answer == 1)

    def record(self, u: int, v: int, answer: int) -> None:
        """Record one answer, updating the instance and every cost."""
        self.instance = self.instance.record_response(u, v, answer)
        self.history.append((u, v, answer))
        join = self._join[(min(u, v), max(u, v))]
        costs = self._costs
        if answer == 1:
            for i in range(len(costs)):
                if not join >> i & 1:
                    costs[i] += 1
        else:
            for i in range(len(costs)):
                if join >> i & 1:
                    costs[i] += 1

    def consistent_count(self, limit: int | None = None) -> int:
        """Number of k-partitions within the lie budget, stopping early at limit."""
        count = 0
        for c in self._costs:
            if c <= self.l:
                count += 1
                if limit is not None and count >= limit:
                    return count
        return count

    def is_terminal(self) -> bool:
        return self.consistent_count(2) == 1

    def unique_witness(self) -> Partition | None:
        """The single partition within budget, when the game is over."""
        found = None
        for i, c in enumerate(self._costs):
            if c <= self.l:
                if found is not None:
                    return None
                found = i
        return None if found is None else Partition.from_labels(self._labels[found])

    def lookahead_count(self, u: int, v: int, answer: int, limit: int | None = None) -> int:
        """Consistent count after hypothetically recording one more answer."""
        join = self._join[(min(u, v), max(u, v))]
        agree_with_join = answer == 1
        count = 0
        for i, c in enumerate(self._costs):
            if bool(join >> i & 1) != agree_with_join:
                c += 1
            if c <= self.l:
                count += 1
                if limit is not None and count >= limit:
                    return count
        return count


def is_terminal(game: GameState) -> bool:
    """True when exactly one k-partition is within the game's lie budget."""
    return game.is_terminal()


@dataclass
class ResponderState:
    """Adversary bookkeeping: which regime it is in, and any commitment."""

    mode: str = "base"  # "base" | "endgame"
    committed_partition: Partition | None = None


def responder_answer(resp: ResponderState, game: GameState, u: int, v: int) -> int:
    """One answer from the adversarial responder; does not record it.

    Base mode answers -1 unless every zero-cost explanation already forces
    the pair together (k-inseparability in the graph of negative answers).
    Before committing a base answer that would leave exactly one candidate
    within the lie budget, the responder looks for an alternative partition
    within budget whose own answer keeps at least two candidates alive; if
    one exists it commits to the highest-cost such partition (first in
    canonical order on ties) and answers by it from then on.  With l >= 1
    a commitment candidate always survives the aliveness check, so the
    switch always happens; with l = 0 the check can fail, in which case the
    base answer stands and ends the game.
    """
    key = (min(u, v), max(u, v))
    if key not in _join_masks(game.n, game.k):
        raise ValueError(f"pair ({u}, {v}) invalid for n={game.n}")
    if resp.mode == "endgame":
        assert resp.committed_partition is not None
        return resp.committed_partition.same_cluster(u, v)

    neg_graph = SimpleGraph(game.n, game.instance.negative_pairs())
    base = 1 if k_inseparable(neg_graph, game.k, u, v) else -1

    if not game.is_terminal() and game.lookahead_count(u, v, base, 2) == 1:
        labels = game._labels
        costs = game._costs
        join = game._join[key]
        # The partition the base answer would leave as the unique witness.
        witness_idx = next(
            i
            for i, c in enumerate(costs)
            if c + (1 if bool(join >> i & 1) != (base == 1) else 0) <= game.l
        )
        best_idx = -1
        best_cost = -1
        for i, c in enumerate(costs):
            if i == witness_idx or c > game.l:
                continue
            own_answer = 1 if join >> i & 1 else -1
            if game.lookahead_count(u, v, own_answer, 2) >= 2 and c > best_cost:
                best_idx, best_cost = i, c
        if best_idx >= 0:
            resp.mode = "endgame"
            resp.committed_partition = Partition.from_labels(labels[best_idx])
            return resp.committed_partition.same_cluster(u, v)
    return base


@dataclass(frozen=True)
class GameValueResult:
    n: int
    k: int
    l: int
    value: int
    nodes: int

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "value": self.value, "nodes": self.nodes}


_TT_EXACT, _TT_LOWER, _TT_UPPER = 0, 1, 2


class _MinimaxSolver:
    """Alpha-beta over capped cost vectors, memoized up to relabeling."""

    def __init__(self, n: int, k: int, l: int, node_budget: int) -> None:
        self.l = l
        self.cap = l + 1
        self.labels = k_partition_label_tuples(n, k)
        self.size = len(self.labels)
        self.join = [_join_masks(n, k)[p] for p in _pair_list(n)]
        self.tables = _relabel_tables(n, k)
        self.node_budget = node_budget
        self.nodes = 0
        self.tt: dict[tuple[int, ...], tuple[int, int]] = {}

    def _canon(self, s: tuple[int, ...]) -> tuple[int, ...]:
        return min(tuple(s[i] for i in t) for t in self.tables)

    def _children(self, s: tuple[int, ...], pi: int) -> list[tuple[int, tuple[int, ...]]]:
        """Legal (survivor count, child state) for both answers to pair pi."""
        jm = self.join[pi]
        cap = self.cap
        l = self.l
        out = []
        for answer_joins in (True, False):
            child = list(s)
            live_after = 0
            for i, c in enumerate(child):
                if bool(jm >> i & 1) != answer_joins:
                    c = min(c + 1, cap)
                    child[i] = c
                if c <= l:
                    live_after += 1
            if live_after:
                out.append((live_after, tuple(child)))
        return out

    def solve(self) -> int:
        s0 = tuple([0] * self.size)
        return self._fq(s0, 0, _INF)

    def _fq(self, s: tuple[int, ...], alpha: int, beta: int) -> int:
        l = self.l
        live_mask = 0
        live = 0
        for i, c in enumerate(s):
            if c <= l:
                live_mask |= 1 << i
                live += 1
        assert live >= 1, "reached an inconsistent position"
        if live == 1:
            return 0

        key = self._canon(s)
        entry = self.tt.get(key)
        if entry is not None:
            flag, val = entry
            if flag == _TT_EXACT:
                return val
            if flag == _TT_LOWER:
                if val >= beta:
                    return val
                alpha = max(alpha, val)
            else:
                if val <= alpha:
                    return val
                beta = min(beta, val)

        self.nodes += 1
        if self.nodes > self.node_budget:
            raise SearchBudgetExceededError(self.nodes, None)

        a0, b0 = alpha, beta
        moves = []
        for pi, jm in enumerate(self.join):
            inter = jm & live_mask
            if inter == 0 or inter == live_mask:
                continue  # every live candidate agrees: the pair gains nothing
            joiners = inter.bit_count()
            moves.append((abs(2 * joiners - live), pi))
        assert moves, "non-terminal position with no informative pair"
        moves.sort()

        value = _INF
        cur_beta = beta
        for _, pi in moves:
            v = self._fr(s, pi, alpha, cur_beta)
            if v < value:
                value = v
                if value < cur_beta:
                    cur_beta = value
            if value <= alpha:
                break

        if value <= a0:
            flag = _TT_UPPER
        elif value >= b0:
            flag = _TT_LOWER
        else:
            flag = _TT_EXACT
        self.tt[key] = (flag, value)
        return value

    def _fr(self, s: tuple[int, ...], pi: int, alpha: int, beta: int) -> int:
        children = self._children(s, pi)
        # Try the answer keeping more candidates alive first.
        children.sort(key=lambda t: -t[0])
        value = -_INF
        for _, child in children:
            v = 1 + self._fq(child, alpha - 1, beta - 1)
            if v > value:
                value = v
                if value > alpha:
                    alpha = value
            if value >= beta:
                break
        return value


def exact_game_value(n: int, k: int, l: int, node_budget: int = 10_000_000) -> GameValueResult:
    """Value of the game under optimal play: the exact worst-case query count.

    Raises SearchBudgetExceededError when the memoized search would expand
    more than node_budget positions.
    """
    if not 0 < k <= n:
        raise ValueError(f"need 0 < k <= n, got k={k}, n={n}")
    if l < 0:
        raise ValueError(f"lie budget must be nonnegative, got {l}")
    solver = _MinimaxSolver(n, k, l, node_budget)
    if solver.size <= 1:
        # A single candidate (k = n or k = 1) is already uniquely determined.
        return GameValueResult(n, k, l, 0, 0)
    value = solver.solve()
    return GameValueResult(n, k, l, value, solver.nodes)
