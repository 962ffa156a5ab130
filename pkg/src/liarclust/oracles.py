"""Answer sources for same-cluster queries.

Three oracles share one duck-typed interface: ``answer(u, v) -> +1 | -1``,
an ``n``, a lie budget ``l``, a ``lies_used`` count, and ``verify_budget()``
confirming the budget was respected.  The truthful oracle reads a hidden
partition directly.  The random liar flips answers with a fixed probability
until its budget runs out.  The adversary has no hidden partition at all:
it plays the consistency game from ``liarclust.game``, answering however it
likes as long as some k-partition stays within the lie budget, which makes
it a worst case for deterministic learners.
"""

from __future__ import annotations

import random

from .game import GameState, ResponderState, responder_answer
from .partitions import Partition


class TruthfulOracle:
    """Answers straight from a hidden partition."""

    kind = "truthful"

    def __init__(self, hidden: Partition) -> None:
        self.hidden = hidden
        self.n = hidden.n
        self.l = 0
        self.lies_used = 0

    def answer(self, u: int, v: int) -> int:
        return self.hidden.same_cluster(u, v)

    def verify_budget(self) -> bool:
        return True


class RandomLiarOracle:
    """Flips the truthful answer with probability p while budget remains.

    The flip decisions come from a private generator seeded at construction,
    so a run is reproducible from (hidden, l, p, seed) and the query order.
    """

    kind = "liar"

    def __init__(self, hidden: Partition, l: int, p: float, seed) -> None:
        if l < 0:
            raise ValueError(f"lie budget must be nonnegative, got {l}")
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"lie probability must be in [0, 1], got {p}")
        self.hidden = hidden
        self.n = hidden.n
        self.l = l
        self.p = p
        self.lies_used = 0
        self._rng = random.Random(seed)

    def answer(self, u: int, v: int) -> int:
        truth = self.hidden.same_cluster(u, v)
        if self.lies_used < self.l and self._rng.random() < self.p:
            self.lies_used += 1
            return -truth
        return truth

    def verify_budget(self) -> bool:
        return self.lies_used <= self.l


class AdversarialOracle:
    """Plays the consistency game; commits to a partition only when forced.

    ``lies_used`` is the smallest number of recorded answers any candidate
    k-partition disagrees with; once the game is over that is exactly the
    disagreement count of the unique witness.  Every answer is checked
    against the strategy's own invariants: in base mode some partition
    explains the whole transcript for free, and after the endgame
    commitment the committed partition's disagreement count never moves.
    """

    kind = "adversary"

    def __init__(self, n: int, k: int, l: int) -> None:
        self.n = n
        self.k = k
        self.l = l
        self.hidden = None
        self.game = GameState(n, k, l)
        self.responder = ResponderState()
        self._committed_cost: int | None = None

    def answer(self, u: int, v: int) -> int:
        was_base = self.responder.mode == "base"
        a = responder_answer(self.responder, self.game, u, v)
        self.game.record(u, v, a)
        if self.responder.mode == "base":
            assert self.game.min_cost() == 0
        else:
            committed = self.responder.committed_partition
            assert committed.same_cluster(u, v) == a
            cost = self.game.cost_of(committed)
            if was_base:
                self._committed_cost = cost
            assert cost == self._committed_cost and cost <= self.l
        return a

    @property
    def lies_used(self) -> int:
        return self.game.min_cost()

    def is_terminal(self) -> bool:
        return self.game.is_terminal()

    def unique_witness(self) -> Partition | None:
        return self.game.unique_witness()

    def verify_budget(self) -> bool:
        return self.game.min_cost() <= self.l
