"""Experiment harness: drive learners against oracles and audit the math.

Everything here is deterministic given a seed.  Each trial derives its own
substreams as random.Random(f"{seed}/{trial}/<purpose>"), so adding trials
never perturbs earlier ones and no component shares a generator with
another.
"""

from __future__ import annotations

import itertools
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .bounds import (
    adaptive_lower_bound_ceil,
    upper_bound_known,
    upper_bound_unknown,
)
from .learners.adaptive import (
    Transcript,
    _insertion_sweep,
    insertion_cluster,
    insertion_cluster_known_k,
    parallel_insertion,
    parallel_insertion_known_k,
    randomized_insertion,
    randomized_insertion_known_k,
    robust_insertion,
    robust_insertion_known_k,
    robustify,
)
from .learners.plans import build_plan, plan_decodable, robust_plan
from .limits import check_permutation_n
from .oracles import AdversarialOracle, RandomLiarOracle, TruthfulOracle
from .partitions import Partition, random_k_partition


class QueryBudgetExceededError(RuntimeError):
    """A learner asked more queries than the run's safety cap allows."""

    def __init__(self, cap: int) -> None:
        self.cap = cap
        super().__init__(f"query cap of {cap} exceeded; learner appears stuck")


class _CountingOracle:
    """Delegates to an oracle while enforcing a hard query cap."""

    def __init__(self, oracle, cap: int) -> None:
        self._oracle = oracle
        self.n = oracle.n
        self.cap = cap
        self.queries = 0

    def answer(self, u: int, v: int) -> int:
        if self.queries >= self.cap:
            raise QueryBudgetExceededError(self.cap)
        self.queries += 1
        return self._oracle.answer(u, v)


@dataclass(frozen=True)
class LearnerSpec:
    """Registry entry: how to build one learner as a single-argument callable."""

    id: str
    needs_k: bool
    robust: bool
    randomized: bool
    build: object  # (n, k, l, seed) -> callable(oracle) -> Transcript


LEARNERS: dict[str, LearnerSpec] = {}


def _register(id, needs_k, robust, randomized, build):
    LEARNERS[id] = LearnerSpec(id, needs_k, robust, randomized, build)


_register(
    "insertion", False, False, False, lambda n, k, l, s: lambda o: insertion_cluster(n, o)
)
_register(
    "insertion_k",
    True,
    False,
    False,
    lambda n, k, l, s: lambda o: insertion_cluster_known_k(n, k, o),
)
_register(
    "randomized",
    False,
    False,
    True,
    lambda n, k, l, s: lambda o: randomized_insertion(n, o, s),
)
_register(
    "randomized_k",
    True,
    False,
    True,
    lambda n, k, l, s: lambda o: randomized_insertion_known_k(n, k, o, s),
)
_register(
    "robust", False, True, False, lambda n, k, l, s: lambda o: robust_insertion(n, l, o)
)
_register(
    "robust_k",
    True,
    True,
    False,
    lambda n, k, l, s: lambda o: robust_insertion_known_k(n, k, l, o),
)
_register(
    "parallel", False, False, False, lambda n, k, l, s: lambda o: parallel_insertion(n, o)
)
_register(
    "parallel_k",
    True,
    False,
    False,
    lambda n, k, l, s: lambda o: parallel_insertion_known_k(n, k, o),
)

ORACLE_KINDS = ("truthful", "liar", "adversary")


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation setup.  sizes fixes the hidden clustering exactly;
    otherwise a uniform k-clustering is drawn fresh each trial."""

    learner: str
    n: int
    k: int | None = None
    l: int = 0
    oracle: str = "truthful"
    sizes: tuple[int, ...] | None = None
    p: float = 0.1
    trials: int = 100
    seed: str = "0"
    robustified: bool = False
    exact: bool = False

    def __post_init__(self) -> None:
        if self.learner not in LEARNERS:
            raise ValueError(f"unknown learner {self.learner!r}")
        if self.oracle not in ORACLE_KINDS:
            raise ValueError(f"unknown oracle {self.oracle!r}")
        if self.n < 1:
            raise ValueError(f"need at least one element, got n={self.n}")
        if self.l < 0:
            raise ValueError(f"lie budget must be nonnegative, got {self.l}")
        if self.trials < 1:
            raise ValueError(f"need at least one trial, got {self.trials}")
        if self.sizes is not None:
            if any(s < 1 for s in self.sizes) or sum(self.sizes) != self.n:
                raise ValueError(f"sizes {self.sizes} do not sum to n={self.n}")
            if self.k is not None and self.k != len(self.sizes):
                raise ValueError("k disagrees with the number of sizes")
        spec = LEARNERS[self.learner]
        if spec.robust and self.robustified:
            raise ValueError(f"{self.learner} already repeats queries")
        if spec.needs_k and self.effective_k is None:
            raise ValueError(f"{self.learner} needs k or sizes")
        if self.effective_k is None and self.oracle != "adversary":
            raise ValueError("hidden partition needs k or sizes")
        if self.oracle == "adversary" and self.effective_k is None:
            raise ValueError("the adversary needs k")
        if self.oracle == "adversary" and self.l != self.tolerance:
            raise ValueError(
                "against the adversary the learner's lie tolerance must equal l; "
                "use a robust learner or --robustify"
            )

    @property
    def effective_k(self) -> int | None:
        if self.sizes is not None:
            return len(self.sizes)
        return self.k

    @property
    def tolerance(self) -> int:
        spec = LEARNERS[self.learner]
        return self.l if (spec.robust or self.robustified) else 0


def _fixed_partition(sizes) -> Partition:
    clusters = []
    start = 0
    for s in sizes:
        clusters.append(tuple(range(start, start + s)))
        start += s
    return Partition(sum(sizes), tuple(clusters))


@dataclass(frozen=True)
class RunOutcome:
    transcript: Transcript
    queries: int
    rounds: int
    lies_used: int
    correct: bool


def run_game(learner, oracle, query_cap: int) -> RunOutcome:
    """Run one learner against one oracle under a hard query cap.

    learner is a callable of the oracle.  Correctness means recovering the
    hidden partition, or, for the adversary, ending the game and naming its
    unique witness.
    """
    counting = _CountingOracle(oracle, query_cap)
    transcript = learner(counting)
    assert transcript.queries == counting.queries
    if oracle.hidden is not None:
        correct = transcript.result == oracle.hidden
    else:
        correct = oracle.is_terminal() and transcript.result == oracle.unique_witness()
    if not oracle.verify_budget():
        raise AssertionError("oracle exceeded its own lie budget")
    return RunOutcome(
        transcript=transcript,
        queries=transcript.queries,
        rounds=transcript.rounds,
        lies_used=oracle.lies_used,
        correct=correct,
    )


@dataclass(frozen=True)
class TrialRow:
    trial: int
    queries: int
    rounds: int
    lies_used: int
    correct: bool


@dataclass(frozen=True)
class SimulationResult:
    config: ExperimentConfig
    rows: tuple[TrialRow, ...]

    @property
    def mean_queries(self) -> float:
        return statistics.fmean(r.queries for r in self.rows)

    @property
    def correct_fraction(self) -> float:
        return sum(1 for r in self.rows if r.correct) / len(self.rows)


def _trial_oracle(config: ExperimentConfig, trial: int):
    k = config.effective_k
    if config.oracle == "adversary":
        return AdversarialOracle(config.n, k, config.l)
    if config.sizes is not None:
        hidden = _fixed_partition(config.sizes)
    else:
        rng = random.Random(f"{config.seed}/{trial}/hidden")
        hidden = random_k_partition(config.n, k, rng)
    if config.oracle == "truthful":
        return TruthfulOracle(hidden)
    return RandomLiarOracle(hidden, config.l, config.p, f"{config.seed}/{trial}/liar")


def _trial_learner(config: ExperimentConfig, trial: int):
    spec = LEARNERS[config.learner]
    tol = config.tolerance
    learner = spec.build(config.n, config.effective_k, tol, f"{config.seed}/{trial}/order")
    if config.robustified:
        learner = robustify(learner, tol)
    return learner


def _query_cap(config: ExperimentConfig) -> int:
    k = config.effective_k or config.n
    cap = 4 * (upper_bound_unknown(config.n, k, config.tolerance) + 1)
    if config.oracle == "liar":
        # The liar may spend lies beyond the learner's tolerance; every lie
        # can cost one extra repetition round.
        cap += 4 * (config.l + 1) * config.n
    return cap


def simulate(config: ExperimentConfig) -> SimulationResult:
    """Run config.trials independent games and report one row per trial."""
    rows = []
    cap = _query_cap(config)
    for trial in range(config.trials):
        oracle = _trial_oracle(config, trial)
        learner = _trial_learner(config, trial)
        outcome = run_game(learner, oracle, cap)
        rows.append(
            TrialRow(
                trial=trial,
                queries=outcome.queries,
                rounds=outcome.rounds,
                lies_used=outcome.lies_used,
                correct=outcome.correct,
            )
        )
    return SimulationResult(config=config, rows=tuple(rows))


def exact_expected_queries(sizes, known_k: bool = False) -> Fraction:
    """Average insertion queries over all element orders, as an exact fraction.

    The hidden clustering has the given sizes; the source is truthful.
    Cost grows factorially, so the permutation-size limit applies.
    """
    sizes = tuple(int(s) for s in sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"cluster sizes must be positive, got {sizes}")
    n = sum(sizes)
    check_permutation_n(n)
    hidden = _fixed_partition(sizes)
    k = len(sizes) if known_k else None
    total = 0
    count = 0
    for order in itertools.permutations(range(n)):
        total += _insertion_sweep(n, TruthfulOracle(hidden), order, k, 0).queries
        count += 1
    return Fraction(total, count)


@dataclass(frozen=True)
class ExpectationEstimate:
    mean: float
    stderr: float
    trials: int
    exact: bool
    exact_value: Fraction | None = None


def monte_carlo_expected(config: ExperimentConfig) -> ExpectationEstimate:
    """Estimate the expected query count, or compute it exactly.

    With config.exact set (truthful oracle, fixed sizes, a randomized
    learner, and n within the permutation limit) the average runs over all
    element orders instead of sampling.
    """
    if config.exact:
        if config.oracle != "truthful" or config.sizes is None:
            raise ValueError("exact expectation needs a truthful oracle and sizes")
        spec = LEARNERS[config.learner]
        if not spec.randomized or spec.robust:
            raise ValueError("exact expectation is defined for randomized learners")
        value = exact_expected_queries(config.sizes, known_k=spec.needs_k)
        return ExpectationEstimate(
            mean=float(value), stderr=0.0, trials=0, exact=True, exact_value=value
        )
    result = simulate(config)
    samples = [r.queries for r in result.rows]
    mean = statistics.fmean(samples)
    stderr = 0.0
    if len(samples) > 1:
        stderr = statistics.stdev(samples) / len(samples) ** 0.5
    return ExpectationEstimate(mean=mean, stderr=stderr, trials=len(samples), exact=False)


# ---------------------------------------------------------------------------
# Audits: recompute published tables from the implementation.


@dataclass(frozen=True)
class AuditRow:
    cell: str
    expected: str
    observed: str
    ok: bool


@dataclass(frozen=True)
class AuditReport:
    table: int
    rows: tuple[AuditRow, ...]

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.rows)


def _audit_nonadaptive(n_range) -> list[AuditRow]:
    rows = []
    for n in n_range:
        for k in list(range(2, n)) + [None]:
            plan = build_plan(n, k)
            if k is None:
                want = comb(n, 2)
            elif k == 2:
                want = n - 1
            elif k == 3 and n >= 5:
                want = comb(n, 2) - n // 2
            else:
                want = comb(n, 2) - 1
            ok = plan.total_queries == want and plan_decodable(plan)
            robust = robust_plan(plan, 1)
            ok = ok and plan_decodable(robust, l=1)
            rows.append(
                AuditRow(
                    cell=f"n={n} k={'?' if k is None else k}",
                    expected=f"{want} queries, decodable",
                    observed=f"{plan.total_queries} queries, "
                    f"decodable={plan_decodable(plan)}",
                    ok=ok,
                )
            )
    return rows


def _audit_adaptive(n_range) -> list[AuditRow]:
    rows = []
    for n in n_range:
        for k in range(2, n + 1):
            want_unknown = n * k - comb(k + 1, 2)
            oracle = AdversarialOracle(n, k, 0)
            got_unknown = run_game(
                lambda o: insertion_cluster(n, o), oracle, 4 * (want_unknown + 1)
            )
            want_known = n * (k - 1) - comb(k, 2)
            oracle = AdversarialOracle(n, k, 0)
            got_known = run_game(
                lambda o: insertion_cluster_known_k(n, k, o),
                oracle,
                4 * (want_known + 2),
            )
            ok = (
                got_unknown.queries == want_unknown
                and got_known.queries == want_known
                and got_unknown.correct
                and got_known.correct
            )
            rows.append(
                AuditRow(
                    cell=f"n={n} k={k}",
                    expected=f"unknown {want_unknown}, known {want_known}",
                    observed=f"unknown {got_unknown.queries}, known {got_known.queries}",
                    ok=ok,
                )
            )
    return rows


def _audit_robust(n_range, l_range) -> list[AuditRow]:
    rows = []
    for n in n_range:
        for k in range(2, n):
            for l in l_range:
                lower = adaptive_lower_bound_ceil(n, k, l)
                upper = upper_bound_known(n, k, l)
                oracle = AdversarialOracle(n, k, l)
                outcome = run_game(
                    lambda o: robust_insertion_known_k(n, k, l, o),
                    oracle,
                    4 * (upper + 1),
                )
                ok = outcome.correct and lower <= outcome.queries <= upper
                rows.append(
                    AuditRow(
                        cell=f"n={n} k={k} l={l}",
                        expected=f"in [{lower}, {upper}]",
                        observed=str(outcome.queries),
                        ok=ok,
                    )
                )
    return rows


def audit_table(table: int) -> AuditReport:
    """Recheck one of the three summary tables against live runs.

    Table 1: nonadaptive plan sizes and decodability.
    Table 2: adaptive worst-case counts forced by the adversary.
    Table 3: robust counts sandwiched between the closed-form bounds.
    """
    if table == 1:
        rows = _audit_nonadaptive(range(3, 8))
    elif table == 2:
        rows = _audit_adaptive(range(2, 8))
    elif table == 3:
        rows = _audit_robust(range(3, 7), range(1, 3))
    else:
        raise ValueError(f"no table {table}; tables are 1, 2, 3")
    return AuditReport(table=table, rows=tuple(rows))
