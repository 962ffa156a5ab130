"""Acceptance suite: the package's headline guarantees, checked end to end.

One test per guarantee.  Each prints a single [PASS] or [FAIL] line, so

    pytest tests/test_acceptance.py -v -s

reads as a checklist.  The grids are exhaustive wherever the guarantee is
exhaustive, which makes this module deliberately slow (a few minutes);
everything else in the test suite stays fast.
"""

from __future__ import annotations

import itertools
import random
import time
from math import comb, log2

from liarclust.bounds import (
    adaptive_lower_bound_ceil,
    binary_entropy,
    expected_queries,
    expected_queries_robust_worst_case,
    hamming_ball_volume,
    info_lower_bound_known,
    info_lower_bound_unknown,
    upper_bound_known,
    upper_bound_unknown,
)
from liarclust.coloring import (
    SimpleGraph,
    unique_coloring_edge_bound_holds,
    unique_surjective_k_coloring,
)
from liarclust.game import SearchBudgetExceededError, exact_game_value
from liarclust.harness import (
    ExperimentConfig,
    exact_expected_queries,
    monte_carlo_expected,
    run_game,
)
from liarclust.instance import MULTIPLE
from liarclust.learners.adaptive import (
    insertion_cluster,
    insertion_cluster_known_k,
    robust_insertion,
    robust_insertion_known_k,
    robustify,
)
from liarclust.learners.plans import (
    DECODER_COMPLETE,
    QueryPlan,
    build_plan,
    decode_plan,
    majority_decode,
    plan_decodable,
    robust_plan,
    truthful_answers,
)
from liarclust.oracles import AdversarialOracle, RandomLiarOracle, TruthfulOracle
from liarclust.partitions import (
    Partition,
    bell,
    enumerate_k_partitions,
    enumerate_partitions,
    random_k_partition,
    stirling2,
)


def _report(num: int, label: str, failures: list[str], covered: str) -> None:
    """Print the one-line verdict for a criterion, then assert it."""
    if failures:
        shown = "; ".join(failures[:3])
        if len(failures) > 3:
            shown += f"; and {len(failures) - 3} more"
        print(f"[FAIL] {num:02d} {label}: {shown}")
    else:
        print(f"[PASS] {num:02d} {label}: {covered}")
    assert not failures, f"criterion {num:02d} ({label}): {failures[:3]}"


def test_01_adversary_forces_exact_adaptive_worst_case():
    failures: list[str] = []
    slowest = 0.0
    cells = 0
    for n in range(3, 8):
        for k in range(2, n):
            t0 = time.perf_counter()
            want = n * (k - 1) - comb(k, 2)
            got = run_game(
                lambda o: insertion_cluster_known_k(n, k, o),
                AdversarialOracle(n, k, 0),
                4 * (want + 2),
            )
            if not got.correct or got.queries != want:
                failures.append(f"known n={n} k={k}: {got.queries} queries, wanted {want}")
            want = n * k - comb(k + 1, 2)
            got = run_game(
                lambda o: insertion_cluster(n, o),
                AdversarialOracle(n, k, 0),
                4 * (want + 2),
            )
            if not got.correct or got.queries != want:
                failures.append(f"unknown n={n} k={k}: {got.queries} queries, wanted {want}")
            cell_time = time.perf_counter() - t0
            slowest = max(slowest, cell_time)
            if cell_time >= 1.0:
                failures.append(f"cell n={n} k={k} took {cell_time:.2f}s")
            cells += 1
    _report(1, "exact adaptive worst case", failures,
            f"{cells} cells with 2 <= k < n <= 7, slowest cell {slowest * 1000:.0f}ms")


def test_02_plan_sizes_and_exhaustive_decoding():
    t0 = time.perf_counter()
    failures: list[str] = []
    plans = 0
    for n in range(2, 8):
        for k in [None] + list(range(2, n)):
            plan = build_plan(n, k)
            if k is None:
                want = comb(n, 2)
            elif k == 2:
                want = n - 1
            elif (n, k) == (4, 3):
                want = 5
            elif k == 3:
                want = comb(n, 2) - n // 2
            else:
                want = comb(n, 2) - 1
            if plan.total_queries != want:
                failures.append(f"n={n} k={k}: {plan.total_queries} queries, wanted {want}")
                continue
            if not plan_decodable(plan, 0):
                failures.append(f"n={n} k={k}: plan not decodable")
                continue
            hiddens = enumerate_partitions(n) if k is None else enumerate_k_partitions(n, k)
            for hidden in hiddens:
                got = decode_plan(plan, truthful_answers(plan, hidden))
                if got != hidden:
                    failures.append(f"n={n} k={k}: {hidden.clusters} decoded as {got.clusters}")
            plans += 1
    elapsed = time.perf_counter() - t0
    if elapsed >= 30.0:
        failures.append(f"took {elapsed:.1f}s, cap is 30s")
    _report(2, "plan sizes and decoding", failures,
            f"{plans} plans for n <= 7, every hidden partition, {elapsed:.1f}s")


def test_03_plans_of_minimal_size():
    t0 = time.perf_counter()
    failures: list[str] = []
    subsets = 0
    pairs5 = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    for k, keep in ((3, 7), (4, 8)):
        for chosen in itertools.combinations(pairs5, keep):
            trial = QueryPlan(5, k, tuple((u, v, 1) for u, v in chosen), DECODER_COMPLETE)
            subsets += 1
            if plan_decodable(trial, 0):
                failures.append(f"{keep} queries decode k={k} at n=5: {chosen}")
    for n in range(2, 7):
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for dropped in all_pairs:
            rest = tuple((u, v, 1) for u, v in all_pairs if (u, v) != dropped)
            trial = QueryPlan(n, None, rest, DECODER_COMPLETE)
            subsets += 1
            if plan_decodable(trial, 0):
                failures.append(f"complete minus {dropped} decodes unknown k at n={n}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 120.0:
        failures.append(f"took {elapsed:.1f}s, cap is 2min")
    _report(3, "no smaller plan decodes", failures,
            f"{subsets} reduced plans all fail as they must, {elapsed:.1f}s")


def test_04_game_value_between_the_bounds():
    failures: list[str] = []
    anchors = {(3, 2, 0): 2, (4, 2, 0): 3}
    cells = 0
    most_nodes = 0
    for n in range(3, 6):
        for k in range(2, n):
            for l in range(3):
                try:
                    result = exact_game_value(n, k, l)
                except SearchBudgetExceededError:
                    failures.append(f"n={n} k={k} l={l}: over the node budget")
                    continue
                cells += 1
                most_nodes = max(most_nodes, result.nodes)
                lo = adaptive_lower_bound_ceil(n, k, l)
                hi = upper_bound_known(n, k, l)
                if not lo <= result.value <= hi:
                    failures.append(
                        f"n={n} k={k} l={l}: value {result.value} outside [{lo}, {hi}]"
                    )
                want = anchors.get((n, k, l))
                if want is not None and result.value != want:
                    failures.append(f"n={n} k={k} l={l}: value {result.value}, wanted {want}")
    _report(4, "game value sandwich", failures,
            f"{cells} cells with n <= 5, l <= 2; largest search {most_nodes} nodes")


def test_05_adversary_pushes_robust_insertion_to_the_floor():
    failures: list[str] = []
    cells = 0
    for n in range(3, 7):
        for k in range(2, n):
            for l in range(3):
                floor = adaptive_lower_bound_ceil(n, k, l)
                cap = 4 * (upper_bound_known(n, k, l) + 2) + 4 * (l + 1) * n
                got = run_game(
                    lambda o: robust_insertion_known_k(n, k, l, o),
                    AdversarialOracle(n, k, l),
                    cap,
                )
                cells += 1
                if not got.correct:
                    failures.append(f"n={n} k={k} l={l}: wrong partition")
                if got.queries < floor:
                    failures.append(f"n={n} k={k} l={l}: {got.queries} queries under floor {floor}")
    _report(5, "adversary reaches the lower bound", failures,
            f"{cells} cells with n <= 6, l <= 2 all at or above their floor")


def test_06_robust_learners_survive_random_lies():
    t0 = time.perf_counter()
    failures: list[str] = []
    runs = 0
    for n in range(2, 9):
        for k in range(2, min(4, n) + 1):
            for l in range(4):
                cap_unknown = upper_bound_unknown(n, k, l)
                cap_known = upper_bound_known(n, k, l)
                for trial in range(10_000):
                    stem = f"robust-liar/{n}/{k}/{l}/{trial}"
                    hidden = random_k_partition(n, k, random.Random(f"{stem}/hidden"))
                    t = robust_insertion(
                        n, l, RandomLiarOracle(hidden, l, 0.25, seed=f"{stem}/u")
                    )
                    if t.result != hidden:
                        failures.append(f"unknown n={n} k={k} l={l} trial {trial}: wrong")
                    elif t.queries > cap_unknown:
                        failures.append(
                            f"unknown n={n} k={k} l={l} trial {trial}: {t.queries} > {cap_unknown}"
                        )
                    t = robust_insertion_known_k(
                        n, k, l, RandomLiarOracle(hidden, l, 0.25, seed=f"{stem}/k")
                    )
                    if t.result != hidden:
                        failures.append(f"known n={n} k={k} l={l} trial {trial}: wrong")
                    elif t.queries > cap_known:
                        failures.append(
                            f"known n={n} k={k} l={l} trial {trial}: {t.queries} > {cap_known}"
                        )
                    runs += 2
    elapsed = time.perf_counter() - t0
    _report(6, "robust learners under random lies", failures,
            f"{runs} runs over n <= 8, k <= 4, l <= 3, all correct and capped, {elapsed:.0f}s")


def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def test_07_randomized_insertion_expectation():
    t0 = time.perf_counter()
    failures: list[str] = []
    compositions = 0
    for n in range(1, 9):
        for sizes in _compositions(n):
            want = expected_queries(sizes)
            got = exact_expected_queries(sizes)
            compositions += 1
            if got != want:
                failures.append(f"sizes {sizes}: enumerated {got}, formula {want}")
            k = len(sizes)
            for l in (1, 2, 3):
                if (l + 1) * want + l > expected_queries_robust_worst_case(n, k, l):
                    failures.append(f"sizes {sizes} l={l}: robust expectation over its ceiling")
    est = monte_carlo_expected(
        ExperimentConfig(
            learner="randomized", n=12, sizes=(4, 4, 4), trials=100_000, seed="acceptance-7"
        )
    )
    want = float(expected_queries((4, 4, 4)))
    if abs(est.mean - want) > 3 * est.stderr + 1e-9:
        failures.append(f"n=12 mean {est.mean} is over 3 stderr from {want}")
    for l in (1, 2):
        est = monte_carlo_expected(
            ExperimentConfig(
                learner="randomized",
                n=12,
                sizes=(4, 4, 4),
                l=l,
                oracle="liar",
                p=0.3,
                trials=10_000,
                seed=f"acceptance-7-robust/{l}",
                robustified=True,
            )
        )
        ceiling = float(expected_queries_robust_worst_case(12, 3, l))
        if est.mean > ceiling + 3 * est.stderr + 1e-9:
            failures.append(f"robust mean {est.mean} at l={l} exceeds ceiling {ceiling}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 120.0:
        failures.append(f"took {elapsed:.1f}s, cap is 2min")
    _report(7, "randomized insertion expectation", failures,
            f"{compositions} compositions exact, n=12 sampling within 3 stderr, {elapsed:.0f}s")


def _repetition_overhead(failures: list[str], transcript, l: int, where: str) -> None:
    """Check queries <= (l + 1) * base + l, base being distinct pairs asked."""
    distinct = len({(u, v) for u, v, _, _ in transcript.records})
    episodes = 0
    previous = None
    for u, v, _, _ in transcript.records:
        if (u, v) != previous:
            episodes += 1
            previous = (u, v)
    if episodes != distinct:
        failures.append(f"{where}: a pair was revisited, episode count is ambiguous")
        return
    bound = (l + 1) * distinct + l
    if transcript.queries > bound:
        failures.append(f"{where}: {transcript.queries} queries over cap {bound}")


def test_08_repetition_overhead_is_capped():
    failures: list[str] = []
    runs = 0
    for n in range(2, 8):
        for k in range(2, n + 1):
            for l in range(4):
                robust = robustify(lambda o: insertion_cluster_known_k(n, k, o), l)
                adversary = AdversarialOracle(n, k, l)
                t = robust(adversary)
                runs += 1
                where = f"adversary n={n} k={k} l={l}"
                if not adversary.is_terminal() or t.result != adversary.unique_witness():
                    failures.append(f"{where}: game left unresolved")
                _repetition_overhead(failures, t, l, where)
                if n <= 4:
                    hiddens = list(enumerate_k_partitions(n, k))
                else:
                    hiddens = [
                        random_k_partition(n, k, random.Random(f"rep/{n}/{k}/{l}/{i}"))
                        for i in range(3)
                    ]
                for i, hidden in enumerate(hiddens):
                    stem = f"rep/{n}/{k}/{l}/{i}"
                    sources = [
                        TruthfulOracle(hidden),
                        RandomLiarOracle(hidden, l, 1.0, seed=f"{stem}/eager"),
                        RandomLiarOracle(hidden, l, 0.5, seed=f"{stem}/half-a"),
                        RandomLiarOracle(hidden, l, 0.5, seed=f"{stem}/half-b"),
                    ]
                    for oracle in sources:
                        t = robust(oracle)
                        runs += 1
                        where = f"{oracle.kind} n={n} k={k} l={l} hidden {i}"
                        if t.result != hidden:
                            failures.append(f"{where}: wrong partition")
                        _repetition_overhead(failures, t, l, where)
    _report(8, "repetition overhead cap", failures,
            f"{runs} runs over n <= 7, l <= 3 vs truthful, liar, and adversary sources")


def test_09_repeated_plans_survive_every_lie_placement():
    failures: list[str] = []
    decodes = 0
    for n in range(2, 6):
        for k in [None] + list(range(2, n)):
            plan = robust_plan(build_plan(n, k), 1)
            if not plan_decodable(plan, 1):
                failures.append(f"n={n} k={k}: repeated plan below the distance it needs")
                continue
            hiddens = enumerate_partitions(n) if k is None else enumerate_k_partitions(n, k)
            for hidden in hiddens:
                clean = truthful_answers(plan, hidden)
                for flip in range(-1, len(clean)):
                    answers = list(clean)
                    if flip >= 0:
                        u, v, a = answers[flip]
                        answers[flip] = (u, v, -a)
                    got = majority_decode(plan, answers, 1)
                    decodes += 1
                    if got != hidden:
                        failures.append(f"n={n} k={k} flip {flip}: {hidden.clusters} lost")
    _report(9, "repeated plans under single lies", failures,
            f"{decodes} decodes over every plan, partition, and flip at n <= 5")


def test_10_unique_coloring_agreement_and_edge_floor():
    t0 = time.perf_counter()
    failures: list[str] = []
    checked = 0
    for n in range(1, 7):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        index = {p: i for i, p in enumerate(pairs)}
        profile = []
        for p in enumerate_partitions(n):
            mask = 0
            for cluster in p.clusters:
                for u, v in itertools.combinations(sorted(cluster), 2):
                    mask |= 1 << index[(u, v)]
            profile.append((mask, p.k))
        singletons = Partition.from_labels(list(range(n)))
        for gmask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if gmask >> i & 1]
            g = SimpleGraph.from_edges(n, edges)
            verdict = unique_surjective_k_coloring(g, n)
            if verdict != singletons:
                failures.append(f"n={n} graph {gmask}: k=n did not yield the singletons")
            counts = [0] * (n + 1)
            for pmask, size in profile:
                if pmask & gmask == 0:
                    counts[size] += 1
            proper_up_to_k = 0
            for k in range(1, n):
                proper_up_to_k += counts[k]
                verdict = unique_surjective_k_coloring(g, k)
                unique_here = verdict is not None and verdict != MULTIPLE
                classical = proper_up_to_k == 1
                checked += 1
                if unique_here != classical:
                    failures.append(
                        f"n={n} k={k} graph {gmask}: surjective {unique_here}, classical {classical}"
                    )
                elif unique_here and not unique_coloring_edge_bound_holds(g, k):
                    failures.append(f"n={n} k={k} graph {gmask}: below the edge floor")
    elapsed = time.perf_counter() - t0
    if elapsed >= 300.0:
        failures.append(f"took {elapsed:.1f}s, cap is 5min")
    _report(10, "unique coloring agreement", failures,
            f"{checked} graph cells over n <= 6 agree and meet the edge floor, {elapsed:.0f}s")


def test_11_closed_form_evaluators():
    failures: list[str] = []
    if abs(binary_entropy(0.25) - 0.8112781245) > 1e-9:
        failures.append(f"entropy at 1/4 came out {binary_entropy(0.25)!r}")
    grid = [i / 20 for i in range(10)]
    unknown = [info_lower_bound_unknown(8, c) for c in grid]
    known = [info_lower_bound_known(8, 3, c) for c in grid]
    if any(b <= a for a, b in zip(unknown, unknown[1:])):
        failures.append("unknown-k floor is not increasing in the lie fraction")
    if any(b <= a for a, b in zip(known, known[1:])):
        failures.append("known-k floor is not increasing in the lie fraction")
    for n in range(2, 9):
        if info_lower_bound_unknown(n, 0.0) != log2(bell(n)):
            failures.append(f"n={n}: noiseless unknown-k floor is not log2 of the count")
        for k in range(1, n + 1):
            if info_lower_bound_known(n, k, 0.0) != log2(stirling2(n, k)):
                failures.append(f"n={n} k={k}: noiseless known-k floor is not log2 of the count")
    if hamming_ball_volume(2, 4) != 11:
        failures.append(f"ball volume (2, 4) came out {hamming_ball_volume(2, 4)}")
    _report(11, "closed-form evaluators", failures,
            "entropy pin, monotone floors, noiseless reductions, ball volume")
