"""Closed-form query bounds and expectations, in exact arithmetic.

Worst-case bounds for adaptive learning against up to l lies, expected
query counts for the randomized insertion learner against a truthful
source, and two information-theoretic floors (entropy counting and
lie-pattern counting).  Everything that can be a Fraction is a Fraction;
floats appear only where a logarithm forces them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .partitions import bell, stirling2


def adaptive_lower_bound(n: int, k: int, l: int) -> Fraction:
    """Queries any learner can be forced to spend, with k promised.

    Exact rational value; only meaningful for 2 <= k < n (with k = n there
    is a single candidate partition and the game is over before it starts).
    """
    if not 2 <= k < n:
        raise ValueError(f"lower bound needs 2 <= k < n, got k={k}, n={n}")
    if l < 0:
        raise ValueError(f"lie budget must be nonnegative, got {l}")
    base = n * (k - 1) - comb(k, 2)
    surcharge = max(Fraction(l - 1, 2) * n + Fraction(k, 2), Fraction(0))
    return base + surcharge + l


def adaptive_lower_bound_ceil(n: int, k: int, l: int) -> int:
    """The lower bound rounded up: query counts are integers."""
    return math.ceil(adaptive_lower_bound(n, k, l))


def upper_bound_known(n: int, k: int, l: int) -> int:
    """Worst-case queries of the repetition learner when k is promised."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if l < 0:
        raise ValueError(f"lie budget must be nonnegative, got {l}")
    return (l + 1) * (n * (k - 1) - comb(k, 2)) + l


def upper_bound_unknown(n: int, k: int, l: int) -> int:
    """Worst-case queries without a promise, for a hidden k-clustering."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if l < 0:
        raise ValueError(f"lie budget must be nonnegative, got {l}")
    return (l + 1) * (n * k - comb(k + 1, 2)) + l


def expected_queries(sizes) -> Fraction:
    """Expected queries of insertion over a uniform element order.

    sizes are the hidden cluster sizes; the source is truthful and the
    cluster count unknown.  Every element beyond a cluster's first costs
    one positive query (n - k total); a negative query (a, b) happens
    exactly when some element of a's cluster precedes everything in b's,
    giving n_a * n_b / (n_a + n_b) expected negatives for the ordered pair.
    """
    sizes = tuple(int(s) for s in sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"cluster sizes must be positive, got {sizes}")
    n = sum(sizes)
    k = len(sizes)
    total = Fraction(n - k)
    for i, a in enumerate(sizes):
        for j, b in enumerate(sizes):
            if i != j:
                total += Fraction(a * b, a + b)
    return total


def expected_queries_worst_case(n: int, k: int) -> Fraction:
    """Upper bound on expected_queries over all k-clusterings of n elements.

    Attained exactly when the clusters have equal sizes.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return Fraction(n * (k + 1), 2) - k


def expected_queries_robust_worst_case(n: int, k: int, l: int) -> Fraction:
    """The expected-query ceiling once every comparison repeats l+1 times."""
    if l < 0:
        raise ValueError(f"lie budget must be nonnegative, got {l}")
    return (l + 1) * expected_queries_worst_case(n, k) + l


def binary_entropy(x: float) -> float:
    """Entropy in bits of a coin with heads probability x."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must be in [0, 1], got {x}")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def info_lower_bound_unknown(n: int, lie_fraction: float = 0.0) -> float:
    """Entropy floor on queries to name one of the bell(n) partitions.

    With answers flipped adversarially at rate lie_fraction < 1/2, each
    query carries at most 1 - H(lie_fraction) bits.
    """
    return math.log2(bell(n)) / _channel_capacity(lie_fraction)


def info_lower_bound_known(n: int, k: int, lie_fraction: float = 0.0) -> float:
    """Entropy floor when the answer names one of stirling2(n, k) partitions."""
    count = stirling2(n, k)
    if count < 1:
        raise ValueError(f"no partitions of {n} elements into {k} clusters")
    return math.log2(count) / _channel_capacity(lie_fraction)


def _channel_capacity(lie_fraction: float) -> float:
    if not 0.0 <= lie_fraction < 0.5:
        raise ValueError(
            f"lie fraction must be in [0, 1/2), got {lie_fraction}"
        )
    return 1.0 - binary_entropy(lie_fraction)


def hamming_ball_volume(l: int, q: int) -> int:
    """Number of binary length-q strings within Hamming distance l of a fixed one."""
    if l < 0 or q < 0:
        raise ValueError(f"need l >= 0 and q >= 0, got l={l}, q={q}")
    return sum(comb(q, i) for i in range(min(l, q) + 1))


def liar_counting_feasible(num_candidates: int, l: int, q: int) -> bool:
    """Whether q answers can distinguish the candidates despite l lies.

    Necessary condition: the answer space must hold one radius-l ball per
    candidate, i.e. num_candidates * hamming_ball_volume(l, q) <= 2**q.
    """
    if num_candidates < 1:
        raise ValueError(f"need at least one candidate, got {num_candidates}")
    return num_candidates * hamming_ball_volume(l, q) <= 2**q


def min_queries_liar_counting(num_candidates: int, l: int) -> int:
    """Smallest q passing the lie-pattern counting test."""
    q = 0
    while not liar_counting_feasible(num_candidates, l, q):
        q += 1
    return q


@dataclass(frozen=True)
class BoundsReport:
    """Every closed-form number for one (n, k, l) cell, exact where possible."""

    n: int
    k: int
    l: int
    adaptive_lower: Fraction
    adaptive_lower_ceil: int
    adaptive_upper_known: int
    adaptive_upper_unknown: int
    expected_worst_case: Fraction
    expected_robust_worst_case: Fraction
    entropy_floor_known: float
    counting_floor: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "adaptive_lower": str(self.adaptive_lower),
            "adaptive_lower_ceil": self.adaptive_lower_ceil,
            "adaptive_upper_known": self.adaptive_upper_known,
            "adaptive_upper_unknown": self.adaptive_upper_unknown,
            "expected_worst_case": str(self.expected_worst_case),
            "expected_robust_worst_case": str(self.expected_robust_worst_case),
            "entropy_floor_known": self.entropy_floor_known,
            "counting_floor": self.counting_floor,
        }


def build_bounds_report(n: int, k: int, l: int) -> BoundsReport:
    """Assemble every bound for one cell; needs 2 <= k < n."""
    return BoundsReport(
        n=n,
        k=k,
        l=l,
        adaptive_lower=adaptive_lower_bound(n, k, l),
        adaptive_lower_ceil=adaptive_lower_bound_ceil(n, k, l),
        adaptive_upper_known=upper_bound_known(n, k, l),
        adaptive_upper_unknown=upper_bound_unknown(n, k, l),
        expected_worst_case=expected_queries_worst_case(n, k),
        expected_robust_worst_case=expected_queries_robust_worst_case(n, k, l),
        entropy_floor_known=info_lower_bound_known(n, k),
        counting_floor=min_queries_liar_counting(stirling2(n, k), l),
    )
