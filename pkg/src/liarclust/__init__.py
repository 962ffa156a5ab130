"""Learning a hidden clustering through same-cluster queries that may lie.

The library models a questioner who may ask "are u and v in the same
cluster?" of a source that answers +1 or -1 and may give up to l wrong
answers.  It provides the combinatorial core (partitions, signed answer
sets, coloring arguments), learners (adaptive insertion variants and
nonadaptive query plans with decoders), answer sources (truthful, random
liar, and a game-playing adversary), exact game values by minimax search,
closed-form bounds, and a simulation harness with a CLI.
"""

from .bounds import (
    BoundsReport,
    adaptive_lower_bound,
    adaptive_lower_bound_ceil,
    binary_entropy,
    build_bounds_report,
    expected_queries,
    expected_queries_robust_worst_case,
    expected_queries_worst_case,
    hamming_ball_volume,
    info_lower_bound_known,
    info_lower_bound_unknown,
    liar_counting_feasible,
    min_queries_liar_counting,
    upper_bound_known,
    upper_bound_unknown,
)
from .coloring import (
    SimpleGraph,
    has_surjective_k_coloring,
    k_inseparable,
    unique_coloring_edge_bound_holds,
    unique_surjective_k_coloring,
)
from .game import (
    GameState,
    GameValueResult,
    ResponderState,
    SearchBudgetExceededError,
    exact_game_value,
    is_terminal,
    responder_answer,
)
from .harness import (
    AuditReport,
    ExperimentConfig,
    LEARNERS,
    QueryBudgetExceededError,
    RunOutcome,
    SimulationResult,
    audit_table,
    exact_expected_queries,
    monte_carlo_expected,
    run_game,
    simulate,
)
from .instance import MULTIPLE, SignedInstance
from .learners import (
    AmbiguousAnswersError,
    DecodeError,
    InfeasibleAnswersError,
    QueryPlan,
    Transcript,
    build_plan,
    decode_plan,
    insertion_cluster,
    insertion_cluster_known_k,
    majority_decode,
    parallel_insertion,
    parallel_insertion_known_k,
    plan_decodable,
    randomized_insertion,
    randomized_insertion_known_k,
    robust_insertion,
    robust_insertion_known_k,
    robust_plan,
    robustify,
    truthful_answers,
)
from .limits import ExhaustionLimitError, max_enumeration_n, max_permutation_n
from .oracles import AdversarialOracle, RandomLiarOracle, TruthfulOracle
from .partitions import (
    Partition,
    bell,
    enumerate_k_partitions,
    enumerate_partitions,
    random_k_partition,
    stirling2,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialOracle",
    "AmbiguousAnswersError",
    "AuditReport",
    "BoundsReport",
    "DecodeError",
    "ExhaustionLimitError",
    "ExperimentConfig",
    "GameState",
    "GameValueResult",
    "InfeasibleAnswersError",
    "LEARNERS",
    "MULTIPLE",
    "Partition",
    "QueryBudgetExceededError",
    "QueryPlan",
    "RandomLiarOracle",
    "ResponderState",
    "RunOutcome",
    "SearchBudgetExceededError",
    "SignedInstance",
    "SimpleGraph",
    "SimulationResult",
    "Transcript",
    "TruthfulOracle",
    "adaptive_lower_bound",
    "adaptive_lower_bound_ceil",
    "audit_table",
    "bell",
    "binary_entropy",
    "build_bounds_report",
    "build_plan",
    "decode_plan",
    "enumerate_k_partitions",
    "enumerate_partitions",
    "exact_expected_queries",
    "exact_game_value",
    "expected_queries",
    "expected_queries_robust_worst_case",
    "expected_queries_worst_case",
    "hamming_ball_volume",
    "has_surjective_k_coloring",
    "info_lower_bound_known",
    "info_lower_bound_unknown",
    "insertion_cluster",
    "insertion_cluster_known_k",
    "is_terminal",
    "k_inseparable",
    "liar_counting_feasible",
    "majority_decode",
    "max_enumeration_n",
    "max_permutation_n",
    "min_queries_liar_counting",
    "monte_carlo_expected",
    "parallel_insertion",
    "parallel_insertion_known_k",
    "plan_decodable",
    "randomized_insertion",
    "randomized_insertion_known_k",
    "random_k_partition",
    "responder_answer",
    "robust_insertion",
    "robust_insertion_known_k",
    "robust_plan",
    "robustify",
    "run_game",
    "simulate",
    "stirling2",
    "truthful_answers",
    "unique_coloring_edge_bound_holds",
    "unique_surjective_k_coloring",
    "upper_bound_known",
    "upper_bound_unknown",
]
