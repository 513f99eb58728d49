"""Pairwise plausibility ranking and ranked-pairs voting."""

from .direct_ranker import (
    Pair,
    PairObjective,
    RankMatrix,
    check_rank_matrix,
    pair_scores,
    pairwise_score,
    rank_matrix,
    train_ranker,
)
from .metrics import DEFAULT_KS, top_k_accuracy, true_rank
from .voting import locked_graph, ranked_pairs

__all__ = [
    "DEFAULT_KS",
    "Pair",
    "PairObjective",
    "RankMatrix",
    "check_rank_matrix",
    "locked_graph",
    "pair_scores",
    "pairwise_score",
    "rank_matrix",
    "ranked_pairs",
    "top_k_accuracy",
    "train_ranker",
    "true_rank",
]
