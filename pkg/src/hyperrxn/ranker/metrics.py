"""Ranking metrics."""

from typing import Dict, Sequence

from hyperrxn.utils.exceptions import RxnRankingError

DEFAULT_KS = (1, 2, 5, 10)


def true_rank(order: Sequence[int], truth: int) -> int:
    """1-based position of ``truth`` in ``order``.

    Raises:
        RxnRankingError: If ``truth`` is not a candidate
    """
    for position, candidate in enumerate(order, start=1):
        if candidate == truth:
            return position
    raise RxnRankingError(f"True candidate {truth} is missing from the ranking")


def top_k_accuracy(
    rankings: Sequence[Sequence[int]],
    truth: Sequence[int],
    ks: Sequence[int] = DEFAULT_KS,
) -> Dict[int, float]:
    """Fraction of candidate sets whose true candidate is among the first ``k``.

    Example:
        >>> top_k_accuracy([[2, 0, 1], [0, 1, 2]], [2, 1], ks=[1, 2])
        {1: 0.5, 2: 1.0}
    """
    if len(rankings) != len(truth):
        raise RxnRankingError(f"{len(rankings)} rankings but {len(truth)} true candidates")
    if not rankings:
        raise RxnRankingError("No rankings to score")
    ranks = [true_rank(order, t) for order, t in zip(rankings, truth)]
    return {k: sum(1 for r in ranks if r <= k) / len(ranks) for k in ks}
