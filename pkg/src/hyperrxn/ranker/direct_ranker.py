"""DirectRanker: pairwise plausibility from embedding differences.

``score(a, b) = tanh((X_a - X_b) · w)`` with a bias-free ``w``. tanh is odd and
the map is linear without bias, so ``score(a, b) == -score(b, a)``; a positive
score means ``a`` is the more plausible reaction. Both branches share every
parameter of the embedding model.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from hyperrxn.autodiff import Tensor, gather_rows, matmul, no_grad, subtract, tanh
from hyperrxn.chem import reaction_key
from hyperrxn.gnn.losses import mse
from hyperrxn.gnn.model import ReactionModel
from hyperrxn.models.chem import Reaction
from hyperrxn.models.config import TrainingConfig
from hyperrxn.models.reports import EpochMetrics
from hyperrxn.training.objectives import Objective
from hyperrxn.training.trainer import Trainer
from hyperrxn.utils.exceptions import RxnModelError, RxnRankingError, RxnValidationError

logger = logging.getLogger(__name__)

Pair = Tuple[Reaction, Reaction]


@dataclass(frozen=True)
class RankMatrix:
    """Antisymmetric ``k x k`` matrix of pairwise scores with a zero diagonal.

    ``scores[a, b] > 0`` means candidate ``a`` beats candidate ``b``.
    """

    scores: np.ndarray

    @property
    def size(self) -> int:
        return int(self.scores.shape[0])


def check_rank_matrix(scores: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate a rank matrix and return it as a float64 array.

    Raises:
        RxnRankingError: If the matrix is not square, not finite, has a
            nonzero diagonal or is not antisymmetric within ``tol``
    """
    matrix = np.asarray(scores, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise RxnRankingError(f"Rank matrix must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise RxnRankingError("Rank matrix contains non-finite scores")
    if np.any(np.abs(np.diag(matrix)) > tol):
        raise RxnRankingError("Rank matrix diagonal must be zero")
    gap = float(np.max(np.abs(matrix + matrix.T))) if matrix.size else 0.0
    if gap > tol:
        raise RxnRankingError(f"Rank matrix is not antisymmetric (max |M + M^T| = {gap:.3g})")
    return matrix


def _ranker_weight(model: ReactionModel) -> Tensor:
    if model.ranker_weight is None:
        raise RxnModelError(
            f"Pairwise scores need a model trained with task='rank', got {model.config.task!r}"
        )
    return model.ranker_weight


def pair_scores(model: ReactionModel, x_a: Tensor, x_b: Tensor) -> Tensor:
    """Differentiable ``tanh((x_a - x_b) w)`` for rows of two embedding batches."""
    return tanh(matmul(subtract(x_a, x_b), _ranker_weight(model)))


def pairwise_score(rxn_a: Reaction, rxn_b: Reaction, model: ReactionModel) -> float:
    """Plausibility of ``rxn_a`` over ``rxn_b`` in ``(-1, 1)``.

    Example:
        >>> pairwise_score(rxn, rxn, model)
        0.0
    """
    _ranker_weight(model)
    with no_grad():
        x = model.encode(model.batch([rxn_a, rxn_b]))
        score = pair_scores(model, gather_rows(x, [0]), gather_rows(x, [1]))
    return score.item()


def rank_matrix(candidates: Sequence[Reaction], model: ReactionModel) -> RankMatrix:
    """Score every ordered candidate pair.

    Candidates are embedded once; the lower triangle is the exact negation of
    the upper one.
    """
    weight = _ranker_weight(model)
    k = len(candidates)
    scores = np.zeros((k, k))
    if k < 2:
        return RankMatrix(scores=scores)
    with no_grad():
        x = model.encode(model.batch(candidates)).value
    w = weight.value[:, 0]
    for a in range(k):
        for b in range(a + 1, k):
            value = float(np.tanh((x[a] - x[b]) @ w))
            scores[a, b] = value
            scores[b, a] = -value
    return RankMatrix(scores=scores)


class PairObjective(Objective):
    """Mean squared error of ``score(better, worse)`` against +1.

    Reactions that occur in several pairs are prepared once; two reactions
    count as the same when they differ only in atom or molecule order.

    Raises:
        RxnValidationError: If a pair compares a reaction with itself
        RxnRankingError: If there are no pairs
    """

    metric_name = "pair_accuracy"

    def __init__(self, model: ReactionModel, pairs: Sequence[Pair]) -> None:
        _ranker_weight(model)
        if not pairs:
            raise RxnRankingError("No ranking pairs")
        keys = [(reaction_key(a), reaction_key(b)) for a, b in pairs]
        degenerate = [i for i, (a, b) in enumerate(keys) if a == b]
        if degenerate:
            raise RxnValidationError(
                "A ranking pair compares a reaction with itself", validation_errors=degenerate
            )
        index: Dict[str, int] = {}
        reactions: List[Reaction] = []
        refs = []
        for pair, pair_keys in zip(pairs, keys):
            ids = []
            for rxn, key in zip(pair, pair_keys):
                if key not in index:
                    index[key] = len(reactions)
                    reactions.append(rxn)
                ids.append(index[key])
            refs.append(ids)
        self.pairs = np.asarray(refs, dtype=np.int64).reshape(-1, 2)
        self.items = model.prepare(reactions)

    def __len__(self) -> int:
        return int(self.pairs.shape[0])

    def loss(self, model: ReactionModel, indices: np.ndarray) -> Tuple[Tensor, float]:
        chosen = self.pairs[indices]
        members = np.concatenate([chosen[:, 0], chosen[:, 1]])
        x = model.encode(model.collate([self.items[i] for i in members]))
        n = len(indices)
        x_a = gather_rows(x, np.arange(n))
        x_b = gather_rows(x, np.arange(n, 2 * n))
        scores = pair_scores(model, x_a, x_b)
        return mse(scores, np.ones((n, 1))), float(np.sum(scores.value > 0))


def train_ranker(
    pairs: Sequence[Pair],
    model: ReactionModel,
    config: TrainingConfig,
    valid_pairs: Optional[Sequence[Pair]] = None,
    metrics_path: Optional[Union[str, Path]] = None,
) -> List[EpochMetrics]:
    """Train ``model`` in place on ``(more plausible, less plausible)`` pairs.

    Returns:
        Per-epoch metrics
    """
    train = PairObjective(model, pairs)
    valid = PairObjective(model, valid_pairs) if valid_pairs else None
    return Trainer(model, config, metrics_path=metrics_path).fit(train, valid)
