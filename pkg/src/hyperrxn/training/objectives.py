"""Training objectives: a loss and a metric over a fixed set of items.

An objective prepares its reactions once (hypergraphs or fingerprints are
cached), hands the trainer per-batch losses and reports a whole-set metric.
"""

import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from hyperrxn.autodiff import Tensor, no_grad
from hyperrxn.gnn.losses import cross_entropy, mse
from hyperrxn.gnn.model import ReactionModel
from hyperrxn.models.chem import Reaction
from hyperrxn.utils.exceptions import RxnConfigError, RxnDatasetError, RxnValidationError

logger = logging.getLogger(__name__)


class Objective:
    """Base class for training objectives.

    Attributes:
        metric_name: Name of the value :meth:`metric` returns
        higher_is_better: Direction of the metric
    """

    metric_name = "metric"
    higher_is_better = True

    def __len__(self) -> int:
        raise NotImplementedError

    def loss(self, model: ReactionModel, indices: np.ndarray) -> Tuple[Tensor, float]:
        """Loss of one batch and the summed per-item metric of that batch."""
        raise NotImplementedError

    def metric(self, model: ReactionModel, batch_size: int = 256) -> float:
        """Metric over every item, without recording gradients."""
        total = 0.0
        with no_grad():
            for start in range(0, len(self), batch_size):
                indices = np.arange(start, min(start + batch_size, len(self)))
                total += self.loss(model, indices)[1]
        return total / len(self)


class LabeledObjective(Objective):
    """Cross-entropy for ``classify`` models, squared error for ``regress``.

    Args:
        model: Model whose ``prepare`` caches the reactions
        reactions: Inputs
        targets: Class indices or real targets, one per reaction

    Raises:
        RxnConfigError: If the model task has no labeled objective
        RxnDatasetError: If there are no reactions or the counts differ
        RxnValidationError: If a class index is out of range
    """

    def __init__(
        self,
        model: ReactionModel,
        reactions: Sequence[Reaction],
        targets: Sequence[Union[int, float]],
    ) -> None:
        task = model.config.task
        if task not in ("classify", "regress"):
            raise RxnConfigError(f"Task {task!r} cannot be trained on labels")
        if not reactions:
            raise RxnDatasetError("No reactions to train or evaluate on")
        if len(reactions) != len(targets):
            raise RxnDatasetError(
                f"{len(reactions)} reactions but {len(targets)} targets"
            )
        self.task = task
        if task == "classify":
            labels = np.asarray(targets, dtype=np.int64)
            bad = sorted({int(t) for t in labels if not 0 <= t < model.config.num_classes})
            if bad:
                raise RxnValidationError(
                    f"Labels outside 0..{model.config.num_classes - 1}", validation_errors=bad
                )
            self.targets: np.ndarray = labels
            self.metric_name = "accuracy"
        else:
            self.targets = np.asarray(targets, dtype=np.float64)
            self.metric_name = "mse"
            self.higher_is_better = False
        self.items: List[object] = model.prepare(reactions)

    def __len__(self) -> int:
        return len(self.items)

    def loss(self, model: ReactionModel, indices: np.ndarray) -> Tuple[Tensor, float]:
        batch = model.collate([self.items[i] for i in indices])
        _, out = model.forward(batch)
        targets = self.targets[indices]
        if self.task == "classify":
            correct = np.argmax(out.value, axis=1) == targets
            return cross_entropy(out, targets.tolist()), float(np.sum(correct))
        diff = out.value[:, 0] - targets
        return mse(out, targets.reshape(-1, 1)), float(np.sum(diff * diff))
