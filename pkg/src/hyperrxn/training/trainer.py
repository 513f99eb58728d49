"""Mini-batch training loop and classifier evaluation."""

import json
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from hyperrxn.autodiff import Adam, Schedule, no_grad
from hyperrxn.gnn.model import ReactionModel
from hyperrxn.models.chem import Reaction
from hyperrxn.models.config import TrainingConfig
from hyperrxn.models.reports import ClassificationMetrics, EpochMetrics
from hyperrxn.utils.exceptions import RxnDatasetError, RxnNumericError, RxnValidationError

from .objectives import Objective

logger = logging.getLogger(__name__)


class Trainer:
    """Adam with an exponential learning-rate schedule over shuffled mini-batches.

    Shuffling uses its own generator seeded from ``config.seed``, so two runs
    with the same seed, data and configuration visit the same batches and
    end with identical parameters.

    Args:
        model: Model to train in place
        config: Optimization settings (``lr``, ``lr_decay``, ``l2``,
            ``epochs``, ``batch_size``, ``seed``)
        metrics_path: JSON-lines file that receives one object per epoch

    Example:
        >>> trainer = Trainer(model, TrainingConfig(epochs=5))
        >>> history = trainer.fit(LabeledObjective(model, reactions, labels))
        >>> history[-1].epoch
        5
    """

    def __init__(
        self,
        model: ReactionModel,
        config: TrainingConfig,
        metrics_path: Optional[Union[str, Path]] = None,
    ) -> None:
        self.model = model
        self.config = config
        self.metrics_path = Path(metrics_path) if metrics_path else None
        self.optimizer = Adam(
            model.params, Schedule(lr0=config.lr, decay=config.lr_decay), config.l2
        )
        self._rng = np.random.default_rng(config.seed)

    def fit(self, train: Objective, valid: Optional[Objective] = None) -> List[EpochMetrics]:
        """Run ``config.epochs`` passes over ``train``.

        Returns:
            Metrics of every epoch

        Raises:
            RxnNumericError: If a loss, gradient or update is not finite
        """
        history = []
        if self.metrics_path is not None:
            self.metrics_path.parent.mkdir(parents=True, exist_ok=True)
            self.metrics_path.write_text("", encoding="utf-8")
        logger.info(
            f"Training {len(train)} items for {self.config.epochs} epochs "
            f"({self.model.params.num_parameters} parameters)"
        )
        for epoch in range(1, self.config.epochs + 1):
            metrics = self._epoch(epoch, train, valid)
            history.append(metrics)
            line = json.dumps(metrics.model_dump(mode="json"))
            logger.info(line)
            if self.metrics_path is not None:
                with self.metrics_path.open("a", encoding="utf-8") as handle:
                    handle.write(line + "\n")
        return history

    def _epoch(self, epoch: int, train: Objective, valid: Optional[Objective]) -> EpochMetrics:
        order = self._rng.permutation(len(train))
        total_loss = 0.0
        total_metric = 0.0
        for start in range(0, len(order), self.config.batch_size):
            indices = order[start : start + self.config.batch_size]
            self.optimizer.zero_grad()
            loss, metric = train.loss(self.model, indices)
            value = loss.item()
            if not np.isfinite(value):
                raise RxnNumericError(f"Loss is {value} in epoch {epoch}", operation="loss")
            loss.backward()
            self.optimizer.step()
            total_loss += value * len(indices)
            total_metric += metric
        logger.debug(f"Epoch {epoch}: gradient norm {self.model.params.grad_norm():.6g}")

        valid_metric = valid.metric(self.model, self.config.batch_size) if valid else None
        return EpochMetrics(
            epoch=epoch,
            lr=self.optimizer.lr,
            train_loss=total_loss / len(order),
            train_metric=total_metric / len(order),
            valid_metric=valid_metric,
        )


def predict(
    model: ReactionModel, reactions: Sequence[Reaction], batch_size: int = 256
) -> np.ndarray:
    """Head outputs for every reaction, one row each."""
    if not reactions:
        raise RxnDatasetError("No reactions to predict")
    items = model.prepare(reactions)
    rows = []
    with no_grad():
        for start in range(0, len(items), batch_size):
            _, out = model.forward(model.collate(items[start : start + batch_size]))
            rows.append(out.value)
    return np.concatenate(rows, axis=0)


def _check_labels(labels: Sequence[int], num_classes: int) -> None:
    bad = sorted({int(t) for t in labels if not 0 <= int(t) < num_classes})
    if bad:
        raise RxnValidationError(f"Labels outside 0..{num_classes - 1}", validation_errors=bad)


def classification_metrics(
    predicted: Sequence[int], labels: Sequence[int], num_classes: int
) -> ClassificationMetrics:
    """Accuracy, per-class accuracy and confusion counts.

    Raises:
        RxnDatasetError: If there are no labels
        RxnValidationError: If a label is outside ``0..num_classes - 1``

    Example:
        >>> classification_metrics([0, 1, 1], [0, 1, 0], 2).accuracy
        0.6666666666666666
    """
    if len(labels) == 0:
        raise RxnDatasetError("No labeled reactions to evaluate")
    _check_labels(labels, num_classes)
    confusion = np.zeros((num_classes, num_classes), dtype=np.int64)
    for p, t in zip(predicted, labels):
        confusion[int(t), int(p)] += 1
    per_class: List[Optional[float]] = []
    for c in range(num_classes):
        support = int(confusion[c].sum())
        per_class.append(float(confusion[c, c]) / support if support else None)
    return ClassificationMetrics(
        count=len(labels),
        accuracy=float(np.trace(confusion)) / len(labels),
        per_class_accuracy=per_class,
        confusion=confusion.tolist(),
    )


def evaluate_classifier(
    model: ReactionModel,
    reactions: Sequence[Reaction],
    labels: Sequence[int],
    batch_size: int = 256,
) -> ClassificationMetrics:
    """Evaluate a ``classify`` model.

    Raises:
        RxnDatasetError: If there is nothing to evaluate or counts differ
        RxnValidationError: If a label is not a class index of the model
    """
    if len(reactions) != len(labels):
        raise RxnDatasetError(f"{len(reactions)} reactions but {len(labels)} labels")
    _check_labels(labels, model.config.num_classes)
    logits = predict(model, reactions, batch_size)
    return classification_metrics(
        np.argmax(logits, axis=1).tolist(), list(labels), model.config.num_classes
    )
