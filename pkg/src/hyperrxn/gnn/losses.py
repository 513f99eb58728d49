"""Training losses."""

from typing import Sequence, Union

import numpy as np

from hyperrxn.autodiff import Tensor, mean_all, mul, row_log_softmax, scale, subtract, sum_all
from hyperrxn.utils.exceptions import RxnShapeError, RxnValidationError


def cross_entropy(logits: Tensor, targets: Sequence[int]) -> Tensor:
    """Mean softmax cross-entropy.

    Args:
        logits: ``(B, k)`` unnormalized scores
        targets: ``B`` class indices in ``[0, k)``

    Raises:
        RxnValidationError: If a class index is out of range
        RxnShapeError: If the target count differs from the batch size

    Example:
        >>> cross_entropy(Tensor(np.zeros((1, 3))), [0]).item()  # ln 3
        1.0986122886681098
    """
    labels = np.asarray(targets, dtype=np.int64).reshape(-1)
    rows, classes = logits.shape
    if labels.size != rows:
        raise RxnShapeError("One target per row expected", expected=rows, actual=labels.size)
    bad = [int(t) for t in labels if t < 0 or t >= classes]
    if bad:
        raise RxnValidationError(
            f"Class index out of range for {classes} classes", validation_errors=bad
        )
    onehot = np.zeros((rows, classes))
    onehot[np.arange(rows), labels] = 1.0
    return scale(sum_all(mul(row_log_softmax(logits), onehot)), -1.0 / rows)


def mse(prediction: Tensor, targets: Union[Sequence[float], np.ndarray]) -> Tensor:
    """Mean squared error against real targets of the same shape.

    Raises:
        RxnShapeError: If the target count differs from the prediction size
    """
    target = np.asarray(targets, dtype=np.float64)
    if target.size != prediction.value.size:
        raise RxnShapeError(
            "One target per prediction expected", expected=prediction.shape, actual=target.shape
        )
    diff = subtract(prediction, target.reshape(prediction.shape))
    return mean_all(mul(diff, diff))
