"""Finite-difference verification of analytic gradients."""

import logging
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from hyperrxn.utils.exceptions import RxnValidationError

from .params import ParamStore
from .tensor import Tensor, no_grad

logger = logging.getLogger(__name__)


def grad_check(
    fn: Callable[[], Tensor],
    params: Union[ParamStore, Sequence[Tensor]],
    eps: float = 1e-5,
    num_samples: int = 50,
    seed: int = 0,
) -> float:
    """Compare backpropagated gradients against central differences.

    Args:
        fn: Builds a scalar loss from the current parameter values
        params: The tensors to check
        eps: Finite-difference step, in ``[1e-7, 1e-3]``
        num_samples: Number of coordinates drawn at random; all coordinates
            are checked when there are fewer
        seed: Seed for the coordinate sample

    Returns:
        Maximum of ``|analytic - numeric| / max(1, |analytic|)`` over the
        sampled coordinates

    Raises:
        RxnValidationError: If ``eps`` is outside its range

    Example:
        >>> grad_check(lambda: sum_all(matmul(x, store["w"])), store) < 1e-9
        True
    """
    if not 1e-7 <= eps <= 1e-3:
        raise RxnValidationError(f"eps must be in [1e-7, 1e-3], got {eps}")
    tensors = _tensors(params)
    for tensor in tensors:
        tensor.zero_grad()
    fn().backward()
    analytic: Dict[int, np.ndarray] = {
        i: (t.grad.copy() if t.grad is not None else np.zeros_like(t.value))
        for i, t in enumerate(tensors)
    }

    coordinates: List[Tuple[int, int, int]] = [
        (i, r, c)
        for i, t in enumerate(tensors)
        for r in range(t.shape[0])
        for c in range(t.shape[1])
    ]
    if len(coordinates) > num_samples:
        rng = np.random.default_rng(seed)
        chosen = rng.choice(len(coordinates), size=num_samples, replace=False)
        coordinates = [coordinates[k] for k in sorted(chosen)]

    worst = 0.0
    with no_grad():
        for i, r, c in coordinates:
            value = tensors[i].value
            original = value[r, c]
            value[r, c] = original + eps
            plus = fn().item()
            value[r, c] = original - eps
            minus = fn().item()
            value[r, c] = original
            numeric = (plus - minus) / (2.0 * eps)
            exact = float(analytic[i][r, c])
            worst = max(worst, abs(exact - numeric) / max(1.0, abs(exact)))
    logger.debug(f"grad_check over {len(coordinates)} coordinates: max error {worst:.3e}")
    return worst


def _tensors(params: Union[ParamStore, Sequence[Tensor]]) -> List[Tensor]:
    if isinstance(params, ParamStore):
        return [t for _, t in params.items()]
    return list(params)
