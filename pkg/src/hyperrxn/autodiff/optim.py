"""ADAM optimizer and exponential learning-rate schedule."""

from dataclasses import dataclass, field
from typing import Dict, Mapping

import numpy as np
from pydantic import Field

from hyperrxn.models.base import BaseModel
from hyperrxn.utils.exceptions import RxnNumericError, RxnShapeError

from .params import ParamStore


class Schedule(BaseModel):
    """Exponential decay ``lr(t) = lr0 * decay**t`` per optimizer step.

    Example:
        >>> Schedule(lr0=0.01, decay=0.5).lr(2)
        0.0025
    """

    lr0: float = Field(..., gt=0, description="Initial learning rate")
    decay: float = Field(1.0, gt=0, le=1, description="Per-step decay factor")

    def lr(self, step: int) -> float:
        return self.lr0 * self.decay**step


@dataclass
class AdamState:
    """First/second moment buffers and the step counter."""

    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: Dict[str, np.ndarray] = field(default_factory=dict)
    v: Dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(
    params: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    lr: float,
    l2: float = 0.0,
) -> Dict[str, np.ndarray]:
    """Apply one bias-corrected ADAM update.

    The L2 term ``l2 * theta`` is added to each gradient before the moments
    are updated. ``state`` is advanced in place.

    Args:
        params: Current parameter values
        grads: Gradients, keyed like ``params``
        state: Moment buffers; its step counter is incremented
        lr: Learning rate for this step
        l2: L2 regularization coefficient

    Returns:
        The updated parameter values

    Raises:
        RxnShapeError: If a gradient or moment buffer has the wrong shape
        RxnNumericError: If the update is not finite
    """
    state.step += 1
    t = state.step
    correction1 = 1.0 - state.beta1**t
    correction2 = 1.0 - state.beta2**t
    updated = {}
    for name, theta in params.items():
        grad = grads.get(name)
        grad = np.zeros_like(theta) if grad is None else grad
        if grad.shape != theta.shape:
            raise RxnShapeError(
                f"Gradient of {name!r} has the wrong shape", theta.shape, grad.shape
            )
        grad = grad + l2 * theta
        m = state.m.setdefault(name, np.zeros_like(theta))
        v = state.v.setdefault(name, np.zeros_like(theta))
        if m.shape != theta.shape:
            raise RxnShapeError(
                f"Moment buffer of {name!r} has the wrong shape", theta.shape, m.shape
            )
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad * grad
        step = lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)
        if not np.all(np.isfinite(step)):
            raise RxnNumericError(f"Non-finite ADAM update for {name!r}", operation="adam_step")
        updated[name] = theta - step
    return updated


class Adam:
    """ADAM over a :class:`ParamStore` driven by a :class:`Schedule`.

    Args:
        params: Parameters to optimize
        schedule: Learning-rate schedule, evaluated at the step count before
            each update
        l2: L2 regularization coefficient

    Example:
        >>> optimizer = Adam(store, Schedule(lr0=1e-3, decay=0.9999), l2=1e-5)
        >>> loss.backward()
        >>> optimizer.step()
    """

    def __init__(self, params: ParamStore, schedule: Schedule, l2: float = 0.0) -> None:
        self.params = params
        self.schedule = schedule
        self.l2 = l2
        self.state = AdamState()

    @property
    def lr(self) -> float:
        """Learning rate the next step will use."""
        return self.schedule.lr(self.state.step)

    def step(self) -> float:
        """Update the parameters from their accumulated gradients.

        Returns:
            The learning rate used
        """
        lr = self.lr
        updated = adam_step(self.params.values(), self.params.grads(), self.state, lr, self.l2)
        for name, value in updated.items():
            self.params[name].value = value
        return lr

    def zero_grad(self) -> None:
        self.params.zero_grad()
