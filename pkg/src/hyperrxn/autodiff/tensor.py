"""Dense 2-D tensor with reverse-mode gradient tracking.

Every tensor holds a float64 matrix. Operations in :mod:`hyperrxn.autodiff.ops`
record their parents and a backward closure when at least one input requires a
gradient; :meth:`Tensor.backward` replays those closures in reverse
topological order.
"""

import threading
from contextlib import contextmanager
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from hyperrxn.utils.exceptions import RxnShapeError

ArrayLike = Union["Tensor", np.ndarray, float, int, Sequence[float], Sequence[Sequence[float]]]
BackwardFn = Callable[[np.ndarray], None]

_state = threading.local()


def grad_enabled() -> bool:
    """Whether new operations record provenance on this thread."""
    return getattr(_state, "enabled", True)


@contextmanager
def no_grad() -> Iterator[None]:
    """Disable graph recording on the current thread.

    Example:
        >>> with no_grad():
        ...     logits = model.forward(batch)
    """
    previous = grad_enabled()
    _state.enabled = False
    try:
        yield
    finally:
        _state.enabled = previous


class Tensor:
    """A float64 matrix that can take part in reverse-mode differentiation.

    Attributes:
        value: The ``(rows, cols)`` array
        grad: Accumulated gradient of the same shape, or ``None``
        requires_grad: Whether gradients flow into this tensor
        name: Optional label, set for named parameters
        op: Name of the operation that produced the tensor
    """

    __slots__ = ("value", "grad", "requires_grad", "name", "op", "_parents", "_backward")

    def __init__(
        self,
        value: ArrayLike,
        requires_grad: bool = False,
        name: Optional[str] = None,
        op: str = "leaf",
        parents: Tuple["Tensor", ...] = (),
        backward: Optional[BackwardFn] = None,
    ) -> None:
        array = np.array(value, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        elif array.ndim == 1:
            array = array.reshape(1, -1)
        elif array.ndim != 2:
            raise RxnShapeError("Tensors are 2-D", expected=2, actual=array.ndim)
        self.value: np.ndarray = array
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self.name = name
        self.op = op
        self._parents = parents
        self._backward = backward

    @property
    def shape(self) -> Tuple[int, int]:
        rows, cols = self.value.shape
        return rows, cols

    def item(self) -> float:
        """Return the value of a ``1 x 1`` tensor as a float."""
        if self.value.size != 1:
            raise RxnShapeError("item() needs a single-element tensor", (1, 1), self.shape)
        return float(self.value[0, 0])

    def numpy(self) -> np.ndarray:
        """Return a copy of the underlying array."""
        return self.value.copy()

    def zero_grad(self) -> None:
        self.grad = None

    def accumulate(self, grad: np.ndarray) -> None:
        """Add ``grad`` into this tensor's gradient buffer."""
        if self.grad is None:
            self.grad = np.array(grad, dtype=np.float64, copy=True)
        else:
            self.grad += grad

    def backward(self) -> None:
        """Populate gradients of every tracked tensor this scalar depends on.

        Raises:
            RxnShapeError: If this tensor is not a ``1 x 1`` loss
        """
        if self.value.size != 1:
            raise RxnShapeError("backward() needs a scalar loss", (1, 1), self.shape)
        order = self._topological_order()
        self.accumulate(np.ones_like(self.value))
        for node in reversed(order):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    def _topological_order(self) -> List["Tensor"]:
        order: List[Tensor] = []
        seen = set()
        stack: List[Tuple[Tensor, int]] = [(self, 0)]
        while stack:
            node, position = stack.pop()
            if position == 0:
                if id(node) in seen:
                    continue
                seen.add(id(node))
            if position < len(node._parents):
                stack.append((node, position + 1))
                parent = node._parents[position]
                if parent.requires_grad and id(parent) not in seen:
                    stack.append((parent, 0))
            else:
                order.append(node)
        return order

    def __repr__(self) -> str:
        label = f", name={self.name!r}" if self.name else ""
        return f"Tensor(shape={self.shape}, op={self.op!r}{label})"

    def __add__(self, other: ArrayLike) -> "Tensor":
        from .ops import add

        return add(self, other)

    def __radd__(self, other: ArrayLike) -> "Tensor":
        from .ops import add

        return add(other, self)

    def __sub__(self, other: ArrayLike) -> "Tensor":
        from .ops import subtract

        return subtract(self, other)

    def __rsub__(self, other: ArrayLike) -> "Tensor":
        from .ops import subtract

        return subtract(other, self)

    def __mul__(self, other: ArrayLike) -> "Tensor":
        from .ops import mul

        return mul(self, other)

    def __rmul__(self, other: ArrayLike) -> "Tensor":
        from .ops import mul

        return mul(other, self)

    def __matmul__(self, other: ArrayLike) -> "Tensor":
        from .ops import matmul

        return matmul(self, other)

    def __neg__(self) -> "Tensor":
        from .ops import scale

        return scale(self, -1.0)


def as_tensor(value: ArrayLike) -> Tensor:
    """Wrap a constant in a :class:`Tensor`; tensors pass through unchanged."""
    if isinstance(value, Tensor):
        return value
    return Tensor(value)
