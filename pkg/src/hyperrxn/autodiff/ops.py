"""Differentiable operations over :class:`~hyperrxn.autodiff.tensor.Tensor`.

All operations take and return 2-D float64 tensors. Each output is checked for
NaN and infinity; a non-finite result raises :class:`RxnNumericError` naming
the operation. Index-driven reductions (``segment_*``, ``gather_rows``) use
``numpy.add.at``, which accumulates in index order and is therefore
deterministic.
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from hyperrxn.utils.exceptions import RxnNumericError, RxnShapeError

from .tensor import ArrayLike, Tensor, as_tensor, grad_enabled


def _result(
    value: np.ndarray,
    op: str,
    parents: Tuple[Tensor, ...],
    backward: Callable[[np.ndarray], None],
) -> Tensor:
    if not np.all(np.isfinite(value)):
        raise RxnNumericError(f"Operation '{op}' produced non-finite values", operation=op)
    if grad_enabled() and any(p.requires_grad for p in parents):
        return Tensor(value, requires_grad=True, op=op, parents=parents, backward=backward)
    return Tensor(value, op=op)


def _send(tensor: Tensor, grad: np.ndarray) -> None:
    if tensor.requires_grad:
        tensor.accumulate(grad)


def _unbroadcast(grad: np.ndarray, shape: Tuple[int, int]) -> np.ndarray:
    for axis in (0, 1):
        if shape[axis] == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _check_broadcast(a: Tensor, b: Tensor, op: str) -> None:
    for axis in (0, 1):
        if a.shape[axis] != b.shape[axis] and 1 not in (a.shape[axis], b.shape[axis]):
            raise RxnShapeError(f"Cannot broadcast in '{op}'", expected=a.shape, actual=b.shape)


def _index(index: Sequence[int], what: str, bound: Optional[int] = None) -> np.ndarray:
    array = np.asarray(index, dtype=np.int64).reshape(-1)
    if bound is not None and array.size and (array.min() < 0 or array.max() >= bound):
        raise RxnShapeError(f"{what} index out of range", expected=bound, actual=int(array.max()))
    return array


def matmul(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Matrix product ``a @ b``."""
    x, y = as_tensor(a), as_tensor(b)
    if x.shape[1] != y.shape[0]:
        raise RxnShapeError("Inner dimensions differ in 'matmul'", x.shape, y.shape)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad @ y.value.T)
        _send(y, x.value.T @ grad)

    return _result(x.value @ y.value, "matmul", (x, y), backward)


def add(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise sum with row/column broadcasting."""
    x, y = as_tensor(a), as_tensor(b)
    _check_broadcast(x, y, "add")

    def backward(grad: np.ndarray) -> None:
        _send(x, _unbroadcast(grad, x.shape))
        _send(y, _unbroadcast(grad, y.shape))

    return _result(x.value + y.value, "add", (x, y), backward)


def subtract(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise difference with row/column broadcasting."""
    x, y = as_tensor(a), as_tensor(b)
    _check_broadcast(x, y, "subtract")

    def backward(grad: np.ndarray) -> None:
        _send(x, _unbroadcast(grad, x.shape))
        _send(y, -_unbroadcast(grad, y.shape))

    return _result(x.value - y.value, "subtract", (x, y), backward)


def mul(a: ArrayLike, b: ArrayLike) -> Tensor:
    """Elementwise product with row/column broadcasting."""
    x, y = as_tensor(a), as_tensor(b)
    _check_broadcast(x, y, "mul")

    def backward(grad: np.ndarray) -> None:
        _send(x, _unbroadcast(grad * y.value, x.shape))
        _send(y, _unbroadcast(grad * x.value, y.shape))

    return _result(x.value * y.value, "mul", (x, y), backward)


def scale(a: ArrayLike, factor: float) -> Tensor:
    """Multiply every entry by a constant."""
    x = as_tensor(a)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad * factor)

    return _result(x.value * factor, "scale", (x,), backward)


def concat_rows(parts: Sequence[ArrayLike]) -> Tensor:
    """Stack tensors vertically."""
    tensors = tuple(as_tensor(p) for p in parts)
    if not tensors:
        raise RxnShapeError("concat_rows needs at least one tensor")
    if len({t.shape[1] for t in tensors}) != 1:
        raise RxnShapeError(
            "Column counts differ in 'concat_rows'", actual=[t.shape for t in tensors]
        )
    bounds = np.cumsum([0] + [t.shape[0] for t in tensors])

    def backward(grad: np.ndarray) -> None:
        for t, start, stop in zip(tensors, bounds[:-1], bounds[1:]):
            _send(t, grad[start:stop])

    return _result(np.vstack([t.value for t in tensors]), "concat_rows", tensors, backward)


def concat_cols(parts: Sequence[ArrayLike]) -> Tensor:
    """Stack tensors horizontally."""
    tensors = tuple(as_tensor(p) for p in parts)
    if not tensors:
        raise RxnShapeError("concat_cols needs at least one tensor")
    if len({t.shape[0] for t in tensors}) != 1:
        raise RxnShapeError(
            "Row counts differ in 'concat_cols'", actual=[t.shape for t in tensors]
        )
    bounds = np.cumsum([0] + [t.shape[1] for t in tensors])

    def backward(grad: np.ndarray) -> None:
        for t, start, stop in zip(tensors, bounds[:-1], bounds[1:]):
            _send(t, grad[:, start:stop])

    return _result(np.hstack([t.value for t in tensors]), "concat_cols", tensors, backward)


def row_softmax(a: ArrayLike) -> Tensor:
    """Softmax over each row."""
    x = as_tensor(a)
    shifted = x.value - x.value.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    out = exp / exp.sum(axis=1, keepdims=True)

    def backward(grad: np.ndarray) -> None:
        _send(x, out * (grad - (grad * out).sum(axis=1, keepdims=True)))

    return _result(out, "row_softmax", (x,), backward)


def row_log_softmax(a: ArrayLike) -> Tensor:
    """Log-softmax over each row, computed without forming the softmax first."""
    x = as_tensor(a)
    shifted = x.value - x.value.max(axis=1, keepdims=True)
    out = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))

    def backward(grad: np.ndarray) -> None:
        _send(x, grad - np.exp(out) * grad.sum(axis=1, keepdims=True))

    return _result(out, "row_log_softmax", (x,), backward)


def leaky_relu(a: ArrayLike, slope: float = 0.2) -> Tensor:
    """``x`` for positive entries, ``slope * x`` otherwise."""
    x = as_tensor(a)
    factor = np.where(x.value > 0, 1.0, slope)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad * factor)

    return _result(x.value * factor, "leaky_relu", (x,), backward)


def relu(a: ArrayLike) -> Tensor:
    x = as_tensor(a)
    mask = (x.value > 0).astype(np.float64)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad * mask)

    return _result(x.value * mask, "relu", (x,), backward)


def tanh(a: ArrayLike) -> Tensor:
    x = as_tensor(a)
    out = np.tanh(x.value)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad * (1.0 - out * out))

    return _result(out, "tanh", (x,), backward)


def gather_rows(a: ArrayLike, index: Sequence[int]) -> Tensor:
    """Select rows ``a[index]``; repeated indices are allowed."""
    x = as_tensor(a)
    idx = _index(index, "gather_rows", x.shape[0])

    def backward(grad: np.ndarray) -> None:
        if x.requires_grad:
            full = np.zeros_like(x.value)
            np.add.at(full, idx, grad)
            x.accumulate(full)

    return _result(x.value[idx], "gather_rows", (x,), backward)


def segment_sum(a: ArrayLike, index: Sequence[int], num_segments: int) -> Tensor:
    """Sum rows of ``a`` into ``num_segments`` buckets given by ``index``.

    Empty segments are zero rows.
    """
    x = as_tensor(a)
    idx = _index(index, "segment_sum", num_segments)
    if idx.size != x.shape[0]:
        raise RxnShapeError("segment index length differs from row count", x.shape[0], idx.size)
    out = np.zeros((num_segments, x.shape[1]))
    np.add.at(out, idx, x.value)

    def backward(grad: np.ndarray) -> None:
        _send(x, grad[idx])

    return _result(out, "segment_sum", (x,), backward)


def segment_mean(a: ArrayLike, index: Sequence[int], num_segments: int) -> Tensor:
    """Average rows of ``a`` per segment; empty segments are zero rows."""
    x = as_tensor(a)
    idx = _index(index, "segment_mean", num_segments)
    if idx.size != x.shape[0]:
        raise RxnShapeError("segment index length differs from row count", x.shape[0], idx.size)
    counts = np.bincount(idx, minlength=num_segments).astype(np.float64)
    inverse = np.divide(1.0, counts, out=np.zeros_like(counts), where=counts > 0)
    out = np.zeros((num_segments, x.shape[1]))
    np.add.at(out, idx, x.value)
    out *= inverse[:, None]

    def backward(grad: np.ndarray) -> None:
        _send(x, grad[idx] * inverse[idx][:, None])

    return _result(out, "segment_mean", (x,), backward)


def segment_softmax(a: ArrayLike, index: Sequence[int], num_segments: int) -> Tensor:
    """Softmax over the rows sharing a segment, independently per column."""
    x = as_tensor(a)
    idx = _index(index, "segment_softmax", num_segments)
    if idx.size != x.shape[0]:
        raise RxnShapeError("segment index length differs from row count", x.shape[0], idx.size)
    peak = np.full((num_segments, x.shape[1]), -np.inf)
    np.maximum.at(peak, idx, x.value)
    exp = np.exp(x.value - peak[idx])
    totals = np.zeros((num_segments, x.shape[1]))
    np.add.at(totals, idx, exp)
    out = exp / totals[idx]

    def backward(grad: np.ndarray) -> None:
        weighted = np.zeros((num_segments, x.shape[1]))
        np.add.at(weighted, idx, grad * out)
        _send(x, out * (grad - weighted[idx]))

    return _result(out, "segment_softmax", (x,), backward)


def l2_norm(a: ArrayLike) -> Tensor:
    """Frobenius norm as a ``1 x 1`` tensor; the gradient at zero is zero."""
    x = as_tensor(a)
    norm = float(np.sqrt(np.sum(x.value * x.value)))

    def backward(grad: np.ndarray) -> None:
        if norm > 0:
            _send(x, grad[0, 0] * x.value / norm)

    return _result(np.array([[norm]]), "l2_norm", (x,), backward)


def sum_all(a: ArrayLike) -> Tensor:
    x = as_tensor(a)

    def backward(grad: np.ndarray) -> None:
        _send(x, np.full(x.shape, grad[0, 0]))

    return _result(np.array([[x.value.sum()]]), "sum_all", (x,), backward)


def mean_all(a: ArrayLike) -> Tensor:
    x = as_tensor(a)
    count = x.value.size

    def backward(grad: np.ndarray) -> None:
        _send(x, np.full(x.shape, grad[0, 0] / count))

    return _result(np.array([[x.value.mean()]]), "mean_all", (x,), backward)
