"""Minimal reverse-mode differentiation over dense float64 matrices."""

from .gradcheck import grad_check
from .ops import (
    add,
    concat_cols,
    concat_rows,
    gather_rows,
    l2_norm,
    leaky_relu,
    matmul,
    mean_all,
    mul,
    relu,
    row_log_softmax,
    row_softmax,
    scale,
    segment_mean,
    segment_softmax,
    segment_sum,
    subtract,
    sum_all,
    tanh,
)
from .optim import Adam, AdamState, Schedule, adam_step
from .params import (
    CHECKPOINT_FORMAT_VERSION,
    Checkpoint,
    ParamStore,
    load_checkpoint,
    save_checkpoint,
)
from .tensor import Tensor, as_tensor, no_grad

__all__ = [
    "CHECKPOINT_FORMAT_VERSION",
    "Adam",
    "AdamState",
    "Checkpoint",
    "ParamStore",
    "Schedule",
    "Tensor",
    "adam_step",
    "add",
    "as_tensor",
    "concat_cols",
    "concat_rows",
    "gather_rows",
    "grad_check",
    "l2_norm",
    "leaky_relu",
    "load_checkpoint",
    "matmul",
    "mean_all",
    "mul",
    "no_grad",
    "relu",
    "row_log_softmax",
    "row_softmax",
    "save_checkpoint",
    "scale",
    "segment_mean",
    "segment_softmax",
    "segment_sum",
    "subtract",
    "sum_all",
    "tanh",
]
