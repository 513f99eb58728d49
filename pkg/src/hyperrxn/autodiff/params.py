"""Named parameter storage and the JSON checkpoint container."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from pydantic import Field, ValidationError

from hyperrxn.models.base import BaseModel
from hyperrxn.utils.exceptions import RxnCheckpointError, RxnShapeError, RxnValidationError

from .tensor import Tensor

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT_VERSION = 1


def glorot_uniform(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Uniform samples in ``±sqrt(6 / (rows + cols))``."""
    bound = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-bound, bound, size=(rows, cols))


class ParamStore:
    """Ordered collection of named trainable tensors.

    Parameters are created in a fixed order so that the same seed always
    yields the same initial values.

    Example:
        >>> store = ParamStore(seed=0)
        >>> w = store.create("layer0.W_self", 29, 32)
        >>> w.shape
        (29, 32)
    """

    def __init__(self, seed: int = 0) -> None:
        self._params: Dict[str, Tensor] = {}
        self._rng = np.random.default_rng(seed)

    def create(self, name: str, rows: int, cols: int, init: str = "glorot") -> Tensor:
        """Create a parameter.

        Args:
            name: Unique parameter name
            rows: Row count
            cols: Column count
            init: ``"glorot"``, ``"zeros"`` or ``"ones"``

        Raises:
            RxnValidationError: If the name exists or the initializer is unknown
        """
        if name in self._params:
            raise RxnValidationError(f"Parameter {name!r} already exists")
        if init == "glorot":
            value = glorot_uniform(self._rng, rows, cols)
        elif init == "zeros":
            value = np.zeros((rows, cols))
        elif init == "ones":
            value = np.ones((rows, cols))
        else:
            raise RxnValidationError(f"Unknown initializer {init!r}")
        tensor = Tensor(value, requires_grad=True, name=name)
        self._params[name] = tensor
        return tensor

    def __getitem__(self, name: str) -> Tensor:
        return self._params[name]

    def __contains__(self, name: object) -> bool:
        return name in self._params

    def __iter__(self) -> Iterator[str]:
        return iter(self._params)

    def __len__(self) -> int:
        return len(self._params)

    def items(self) -> List[Tuple[str, Tensor]]:
        return list(self._params.items())

    @property
    def num_parameters(self) -> int:
        """Total number of scalar parameters."""
        return sum(t.value.size for t in self._params.values())

    def zero_grad(self) -> None:
        for tensor in self._params.values():
            tensor.zero_grad()

    def values(self) -> Dict[str, np.ndarray]:
        """Copies of all parameter values."""
        return {name: t.value.copy() for name, t in self._params.items()}

    def grads(self) -> Dict[str, np.ndarray]:
        """Gradients of all parameters, zeros where none were accumulated."""
        return {
            name: t.grad if t.grad is not None else np.zeros_like(t.value)
            for name, t in self._params.items()
        }

    def assign(self, values: Dict[str, np.ndarray]) -> None:
        """Overwrite parameter values in place.

        Raises:
            RxnShapeError: If a shape differs or a name is missing
        """
        missing = set(self._params) - set(values)
        if missing:
            raise RxnShapeError(f"Missing parameters: {sorted(missing)}")
        for name, tensor in self._params.items():
            value = np.asarray(values[name], dtype=np.float64)
            if value.shape != tensor.value.shape:
                raise RxnShapeError(
                    f"Parameter {name!r} has the wrong shape",
                    expected=tensor.value.shape,
                    actual=value.shape,
                )
            tensor.value = value.copy()

    def grad_norm(self) -> float:
        """L2 norm over all accumulated gradients."""
        total = sum(float(np.sum(g * g)) for g in self.grads().values())
        return float(np.sqrt(total))


class ParameterRecord(BaseModel):
    """One parameter as stored in a checkpoint (row-major float64 values)."""

    shape: Tuple[int, int] = Field(..., description="Rows and columns")
    values: List[float] = Field(..., description="Row-major values")


class Checkpoint(BaseModel):
    """Versioned checkpoint container.

    Attributes:
        format_version: Container version; loading rejects any other value
        hyperparameters: Model and training configuration snapshot
        parameters: Named parameter tensors
        metadata: Free-form run information (manifest, dataset digest)
    """

    format_version: int = Field(CHECKPOINT_FORMAT_VERSION)
    hyperparameters: Dict[str, Any] = Field(default_factory=dict)
    parameters: Dict[str, ParameterRecord] = Field(default_factory=dict)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    def arrays(self) -> Dict[str, np.ndarray]:
        """Parameter values as arrays."""
        return {
            name: np.array(record.values, dtype=np.float64).reshape(record.shape)
            for name, record in self.parameters.items()
        }


def save_checkpoint(
    path: Union[str, Path],
    params: ParamStore,
    hyperparameters: Dict[str, Any],
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """Write parameters and configuration to a JSON checkpoint.

    Floats are written with ``repr`` precision, so a reload is bit-exact.
    """
    checkpoint = Checkpoint(
        hyperparameters=hyperparameters,
        parameters={
            name: ParameterRecord(shape=t.shape, values=t.value.ravel().tolist())
            for name, t in params.items()
        },
        metadata=metadata or {},
    )
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(json.dumps(checkpoint.model_dump(mode="json")), encoding="utf-8")
    logger.info(f"Saved checkpoint with {params.num_parameters} parameters to {target}")
    return target


def load_checkpoint(path: Union[str, Path]) -> Checkpoint:
    """Read a checkpoint written by :func:`save_checkpoint`.

    Raises:
        RxnCheckpointError: If the file is unreadable, malformed, or carries
            a different ``format_version``
    """
    source = Path(path)
    try:
        raw = json.loads(source.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise RxnCheckpointError(f"Cannot read checkpoint {source}: {e}") from e
    if not isinstance(raw, dict):
        raise RxnCheckpointError(f"Checkpoint {source} is not a JSON object")
    version = raw.get("format_version")
    if version != CHECKPOINT_FORMAT_VERSION:
        raise RxnCheckpointError(
            f"Checkpoint {source} has format_version {version!r}, "
            f"expected {CHECKPOINT_FORMAT_VERSION}",
            details={"path": str(source), "format_version": version},
        )
    try:
        checkpoint = Checkpoint.model_validate(raw)
    except ValidationError as e:
        raise RxnCheckpointError(f"Malformed checkpoint {source}: {e}") from e
    for name, record in checkpoint.parameters.items():
        if len(record.values) != record.shape[0] * record.shape[1]:
            raise RxnCheckpointError(f"Parameter {name!r} does not match its shape {record.shape}")
    return checkpoint
