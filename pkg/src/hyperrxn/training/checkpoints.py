"""Building models from configurations and restoring them from checkpoints."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from pydantic import ValidationError

from hyperrxn.autodiff import Checkpoint, load_checkpoint, save_checkpoint
from hyperrxn.baselines.model import FingerprintModel
from hyperrxn.gnn.model import HypergraphModel, ReactionModel
from hyperrxn.models.config import ModelConfig, TrainingConfig
from hyperrxn.models.hypergraph import FeatureConfig
from hyperrxn.utils.exceptions import RxnCheckpointError, RxnShapeError

logger = logging.getLogger(__name__)


def build_model(
    config: ModelConfig, seed: int = 0, feature_config: Optional[FeatureConfig] = None
) -> ReactionModel:
    """Create the model a configuration describes.

    Example:
        >>> build_model(ModelConfig(representation="fingerprint", fp_bits=256)).config.latent_dim
        256
    """
    if config.representation == "fingerprint":
        return FingerprintModel(config, seed)
    return HypergraphModel(config, feature_config, seed)


def save_model(
    path: Union[str, Path],
    model: ReactionModel,
    training: Optional[TrainingConfig] = None,
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """Write a checkpoint holding parameters, architecture and feature layout."""
    hyperparameters: Dict[str, Any] = {"model": model.config.model_dump(mode="json")}
    if isinstance(model, HypergraphModel):
        hyperparameters["features"] = model.feature_config.model_dump(mode="json")
    if training is not None:
        hyperparameters["training"] = training.model_dump(mode="json")
    return save_checkpoint(path, model.params, hyperparameters, metadata)


def load_model(path: Union[str, Path]) -> Tuple[ReactionModel, Checkpoint]:
    """Rebuild a model from a checkpoint.

    Raises:
        RxnCheckpointError: If the checkpoint is unreadable, has another
            format version, or its parameters do not fit the architecture
    """
    checkpoint = load_checkpoint(path)
    hp = checkpoint.hyperparameters
    try:
        config = ModelConfig.model_validate(hp.get("model", {}))
        features = FeatureConfig.model_validate(hp["features"]) if "features" in hp else None
    except ValidationError as e:
        raise RxnCheckpointError(f"Checkpoint {path} has an invalid configuration: {e}") from e
    model = build_model(config, feature_config=features)
    arrays = checkpoint.arrays()
    unknown = sorted(set(arrays) - set(model.params))
    if unknown:
        raise RxnCheckpointError(f"Checkpoint {path} has unknown parameters: {unknown}")
    try:
        model.params.assign(arrays)
    except RxnShapeError as e:
        raise RxnCheckpointError(f"Checkpoint {path} does not fit its architecture: {e}") from e
    logger.info(f"Loaded {type(model).__name__} with {model.params.num_parameters} parameters")
    return model, checkpoint
