"""Model and training configuration records.

Configuration files are flat key/value TOML files; every key below is also a
command-line flag. See :mod:`hyperrxn.training.config` for loading.
"""

from typing import List, Optional

from pydantic import Field, model_validator
from typing_extensions import Literal

from .base import MutableModel

LayerKind = Literal["rgcn", "rgat"]
Readout = Literal["subtract", "concat"]
Task = Literal["classify", "regress", "embed", "rank"]
Representation = Literal["hypergraph", "fingerprint"]


class ModelConfig(MutableModel):
    """Architecture of a reaction model.

    Attributes:
        layer_kind: Relational graph convolution or attention
        layers: Number of message-passing layers (at least 3)
        dim: Latent dimension D
        readout: How the two rxn-hypernode rows are merged
        head_dims: Hidden sizes of the feed-forward head
        task: ``classify`` (k logits), ``regress`` (scalar), ``embed`` (the
            reaction vector itself) or ``rank`` (embedding plus a pairwise
            ranking weight)
        num_classes: k, used by ``classify``
        heads: Attention heads per RGAT layer
        share_relation_weights: Use one weight matrix for every relation
        leaky_slope: Negative slope of the attention leaky ReLU
        representation: ``hypergraph`` (GNN) or ``fingerprint`` (reactionFP)
        fp_bits: Fingerprint length B
        fp_radius: Fingerprint radius

    Example:
        >>> ModelConfig(layer_kind="rgat", layers=4, dim=32).latent_dim
        64
    """

    layer_kind: LayerKind = Field("rgat", description="rgcn or rgat")
    layers: int = Field(3, ge=3, description="Layer count L")
    dim: int = Field(64, ge=1, description="Latent dimension D")
    readout: Readout = Field("concat", description="subtract or concat")
    head_dims: List[int] = Field(default_factory=list, description="Hidden head sizes")
    task: Task = Field("classify", description="classify, regress, embed or rank")
    num_classes: int = Field(3, ge=2, description="Class count for classify")
    heads: int = Field(1, ge=1, description="Attention heads")
    share_relation_weights: bool = Field(False, description="Single W for all relations")
    leaky_slope: float = Field(0.2, ge=0.0, lt=1.0, description="Attention leaky ReLU slope")
    representation: Representation = Field("hypergraph", description="hypergraph or fingerprint")
    fp_bits: int = Field(2048, ge=1, description="Fingerprint length")
    fp_radius: int = Field(2, ge=0, description="Fingerprint radius")

    @model_validator(mode="after")
    def _check_head(self) -> "ModelConfig":
        if any(size < 1 for size in self.head_dims):
            raise ValueError("head_dims entries must be positive")
        return self

    @property
    def latent_dim(self) -> int:
        """Width of the reaction vector X."""
        if self.representation == "fingerprint":
            return self.fp_bits
        return 2 * self.dim if self.readout == "concat" else self.dim

    @property
    def output_dim(self) -> Optional[int]:
        """Width of the head output, ``None`` for embedding tasks."""
        if self.task == "classify":
            return self.num_classes
        if self.task == "regress":
            return 1
        return None


class TrainingConfig(ModelConfig):
    """Model configuration plus optimization and data-split settings.

    Attributes:
        lr: Initial learning rate
        lr_decay: Per-step exponential decay factor
        l2: L2 regularization coefficient
        epochs: Passes over the training split
        batch_size: Reactions (or pairs) per optimizer step
        seed: Seed for initialization, shuffling and splitting
        valid_fraction: Share of records held out for validation
        test_fraction: Share of records held out for testing
    """

    lr: float = Field(1e-3, gt=0, description="Initial learning rate")
    lr_decay: float = Field(1.0, gt=0, le=1, description="Per-step decay")
    l2: float = Field(0.0, ge=0, description="L2 coefficient")
    epochs: int = Field(100, ge=1, description="Epochs")
    batch_size: int = Field(32, ge=1, description="Batch size")
    seed: int = Field(0, ge=0, description="Random seed")
    valid_fraction: float = Field(0.1, ge=0, lt=1, description="Validation share")
    test_fraction: float = Field(0.1, ge=0, lt=1, description="Test share")

    @model_validator(mode="after")
    def _check_fractions(self) -> "TrainingConfig":
        if self.valid_fraction + self.test_fraction >= 1:
            raise ValueError("valid_fraction + test_fraction must be below 1")
        return self

    def architecture(self) -> ModelConfig:
        """The :class:`ModelConfig` part of this configuration."""
        return ModelConfig(**{name: getattr(self, name) for name in ModelConfig.model_fields})
