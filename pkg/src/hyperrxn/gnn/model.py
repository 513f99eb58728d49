"""Reaction models: encoder, readout and feed-forward head.

A :class:`ReactionModel` turns reactions into prepared items (cached per
reaction), merges prepared items into a batch, encodes a batch into reaction
vectors ``X`` and applies the task head. :class:`HypergraphModel` encodes with
relational message passing over the rxn-hypergraph; the fingerprint baseline
in :mod:`hyperrxn.baselines.model` shares everything but the encoder.
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from hyperrxn.autodiff import (
    ParamStore,
    Tensor,
    add,
    concat_cols,
    gather_rows,
    matmul,
    no_grad,
    relu,
    subtract,
)
from hyperrxn.hypergraph import (
    GraphBatch,
    RelationArrays,
    batch_graphs,
    build_hypergraph,
    featurize,
    relation_arrays,
)
from hyperrxn.interpret.attention import AttentionRecord
from hyperrxn.models.chem import Reaction
from hyperrxn.models.config import ModelConfig, Readout
from hyperrxn.models.hypergraph import FeatureConfig, RxnHypergraph
from hyperrxn.utils.exceptions import RxnShapeError

from .layers import RgatLayer, RgcnLayer

logger = logging.getLogger(__name__)


def readout(x_r: Tensor, x_p: Tensor, f: Readout) -> Tensor:
    """Merge the final rxn-hypernode rows into the reaction vector ``X``.

    Args:
        x_r: Reactant rxn-hypernode rows, ``(B, D)``
        x_p: Product rxn-hypernode rows, ``(B, D)``
        f: ``subtract`` gives ``x_r - x_p`` (width D); ``concat`` gives
            ``x_r ‖ x_p`` (width 2D)

    Returns:
        ``(B, D)`` or ``(B, 2D)`` tensor
    """
    if x_r.shape != x_p.shape:
        raise RxnShapeError("Readout inputs differ in shape", x_r.shape, x_p.shape)
    if f == "subtract":
        return subtract(x_r, x_p)
    return concat_cols([x_r, x_p])


class ReactionModel:
    """Base class shared by the hypergraph and fingerprint models.

    Subclasses create their encoder parameters in ``_build_encoder`` and
    implement :meth:`prepare`, :meth:`collate` and :meth:`encode`. The head is
    a stack of dense layers ``head.{i}.weight`` / ``head.{i}.bias`` with ReLU
    between them; ``rank`` models get a bias-free ``ranker.w`` instead.

    Args:
        config: Architecture
        seed: Seed for parameter initialization
    """

    def __init__(self, config: ModelConfig, seed: int = 0) -> None:
        self.config = config
        self.params = ParamStore(seed)
        self._build_encoder()
        self.head_layers: List[Tuple[Tensor, Tensor]] = []
        out_dim = config.output_dim
        if out_dim is not None:
            sizes = [config.latent_dim, *config.head_dims, out_dim]
            for i, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
                weight = self.params.create(f"head.{i}.weight", fan_in, fan_out)
                bias = self.params.create(f"head.{i}.bias", 1, fan_out, init="zeros")
                self.head_layers.append((weight, bias))
        self.ranker_weight: Optional[Tensor] = None
        if config.task == "rank":
            self.ranker_weight = self.params.create("ranker.w", config.latent_dim, 1)
        logger.debug(
            f"Created {type(self).__name__} with {self.params.num_parameters} parameters"
        )

    @property
    def supports_attention(self) -> bool:
        """Whether :meth:`encode` can fill an :class:`AttentionRecord`."""
        return False

    def _build_encoder(self) -> None:
        raise NotImplementedError

    def prepare(self, reactions: Sequence[Reaction]) -> List[Any]:
        """Per-reaction preprocessing, reusable across epochs."""
        raise NotImplementedError

    def collate(self, items: Sequence[Any]) -> Any:
        """Merge prepared items into one batch."""
        raise NotImplementedError

    def encode(self, batch: Any, recorder: Optional[AttentionRecord] = None) -> Tensor:
        """Reaction vectors ``X`` of a batch, one row per reaction."""
        raise NotImplementedError

    def head(self, x: Tensor) -> Tensor:
        """Apply the feed-forward head; embedding tasks return ``x``."""
        out = x
        last = len(self.head_layers) - 1
        for i, (weight, bias) in enumerate(self.head_layers):
            out = add(matmul(out, weight), bias)
            if i < last:
                out = relu(out)
        return out

    def forward(
        self, batch: Any, recorder: Optional[AttentionRecord] = None
    ) -> Tuple[Tensor, Tensor]:
        """Return ``(X, task output)`` for a batch."""
        x = self.encode(batch, recorder)
        return x, self.head(x)

    def batch(self, reactions: Sequence[Reaction]) -> Any:
        return self.collate(self.prepare(reactions))


@dataclass(frozen=True)
class PreparedGraph:
    """A reaction turned into its hypergraph, features and edge arrays."""

    graph: RxnHypergraph
    features: np.ndarray
    edges: RelationArrays


class HypergraphModel(ReactionModel):
    """RGCN or RGAT encoder over the rxn-hypergraph.

    Args:
        config: Architecture (``representation`` must be ``hypergraph``)
        feature_config: Initial node feature layout
        seed: Seed for parameter initialization

    Example:
        >>> model = HypergraphModel(ModelConfig(layer_kind="rgat", layers=3, dim=16))
        >>> x, logits = model.forward(model.batch([parse_reaction("CCO>>CC=O")]))
        >>> logits.shape
        (1, 3)
    """

    def __init__(
        self,
        config: ModelConfig,
        feature_config: Optional[FeatureConfig] = None,
        seed: int = 0,
    ) -> None:
        self.feature_config = feature_config or FeatureConfig()
        super().__init__(config, seed)

    @property
    def supports_attention(self) -> bool:
        return self.config.layer_kind == "rgat"

    def _build_encoder(self) -> None:
        cfg = self.config
        self.layers: List[Union[RgcnLayer, RgatLayer]] = []
        in_dim = self.feature_config.input_dim
        for index in range(cfg.layers):
            layer: Union[RgcnLayer, RgatLayer]
            if cfg.layer_kind == "rgat":
                layer = RgatLayer(
                    index,
                    in_dim,
                    cfg.dim,
                    self.params,
                    share_relation_weights=cfg.share_relation_weights,
                    heads=cfg.heads,
                    slope=cfg.leaky_slope,
                )
            else:
                layer = RgcnLayer(
                    index,
                    in_dim,
                    cfg.dim,
                    self.params,
                    share_relation_weights=cfg.share_relation_weights,
                )
            self.layers.append(layer)
            in_dim = cfg.dim

    def prepare(self, reactions: Sequence[Reaction]) -> List[PreparedGraph]:
        prepared = []
        for rxn in reactions:
            graph = build_hypergraph(rxn)
            prepared.append(
                PreparedGraph(
                    graph=graph,
                    features=featurize(graph, self.feature_config),
                    edges=relation_arrays(graph),
                )
            )
        return prepared

    def collate(self, items: Sequence[PreparedGraph]) -> GraphBatch:
        return batch_graphs(
            [item.graph for item in items],
            [item.features for item in items],
            [item.edges for item in items],
        )

    def node_states(
        self, batch: GraphBatch, recorder: Optional[AttentionRecord] = None
    ) -> Tensor:
        """Final-layer node features ``h^L``."""
        h = Tensor(batch.features)
        last = len(self.layers) - 1
        for index, layer in enumerate(self.layers):
            h = layer.forward(h, batch, recorder)
            if index < last:
                h = relu(h)
        return h

    def encode(self, batch: GraphBatch, recorder: Optional[AttentionRecord] = None) -> Tensor:
        h = self.node_states(batch, recorder)
        x_r = gather_rows(h, batch.reactant_rxn)
        x_p = gather_rows(h, batch.product_rxn)
        return readout(x_r, x_p, self.config.readout)


def model_forward(rxn: Reaction, model: ReactionModel) -> Tuple[np.ndarray, np.ndarray]:
    """Evaluate one reaction without recording gradients.

    Returns:
        ``(X, output)`` as 1-D arrays; for embedding tasks the output is ``X``
    """
    with no_grad():
        x, out = model.forward(model.batch([rxn]))
    return x.value[0].copy(), out.value[0].copy()
