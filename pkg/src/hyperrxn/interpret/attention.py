"""Recorded attention weights of an RGAT forward pass.

Weights are keyed ``(i, j)`` where ``i`` is the attending node (edge
destination) and ``j`` the attended node (edge source), so ``alpha(l, s, i, j)``
is the weight node ``i`` gives to the message from ``j`` under relation ``s``
in layer ``l``. The self term of each neighborhood is stored under ``(i, i)``.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from hyperrxn.models.hypergraph import RelationKind

Key = Tuple[int, int]


@dataclass(frozen=True)
class RelationAttention:
    """Attention of one relation in one layer, as parallel arrays.

    Attributes:
        src: Edge sources
        dst: Edge destinations
        alpha: Weight of each edge
        self_nodes: Nodes whose neighborhood under this relation is nonempty
        self_alpha: Self weight of each of those nodes
    """

    src: np.ndarray
    dst: np.ndarray
    alpha: np.ndarray
    self_nodes: np.ndarray
    self_alpha: np.ndarray


class AttentionRecord:
    """Per layer, per relation map ``(i, j) -> alpha``.

    Example:
        >>> record = AttentionRecord()
        >>> model.encode(batch, recorder=record)
        >>> record.alpha(0, RelationKind.MOL_RXN, x_r, m_1)
    """

    def __init__(self) -> None:
        self._layers: List[Dict[RelationKind, RelationAttention]] = []
        self._cache: Dict[Tuple[int, RelationKind], Dict[Key, float]] = {}

    @property
    def num_layers(self) -> int:
        return len(self._layers)

    def record(self, layer: int, relation: RelationKind, attention: RelationAttention) -> None:
        """Store the attention of ``relation`` in ``layer``."""
        while len(self._layers) <= layer:
            self._layers.append({})
        self._layers[layer][relation] = attention
        self._cache.pop((layer, relation), None)

    def relations(self, layer: int) -> Iterator[RelationKind]:
        return iter(self._layers[layer])

    def weights(self, layer: int, relation: RelationKind) -> Dict[Key, float]:
        """All weights of one relation in one layer, self terms included."""
        cached = self._cache.get((layer, relation))
        if cached is not None:
            return cached
        attention = self._layers[layer].get(relation)
        if attention is None:
            return {}
        weights = {
            (int(i), int(j)): float(a)
            for j, i, a in zip(attention.src, attention.dst, attention.alpha)
        }
        for i, a in zip(attention.self_nodes, attention.self_alpha):
            weights[(int(i), int(i))] = float(a)
        self._cache[(layer, relation)] = weights
        return weights

    def alpha(self, layer: int, relation: RelationKind, i: int, j: int) -> float:
        """Weight node ``i`` gives to ``j``; zero when no such edge exists."""
        return self.weights(layer, relation).get((i, j), 0.0)

    def neighborhood_sums(self, layer: int, relation: RelationKind) -> Dict[int, float]:
        """Sum of weights per attending node, self term included."""
        sums: Dict[int, float] = {}
        for (i, _), a in self.weights(layer, relation).items():
            sums[i] = sums.get(i, 0.0) + a
        return sums

    def restrict(self, start: int, stop: int) -> "AttentionRecord":
        """Record of the nodes ``start <= id < stop``, re-numbered from zero.

        Used to pull a single graph out of a batched forward pass.
        """
        restricted = AttentionRecord()
        for layer, relations in enumerate(self._layers):
            for relation, att in relations.items():
                keep = (att.dst >= start) & (att.dst < stop)
                keep_self = (att.self_nodes >= start) & (att.self_nodes < stop)
                restricted.record(
                    layer,
                    relation,
                    RelationAttention(
                        src=att.src[keep] - start,
                        dst=att.dst[keep] - start,
                        alpha=att.alpha[keep],
                        self_nodes=att.self_nodes[keep_self] - start,
                        self_alpha=att.self_alpha[keep_self],
                    ),
                )
        return restricted

    def get(self, layer: int, relation: RelationKind) -> Optional[RelationAttention]:
        return self._layers[layer].get(relation)
