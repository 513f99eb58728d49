"""Disjoint-union batching of rxn-hypergraphs.

Node ids of graph ``b`` are shifted by ``node_offsets[b]``. Because the graphs
share no edges, one forward pass over the batch equals separate passes over
each graph.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hyperrxn.models.chem import Side
from hyperrxn.models.hypergraph import RELATIONS, RelationKind, RxnHypergraph
from hyperrxn.utils.exceptions import RxnShapeError, RxnValidationError

EdgeArrays = Tuple[np.ndarray, np.ndarray]
RelationArrays = Dict[RelationKind, EdgeArrays]


@dataclass(frozen=True)
class GraphBatch:
    """A mini-batch of hypergraphs merged into one graph.

    Attributes:
        features: ``(num_nodes, D_in)`` initial node features
        relations: Per relation, ``(src, dst)`` index arrays sorted by ``(dst, src)``
        present: Per relation, the sorted nodes with at least one incoming edge
        relation_counts: Per node, how many relations have an incoming edge
        reactant_rxn: Node id of each graph's reactant rxn-hypernode
        product_rxn: Node id of each graph's product rxn-hypernode
        node_offsets: First node id of each graph, plus the total node count
    """

    features: np.ndarray
    relations: RelationArrays
    present: Dict[RelationKind, np.ndarray]
    relation_counts: np.ndarray
    reactant_rxn: np.ndarray
    product_rxn: np.ndarray
    node_offsets: np.ndarray

    @property
    def num_nodes(self) -> int:
        return int(self.node_offsets[-1])

    @property
    def size(self) -> int:
        """Number of graphs in the batch."""
        return len(self.reactant_rxn)

    def nodes_of(self, index: int) -> slice:
        """Batch node ids belonging to graph ``index``."""
        return slice(int(self.node_offsets[index]), int(self.node_offsets[index + 1]))


def relation_arrays(g: RxnHypergraph) -> RelationArrays:
    """Per-relation ``(src, dst)`` arrays of one graph, sorted by ``(dst, src)``."""
    grouped: Dict[RelationKind, List[Tuple[int, int]]] = {s: [] for s in RELATIONS}
    for src, dst, relation in g.edges:
        grouped[relation].append((dst, src))
    arrays = {}
    for relation, pairs in grouped.items():
        pairs.sort()
        dst = np.array([p[0] for p in pairs], dtype=np.int64)
        src = np.array([p[1] for p in pairs], dtype=np.int64)
        arrays[relation] = (src, dst)
    return arrays


def batch_graphs(
    graphs: Sequence[RxnHypergraph],
    features: Sequence[np.ndarray],
    edge_arrays: Optional[Sequence[RelationArrays]] = None,
) -> GraphBatch:
    """Merge hypergraphs and their feature matrices into one :class:`GraphBatch`.

    Args:
        graphs: Hypergraphs in batch order
        features: One ``(|V*|, D_in)`` matrix per graph
        edge_arrays: Precomputed :func:`relation_arrays` per graph (optional)

    Returns:
        The merged batch; graph order is preserved

    Raises:
        RxnValidationError: If the batch is empty or the lengths differ
        RxnShapeError: If a feature matrix does not match its graph
    """
    if not graphs:
        raise RxnValidationError("Cannot batch an empty list of graphs")
    if len(graphs) != len(features):
        raise RxnValidationError(
            f"Got {len(graphs)} graphs but {len(features)} feature matrices"
        )
    if edge_arrays is None:
        edge_arrays = [relation_arrays(g) for g in graphs]
    width = features[0].shape[1]
    offsets = [0]
    for g, x in zip(graphs, features):
        if x.shape != (g.num_nodes, width):
            raise RxnShapeError(
                "Feature matrix does not match its graph",
                expected=(g.num_nodes, width),
                actual=x.shape,
            )
        offsets.append(offsets[-1] + g.num_nodes)

    sources: Dict[RelationKind, List[np.ndarray]] = {s: [] for s in RELATIONS}
    targets: Dict[RelationKind, List[np.ndarray]] = {s: [] for s in RELATIONS}
    for arrays, offset in zip(edge_arrays, offsets):
        for relation in RELATIONS:
            src, dst = arrays[relation]
            sources[relation].append(src + offset)
            targets[relation].append(dst + offset)
    # graphs occupy increasing id ranges, so concatenation keeps the (dst, src) order
    relations = {s: (np.concatenate(sources[s]), np.concatenate(targets[s])) for s in RELATIONS}
    present = {s: np.unique(relations[s][1]) for s in RELATIONS}
    counts = np.zeros(offsets[-1], dtype=np.int64)
    for nodes in present.values():
        counts[nodes] += 1

    return GraphBatch(
        features=np.vstack(features).astype(np.float64),
        relations=relations,
        present=present,
        relation_counts=counts,
        reactant_rxn=np.array(
            [offset + g.rxn_node(Side.REACTANT) for g, offset in zip(graphs, offsets)],
            dtype=np.int64,
        ),
        product_rxn=np.array(
            [offset + g.rxn_node(Side.PRODUCT) for g, offset in zip(graphs, offsets)],
            dtype=np.int64,
        ),
        node_offsets=np.array(offsets, dtype=np.int64),
    )
