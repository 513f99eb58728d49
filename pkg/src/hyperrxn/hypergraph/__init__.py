"""Rxn-hypergraph construction, featurization and batching."""

from .batch import GraphBatch, RelationArrays, batch_graphs, relation_arrays
from .builder import build_hypergraph, dump_hypergraph, relation_adjacency
from .features import featurize

__all__ = [
    "GraphBatch",
    "RelationArrays",
    "batch_graphs",
    "build_hypergraph",
    "dump_hypergraph",
    "featurize",
    "relation_adjacency",
    "relation_arrays",
]
