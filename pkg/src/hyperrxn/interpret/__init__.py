"""Attention recording and attention-based interpretability scores."""

from .attention import AttentionRecord, RelationAttention
from .scores import (
    PathLayers,
    atom_atom_scores,
    atom_rxn_scores,
    explain,
    interpret_graph,
    mol_importance_scores,
    neighborhood_sums,
    node_node_scores,
)

__all__ = [
    "AttentionRecord",
    "PathLayers",
    "RelationAttention",
    "atom_atom_scores",
    "atom_rxn_scores",
    "explain",
    "interpret_graph",
    "mol_importance_scores",
    "neighborhood_sums",
    "node_node_scores",
]
