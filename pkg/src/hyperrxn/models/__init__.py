"""Data models: molecules, reactions, hypergraphs, configurations and reports."""

from .base import BaseModel, MutableModel
from .chem import OTHER_ELEMENT, Atom, Bond, BondOrder, MolecularGraph, Reaction, Side
from .config import LayerKind, ModelConfig, Readout, Representation, Task, TrainingConfig
from .hypergraph import FeatureConfig, HyperNode, NodeKind, RelationKind, RxnHypergraph
from .reports import (
    REPORT_FORMAT_VERSION,
    AtomScore,
    ClassificationMetrics,
    EdgeScore,
    EpochMetrics,
    EvalReport,
    FingerprintRecord,
    InterpretReport,
    MolScore,
    PairScore,
    ParseLine,
    ParseReport,
    RankingResult,
    RankingSummary,
    RunManifest,
)

__all__ = [
    "OTHER_ELEMENT",
    "REPORT_FORMAT_VERSION",
    # Base models
    "BaseModel",
    "MutableModel",
    # Chemistry
    "Atom",
    "Bond",
    "BondOrder",
    "MolecularGraph",
    "Reaction",
    "Side",
    # Configuration
    "LayerKind",
    "ModelConfig",
    "Readout",
    "Representation",
    "Task",
    "TrainingConfig",
    # Hypergraph
    "FeatureConfig",
    "HyperNode",
    "NodeKind",
    "RelationKind",
    "RxnHypergraph",
    # Reports
    "AtomScore",
    "ClassificationMetrics",
    "EdgeScore",
    "EpochMetrics",
    "EvalReport",
    "FingerprintRecord",
    "InterpretReport",
    "MolScore",
    "PairScore",
    "ParseLine",
    "ParseReport",
    "RankingResult",
    "RankingSummary",
    "RunManifest",
]
