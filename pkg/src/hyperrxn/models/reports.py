"""Machine-readable outputs: reports, manifests and result lines.

Every record that is written to disk carries a ``format_version`` so readers
can reject files from an incompatible release.
"""

from typing import Any, Dict, List, Optional

from pydantic import Field

from .base import BaseModel, MutableModel
from .chem import Side
from .hypergraph import RelationKind

REPORT_FORMAT_VERSION = 1


class ParseLine(BaseModel):
    """Outcome of parsing one input line.

    Attributes:
        line: 1-based line number
        ok: Whether the line parsed
        reactants: Reactant molecule count (parsed lines only)
        products: Product molecule count (parsed lines only)
        error: Error message (failed lines only)
        position: Byte offset of the error within the line (if known)
        fragment_index: Index of the failing fragment (if known)
    """

    line: int = Field(..., ge=1, description="1-based line number")
    ok: bool = Field(..., description="Parsed successfully")
    reactants: Optional[int] = Field(None, description="Reactant count")
    products: Optional[int] = Field(None, description="Product count")
    error: Optional[str] = Field(None, description="Error message")
    position: Optional[int] = Field(None, description="Byte offset of the error")
    fragment_index: Optional[int] = Field(None, description="Failing fragment")


class ParseReport(BaseModel):
    """Validation report of a reaction file.

    Example:
        >>> report = workbench.parse_file("reactions.tsv")
        >>> report.failed
        0
    """

    format_version: int = Field(REPORT_FORMAT_VERSION)
    path: str = Field(..., description="Input file")
    total: int = Field(..., ge=0, description="Non-blank lines")
    ok: int = Field(..., ge=0, description="Lines that parsed")
    failed: int = Field(..., ge=0, description="Lines that failed")
    lines: List[ParseLine] = Field(default_factory=list, description="Per-line outcomes")


class EpochMetrics(BaseModel):
    """Metrics of one training epoch.

    ``train_metric`` and ``valid_metric`` are accuracies for classification,
    mean squared errors for regression and pair accuracies for ranking.
    """

    epoch: int = Field(..., ge=1)
    lr: float = Field(..., description="Learning rate at the end of the epoch")
    train_loss: float = Field(..., description="Mean training loss")
    train_metric: Optional[float] = Field(None)
    valid_metric: Optional[float] = Field(None)


class ClassificationMetrics(BaseModel):
    """Accuracy summary of a classifier on one split.

    Attributes:
        count: Number of evaluated reactions
        accuracy: Fraction predicted correctly
        per_class_accuracy: Accuracy per true class; ``None`` for classes
            absent from the split
        confusion: ``confusion[true][predicted]`` counts
    """

    count: int = Field(..., ge=1)
    accuracy: float = Field(..., ge=0.0, le=1.0)
    per_class_accuracy: List[Optional[float]] = Field(default_factory=list)
    confusion: List[List[int]] = Field(default_factory=list)


class EvalReport(BaseModel):
    """Output of evaluating a checkpoint on a dataset."""

    format_version: int = Field(REPORT_FORMAT_VERSION)
    task: str = Field(..., description="Task of the evaluated model")
    dataset: str = Field(..., description="Dataset file")
    dataset_digest: str = Field(..., description="SHA-256 over the dataset lines")
    count: int = Field(..., ge=1, description="Evaluated reactions")
    classification: Optional[ClassificationMetrics] = Field(None)
    mse: Optional[float] = Field(None, description="Mean squared error (regression)")


class RunManifest(MutableModel):
    """Everything needed to reproduce a training run.

    The manifest is filled in as training proceeds and written next to the
    checkpoint; a copy is also stored inside the checkpoint metadata.

    Attributes:
        config: Snapshot of the training configuration
        seed: Seed used for initialization, shuffling and splitting
        dataset: Dataset file
        dataset_digest: SHA-256 over the dataset lines
        split_sizes: Record count per split
        epochs: Per-epoch metrics
        final_metrics: Metrics after the last epoch
        checkpoint: Checkpoint path (once written)
        version: Package version that produced the run
    """

    format_version: int = Field(REPORT_FORMAT_VERSION)
    config: Dict[str, Any] = Field(default_factory=dict)
    seed: int = Field(0)
    dataset: str = Field("")
    dataset_digest: str = Field("")
    split_sizes: Dict[str, int] = Field(default_factory=dict)
    epochs: List[EpochMetrics] = Field(default_factory=list)
    final_metrics: Dict[str, Optional[float]] = Field(default_factory=dict)
    checkpoint: Optional[str] = Field(None)
    version: str = Field("")


class RankingResult(BaseModel):
    """Ranking of one candidate set.

    Attributes:
        query_id: Identifier of the candidate set
        order: Candidate indices, most plausible first
        scores: Antisymmetric pairwise score matrix
        true_index: Index of the true candidate (if known)
        true_rank: 1-based position of the true candidate in ``order``
    """

    format_version: int = Field(REPORT_FORMAT_VERSION)
    query_id: str = Field(...)
    order: List[int] = Field(...)
    scores: List[List[float]] = Field(...)
    true_index: Optional[int] = Field(None)
    true_rank: Optional[int] = Field(None)


class RankingSummary(BaseModel):
    """Top-k accuracies over all candidate sets with a known true candidate."""

    format_version: int = Field(REPORT_FORMAT_VERSION)
    queries: int = Field(..., ge=0)
    top_k: Dict[str, float] = Field(default_factory=dict, description="'top1', 'top2', ...")


class FingerprintRecord(BaseModel):
    """One reaction fingerprint as written by the ``fingerprint`` command."""

    format_version: int = Field(REPORT_FORMAT_VERSION)
    reaction_index: int = Field(..., ge=0)
    vector: List[float] = Field(...)


class AtomScore(BaseModel):
    """Atom-to-reaction importance of one atom node."""

    node: int = Field(..., ge=0, description="Atom node id")
    side: Side
    mol: int = Field(..., ge=0, description="Molecule index within the side")
    atom: int = Field(..., ge=0, description="Atom index within the molecule")
    score: float = Field(..., ge=0.0, le=1.0)


class EdgeScore(BaseModel):
    """Layer-averaged attention along one directed edge ``src -> dst``."""

    src: int = Field(..., ge=0)
    dst: int = Field(..., ge=0)
    relation: RelationKind
    score: float = Field(..., ge=0.0, le=1.0)


class PairScore(BaseModel):
    """Correlation of atom ``a`` with atom ``b`` of another molecule on the same side."""

    a: int = Field(..., ge=0, description="Atom node id in the first molecule")
    b: int = Field(..., ge=0, description="Atom node id in the second molecule")
    side: Side
    score: float = Field(..., ge=0.0, le=1.0)


class MolScore(BaseModel):
    """Relative importance of one molecule for its side."""

    mol: int = Field(..., ge=0, description="Mol-hypernode id")
    side: Side
    index: int = Field(..., ge=0, description="Molecule index within the side")
    score: float = Field(..., ge=0.0, le=1.0)


class InterpretReport(BaseModel):
    """Attention-based importance scores of one reaction.

    Node ids refer to the hypergraph dump of the same reaction. Edge
    direction follows message flow: ``src -> dst`` is the weight ``dst``
    gives to the message from ``src``.

    Attributes:
        reaction: Input reaction text
        path_layers: ``final`` or ``mean`` (how path products pick layers)
        atom_rxn: Atom -> molecule -> side path products
        node_node: Mean attention over layers for every edge
        atom_atom: Top intermolecular atom pairs per side
        mol_importance: Molecule -> side attention
    """

    format_version: int = Field(REPORT_FORMAT_VERSION)
    reaction: str = Field("")
    path_layers: str = Field("final")
    atom_rxn: List[AtomScore] = Field(default_factory=list)
    node_node: List[EdgeScore] = Field(default_factory=list)
    atom_atom: List[PairScore] = Field(default_factory=list)
    mol_importance: List[MolScore] = Field(default_factory=list)
