"""hyperrxn - reaction property prediction, ranking and interpretation on rxn-hypergraphs.

A reaction is read from a SMIRKS-style line, turned into a three-level
hypergraph (atoms, molecules, reaction) and passed through relational graph
layers. The package also ships the fingerprint baseline, a pairwise ranker
with ranked-pairs voting, and attention-based interpretability reports.
"""

from ._version import __version__
from .baselines import FingerprintModel, reaction_fp
from .chem import parse_molecule, parse_reaction
from .gnn import HypergraphModel, ReactionModel
from .hypergraph import build_hypergraph, dump_hypergraph
from .interpret import explain
from .models import ModelConfig, Reaction, RxnHypergraph, TrainingConfig
from .ranker import rank_matrix, ranked_pairs, train_ranker
from .training import Trainer, build_model, load_config, load_model, save_model
from .workbench import Workbench

__all__ = [
    "FingerprintModel",
    "HypergraphModel",
    "ModelConfig",
    "Reaction",
    "ReactionModel",
    "RxnHypergraph",
    "Trainer",
    "TrainingConfig",
    "Workbench",
    "__version__",
    "build_hypergraph",
    "build_model",
    "dump_hypergraph",
    "explain",
    "load_config",
    "load_model",
    "parse_molecule",
    "parse_reaction",
    "rank_matrix",
    "ranked_pairs",
    "reaction_fp",
    "save_model",
    "train_ranker",
]
