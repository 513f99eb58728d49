"""Datasets, synthetic tasks, configuration loading and the training loop."""

from .checkpoints import build_model, load_model, save_model
from .config import bundled_configs, load_config, read_config_values
from .dataset import (
    CandidateSet,
    Dataset,
    Record,
    Split,
    balanced_split,
    candidate_pairs,
    dataset_digest,
    load_candidate_sets,
    load_dataset,
    load_pairs,
    split_dataset,
)
from .objectives import LabeledObjective, Objective
from .synthetic import (
    CLASS_NAMES,
    generate_classification_task,
    generate_ranking_task,
    write_candidate_sets,
    write_classification_task,
)
from .trainer import Trainer, classification_metrics, evaluate_classifier, predict

__all__ = [
    "CLASS_NAMES",
    "CandidateSet",
    "Dataset",
    "LabeledObjective",
    "Objective",
    "Record",
    "Split",
    "Trainer",
    "balanced_split",
    "build_model",
    "bundled_configs",
    "candidate_pairs",
    "classification_metrics",
    "dataset_digest",
    "evaluate_classifier",
    "generate_classification_task",
    "generate_ranking_task",
    "load_candidate_sets",
    "load_config",
    "load_dataset",
    "load_model",
    "load_pairs",
    "predict",
    "read_config_values",
    "save_model",
    "split_dataset",
    "write_candidate_sets",
    "write_classification_task",
]
