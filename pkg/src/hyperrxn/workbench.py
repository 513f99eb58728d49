"""Workbench tying parsing, training, evaluation, ranking and interpretation together."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ._version import __version__
from .baselines.fingerprint import reaction_fp
from .chem import parse_reaction
from .hypergraph import build_hypergraph, dump_hypergraph
from .interpret import explain
from .models.reports import (
    EvalReport,
    FingerprintRecord,
    InterpretReport,
    ParseLine,
    ParseReport,
    RankingResult,
    RankingSummary,
    RunManifest,
)
from .ranker import PairObjective, rank_matrix, ranked_pairs, top_k_accuracy, true_rank
from .training import (
    CandidateSet,
    Dataset,
    LabeledObjective,
    Trainer,
    build_model,
    candidate_pairs,
    dataset_digest,
    evaluate_classifier,
    load_candidate_sets,
    load_config,
    load_dataset,
    load_model,
    load_pairs,
    predict,
    save_model,
    split_dataset,
)
from .training.dataset import Split, read_lines
from .training.objectives import Objective
from .utils.exceptions import RxnConfigError, RxnDatasetError, RxnParseError

if TYPE_CHECKING:
    from .gnn.model import ReactionModel
    from .interpret.scores import PathLayers
    from .models.config import TrainingConfig

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SPLITS = ("all", "train", "valid", "test")


def manifest_path(checkpoint: PathLike) -> Path:
    """Where the run manifest of a checkpoint is written."""
    target = Path(checkpoint)
    return target.with_name(target.stem + ".manifest.json")


def _is_candidate_file(path: PathLike) -> bool:
    return Path(path).suffix in (".jsonl", ".json")


class Workbench:
    """One entry point for every command of the package.

    Args:
        batch_size: Batch size used for inference

    Example:
        >>> bench = Workbench()
        >>> manifest = bench.train("synthetic", "train.tsv", "model.json")
        >>> report = bench.evaluate("model.json", "train.tsv", split="test")
        >>> report.classification.accuracy
        0.97
    """

    def __init__(self, batch_size: int = 256) -> None:
        self.batch_size = batch_size

    def parse_file(self, path: PathLike) -> ParseReport:
        """Validate every non-blank line of a reaction file.

        Only the first tab-separated column is parsed.

        Raises:
            RxnDatasetError: If the file is unreadable or has no reactions
        """
        lines = []
        for number, raw in enumerate(read_lines(path), start=1):
            text = raw.split("\t")[0].strip()
            if not text or text.startswith("#"):
                continue
            try:
                rxn = parse_reaction(text)
            except RxnParseError as e:
                lines.append(
                    ParseLine(
                        line=number,
                        ok=False,
                        error=e.message,
                        position=e.position,
                        fragment_index=e.fragment_index,
                    )
                )
                continue
            lines.append(
                ParseLine(
                    line=number,
                    ok=True,
                    reactants=len(rxn.reactants),
                    products=len(rxn.products),
                )
            )
        if not lines:
            raise RxnDatasetError("No reactions to parse", path=str(path))
        ok = sum(1 for line in lines if line.ok)
        return ParseReport(
            path=str(path), total=len(lines), ok=ok, failed=len(lines) - ok, lines=lines
        )

    def build(self, smirks: str) -> Dict[str, Any]:
        """Hypergraph dump of one reaction."""
        return dump_hypergraph(build_hypergraph(parse_reaction(smirks)), smirks.strip())

    def train(
        self,
        config: Optional[PathLike],
        data: PathLike,
        out: PathLike,
        overrides: Optional[Mapping[str, Any]] = None,
        metrics_path: Optional[PathLike] = None,
    ) -> RunManifest:
        """Train a model and write its checkpoint and manifest.

        Labeled TSV files train ``classify``/``regress`` models; ``rank``
        models train on candidate-set JSON lines or ``better<TAB>worse`` pair
        files.

        Raises:
            RxnConfigError: If the task cannot be trained on the data
            RxnNumericError: If training diverges
        """
        cfg = load_config(config, overrides)
        model = build_model(cfg.architecture(), cfg.seed)
        digest = dataset_digest(data)
        manifest = RunManifest(
            config=cfg.model_dump(mode="json"),
            seed=cfg.seed,
            dataset=str(Path(data).resolve()),
            dataset_digest=digest,
            version=__version__,
        )
        train_obj, valid_obj, test_obj, split = self._objectives(cfg, model, data)
        manifest.split_sizes = split.sizes()

        history = Trainer(model, cfg, metrics_path=metrics_path).fit(train_obj, valid_obj)
        manifest.epochs = history
        final: Dict[str, Optional[float]] = {
            "train_loss": history[-1].train_loss,
            f"train_{train_obj.metric_name}": train_obj.metric(model, self.batch_size),
        }
        if valid_obj is not None:
            final[f"valid_{valid_obj.metric_name}"] = valid_obj.metric(model, self.batch_size)
        if test_obj is not None:
            final[f"test_{test_obj.metric_name}"] = test_obj.metric(model, self.batch_size)
        manifest.final_metrics = final
        manifest.checkpoint = str(Path(out))

        save_model(out, model, cfg, {"manifest": manifest.model_dump(mode="json")})
        target = manifest_path(out)
        target.write_text(json.dumps(manifest.model_dump(mode="json"), indent=2), encoding="utf-8")
        logger.info(f"Wrote manifest to {target}")
        return manifest

    def _objectives(
        self, cfg: TrainingConfig, model: ReactionModel, data: PathLike
    ) -> Tuple[Objective, Optional[Objective], Optional[Objective], Split]:
        if cfg.task == "embed":
            raise RxnConfigError("Task 'embed' has no training objective; use 'rank'")
        made: List[Optional[Objective]]
        if cfg.task == "rank":
            if _is_candidate_file(data):
                sets = load_candidate_sets(data)
                split = split_dataset(len(sets), cfg.valid_fraction, cfg.test_fraction, cfg.seed)
                parts = [candidate_pairs([sets[i] for i in part]) for part in _split_parts(split)]
            else:
                pairs = load_pairs(data)
                split = split_dataset(len(pairs), cfg.valid_fraction, cfg.test_fraction, cfg.seed)
                parts = [[pairs[i] for i in part] for part in _split_parts(split)]
            made = [PairObjective(model, p) if p else None for p in parts]
        else:
            dataset = load_dataset(data)
            split = split_dataset(len(dataset), cfg.valid_fraction, cfg.test_fraction, cfg.seed)
            made = [
                self._labeled(model, dataset.subset(part), cfg.task) if part else None
                for part in _split_parts(split)
            ]
        train_obj = made[0]
        if train_obj is None:
            raise RxnDatasetError("No training data", path=str(data))
        return train_obj, made[1], made[2], split

    @staticmethod
    def _labeled(model: ReactionModel, dataset: Dataset, task: str) -> LabeledObjective:
        targets: Sequence[Union[int, float]]
        targets = dataset.labels() if task == "classify" else dataset.targets()
        return LabeledObjective(model, dataset.reactions, targets)

    def evaluate(self, checkpoint: PathLike, data: PathLike, split: str = "all") -> EvalReport:
        """Evaluate a classification or regression checkpoint on a TSV dataset.

        Args:
            checkpoint: Checkpoint written by :meth:`train`
            data: Labeled dataset
            split: ``all`` or one of the splits recorded at training time

        Raises:
            RxnDatasetError: If the dataset changed since training, or a
                split is requested for a file the model was not trained on
        """
        if split not in SPLITS:
            raise RxnConfigError(f"split must be one of {SPLITS}, got {split!r}")
        model, ckpt = load_model(checkpoint)
        if model.config.task not in ("classify", "regress"):
            raise RxnConfigError(
                f"eval covers classify and regress models, not {model.config.task!r}"
            )
        dataset = load_dataset(data)
        manifest = None
        if "manifest" in ckpt.metadata:
            manifest = RunManifest.model_validate(ckpt.metadata["manifest"])
        same_file = manifest is not None and manifest.dataset == str(Path(data).resolve())
        if manifest is not None and same_file and manifest.dataset_digest != dataset.digest:
            raise RxnDatasetError(
                "Dataset changed since training (digest mismatch)", path=str(data)
            )
        if split != "all":
            if manifest is None or not same_file:
                raise RxnDatasetError(
                    f"Split {split!r} is only defined for the training dataset", path=str(data)
                )
            cfg = manifest.config
            indices = getattr(
                split_dataset(
                    len(dataset), cfg["valid_fraction"], cfg["test_fraction"], manifest.seed
                ),
                split,
            )
            dataset = dataset.subset(indices)
        if len(dataset) == 0:
            raise RxnDatasetError(f"Split {split!r} is empty", path=str(data))

        report: Dict[str, Any] = {
            "task": model.config.task,
            "dataset": str(data),
            "dataset_digest": dataset.digest,
            "count": len(dataset),
        }
        if model.config.task == "classify":
            report["classification"] = evaluate_classifier(
                model, dataset.reactions, dataset.labels(), self.batch_size
            )
        else:
            out = predict(model, dataset.reactions, self.batch_size)[:, 0]
            targets = dataset.targets()
            report["mse"] = float(sum((o - t) ** 2 for o, t in zip(out, targets)) / len(targets))
        return EvalReport(**report)

    def rank(
        self, checkpoint: PathLike, candidates: PathLike, ks: Sequence[int] = (1, 2, 5, 10)
    ) -> Tuple[List[RankingResult], Optional[RankingSummary]]:
        """Rank every candidate set of a JSON-lines file.

        Returns:
            One result per set, and top-k accuracies when true indices are known
        """
        model, _ = load_model(checkpoint)
        sets = load_candidate_sets(candidates)
        results = [self.rank_set(model, cs) for cs in sets]
        known = [r for r in results if r.true_index is not None]
        summary = None
        if known:
            truth = [r.true_index for r in known if r.true_index is not None]
            accuracy = top_k_accuracy([r.order for r in known], truth, ks)
            summary = RankingSummary(
                queries=len(known), top_k={f"top{k}": v for k, v in accuracy.items()}
            )
        return results, summary

    @staticmethod
    def rank_set(model: ReactionModel, cs: CandidateSet) -> RankingResult:
        """Rank one candidate set."""
        try:
            reactions = cs.reactions()
        except RxnParseError as e:
            raise RxnDatasetError(f"Query {cs.query_id}: {e.message}") from e
        matrix = rank_matrix(reactions, model)
        order = ranked_pairs(matrix)
        return RankingResult(
            query_id=cs.query_id,
            order=order,
            scores=matrix.scores.tolist(),
            true_index=cs.true_index,
            true_rank=true_rank(order, cs.true_index) if cs.true_index is not None else None,
        )

    def explain(
        self,
        checkpoint: PathLike,
        smirks: str,
        top_k: Optional[int] = 10,
        path_layers: PathLayers = "final",
    ) -> InterpretReport:
        """Interpretability report of one reaction under an RGAT checkpoint."""
        model, _ = load_model(checkpoint)
        return explain(model, parse_reaction(smirks), top_k, path_layers)

    def fingerprints(
        self,
        data: PathLike,
        bits: int = 2048,
        radius: int = 2,
        w1: float = 1.0,
        w2: float = 1.0,
    ) -> List[FingerprintRecord]:
        """Reaction fingerprints of every reaction in a dataset."""
        dataset = load_dataset(data)
        return [
            FingerprintRecord(
                reaction_index=i,
                vector=reaction_fp(r.reaction, w1, w2, bits=bits, radius=radius).tolist(),
            )
            for i, r in enumerate(dataset.records)
        ]


def _split_parts(split: Split) -> List[List[int]]:
    return [split.train, split.valid, split.test]

