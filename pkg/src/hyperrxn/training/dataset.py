"""Reaction datasets, candidate sets and reproducible splits.

Dataset files are tab-separated, one reaction per line::

    CCO>>CC=O<TAB>1

The second column is an integer class label or a real regression target and
may be omitted for unlabeled data. Blank lines and lines starting with ``#``
are skipped. Candidate-set files are JSON lines
``{"query_id": ..., "candidates": [smirks, ...], "true_index": 0}``.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import Field, ValidationError, model_validator

from hyperrxn.chem import parse_reaction
from hyperrxn.models.base import BaseModel
from hyperrxn.models.chem import Reaction
from hyperrxn.utils.error_handling import format_error_message
from hyperrxn.utils.exceptions import RxnDatasetError, RxnParseError
from hyperrxn.utils.hashing import lines_digest

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Record:
    """One dataset line.

    Attributes:
        reaction: Parsed reaction
        line: 1-based line number in the file
        label: Integer class label (if the column is an integer)
        target: Real target (if the column is a non-integer number)
    """

    reaction: Reaction
    line: int
    label: Optional[int] = None
    target: Optional[float] = None


@dataclass(frozen=True)
class Dataset:
    """Records of one file plus the digest of its lines."""

    records: List[Record]
    path: str = ""
    digest: str = ""

    def __len__(self) -> int:
        return len(self.records)

    @property
    def reactions(self) -> List[Reaction]:
        return [r.reaction for r in self.records]

    def labels(self) -> List[int]:
        """Class labels of every record.

        Raises:
            RxnDatasetError: If a record has no integer label
        """
        missing = [r.line for r in self.records if r.label is None]
        if missing:
            raise RxnDatasetError(
                f"{len(missing)} records have no class label", path=self.path, line=missing[0]
            )
        return [int(r.label) for r in self.records if r.label is not None]

    def targets(self) -> List[float]:
        """Real targets; integer labels are read as reals.

        Raises:
            RxnDatasetError: If a record has neither label nor target
        """
        values = []
        for r in self.records:
            if r.target is not None:
                values.append(r.target)
            elif r.label is not None:
                values.append(float(r.label))
            else:
                raise RxnDatasetError("Record has no target", path=self.path, line=r.line)
        return values

    def subset(self, indices: Sequence[int]) -> "Dataset":
        return Dataset([self.records[i] for i in indices], self.path, self.digest)


@dataclass(frozen=True)
class Split:
    """Disjoint train/valid/test index lists covering a dataset."""

    train: List[int]
    valid: List[int] = field(default_factory=list)
    test: List[int] = field(default_factory=list)

    def sizes(self) -> Dict[str, int]:
        return {"train": len(self.train), "valid": len(self.valid), "test": len(self.test)}


def read_lines(path: PathLike) -> List[str]:
    """Lines of a text file without line terminators.

    Raises:
        RxnDatasetError: If the file cannot be read
    """
    source = Path(path)
    try:
        return source.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise RxnDatasetError(f"Cannot read dataset: {e}", path=str(source)) from e


def dataset_digest(path: PathLike) -> str:
    """SHA-256 over the lines of a dataset file."""
    return lines_digest(read_lines(path))


def _parse_value(text: str) -> Tuple[Optional[int], Optional[float]]:
    try:
        return int(text), None
    except ValueError:
        return None, float(text)


def load_dataset(path: PathLike) -> Dataset:
    """Read a TSV dataset.

    Raises:
        RxnDatasetError: If the file is empty or a line is malformed; the
            error names the line number
    """
    lines = read_lines(path)
    records = []
    for number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        columns = [c.strip() for c in raw.split("\t")]
        if len(columns) > 2:
            raise RxnDatasetError(
                f"Expected 'smirks<TAB>label', got {len(columns)} columns", str(path), number
            )
        try:
            reaction = parse_reaction(columns[0])
        except RxnParseError as e:
            raise RxnDatasetError(format_error_message(e), str(path), number) from e
        label: Optional[int] = None
        target: Optional[float] = None
        if len(columns) == 2 and columns[1]:
            try:
                label, target = _parse_value(columns[1])
            except ValueError as e:
                raise RxnDatasetError(f"Invalid label {columns[1]!r}", str(path), number) from e
        records.append(Record(reaction=reaction, line=number, label=label, target=target))
    if not records:
        raise RxnDatasetError("Dataset is empty", path=str(path))
    logger.info(f"Loaded {len(records)} reactions from {path}")
    return Dataset(records=records, path=str(path), digest=lines_digest(lines))


def split_dataset(
    n: int, valid_fraction: float = 0.1, test_fraction: float = 0.1, seed: int = 0
) -> Split:
    """Random disjoint split of ``range(n)``; identical for identical seeds.

    Raises:
        RxnDatasetError: If no record is left for training
    """
    if valid_fraction < 0 or test_fraction < 0 or valid_fraction + test_fraction >= 1:
        raise RxnDatasetError(
            f"Invalid split fractions valid={valid_fraction}, test={test_fraction}"
        )
    order = np.random.default_rng(seed).permutation(n)
    n_test = int(round(n * test_fraction))
    n_valid = int(round(n * valid_fraction))
    if n - n_test - n_valid < 1:
        raise RxnDatasetError(f"Split of {n} records leaves nothing to train on")
    test = sorted(int(i) for i in order[:n_test])
    valid = sorted(int(i) for i in order[n_test : n_test + n_valid])
    train = sorted(int(i) for i in order[n_test + n_valid :])
    return Split(train=train, valid=valid, test=test)


def balanced_split(
    labels: Sequence[int], train_per_class: int, test_per_class: int, seed: int = 0
) -> Split:
    """Per-class subsample: ``train_per_class`` train and ``test_per_class`` test records.

    Records beyond ``train_per_class + test_per_class`` in a class are left
    out of both splits.

    Raises:
        RxnDatasetError: If a class has too few records

    Example:
        >>> split = balanced_split(labels, train_per_class=200, test_per_class=800)
    """
    rng = np.random.default_rng(seed)
    by_class: Dict[int, List[int]] = {}
    for index, label in enumerate(labels):
        by_class.setdefault(int(label), []).append(index)
    train: List[int] = []
    test: List[int] = []
    need = train_per_class + test_per_class
    for label in sorted(by_class):
        members = by_class[label]
        if len(members) < need:
            raise RxnDatasetError(
                f"Class {label} has {len(members)} records, {need} needed for a balanced split"
            )
        chosen = [members[i] for i in rng.permutation(len(members))[:need]]
        train.extend(chosen[:train_per_class])
        test.extend(chosen[train_per_class:])
    return Split(train=sorted(train), test=sorted(test))


class CandidateSet(BaseModel):
    """Candidate reactions of one ranking query.

    Attributes:
        query_id: Identifier of the query
        candidates: Candidate reaction texts
        true_index: Position of the true (most plausible) candidate
        utilities: Known plausibility of every candidate, higher is better
    """

    query_id: str = Field(...)
    candidates: List[str] = Field(..., min_length=1)
    true_index: Optional[int] = Field(None)
    utilities: Optional[List[float]] = Field(None)

    @model_validator(mode="after")
    def _check(self) -> "CandidateSet":
        if self.true_index is not None and not 0 <= self.true_index < len(self.candidates):
            raise ValueError(f"true_index {self.true_index} is not a candidate position")
        if self.utilities is not None and len(self.utilities) != len(self.candidates):
            raise ValueError("utilities must have one value per candidate")
        return self

    def reactions(self) -> List[Reaction]:
        return [parse_reaction(text) for text in self.candidates]

    def ordered_pairs(self) -> List[Tuple[int, int]]:
        """``(better, worse)`` candidate positions known from utilities or the true index."""
        if self.utilities is not None:
            u = self.utilities
            k = len(u)
            return [(a, b) for a in range(k) for b in range(k) if u[a] > u[b]]
        if self.true_index is not None:
            t = self.true_index
            return [(t, b) for b in range(len(self.candidates)) if b != t]
        return []


def load_candidate_sets(path: PathLike) -> List[CandidateSet]:
    """Read a JSON-lines candidate file.

    Raises:
        RxnDatasetError: If the file is empty or a line is malformed
    """
    sets = []
    for number, raw in enumerate(read_lines(path), start=1):
        if not raw.strip():
            continue
        try:
            sets.append(CandidateSet.model_validate(json.loads(raw)))
        except (ValueError, ValidationError) as e:
            raise RxnDatasetError(f"Invalid candidate set: {e}", str(path), number) from e
    if not sets:
        raise RxnDatasetError("Candidate file is empty", path=str(path))
    return sets


def candidate_pairs(sets: Sequence[CandidateSet]) -> List[Tuple[Reaction, Reaction]]:
    """All known ``(more plausible, less plausible)`` reaction pairs.

    Raises:
        RxnDatasetError: If a candidate fails to parse
    """
    pairs = []
    for cs in sets:
        try:
            reactions = cs.reactions()
        except RxnParseError as e:
            raise RxnDatasetError(
                f"Query {cs.query_id}: {format_error_message(e)}"
            ) from e
        pairs.extend((reactions[a], reactions[b]) for a, b in cs.ordered_pairs())
    return pairs


def load_pairs(path: PathLike) -> List[Tuple[Reaction, Reaction]]:
    """Read ``better<TAB>worse`` reaction pairs."""
    pairs = []
    for number, raw in enumerate(read_lines(path), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        columns = raw.split("\t")
        if len(columns) != 2:
            raise RxnDatasetError("Expected 'better<TAB>worse'", str(path), number)
        try:
            pairs.append((parse_reaction(columns[0]), parse_reaction(columns[1])))
        except RxnParseError as e:
            raise RxnDatasetError(format_error_message(e), str(path), number) from e
    if not pairs:
        raise RxnDatasetError("Pair file is empty", path=str(path))
    return pairs
