"""Synthetic tasks that need no external data.

Classification: every reaction applies one of three transformations to a
random carbon skeleton (alcohol oxidation, acetylation, bromination) in the
presence of an unchanged co-reactant that appears on both sides. The class is
the heteroatom family of that co-reactant (sulfur, nitrogen, phosphorus); the
transformation agrees with the class only part of the time. A fingerprint
difference cancels the co-reactant, so it can only use the transformation.

Ranking: each query fixes a reactant and offers candidate products that carry
three substituents on the same six-carbon chain. A candidate's plausibility is
the sum of fixed substituent weights, so every query has a known total order.
"""

import itertools
import json
import logging
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np

from hyperrxn.utils.exceptions import RxnValidationError

from .dataset import CandidateSet

logger = logging.getLogger(__name__)

SKELETONS: Tuple[str, ...] = (
    "C",
    "CC",
    "CCC",
    "CCCC",
    "CC(C)",
    "CC(C)C",
    "CCC(C)",
    "c1ccccc1",
    "c1ccccc1C",
    "C1CCCCC1",
    "C1CCCC1",
    "CC(C)(C)",
)

CO_REACTANTS: Tuple[Tuple[str, ...], ...] = (
    ("S", "CS", "CCS", "CSC", "CCSC", "CCCS"),
    ("N", "CN", "CCN", "CNC", "CN(C)C", "CCCN"),
    ("P", "CP", "CCP", "CPC", "CP(C)C", "CCCP"),
)

CLASS_NAMES: Tuple[str, ...] = ("sulfur", "nitrogen", "phosphorus")

SUBSTITUENT_WEIGHTS = {"O": 1.0, "N": 0.6, "S": 0.3, "Br": -0.5, "Cl": -0.8}

RANKING_REACTANTS: Tuple[str, ...] = ("CCCCCC", "C=CCCCC", "CC=CCCC", "C=CCC=CC", "CCCCC=C")


def _transform(skeleton: str, kind: int) -> Tuple[List[str], List[str]]:
    if kind == 0:
        return [skeleton + "CO"], [skeleton + "C=O"]
    if kind == 1:
        return [skeleton + "O", "CC(=O)O"], ["CC(=O)O" + skeleton, "O"]
    return [skeleton + "O", "Br"], [skeleton + "Br", "O"]


def generate_classification_task(
    n: int, seed: int = 0, agreement: float = 0.6
) -> List[Tuple[str, int]]:
    """``n`` labeled reactions of the three-class co-reactant task.

    Args:
        n: Number of reactions
        seed: Random seed
        agreement: Probability that the transformation index equals the label

    Returns:
        ``(smirks, label)`` pairs with labels in ``{0, 1, 2}``

    Example:
        >>> generate_classification_task(2, seed=1)[0][1] in (0, 1, 2)
        True
    """
    if n < 1:
        raise RxnValidationError(f"Need at least one reaction, got {n}")
    if not 0.0 <= agreement <= 1.0:
        raise RxnValidationError(f"agreement must lie in [0, 1], got {agreement}")
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(n):
        label = int(rng.integers(3))
        if rng.random() < agreement:
            kind = label
        else:
            kind = int((label + 1 + rng.integers(2)) % 3)
        skeleton = SKELETONS[int(rng.integers(len(SKELETONS)))]
        family = CO_REACTANTS[label]
        co_reactant = family[int(rng.integers(len(family)))]
        reactants, products = _transform(skeleton, kind)
        reactants.insert(int(rng.integers(len(reactants) + 1)), co_reactant)
        products.insert(int(rng.integers(len(products) + 1)), co_reactant)
        records.append((f"{'.'.join(reactants)}>>{'.'.join(products)}", label))
    return records


def _candidate_product(groups: Sequence[str]) -> str:
    return f"C({groups[0]})CC({groups[1]})CC({groups[2]})C"


def generate_ranking_task(
    num_queries: int, num_candidates: int = 20, seed: int = 0
) -> List[CandidateSet]:
    """Candidate sets with known utilities; ``true_index`` is the best candidate.

    Raises:
        RxnValidationError: If ``num_candidates`` exceeds the number of
            distinct utilities the substituent weights can produce
    """
    options = {}
    for combo in itertools.combinations_with_replacement(sorted(SUBSTITUENT_WEIGHTS), 3):
        utility = round(sum(SUBSTITUENT_WEIGHTS[g] for g in combo), 9)
        options.setdefault(utility, []).append(combo)
    if num_queries < 1 or not 1 <= num_candidates <= len(options):
        raise RxnValidationError(
            f"Need num_queries >= 1 and 1 <= num_candidates <= {len(options)}"
        )
    utilities = sorted(options)
    rng = np.random.default_rng(seed)
    sets = []
    for q in range(num_queries):
        reactant = RANKING_REACTANTS[int(rng.integers(len(RANKING_REACTANTS)))]
        chosen = [utilities[i] for i in rng.choice(len(utilities), num_candidates, replace=False)]
        candidates = []
        for utility in chosen:
            combos = options[utility]
            groups = list(combos[int(rng.integers(len(combos)))])
            rng.shuffle(groups)
            candidates.append(f"{reactant}>>{_candidate_product(groups)}")
        sets.append(
            CandidateSet(
                query_id=f"q{q:05d}",
                candidates=candidates,
                true_index=int(np.argmax(chosen)),
                utilities=[float(u) for u in chosen],
            )
        )
    return sets


def write_classification_task(
    records: Sequence[Tuple[str, int]], path: Union[str, Path]
) -> Path:
    """Write ``smirks<TAB>label`` lines."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text("".join(f"{s}\t{label}\n" for s, label in records), encoding="utf-8")
    logger.info(f"Wrote {len(records)} labeled reactions to {target}")
    return target


def write_candidate_sets(sets: Sequence[CandidateSet], path: Union[str, Path]) -> Path:
    """Write one JSON object per candidate set."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(cs.model_dump(mode="json", exclude_none=True)) for cs in sets]
    target.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.info(f"Wrote {len(sets)} candidate sets to {target}")
    return target
