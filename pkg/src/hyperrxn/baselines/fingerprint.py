"""Morgan-style circular count fingerprints and the reaction fingerprint.

Identifiers are built by iterative neighborhood hashing. Radius 0 contributes
one identifier per atom; each later radius contributes one identifier per
distinct bond environment that was not seen before, so an environment that
stops growing (an isolated atom, a fully explored small molecule) is counted
once. Atoms sharing a bond environment at the same radius keep the smallest
identifier.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from hyperrxn.models.chem import MolecularGraph, Reaction
from hyperrxn.utils.exceptions import RxnValidationError
from hyperrxn.utils.hashing import stable_hash64

logger = logging.getLogger(__name__)

DEFAULT_BITS = 2048
DEFAULT_RADIUS = 2


@dataclass(frozen=True)
class Fingerprint:
    """Folded count vector of one molecule.

    Attributes:
        counts: ``int64`` vector of length ``bits``
        radius: Maximum iteration depth
        identifiers: Unfolded identifier -> occurrence count
    """

    counts: np.ndarray
    radius: int
    identifiers: Dict[int, int] = field(default_factory=dict)

    @property
    def bits(self) -> int:
        return int(self.counts.size)


def initial_identifiers(mol: MolecularGraph) -> List[int]:
    """Radius-0 identifier of every atom."""
    adjacency = mol.neighbors()
    return [
        stable_hash64(
            atom.symbol,
            atom.formal_charge,
            atom.aromatic,
            atom.implicit_h,
            len(adjacency[index]),
        )
        for index, atom in enumerate(mol.atoms)
    ]


def morgan_identifiers(mol: MolecularGraph, radius: int = DEFAULT_RADIUS) -> Dict[int, int]:
    """Unfolded identifiers with their occurrence counts.

    Args:
        mol: Molecule
        radius: Maximum iteration depth, at least 0

    Returns:
        Mapping identifier -> number of kept environments carrying it
    """
    if radius < 0:
        raise RxnValidationError(f"Fingerprint radius must be >= 0, got {radius}")
    adjacency = mol.neighbors()
    bond_index = {bond.key: i for i, bond in enumerate(mol.bonds)}
    incident: List[FrozenSet[int]] = [
        frozenset(bond_index[_key(a, b)] for b, _ in adjacency[a]) for a in range(mol.num_atoms)
    ]

    ids = initial_identifiers(mol)
    counts: Dict[int, int] = {}
    for identifier in ids:
        counts[identifier] = counts.get(identifier, 0) + 1

    environments: List[FrozenSet[int]] = [frozenset() for _ in range(mol.num_atoms)]
    seen: Set[FrozenSet[int]] = {frozenset()}
    for _ in range(radius):
        next_ids = []
        next_envs = []
        for a in range(mol.num_atoms):
            pairs = sorted((order.value, ids[b]) for b, order in adjacency[a])
            flat = [part for pair in pairs for part in pair]
            next_ids.append(stable_hash64(ids[a], *flat))
            env = environments[a].union(incident[a], *(environments[b] for b, _ in adjacency[a]))
            next_envs.append(env)

        kept: Dict[FrozenSet[int], int] = {}
        for env, identifier in zip(next_envs, next_ids):
            if env in seen:
                continue
            if env not in kept or identifier < kept[env]:
                kept[env] = identifier
        for env, identifier in kept.items():
            seen.add(env)
            counts[identifier] = counts.get(identifier, 0) + 1
        ids, environments = next_ids, next_envs
    return counts


def morgan_fingerprint(
    mol: MolecularGraph, radius: int = DEFAULT_RADIUS, bits: int = DEFAULT_BITS
) -> Fingerprint:
    """Count fingerprint folded modulo ``bits``.

    Example:
        >>> fp = morgan_fingerprint(parse_molecule("CC"), radius=1)
        >>> len(fp.identifiers), int(fp.counts.sum())
        (2, 3)
    """
    if bits < 1:
        raise RxnValidationError(f"Fingerprint length must be positive, got {bits}")
    identifiers = morgan_identifiers(mol, radius)
    counts = np.zeros(bits, dtype=np.int64)
    for identifier, count in identifiers.items():
        counts[identifier % bits] += count
    return Fingerprint(counts=counts, radius=radius, identifiers=identifiers)


def reaction_fp_parts(
    rxn: Reaction,
    agents: Optional[Sequence[int]] = None,
    bits: int = DEFAULT_BITS,
    radius: int = DEFAULT_RADIUS,
) -> Tuple[np.ndarray, np.ndarray]:
    """The two sums the reaction fingerprint is a weighted combination of.

    Args:
        rxn: Reaction
        agents: Reactant positions treated as agents; defaults to the
            positions tagged from the SMIRKS agent field

    Returns:
        ``(sum FP(products) - sum FP(non-agent reactants), sum FP(agents))``

    Raises:
        RxnValidationError: If an agent position is not a reactant
    """
    agent_set = set(rxn.agent_indices if agents is None else agents)
    bad = sorted(i for i in agent_set if not 0 <= i < len(rxn.reactants))
    if bad:
        raise RxnValidationError("Agent positions must index reactants", validation_errors=bad)

    delta = np.zeros(bits, dtype=np.int64)
    agent_sum = np.zeros(bits, dtype=np.int64)
    for mol in rxn.products:
        delta += morgan_fingerprint(mol, radius, bits).counts
    for index, mol in enumerate(rxn.reactants):
        counts = morgan_fingerprint(mol, radius, bits).counts
        if index in agent_set:
            agent_sum += counts
        else:
            delta -= counts
    return delta.astype(np.float64), agent_sum.astype(np.float64)


def reaction_fp(
    rxn: Reaction,
    w1: float = 1.0,
    w2: float = 1.0,
    agents: Optional[Sequence[int]] = None,
    bits: int = DEFAULT_BITS,
    radius: int = DEFAULT_RADIUS,
) -> np.ndarray:
    """Reaction fingerprint ``w1 (sum FP(P) - sum FP(R \\ A)) + w2 sum FP(A)``.

    Example:
        >>> reaction_fp(parse_reaction("CCO>>CCO"), w2=0.0).any()
        False
    """
    delta, agent_sum = reaction_fp_parts(rxn, agents, bits, radius)
    return w1 * delta + w2 * agent_sum


def _key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a < b else (b, a)
