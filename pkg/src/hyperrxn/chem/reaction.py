"""Reaction SMILES (SMIRKS) reader and reaction relabelling.

A reaction line has the form ``reactants>agents>products``; each field is a
dot-separated list of SMILES fragments. Agent molecules are appended to the
reactant list because the rxn-hypergraph only has reactant and product sides;
their positions are remembered in :attr:`Reaction.agent_indices`.
"""

import logging
from typing import List, Sequence, Tuple

import networkx as nx

from hyperrxn.models.chem import Bond, MolecularGraph, Reaction
from hyperrxn.utils.exceptions import RxnParseError, RxnValidationError

from .smiles import byte_offset, parse_molecule

logger = logging.getLogger(__name__)


def parse_reaction(smirks: str) -> Reaction:
    """Parse a reaction SMILES line into a :class:`Reaction`.

    Anything after the first whitespace (CXSMILES extensions, labels) is
    ignored.

    Args:
        smirks: Text of the form ``reactants>agents>products``

    Returns:
        Reaction whose reactants are the left-hand molecules followed by the
        agent-field molecules

    Raises:
        RxnParseError: When separators are missing, a side is empty, or a
            fragment fails to parse (tagged with its fragment index and the
            byte offset within the line)

    Example:
        >>> rxn = parse_reaction("CCO.CC(=O)O>>CC(=O)OCC.O")
        >>> [m.num_atoms for m in rxn.reactants], [m.num_atoms for m in rxn.products]
        ([3, 4], [6, 1])
    """
    line = smirks.strip().split()[0] if smirks.strip() else ""
    if not line:
        raise RxnParseError("Empty reaction", text=smirks, position=0)
    if line.count(">") != 2:
        raise RxnParseError(
            "Expected exactly two '>' separators (reactants>agents>products)",
            text=line,
            position=byte_offset(line, line.find(">")) if ">" in line else len(line.encode()),
        )

    first = line.index(">")
    second = line.index(">", first + 1)
    fields = [
        (line[:first], 0),
        (line[first + 1 : second], first + 1),
        (line[second + 1 :], second + 1),
    ]
    if not fields[0][0]:
        raise RxnParseError("Reaction has no reactants", text=line, position=0)
    if not fields[2][0]:
        raise RxnParseError(
            "Reaction has no products", text=line, position=byte_offset(line, second + 1)
        )

    sides: List[List[MolecularGraph]] = []
    fragment_index = 0
    for text, start in fields:
        molecules: List[MolecularGraph] = []
        for fragment, offset in _split_fragments(text, start):
            if not fragment:
                raise RxnParseError(
                    "Empty molecule fragment",
                    text=line,
                    position=byte_offset(line, offset),
                    fragment_index=fragment_index,
                )
            try:
                molecules.append(parse_molecule(fragment))
            except RxnParseError as error:
                raise error.with_fragment(
                    fragment_index, line, byte_offset(line, offset)
                ) from error
            fragment_index += 1
        sides.append(molecules)

    reactants, agents, products = sides
    agent_indices = list(range(len(reactants), len(reactants) + len(agents)))
    logger.debug(
        f"Parsed reaction with {len(reactants)} reactants, {len(agents)} agents, "
        f"{len(products)} products"
    )
    return Reaction(
        reactants=reactants + agents,
        products=products,
        source_text=line,
        agent_indices=agent_indices,
    )


def _split_fragments(text: str, start: int) -> List[Tuple[str, int]]:
    if not text:
        return []
    fragments = []
    offset = start
    for fragment in text.split("."):
        fragments.append((fragment, offset))
        offset += len(fragment) + 1
    return fragments


def permute_reaction(
    rxn: Reaction,
    atom_perms: Sequence[Sequence[int]],
    mol_perm_r: Sequence[int],
    mol_perm_p: Sequence[int],
) -> Reaction:
    """Relabel atoms and reorder molecules without changing the chemistry.

    Permutations use "gather" semantics: ``new[k] = old[perm[k]]``.

    Args:
        rxn: The reaction to relabel
        atom_perms: One atom permutation per molecule, reactants first then
            products, in the reaction's original molecule order
        mol_perm_r: Permutation of the reactant list
        mol_perm_p: Permutation of the product list

    Returns:
        A reaction describing the identical chemistry

    Raises:
        RxnValidationError: When a permutation has the wrong length or is not
            a permutation
    """
    molecules = list(rxn.reactants) + list(rxn.products)
    if len(atom_perms) != len(molecules):
        raise RxnValidationError(
            f"Expected {len(molecules)} atom permutations, got {len(atom_perms)}"
        )
    _check_permutation(mol_perm_r, len(rxn.reactants), "reactant permutation")
    _check_permutation(mol_perm_p, len(rxn.products), "product permutation")

    relabelled = []
    for index, (mol, perm) in enumerate(zip(molecules, atom_perms)):
        _check_permutation(perm, mol.num_atoms, f"atom permutation {index}")
        relabelled.append(_permute_atoms(mol, perm))

    reactants = relabelled[: len(rxn.reactants)]
    products = relabelled[len(rxn.reactants) :]
    agents = set(rxn.agent_indices)
    return Reaction(
        reactants=[reactants[old] for old in mol_perm_r],
        products=[products[old] for old in mol_perm_p],
        source_text=rxn.source_text,
        agent_indices=[new for new, old in enumerate(mol_perm_r) if old in agents],
    )


def _check_permutation(perm: Sequence[int], size: int, what: str) -> None:
    if len(perm) != size:
        raise RxnValidationError(f"{what} has length {len(perm)}, expected {size}")
    if sorted(perm) != list(range(size)):
        raise RxnValidationError(f"{what} is not a permutation of 0..{size - 1}")


def _permute_atoms(mol: MolecularGraph, perm: Sequence[int]) -> MolecularGraph:
    inverse = [0] * len(perm)
    for new, old in enumerate(perm):
        inverse[old] = new
    return MolecularGraph(
        atoms=[mol.atoms[old] for old in perm],
        bonds=[Bond(u=inverse[b.u], v=inverse[b.v], order=b.order) for b in mol.bonds],
    )


def molecule_key(mol: MolecularGraph) -> str:
    """Hash of a molecular graph that ignores atom order.

    Atom labels carry every atom attribute and edges carry the bond order, so
    molecules with equal keys are indistinguishable to message passing.
    """
    graph = nx.Graph()
    for index, atom in enumerate(mol.atoms):
        graph.add_node(index, label=atom.model_dump_json())
    for bond in mol.bonds:
        graph.add_edge(bond.u, bond.v, order=bond.order.value)
    return nx.weisfeiler_lehman_graph_hash(
        graph, node_attr="label", edge_attr="order", iterations=max(3, mol.num_atoms)
    )


def reaction_key(rxn: Reaction) -> str:
    """Order-free key of a reaction: sorted molecule keys per side.

    Example:
        >>> a, b = parse_reaction("CCO>>CC=O"), parse_reaction("OCC>>O=CC")
        >>> reaction_key(a) == reaction_key(b)
        True
    """
    reactants = sorted(molecule_key(m) for m in rxn.reactants)
    products = sorted(molecule_key(m) for m in rxn.products)
    return ".".join(reactants) + ">>" + ".".join(products)
