"""Construction of the rxn-hypergraph from a reaction.

For a reaction with N reactants, M products, T atoms and B bonds the graph has
``T + N + M + 2`` nodes and ``2B + 2T + N(N-1) + M(M-1) + N + M`` directed
edges. No self loops are materialized; the layers handle self contributions.
"""

import logging
from typing import Any, Dict, List, Tuple

from hyperrxn.models.chem import MolecularGraph, Reaction, Side
from hyperrxn.models.hypergraph import (
    BOND_RELATIONS,
    HyperNode,
    NodeKind,
    RelationKind,
    RxnHypergraph,
)
from hyperrxn.utils.exceptions import RxnGraphError

logger = logging.getLogger(__name__)

GRAPH_DUMP_VERSION = 1

Edge = Tuple[int, int, RelationKind]


def build_hypergraph(rxn: Reaction) -> RxnHypergraph:
    """Build the rxn-hypergraph of a reaction.

    Args:
        rxn: A reaction with at least one reactant and one product

    Returns:
        The hypergraph, nodes ordered reactant atoms, product atoms, reactant
        mol-hypernodes, product mol-hypernodes, x^r, x^p

    Raises:
        RxnGraphError: If a side is empty or a molecule has no atoms

    Example:
        >>> g = build_hypergraph(parse_reaction("CCO.CC(=O)O>>CC(=O)OCC.O"))
        >>> len(g.nodes), len(g.edges)
        (20, 56)
    """
    sides = ((Side.REACTANT, list(rxn.reactants)), (Side.PRODUCT, list(rxn.products)))
    for side, molecules in sides:
        if not molecules:
            raise RxnGraphError(f"Reaction has no {side.value} molecules")
        for index, mol in enumerate(molecules):
            if mol.num_atoms == 0:
                raise RxnGraphError(f"{side.value.capitalize()} molecule {index} has no atoms")

    nodes: List[HyperNode] = []
    atom_ids: Dict[Tuple[Side, int], List[int]] = {}
    for side, molecules in sides:
        for mol_index, mol in enumerate(molecules):
            ids = []
            for atom_index, atom in enumerate(mol.atoms):
                ids.append(len(nodes))
                nodes.append(
                    HyperNode.model_construct(
                        id=len(nodes),
                        kind=NodeKind.ATOM,
                        side=side,
                        mol=mol_index,
                        atom_index=atom_index,
                        atom=atom,
                    )
                )
            atom_ids[(side, mol_index)] = ids

    mol_ids: Dict[Side, List[int]] = {}
    for side, molecules in sides:
        mol_ids[side] = []
        for mol_index in range(len(molecules)):
            mol_ids[side].append(len(nodes))
            nodes.append(
                HyperNode.model_construct(
                    id=len(nodes), kind=NodeKind.MOL, side=side, mol=mol_index,
                    atom_index=None, atom=None,
                )
            )

    rxn_ids: Dict[Side, int] = {}
    for side, _ in sides:
        rxn_ids[side] = len(nodes)
        nodes.append(
            HyperNode.model_construct(
                id=len(nodes), kind=NodeKind.RXN, side=side, mol=None, atom_index=None, atom=None
            )
        )

    edges: List[Edge] = []
    bond_count = 0
    for side, molecules in sides:
        for mol_index, mol in enumerate(molecules):
            ids = atom_ids[(side, mol_index)]
            bond_count += len(mol.bonds)
            edges.extend(_bond_edges(mol, ids))
            mol_node = mol_ids[side][mol_index]
            for atom_node in ids:
                edges.append((atom_node, mol_node, RelationKind.ATOM_MOL))
                edges.append((mol_node, atom_node, RelationKind.MOL_ATOM))
        for src in mol_ids[side]:
            for dst in mol_ids[side]:
                if src != dst:
                    edges.append((src, dst, RelationKind.MOL_MOL))
        for src in mol_ids[side]:
            edges.append((src, rxn_ids[side], RelationKind.MOL_RXN))

    graph = RxnHypergraph.model_construct(
        nodes=nodes,
        edges=edges,
        num_reactants=len(rxn.reactants),
        num_products=len(rxn.products),
        reactant_atom_counts=[m.num_atoms for m in rxn.reactants],
        product_atom_counts=[m.num_atoms for m in rxn.products],
        bond_count=bond_count,
    )
    logger.debug(f"Built rxn-hypergraph with {len(nodes)} nodes and {len(edges)} edges")
    return graph


def _bond_edges(mol: MolecularGraph, ids: List[int]) -> List[Edge]:
    edges = []
    for bond in mol.bonds:
        relation = BOND_RELATIONS[bond.order]
        edges.append((ids[bond.u], ids[bond.v], relation))
        edges.append((ids[bond.v], ids[bond.u], relation))
    return edges


def relation_adjacency(g: RxnHypergraph, s: RelationKind) -> List[Tuple[int, int]]:
    """Return the ``(src, dst)`` pairs of one relation, sorted by ``(dst, src)``.

    Args:
        g: The hypergraph
        s: The relation kind

    Returns:
        Edge list of relation ``s``; the union over all relations is the full
        edge set
    """
    pairs = [(src, dst) for src, dst, relation in g.edges if relation is s]
    pairs.sort(key=lambda pair: (pair[1], pair[0]))
    return pairs


def dump_hypergraph(g: RxnHypergraph, reaction: str = "") -> Dict[str, Any]:
    """Serialize a hypergraph to the JSON graph-dump layout.

    Node ids in this dump are the ids referenced by interpretability reports.

    Args:
        g: The hypergraph
        reaction: Source text to record alongside the graph

    Returns:
        A JSON-serializable dictionary
    """
    nodes = []
    for node in g.nodes:
        entry: Dict[str, Any] = {"id": node.id, "kind": node.kind.value, "side": node.side.value}
        if node.mol is not None:
            entry["mol"] = node.mol
        if node.atom is not None:
            entry.update(
                atom=node.atom_index,
                element=node.atom.symbol,
                charge=node.atom.formal_charge,
                aromatic=node.atom.aromatic,
                implicit_h=node.atom.implicit_h,
            )
        nodes.append(entry)
    return {
        "format_version": GRAPH_DUMP_VERSION,
        "reaction": reaction,
        "num_nodes": g.num_nodes,
        "num_edges": len(g.edges),
        "nodes": nodes,
        "edges": [
            {"src": src, "dst": dst, "relation": relation.value} for src, dst, relation in g.edges
        ],
    }
