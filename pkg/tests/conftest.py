"""Shared fixtures and oracles for the hyperrxn test suite."""

import logging
from typing import Callable, Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np
import pytest

from hyperrxn.chem import parse_reaction
from hyperrxn.gnn import RgatLayer, RgcnLayer
from hyperrxn.hypergraph import GraphBatch
from hyperrxn.models.chem import Atom, Bond, BondOrder, MolecularGraph, Reaction
from hyperrxn.models.hypergraph import RELATIONS, RelationKind

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)

ESTERIFICATION = "CCO.CC(=O)O>>CC(=O)OCC.O"

# (smiles, heavy atoms, bonds)
REFERENCE_CORPUS = [
    ("C", 1, 0),
    ("O", 1, 0),
    ("CC", 2, 1),
    ("CCO", 3, 2),
    ("CC=O", 3, 2),
    ("C#N", 2, 1),
    ("CC(=O)O", 4, 3),
    ("CC(=O)OCC", 6, 5),
    ("c1ccccc1", 6, 6),
    ("c1ccncc1", 6, 6),
    ("c1cc[nH]c1", 5, 5),
    ("C1CCCCC1", 6, 6),
    ("CC(C)(C)O", 5, 4),
    ("[O-]C(=O)C", 4, 3),
    ("[NH4+]", 1, 0),
    ("ClC(Cl)(Cl)Cl", 5, 4),
    ("OS(=O)(=O)O", 5, 4),
    ("c1ccc2ccccc2c1", 10, 11),
    ("C1CC2CCC1C2", 7, 8),
    ("CC(=O)Nc1ccc(O)cc1", 11, 11),
]


def mol_to_nx(mol: MolecularGraph) -> nx.Graph:
    """Labelled networkx view of a molecular graph."""
    graph = nx.Graph()
    for index, atom in enumerate(mol.atoms):
        graph.add_node(
            index,
            label=(
                atom.element,
                atom.symbol,
                atom.formal_charge,
                atom.aromatic,
                atom.implicit_h,
                atom.radical_electrons,
            ),
        )
    for bond in mol.bonds:
        graph.add_edge(bond.u, bond.v, order=bond.order)
    return graph


def isomorphic(a: MolecularGraph, b: MolecularGraph) -> bool:
    """Labelled graph isomorphism of two molecules."""
    return nx.is_isomorphic(
        mol_to_nx(a),
        mol_to_nx(b),
        node_match=lambda x, y: x["label"] == y["label"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )


def random_molecule(rng: np.random.Generator, max_atoms: int = 20) -> MolecularGraph:
    """Random connected molecule: a random tree plus a few ring bonds."""
    size = int(rng.integers(1, max_atoms + 1))
    elements = ["C", "C", "C", "N", "O", "S", "Cl"]
    atoms = [
        Atom(
            element=(el := elements[int(rng.integers(len(elements)))]),
            symbol=el,
            formal_charge=int(rng.integers(-1, 2)),
            implicit_h=int(rng.integers(0, 4)),
        )
        for _ in range(size)
    ]
    orders = [BondOrder.SINGLE, BondOrder.SINGLE, BondOrder.DOUBLE, BondOrder.TRIPLE]
    bonds = {}
    for v in range(1, size):
        u = int(rng.integers(v))
        bonds[(u, v)] = orders[int(rng.integers(len(orders)))]
    for _ in range(int(rng.integers(0, 3))):
        u, v = sorted(int(x) for x in rng.choice(size, 2, replace=False)) if size > 1 else (0, 0)
        if u != v and (u, v) not in bonds:
            bonds[(u, v)] = BondOrder.SINGLE
    return MolecularGraph(
        atoms=atoms, bonds=[Bond(u=u, v=v, order=order) for (u, v), order in bonds.items()]
    )


def random_reaction(
    rng: np.random.Generator, max_mols: int = 5, max_atoms: int = 20
) -> Reaction:
    """Random reaction with 1..max_mols molecules per side."""
    n = int(rng.integers(1, max_mols + 1))
    m = int(rng.integers(1, max_mols + 1))
    return Reaction(
        reactants=[random_molecule(rng, max_atoms) for _ in range(n)],
        products=[random_molecule(rng, max_atoms) for _ in range(m)],
    )


def random_permutations(rng: np.random.Generator, rxn: Reaction):
    """Random atom permutations and molecule permutations for a reaction."""
    atom_perms: List[List[int]] = [
        [int(i) for i in rng.permutation(mol.num_atoms)]
        for mol in list(rxn.reactants) + list(rxn.products)
    ]
    mol_perm_r = [int(i) for i in rng.permutation(len(rxn.reactants))]
    mol_perm_p = [int(i) for i in rng.permutation(len(rxn.products))]
    return atom_perms, mol_perm_r, mol_perm_p


# Dense reference implementations of the relational layers

Edge = Tuple[int, int, RelationKind]


def make_batch(num_nodes: int, edges: Sequence[Edge], features: np.ndarray) -> GraphBatch:
    """A one-graph batch over an arbitrary edge list (rxn-hypernodes are the last two nodes)."""
    grouped: Dict[RelationKind, List[Tuple[int, int]]] = {s: [] for s in RELATIONS}
    for src, dst, relation in edges:
        grouped[relation].append((dst, src))
    relations = {}
    for s, pairs in grouped.items():
        pairs.sort()
        relations[s] = (
            np.array([p[1] for p in pairs], dtype=np.int64),
            np.array([p[0] for p in pairs], dtype=np.int64),
        )
    present = {s: np.unique(relations[s][1]) for s in RELATIONS}
    counts = np.zeros(num_nodes, dtype=np.int64)
    for nodes in present.values():
        counts[nodes] += 1
    return GraphBatch(
        features=np.asarray(features, dtype=np.float64),
        relations=relations,
        present=present,
        relation_counts=counts,
        reactant_rxn=np.array([num_nodes - 2], dtype=np.int64),
        product_rxn=np.array([num_nodes - 1], dtype=np.int64),
        node_offsets=np.array([0, num_nodes], dtype=np.int64),
    )


def adjacency(batch: GraphBatch, relation: RelationKind) -> np.ndarray:
    """``A[i, j] = 1`` when ``j -> i`` is an edge of ``relation``."""
    n = batch.num_nodes
    matrix = np.zeros((n, n))
    src, dst = batch.relations[relation]
    matrix[dst, src] = 1.0
    return matrix


def dense_rgcn(layer: RgcnLayer, h: np.ndarray, batch: GraphBatch) -> np.ndarray:
    """``h W_self + sum_s D_s^-1 A_s h W_s`` with dense matrices."""
    out = h @ layer.w_self.value
    for relation in RELATIONS:
        a = adjacency(batch, relation)
        degree = a.sum(axis=1, keepdims=True)
        norm = np.divide(a, degree, out=np.zeros_like(a), where=degree > 0)
        out = out + norm @ h @ layer.w_rel[relation].value
    return out


def _lrelu(x: float, slope: float) -> float:
    return x if x > 0 else slope * x


def dense_rgat(layer: RgatLayer, h: np.ndarray, batch: GraphBatch) -> np.ndarray:
    """Node-by-node loop over every relation neighborhood and head."""
    n = batch.num_nodes
    z_self = h @ layer.w_self.value
    z = {s: h @ layer.w_rel[s].value for s in RELATIONS}
    neighbors = {s: adjacency(batch, s) for s in RELATIONS}
    total = np.zeros((n, layer.out_dim))
    for k in range(layer.heads):
        a_dst = {s: layer.att_dst[k][s].value[:, 0] for s in RELATIONS}
        a_src = {s: layer.att_src[k][s].value[:, 0] for s in RELATIONS}
        mean_att = sum(a_dst[s] + a_src[s] for s in RELATIONS) / len(RELATIONS)
        for i in range(n):
            self_logit = _lrelu(float(z_self[i] @ mean_att), layer.slope)
            self_weights = []
            message = np.zeros(layer.out_dim)
            for s in RELATIONS:
                sources = [int(j) for j in np.flatnonzero(neighbors[s][i])]
                if not sources:
                    continue
                logits = [
                    _lrelu(float(z[s][i] @ a_dst[s] + z[s][j] @ a_src[s]), layer.slope)
                    for j in sources
                ]
                logits.append(self_logit)
                e = np.exp(np.array(logits) - max(logits))
                alpha = e / e.sum()
                for weight, j in zip(alpha[:-1], sources):
                    message += weight * z[s][j]
                self_weights.append(alpha[-1])
            alpha_ii = float(np.mean(self_weights)) if self_weights else 1.0
            total[i] += alpha_ii * z_self[i] + message
    return total / layer.heads


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def esterification() -> Reaction:
    """Ethanol plus acetic acid to ethyl acetate plus water."""
    return parse_reaction(ESTERIFICATION)


@pytest.fixture
def reaction_factory() -> Callable[[str], Reaction]:
    """Parse reactions by text."""
    return parse_reaction
