"""Tests for rxn-hypergraph construction."""

import json
from collections import Counter

import networkx as nx
import numpy as np
import pytest

from hyperrxn.chem import parse_reaction, permute_reaction
from hyperrxn.hypergraph import build_hypergraph, dump_hypergraph, relation_adjacency
from hyperrxn.models.chem import MolecularGraph, Reaction, Side
from hyperrxn.models.hypergraph import RELATIONS, NodeKind, RelationKind
from hyperrxn.utils.exceptions import RxnGraphError
from tests.conftest import ESTERIFICATION, random_permutations, random_reaction


def expected_edge_count(rxn: Reaction) -> int:
    n, m = len(rxn.reactants), len(rxn.products)
    bonds = sum(len(mol.bonds) for mol in rxn.reactants + rxn.products)
    return 2 * bonds + 2 * rxn.total_atoms + n * (n - 1) + m * (m - 1) + n + m


def to_digraph(g) -> nx.DiGraph:
    graph = nx.DiGraph()
    for node in g.nodes:
        atom = None if node.atom is None else node.atom.model_dump_json()
        graph.add_node(node.id, label=(node.kind, node.side, atom))
    for src, dst, relation in g.edges:
        graph.add_edge(src, dst, relation=relation)
    return graph


class TestBuildHypergraph:
    """Node layout and edge counts."""

    def test_esterification_counts(self, esterification):
        g = build_hypergraph(esterification)
        assert g.total_atoms == 14
        assert g.bond_count == 10
        assert g.num_nodes == 20
        assert len(g.edges) == 56

    def test_single_atoms(self):
        g = build_hypergraph(parse_reaction("C>>C"))
        assert g.num_nodes == 6
        assert len(g.edges) == 6
        assert [n.kind for n in g.nodes] == [
            NodeKind.ATOM,
            NodeKind.ATOM,
            NodeKind.MOL,
            NodeKind.MOL,
            NodeKind.RXN,
            NodeKind.RXN,
        ]

    def test_three_reactants_mol_mol(self):
        g = build_hypergraph(parse_reaction("C.O.N>>CON"))
        mol_mol = relation_adjacency(g, RelationKind.MOL_MOL)
        assert len(mol_mol) == 6
        assert all(g.nodes[s].side is Side.REACTANT for s, _ in mol_mol)

    def test_single_molecule_side_has_no_mol_mol(self):
        g = build_hypergraph(parse_reaction("CC>>C=C"))
        assert relation_adjacency(g, RelationKind.MOL_MOL) == []

    def test_node_order(self, esterification):
        g = build_hypergraph(esterification)
        assert g.mol_node(Side.REACTANT, 0) == 14
        assert g.mol_node(Side.PRODUCT, 1) == 17
        assert g.rxn_node(Side.REACTANT) == 18
        assert g.rxn_node(Side.PRODUCT) == 19
        assert g.atom_nodes(Side.PRODUCT, 1) == [13]
        assert g.atom_nodes(Side.REACTANT, 1) == [3, 4, 5, 6]
        assert all(n.id == i for i, n in enumerate(g.nodes))

    def test_rxn_nodes_have_no_out_edges(self, esterification):
        g = build_hypergraph(esterification)
        rxn_nodes = {g.rxn_node(Side.REACTANT), g.rxn_node(Side.PRODUCT)}
        assert not [e for e in g.edges if e[0] in rxn_nodes]

    def test_mol_rxn_is_same_side_and_one_way(self, esterification):
        g = build_hypergraph(esterification)
        for src, dst in relation_adjacency(g, RelationKind.MOL_RXN):
            assert g.nodes[src].kind is NodeKind.MOL
            assert g.nodes[dst].kind is NodeKind.RXN
            assert g.nodes[src].side is g.nodes[dst].side

    def test_empty_molecule(self):
        rxn = Reaction.model_construct(
            reactants=[MolecularGraph()], products=[MolecularGraph()], agent_indices=[]
        )
        with pytest.raises(RxnGraphError):
            build_hypergraph(rxn)

    def test_count_formulas_random(self, rng):
        for _ in range(100):
            rxn = random_reaction(rng)
            g = build_hypergraph(rxn)
            n, m = len(rxn.reactants), len(rxn.products)
            assert g.num_nodes == rxn.total_atoms + n + m + 2
            assert len(g.edges) == expected_edge_count(rxn)

    @pytest.mark.slow
    def test_count_formulas_thousand(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            rxn = random_reaction(rng)
            g = build_hypergraph(rxn)
            assert len(g.edges) == expected_edge_count(rxn)


class TestReachability:
    """Paths through hypernodes and side separation."""

    def test_bfs_bounds(self, rng):
        for _ in range(20):
            rxn = random_reaction(rng, max_mols=4, max_atoms=6)
            g = build_hypergraph(rxn)
            graph = to_digraph(g)
            for node in g.nodes:
                if node.kind is not NodeKind.ATOM:
                    continue
                dist = nx.single_source_shortest_path_length(graph, node.id)
                same = [n.id for n in g.nodes if n.kind is NodeKind.ATOM and n.side is node.side]
                assert all(dist[other] <= 3 for other in same)
                assert dist[g.rxn_node(node.side)] <= 2
                assert all(g.nodes[reached].side is node.side for reached in dist)


class TestRelationAdjacency:
    def test_mol_rxn_single_atoms(self):
        g = build_hypergraph(parse_reaction("C>>C"))
        assert relation_adjacency(g, RelationKind.MOL_RXN) == [(2, 4), (3, 5)]

    def test_absent_relation(self, esterification):
        g = build_hypergraph(esterification)
        assert relation_adjacency(g, RelationKind.BOND_TRIPLE) == []

    def test_partition_and_order(self, esterification):
        g = build_hypergraph(esterification)
        union = []
        for s in RELATIONS:
            pairs = relation_adjacency(g, s)
            assert pairs == sorted(pairs, key=lambda p: (p[1], p[0]))
            union.extend((src, dst, s) for src, dst in pairs)
        assert Counter(union) == Counter(g.edges)

    def test_bonds_are_symmetric(self, esterification):
        g = build_hypergraph(esterification)
        for s in (RelationKind.BOND_SINGLE, RelationKind.BOND_DOUBLE):
            pairs = set(relation_adjacency(g, s))
            assert pairs == {(v, u) for u, v in pairs}


class TestPermutationEquivariance:
    """Permuted reactions give isomorphic hypergraphs."""

    def test_isomorphic_under_permutation(self, rng):
        for _ in range(15):
            rxn = random_reaction(rng, max_mols=3, max_atoms=5)
            permuted = permute_reaction(rxn, *random_permutations(rng, rxn))
            a, b = build_hypergraph(rxn), build_hypergraph(permuted)
            assert nx.is_isomorphic(
                to_digraph(a),
                to_digraph(b),
                node_match=lambda x, y: x["label"] == y["label"],
                edge_match=lambda x, y: x["relation"] == y["relation"],
            )
            for s in RELATIONS:
                degrees_a = Counter(Counter(dst for _, dst in relation_adjacency(a, s)).values())
                degrees_b = Counter(Counter(dst for _, dst in relation_adjacency(b, s)).values())
                assert degrees_a == degrees_b


class TestDumpHypergraph:
    """JSON graph dump."""

    def test_layout(self):
        dump = dump_hypergraph(build_hypergraph(parse_reaction(ESTERIFICATION)), ESTERIFICATION)
        assert dump["num_nodes"] == 20
        assert dump["num_edges"] == 56
        assert dump["reaction"] == ESTERIFICATION
        assert dump["nodes"][0] == {
            "id": 0,
            "kind": "atom",
            "side": "reactant",
            "mol": 0,
            "atom": 0,
            "element": "C",
            "charge": 0,
            "aromatic": False,
            "implicit_h": 3,
        }
        assert dump["nodes"][-1] == {"id": 19, "kind": "rxn-hypernode", "side": "product"}
        assert {e["relation"] for e in dump["edges"]} == {
            "bond-single",
            "bond-double",
            "atom-mol",
            "mol-atom",
            "mol-mol",
            "mol-rxn",
        }
        json.dumps(dump)
