"""Tests for attention-based interpretability scores."""

import logging

import pytest

from hyperrxn.baselines import FingerprintModel
from hyperrxn.chem import permute_reaction
from hyperrxn.gnn import HypergraphModel
from hyperrxn.hypergraph import build_hypergraph
from hyperrxn.interpret import (
    AttentionRecord,
    atom_atom_scores,
    explain,
    interpret_graph,
    neighborhood_sums,
)
from hyperrxn.models.chem import Side
from hyperrxn.models.config import ModelConfig
from hyperrxn.models.reports import InterpretReport
from hyperrxn.utils.exceptions import RxnModelError, RxnValidationError
from tests.conftest import random_permutations, random_reaction

logger = logging.getLogger(__name__)


def attention_model(seed: int = 0, **overrides) -> HypergraphModel:
    config = ModelConfig(layer_kind="rgat", layers=3, dim=8, **overrides)
    return HypergraphModel(config, seed=seed)


def uniform_model() -> HypergraphModel:
    """An RGAT model whose attention vectors are zero."""
    model = attention_model()
    for name, tensor in model.params.items():
        if ".att_" in name:
            tensor.value[:] = 0.0
    return model


def recorded(model, rxn) -> AttentionRecord:
    record = AttentionRecord()
    model.encode(model.batch([rxn]), recorder=record)
    return record


class TestScoreRanges:
    """Every score is a product of attention weights."""

    @pytest.mark.parametrize("path_layers", ["final", "mean"])
    def test_scores_are_probabilities(self, rng, path_layers):
        model = attention_model(seed=3, heads=2)
        for _ in range(10):
            rxn = random_reaction(rng, max_mols=3, max_atoms=8)
            report = explain(model, rxn, top_k=None, path_layers=path_layers)
            scores = [s.score for s in report.atom_rxn + report.node_node + report.atom_atom]
            scores += [s.score for s in report.mol_importance]
            assert all(0.0 <= s <= 1.0 for s in scores)

    def test_neighborhoods_are_normalized(self, rng):
        model = attention_model(seed=1)
        for _ in range(50):
            record = recorded(model, random_reaction(rng, max_mols=3, max_atoms=8))
            sums = neighborhood_sums(record)
            assert sums
            for total in sums.values():
                assert total == pytest.approx(1.0, abs=1e-12)


class TestUniformAttention:
    """Zero attention vectors give 1 / (|N| + 1) to every neighbor."""

    def test_atom_rxn_scores(self, esterification):
        report = explain(uniform_model(), esterification)
        by_mol = {(s.side, s.mol): s.score for s in report.atom_rxn}
        # 3 and 4 heavy atoms among 2 reactants; 6 and 1 among 2 products
        assert by_mol[(Side.REACTANT, 0)] == pytest.approx(1 / (4 * 3))
        assert by_mol[(Side.REACTANT, 1)] == pytest.approx(1 / (5 * 3))
        assert by_mol[(Side.PRODUCT, 0)] == pytest.approx(1 / (7 * 3))
        assert by_mol[(Side.PRODUCT, 1)] == pytest.approx(1 / (2 * 3))
        assert len(report.atom_rxn) == 14

    def test_mol_importance(self, esterification):
        report = explain(uniform_model(), esterification)
        assert [s.score for s in report.mol_importance] == pytest.approx([1 / 3] * 4)
        assert [s.index for s in report.mol_importance] == [0, 1, 0, 1]

    def test_atom_atom_scores(self, reaction_factory):
        rxn = reaction_factory("CC.NN>>CCNN")
        report = explain(uniform_model(), rxn, top_k=None)
        reactant_pairs = [p for p in report.atom_atom if p.side is Side.REACTANT]
        assert len(reactant_pairs) == 8
        assert not [p for p in report.atom_atom if p.side is Side.PRODUCT]
        # atom -> mol 1/3, mol -> mol 1/2, mol -> atom 1/2
        for pair in reactant_pairs:
            assert pair.score == pytest.approx(1 / 12)

    def test_node_node_scores_follow_edges(self, esterification):
        report = explain(uniform_model(), esterification)
        graph = build_hypergraph(esterification)
        assert [(s.src, s.dst, s.relation) for s in report.node_node] == graph.edges
        x_r = graph.rxn_node(Side.REACTANT)
        into_x_r = [s.score for s in report.node_node if s.dst == x_r]
        assert into_x_r == pytest.approx([1 / 3, 1 / 3])


class TestAtomAtomRanking:
    def test_top_k_and_order(self, reaction_factory):
        model = attention_model(seed=5)
        rxn = reaction_factory("CCO.NC>>CC(=O)NC.O")
        record = recorded(model, rxn)
        graph = build_hypergraph(rxn)
        everything = atom_atom_scores(record, graph)
        top = atom_atom_scores(record, graph, top_k=3)
        # 3x2 atoms in both directions among reactants, 5x1 among products
        assert len(everything) == 12 + 10
        assert len(top) == 6
        reactant = [p.score for p in everything if p.side is Side.REACTANT]
        assert reactant == sorted(reactant, reverse=True)
        assert [p.score for p in top[:3]] == reactant[:3]

    def test_negative_top_k(self, esterification):
        record = recorded(attention_model(), esterification)
        with pytest.raises(RxnValidationError):
            atom_atom_scores(record, build_hypergraph(esterification), top_k=-1)


class TestExplain:
    def test_report(self, esterification):
        report = explain(attention_model(), esterification, top_k=2)
        assert isinstance(report, InterpretReport)
        assert report.reaction == esterification.source_text
        assert report.path_layers == "final"
        assert len(report.atom_atom) <= 4

    def test_rgcn_has_no_attention(self, esterification):
        model = HypergraphModel(ModelConfig(layer_kind="rgcn", layers=3, dim=8))
        with pytest.raises(RxnModelError):
            explain(model, esterification)

    def test_fingerprint_has_no_attention(self, esterification):
        model = FingerprintModel(ModelConfig(representation="fingerprint", fp_bits=32))
        with pytest.raises(RxnModelError):
            explain(model, esterification)

    def test_empty_record(self, esterification):
        with pytest.raises(RxnModelError):
            interpret_graph(AttentionRecord(), build_hypergraph(esterification))

    def test_unknown_path_layers(self, esterification):
        record = recorded(attention_model(), esterification)
        with pytest.raises(RxnValidationError):
            interpret_graph(record, build_hypergraph(esterification), path_layers="first")


def _old_position(perms, side: Side, mol: int, atom: int):
    """Original (side, mol, atom) of an atom of the permuted reaction."""
    atom_perms, mol_perm_r, mol_perm_p = perms
    if side is Side.REACTANT:
        old_mol = mol_perm_r[mol]
        offset = 0
    else:
        old_mol = mol_perm_p[mol]
        offset = len(mol_perm_r)
    return side, old_mol, atom_perms[offset + old_mol][atom]


class TestPermutationConsistency:
    """Scores follow atoms and molecules through relabeling."""

    def test_scores_move_with_atoms(self, rng):
        model = attention_model(seed=7, heads=2)
        for _ in range(10):
            rxn = random_reaction(rng, max_mols=3, max_atoms=8)
            perms = random_permutations(rng, rxn)
            before = explain(model, rxn, top_k=None)
            after = explain(model, permute_reaction(rxn, *perms), top_k=None)

            old_atoms = {(s.side, s.mol, s.atom): s for s in before.atom_rxn}
            node_map = {}
            for score in after.atom_rxn:
                old = old_atoms[_old_position(perms, score.side, score.mol, score.atom)]
                assert score.score == pytest.approx(old.score, abs=1e-9)
                node_map[score.node] = old.node

            old_mols = {(s.side, s.index): s.score for s in before.mol_importance}
            for score in after.mol_importance:
                mol_perm = perms[1] if score.side is Side.REACTANT else perms[2]
                expected = old_mols[(score.side, mol_perm[score.index])]
                assert score.score == pytest.approx(expected, abs=1e-9)

            old_pairs = {(p.a, p.b): p.score for p in before.atom_atom}
            assert len(after.atom_atom) == len(old_pairs)
            for pair in after.atom_atom:
                expected = old_pairs[(node_map[pair.a], node_map[pair.b])]
                assert pair.score == pytest.approx(expected, abs=1e-9)
