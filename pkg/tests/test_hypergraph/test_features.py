"""Tests for initial node features and graph batching."""

import numpy as np
import pytest

from hyperrxn.chem import parse_reaction
from hyperrxn.hypergraph import batch_graphs, build_hypergraph, featurize, relation_arrays
from hyperrxn.hypergraph.features import atom_slots
from hyperrxn.models.chem import Atom, Side
from hyperrxn.models.hypergraph import FeatureConfig, NodeKind, RelationKind
from hyperrxn.utils.exceptions import RxnShapeError, RxnValidationError


class TestFeatureConfig:
    def test_default_layout(self):
        cfg = FeatureConfig()
        assert cfg.element_slots == 13
        assert cfg.atom_dim == 13 + 5 + 1 + 5 + 1
        assert cfg.input_dim == cfg.atom_dim + 4

    def test_buckets_must_increase(self):
        with pytest.raises(ValueError):
            FeatureConfig(charge_buckets=[1, 0])


class TestFeaturize:
    """Rows of the initial feature matrix."""

    def test_shape(self, esterification):
        g = build_hypergraph(esterification)
        x = featurize(g)
        assert x.shape == (20, FeatureConfig().input_dim)
        assert x.dtype == np.float64

    def test_rxn_row_is_one_hot(self, esterification):
        g = build_hypergraph(esterification)
        cfg = FeatureConfig()
        x = featurize(g, cfg)
        row = x[g.rxn_node(Side.REACTANT)]
        assert np.count_nonzero(row) == 1
        assert row[cfg.atom_dim + 2] == 1.0

    def test_disjoint_slots(self, esterification):
        g = build_hypergraph(esterification)
        cfg = FeatureConfig()
        x = featurize(g, cfg)
        for node in g.nodes:
            if node.kind is NodeKind.ATOM:
                assert not x[node.id, cfg.atom_dim :].any()
            else:
                assert not x[node.id, : cfg.atom_dim].any()

    def test_identical_atoms_identical_rows(self):
        g = build_hypergraph(parse_reaction("CC>>CC"))
        x = featurize(g)
        assert np.array_equal(x[0], x[1])
        assert np.array_equal(x[0], x[2])

    def test_expected_dim_mismatch(self, esterification):
        with pytest.raises(RxnShapeError):
            featurize(build_hypergraph(esterification), expected_dim=3)

    def test_other_and_missing_elements_share_slot(self):
        cfg = FeatureConfig(elements=["C", "O"])
        sodium = Atom(element="other", symbol="Na", formal_charge=1)
        nitrogen = Atom(element="N", symbol="N")
        assert atom_slots(sodium, cfg)[0] == 2
        assert atom_slots(nitrogen, cfg)[0] == 2

    def test_buckets_clamp(self):
        cfg = FeatureConfig(charge_buckets=[-1, 0, 1], max_hydrogens=2)
        atom = Atom(element="N", symbol="N", formal_charge=3, implicit_h=4)
        slots = atom_slots(atom, cfg)
        offset = cfg.element_slots
        assert slots[1] == offset + 2
        assert slots[2] == offset + 3 + 1 + 2

    def test_gapped_buckets_round_down(self):
        cfg = FeatureConfig(charge_buckets=[-2, 0, 2])
        atom = Atom(element="O", symbol="O", formal_charge=1)
        assert atom_slots(atom, cfg)[1] == cfg.element_slots + 1

    def test_aromatic_and_radical_flags(self):
        cfg = FeatureConfig()
        x = featurize(build_hypergraph(parse_reaction("c1ccccc1>>[CH3]")), cfg)
        aromatic_col = cfg.element_slots + len(cfg.charge_buckets)
        radical_col = cfg.atom_dim - 1
        assert x[0, aromatic_col] == 1.0
        assert x[6, aromatic_col] == 0.0
        assert x[6, radical_col] == 1.0


class TestBatchGraphs:
    """Disjoint-union batching."""

    def test_offsets_and_rxn_nodes(self, esterification):
        graphs = [build_hypergraph(esterification), build_hypergraph(parse_reaction("C>>C"))]
        batch = batch_graphs(graphs, [featurize(g) for g in graphs])
        assert batch.size == 2
        assert batch.num_nodes == 26
        assert list(batch.node_offsets) == [0, 20, 26]
        assert list(batch.reactant_rxn) == [18, 24]
        assert list(batch.product_rxn) == [19, 25]
        assert batch.nodes_of(1) == slice(20, 26)

    def test_edges_shifted(self, esterification):
        graphs = [build_hypergraph(parse_reaction("C>>C")), build_hypergraph(esterification)]
        batch = batch_graphs(graphs, [featurize(g) for g in graphs])
        src, dst = batch.relations[RelationKind.MOL_RXN]
        assert list(zip(src, dst)) == [(2, 4), (3, 5), (20, 24), (21, 24), (22, 25), (23, 25)]

    def test_relation_arrays_sorted(self, esterification):
        arrays = relation_arrays(build_hypergraph(esterification))
        for src, dst in arrays.values():
            keys = list(zip(dst, src))
            assert keys == sorted(keys)

    def test_present_and_counts(self):
        g = build_hypergraph(parse_reaction("C>>C"))
        batch = batch_graphs([g], [featurize(g)])
        assert list(batch.present[RelationKind.MOL_RXN]) == [4, 5]
        # atoms receive mol-atom only; mol-hypernodes receive atom-mol only
        assert list(batch.relation_counts) == [1, 1, 1, 1, 1, 1]

    def test_empty(self):
        with pytest.raises(RxnValidationError):
            batch_graphs([], [])

    def test_feature_mismatch(self, esterification):
        g = build_hypergraph(esterification)
        with pytest.raises(RxnShapeError):
            batch_graphs([g], [np.zeros((3, 4))])
        with pytest.raises(RxnValidationError):
            batch_graphs([g], [])
