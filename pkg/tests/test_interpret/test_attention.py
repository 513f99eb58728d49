"""Tests for the attention record."""

import numpy as np
import pytest

from hyperrxn.interpret import AttentionRecord, RelationAttention
from hyperrxn.models.hypergraph import RelationKind

BOND = RelationKind.BOND_SINGLE


def attention(src, dst, alpha, self_nodes, self_alpha) -> RelationAttention:
    return RelationAttention(
        src=np.array(src),
        dst=np.array(dst),
        alpha=np.array(alpha, dtype=np.float64),
        self_nodes=np.array(self_nodes),
        self_alpha=np.array(self_alpha, dtype=np.float64),
    )


@pytest.fixture
def record() -> AttentionRecord:
    """Two graphs of two bonded atoms each, batched as nodes 0-1 and 2-3."""
    rec = AttentionRecord()
    rec.record(
        0,
        BOND,
        attention(
            src=[1, 0, 3, 2],
            dst=[0, 1, 2, 3],
            alpha=[0.25, 0.5, 0.125, 0.75],
            self_nodes=[0, 1, 2, 3],
            self_alpha=[0.75, 0.5, 0.875, 0.25],
        ),
    )
    return rec


class TestAttentionRecord:
    def test_alpha_uses_destination_first(self, record):
        assert record.alpha(0, BOND, 0, 1) == 0.25
        assert record.alpha(0, BOND, 1, 0) == 0.5
        assert record.alpha(0, BOND, 0, 0) == 0.75

    def test_missing_edge_is_zero(self, record):
        assert record.alpha(0, BOND, 0, 3) == 0.0
        assert record.alpha(0, RelationKind.MOL_MOL, 0, 1) == 0.0
        assert record.get(0, RelationKind.MOL_MOL) is None

    def test_neighborhood_sums(self, record):
        assert record.neighborhood_sums(0, BOND) == {0: 1.0, 1: 1.0, 2: 1.0, 3: 1.0}

    def test_record_grows_layers(self, record):
        record.record(2, BOND, attention([], [], [], [], []))
        assert record.num_layers == 3
        assert list(record.relations(1)) == []

    def test_rerecord_replaces_weights(self, record):
        assert record.alpha(0, BOND, 0, 1) == 0.25
        record.record(0, BOND, attention([1], [0], [0.5], [0], [0.5]))
        assert record.alpha(0, BOND, 0, 1) == 0.5

    def test_restrict_renumbers(self, record):
        second = record.restrict(2, 4)
        expected = {(0, 1): 0.125, (1, 0): 0.75, (0, 0): 0.875, (1, 1): 0.25}
        assert second.weights(0, BOND) == expected
