"""Tests for report records."""

import json

import pytest
from pydantic import ValidationError

from hyperrxn.models.chem import Side
from hyperrxn.models.hypergraph import RelationKind
from hyperrxn.models.reports import (
    AtomScore,
    EdgeScore,
    InterpretReport,
    ParseLine,
    ParseReport,
    RankingResult,
    RunManifest,
)


class TestReports:
    def test_parse_report_json(self):
        report = ParseReport(
            path="in.smi",
            total=2,
            ok=1,
            failed=1,
            lines=[
                ParseLine(line=1, ok=True, reactants=2, products=1),
                ParseLine(line=3, ok=False, error="Unclosed ring 1", position=4, fragment_index=0),
            ],
        )
        payload = json.loads(report.model_dump_json())
        assert payload["format_version"] == 1
        assert payload["lines"][1]["position"] == 4

    def test_scores_are_probabilities(self):
        with pytest.raises(ValidationError):
            AtomScore(node=0, side=Side.REACTANT, mol=0, atom=0, score=1.5)
        with pytest.raises(ValidationError):
            EdgeScore(src=0, dst=1, relation=RelationKind.MOL_RXN, score=-0.1)

    def test_interpret_report_serializes_enums(self):
        report = InterpretReport(
            node_node=[EdgeScore(src=0, dst=1, relation=RelationKind.ATOM_MOL, score=0.5)]
        )
        payload = report.model_dump(mode="json")
        assert payload["node_node"][0]["relation"] == "atom-mol"
        assert payload["path_layers"] == "final"

    def test_ranking_result(self):
        result = RankingResult(query_id="q", order=[1, 0], scores=[[0, -0.2], [0.2, 0]])
        assert result.true_rank is None

    def test_manifest_is_filled_incrementally(self):
        manifest = RunManifest(seed=3)
        manifest.split_sizes = {"train": 8, "valid": 1, "test": 1}
        manifest.checkpoint = "model.json"
        assert manifest.model_dump()["split_sizes"]["train"] == 8
