"""Tests for DirectRanker scores and pair training."""

import logging

import numpy as np
import pytest

from hyperrxn.gnn import HypergraphModel
from hyperrxn.models.config import ModelConfig, TrainingConfig
from hyperrxn.ranker import PairObjective, pairwise_score, rank_matrix, ranked_pairs, train_ranker
from hyperrxn.training import build_model, candidate_pairs, generate_ranking_task
from hyperrxn.utils.exceptions import RxnModelError, RxnRankingError, RxnValidationError
from tests.conftest import random_reaction

logger = logging.getLogger(__name__)


def ranking_model(kind: str = "rgat", seed: int = 0, **overrides):
    config = ModelConfig(layer_kind=kind, layers=3, dim=8, task="rank", **overrides)
    return build_model(config, seed=seed)


class TestPairwiseScore:
    """``score(a, b) = tanh((X_a - X_b) w)``."""

    @pytest.mark.parametrize("kind", ["rgcn", "rgat"])
    def test_antisymmetric(self, rng, kind):
        model = ranking_model(kind, seed=2)
        for _ in range(10):
            a = random_reaction(rng, max_mols=3, max_atoms=8)
            b = random_reaction(rng, max_mols=3, max_atoms=8)
            forward = pairwise_score(a, b, model)
            assert -1.0 < forward < 1.0
            assert forward == pytest.approx(-pairwise_score(b, a, model), abs=1e-12)

    def test_self_score_is_zero(self, esterification):
        assert pairwise_score(esterification, esterification, ranking_model()) == 0.0

    def test_fingerprint_ranker(self, reaction_factory):
        model = ranking_model(representation="fingerprint", fp_bits=64)
        a, b = reaction_factory("CCO>>CC=O"), reaction_factory("CCO>>CCBr")
        assert pairwise_score(a, b, model) == pytest.approx(-pairwise_score(b, a, model))

    def test_needs_rank_task(self, esterification):
        model = HypergraphModel(ModelConfig(layers=3, dim=8))
        with pytest.raises(RxnModelError):
            pairwise_score(esterification, esterification, model)
        with pytest.raises(RxnModelError):
            rank_matrix([esterification], model)


class TestRankMatrix:
    def test_exactly_antisymmetric(self, rng):
        model = ranking_model(seed=1)
        candidates = [random_reaction(rng, max_mols=2, max_atoms=6) for _ in range(6)]
        m = rank_matrix(candidates, model)
        assert m.size == 6
        assert np.array_equal(m.scores, -m.scores.T)
        assert not np.diag(m.scores).any()
        assert sorted(ranked_pairs(m)) == list(range(6))

    def test_matches_pairwise_score(self, reaction_factory):
        model = ranking_model(seed=3)
        candidates = [reaction_factory(s) for s in ("CCO>>CC=O", "CCO>>CCN", "CCO>>CCCl")]
        m = rank_matrix(candidates, model)
        assert m.scores[0, 2] == pytest.approx(pairwise_score(candidates[0], candidates[2], model))

    def test_single_candidate(self, esterification):
        m = rank_matrix([esterification], ranking_model())
        assert ranked_pairs(m) == [0]


class TestPairObjective:
    def test_shared_reactions_are_prepared_once(self, reaction_factory):
        a, b, c = (reaction_factory(s) for s in ("CCO>>CC=O", "CCO>>CCN", "CCO>>CCS"))
        objective = PairObjective(ranking_model(), [(a, b), (a, c), (b, c)])
        assert len(objective) == 3
        assert len(objective.items) == 3
        assert objective.pairs.tolist() == [[0, 1], [0, 2], [1, 2]]

    def test_rejects_degenerate_pairs(self, esterification):
        with pytest.raises(RxnValidationError):
            PairObjective(ranking_model(), [(esterification, esterification)])

    def test_rejects_the_same_reaction_written_differently(self, reaction_factory):
        a, b = reaction_factory("CCO>>CC=O"), reaction_factory("OCC>>O=CC")
        assert pairwise_score(a, b, ranking_model()) == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(RxnValidationError) as excinfo:
            PairObjective(ranking_model(), [(a, reaction_factory("CCO>>CCN")), (a, b)])
        assert excinfo.value.validation_errors == [1]

    def test_relabelled_reactions_are_prepared_once(self, reaction_factory):
        a, c = reaction_factory("CCO.N>>CCN.O"), reaction_factory("CCO>>CCS")
        same_as_a = reaction_factory("N.OCC>>O.NCC")
        objective = PairObjective(ranking_model(), [(a, c), (same_as_a, reaction_factory("C>>C"))])
        assert len(objective.items) == 3
        assert objective.pairs.tolist() == [[0, 1], [0, 2]]

    def test_rejects_empty(self):
        with pytest.raises(RxnRankingError):
            PairObjective(ranking_model(), [])


class TestTrainRanker:
    def test_learns_the_synthetic_order(self, tmp_path):
        sets = generate_ranking_task(6, num_candidates=4, seed=0)
        pairs = candidate_pairs(sets)
        config = TrainingConfig(
            layer_kind="rgcn", layers=3, dim=8, task="rank", lr=1e-2, epochs=15, batch_size=8
        )
        model = build_model(config.architecture(), seed=config.seed)
        before = PairObjective(model, pairs).metric(model)
        history = train_ranker(pairs, model, config, metrics_path=tmp_path / "metrics.jsonl")
        after = PairObjective(model, pairs).metric(model)
        logger.info(f"pair accuracy {before:.3f} -> {after:.3f}")
        assert len(history) == 15
        assert all(np.isfinite(h.train_loss) for h in history)
        assert history[-1].train_loss < history[0].train_loss
        assert len((tmp_path / "metrics.jsonl").read_text().splitlines()) == 15
