"""Tests for saving and restoring models."""

import json

import numpy as np
import pytest

from hyperrxn.baselines import FingerprintModel
from hyperrxn.gnn import HypergraphModel, model_forward
from hyperrxn.models.config import ModelConfig, TrainingConfig
from hyperrxn.models.hypergraph import FeatureConfig
from hyperrxn.training import build_model, load_model, save_model
from hyperrxn.utils.exceptions import RxnCheckpointError


class TestBuildModel:
    def test_kinds(self):
        assert isinstance(build_model(ModelConfig(layers=3, dim=4)), HypergraphModel)
        fp = build_model(ModelConfig(representation="fingerprint", fp_bits=16))
        assert isinstance(fp, FingerprintModel)

    def test_feature_config(self):
        features = FeatureConfig(elements=["C", "O"])
        model = build_model(ModelConfig(layers=3, dim=4), feature_config=features)
        assert model.feature_config == features


class TestCheckpoints:
    @pytest.mark.parametrize(
        "config",
        [
            ModelConfig(layer_kind="rgat", layers=3, dim=6, heads=2),
            ModelConfig(layer_kind="rgcn", layers=4, dim=5, readout="subtract", head_dims=[3]),
            ModelConfig(representation="fingerprint", fp_bits=32, task="regress"),
            ModelConfig(layer_kind="rgat", layers=3, dim=4, task="rank"),
        ],
    )
    def test_reload_is_bit_exact(self, tmp_path, esterification, config):
        model = build_model(config, seed=9)
        path = save_model(tmp_path / "model.json", model, metadata={"note": "x"})
        restored, checkpoint = load_model(path)
        assert type(restored) is type(model)
        assert restored.config == model.config
        assert checkpoint.metadata == {"note": "x"}
        for name, value in model.params.values().items():
            assert np.array_equal(restored.params.values()[name], value)
        x, out = model_forward(esterification, model)
        x2, out2 = model_forward(esterification, restored)
        assert np.array_equal(x, x2)
        assert np.array_equal(out, out2)

    def test_training_snapshot(self, tmp_path):
        training = TrainingConfig(layers=3, dim=4, seed=3)
        model = build_model(training.architecture())
        _, checkpoint = load_model(save_model(tmp_path / "m.json", model, training))
        assert checkpoint.hyperparameters["training"]["seed"] == 3
        assert "features" in checkpoint.hyperparameters

    def test_custom_features_survive(self, tmp_path):
        features = FeatureConfig(elements=["C", "N", "O"], max_hydrogens=2)
        model = build_model(ModelConfig(layers=3, dim=4), feature_config=features)
        restored, _ = load_model(save_model(tmp_path / "m.json", model))
        assert restored.feature_config == features

    def _rewrite(self, path, change):
        raw = json.loads(path.read_text())
        change(raw)
        path.write_text(json.dumps(raw))

    def test_other_format_version(self, tmp_path):
        path = save_model(tmp_path / "m.json", build_model(ModelConfig(layers=3, dim=4)))
        self._rewrite(path, lambda raw: raw.update(format_version=99))
        with pytest.raises(RxnCheckpointError):
            load_model(path)

    def test_unknown_parameter(self, tmp_path):
        path = save_model(tmp_path / "m.json", build_model(ModelConfig(layers=3, dim=4)))
        extra = {"shape": [1, 1], "values": [0.0]}
        self._rewrite(path, lambda raw: raw["parameters"].update({"layer9.W_self": extra}))
        with pytest.raises(RxnCheckpointError):
            load_model(path)

    def test_architecture_mismatch(self, tmp_path):
        path = save_model(tmp_path / "m.json", build_model(ModelConfig(layers=3, dim=4)))
        self._rewrite(path, lambda raw: raw["hyperparameters"]["model"].update(dim=5))
        with pytest.raises(RxnCheckpointError):
            load_model(path)

    def test_missing_parameter(self, tmp_path):
        path = save_model(tmp_path / "m.json", build_model(ModelConfig(layers=3, dim=4)))
        self._rewrite(path, lambda raw: raw["parameters"].pop("head.0.bias"))
        with pytest.raises(RxnCheckpointError):
            load_model(path)

    def test_unreadable(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text("not json")
        with pytest.raises(RxnCheckpointError):
            load_model(path)
        with pytest.raises(RxnCheckpointError):
            load_model(tmp_path / "absent.json")
