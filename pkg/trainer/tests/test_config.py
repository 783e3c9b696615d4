"""AblationConfig validation and the config/grid file formats."""

from __future__ import annotations

import pytest

from apivec_trainer.config import AblationConfig, InvalidConfig, load_config, load_grid
from conftest import GRID_FILE


class TestDefaults:
    def test_chosen_architecture(self):
        config = AblationConfig()
        assert config.kernel_sizes == (2, 3)
        assert config.use_bn_input and config.use_bn_after_cnn
        assert config.lstm_layers == 1
        assert config.filters == 128
        assert config.lstm_units == 100
        assert config.dense_units == 64
        assert config.dropout == 0.5
        assert config.lr == 0.001

    def test_to_dict_serializable(self):
        import json

        json.dumps(AblationConfig().to_dict())


class TestValidation:
    def test_kernel_sizes_restricted(self):
        with pytest.raises(InvalidConfig):
            AblationConfig(kernel_sizes=(5,)).validate()
        with pytest.raises(InvalidConfig):
            AblationConfig(kernel_sizes=(2, 2)).validate()

    def test_lstm_layers_restricted(self):
        with pytest.raises(InvalidConfig):
            AblationConfig(lstm_layers=3).validate()

    def test_everything_disabled_rejected(self):
        with pytest.raises(InvalidConfig):
            AblationConfig(kernel_sizes=(), lstm_layers=0).validate()

    def test_no_cnn_with_lstm_allowed(self):
        AblationConfig(kernel_sizes=(), lstm_layers=1).validate()

    def test_dropout_range(self):
        with pytest.raises(InvalidConfig):
            AblationConfig(dropout=1.0).validate()


class TestConfigFile:
    def test_parse(self, tmp_path):
        path = tmp_path / "model.conf"
        path.write_text(
            "# variant under test\n"
            "kernel_sizes = 2,3,4\n"
            "use_bn_input = false\n"
            "lstm_layers = 2\n"
            "dropout = 0.25\n"
        )
        config = load_config(path)
        assert config.kernel_sizes == (2, 3, 4)
        assert config.use_bn_input is False
        assert config.use_bn_after_cnn is True  # untouched default
        assert config.lstm_layers == 2
        assert config.dropout == 0.25

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("optimizer = sgd\n")
        with pytest.raises(InvalidConfig):
            load_config(path)

    def test_missing_equals_rejected(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("lstm_layers 2\n")
        with pytest.raises(InvalidConfig):
            load_config(path)

    def test_bad_value_rejected(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("kernel_sizes = big\n")
        with pytest.raises(InvalidConfig):
            load_config(path)


class TestGridFile:
    def test_shipped_sweeps(self):
        grid = load_grid(GRID_FILE)
        names = [name for name, _ in grid]
        assert len(grid) == 10
        assert names[:3] == ["2-gatedcnn", "2,3-gatedcnn", "2,3,4-gatedcnn"]
        by_name = dict(grid)
        assert by_name["2-gatedcnn"].kernel_sizes == (2,)
        assert by_name["2,3,4-gatedcnn"].kernel_sizes == (2, 3, 4)
        assert by_name["no-bn"].use_bn_input is False
        assert by_name["no-bn"].use_bn_after_cnn is False
        assert by_name["no-input-bn"].use_bn_input is False
        assert by_name["no-cnn-bn"].use_bn_after_cnn is False
        assert by_name["no-bilstm"].lstm_layers == 0
        assert by_name["two-bilstm"].lstm_layers == 2
        # every sweep entry changes exactly one factor from the chosen model
        default = AblationConfig()
        for name, config in grid:
            changed = sum(
                getattr(config, f) != getattr(default, f)
                for f in ("kernel_sizes", "use_bn_input", "use_bn_after_cnn", "lstm_layers")
            )
            assert changed <= 2, name  # no-bn switches the two BN flags together

    def test_empty_grid_rejected(self, tmp_path):
        path = tmp_path / "empty.ini"
        path.write_text("# nothing here\n")
        with pytest.raises(InvalidConfig):
            load_grid(path)
