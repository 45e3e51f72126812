"""Tests de la configuration (YAML, presets, environnement)."""

import math

import pytest
import yaml

from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.errors import ConfigError
from scatterbayes.core.presets import PRESETS


def test_defaults():
    config = ExperimentConfig()
    assert (config.grid.N, config.grid.h) == (40, 0.02)
    assert config.design.n_directions == 8
    assert config.kernel.weights == (0.4, 0.2, 0.2, 0.2)
    assert config.prior.gamma_shape == 2.0
    assert config.alpha_max == pytest.approx(math.sqrt(2.0) * 0.8)


def test_presets_differ_only_by_rotation_and_grid():
    one = ExperimentConfig.from_preset("example1").to_dict()
    two = ExperimentConfig.from_preset("example2").to_dict()
    three = ExperimentConfig.from_preset("example3").to_dict()

    assert two["design"]["zeta"] == pytest.approx(math.pi / 6.0)
    assert (three["grid"]["N"], three["grid"]["h"]) == (80, 0.01)
    two["design"]["zeta"] = 0.0
    three["grid"] = one["grid"]
    assert one == two == three


def test_full_presets_run_longer():
    full = ExperimentConfig.from_preset("example1-full")
    assert full.kernel.t_max == 2_000_000
    assert full.kernel.burn_in == 50_000
    assert set(PRESETS) >= {"example1", "example2", "example3", "example3-full"}


def test_unknown_preset():
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_preset("example9")
    assert excinfo.value.field == "preset"


def test_unknown_key_is_rejected():
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict({"kernel": {"temperature": 2.0}})
    assert excinfo.value.field.startswith("kernel")


@pytest.mark.parametrize("data, field", [
    ({"kernel": {"weights": [0.5, 0.5, 0.5, 0.5]}}, "kernel.weights"),
    ({"design": {"n_directions": 7}}, "design.n_directions"),
    ({"grid": {"N": 4}}, "grid.N"),
    ({"logging": {"format": "xml"}}, "logging.format"),
])
def test_invalid_values_name_their_field(data, field):
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict(data)
    assert excinfo.value.field == field


def test_burn_in_must_be_below_t_max():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"kernel": {"t_max": 100, "burn_in": 100}})


def test_yaml_round_trip(tmp_path):
    config = ExperimentConfig.from_preset("example2").override(**{"kernel.seed": 5, "output_dir": "out"})
    path = tmp_path / "config.yaml"
    config.save_to_yaml(path)
    assert ExperimentConfig.load_from_yaml(path) == config


def test_yaml_is_merged_over_the_preset(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({"kernel": {"seed": 9}}), encoding="utf-8")
    config = ExperimentConfig.load(path, preset="example3")
    assert config.kernel.seed == 9
    assert config.grid.N == 80
    assert config.kernel.t_max == 200_000


def test_environment_wins_over_the_file(tmp_path, monkeypatch):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({"kernel": {"seed": 9}}), encoding="utf-8")
    monkeypatch.setenv("SCATTER_KERNEL__SEED", "7")
    assert ExperimentConfig.load_from_yaml(path).kernel.seed == 7


def test_override_skips_none():
    config = ExperimentConfig().override(**{"kernel.t_max": None, "kernel.mode": "paper-literal"})
    assert config.kernel.t_max == 200_000
    assert config.kernel.mode == "paper-literal"
