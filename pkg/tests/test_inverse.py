"""Reconstructions de bureau (2·10⁵ itérations, plusieurs heures).

Lancer avec `pytest -m slow`.
"""

import pytest

from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.experiment import Experiment

pytestmark = pytest.mark.slow


def reconstruct(preset, tmp_path):
    experiment = Experiment(ExperimentConfig.from_preset(preset).override(**{"kernel.seed": 1}))
    try:
        observations = experiment.synthesize()
        experiment.run(observations, tmp_path / preset)
        summary = experiment.summarize(tmp_path / preset, tmp_path / preset, experiment.kernel.burn_in)
    finally:
        experiment.shutdown()
    return experiment, summary


@pytest.fixture(scope="module")
def example1(tmp_path_factory):
    return reconstruct("example1", tmp_path_factory.mktemp("inverse"))


def test_example1_recovers_area_and_contrast(example1):
    experiment, summary = example1
    assert summary.cm_area == pytest.approx(experiment.true_area, rel=0.05)
    assert summary.cm_b == pytest.approx(25.0, rel=0.15)


def test_rotated_directions_give_the_same_area(example1, tmp_path):
    _, reference = example1
    _, rotated = reconstruct("example2", tmp_path)
    assert rotated.cm_area == pytest.approx(reference.cm_area, rel=0.03)
