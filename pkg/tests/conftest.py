"""Fixtures partagées des tests."""

from pathlib import Path

import numpy as np
import pytest
import yaml

from scatterbayes.bayes.prior import IMPOSSIBLE, PriorSpec, Theta, log_prior
from scatterbayes.core.config import ExperimentConfig
from scatterbayes.forward.fields import Grid2D
from scatterbayes.geometry.cloud import PointCloud
from scatterbayes.geometry.hull import ShapeGeometry, build_shape
from scatterbayes.geometry.triangulation import Triangulation
from scatterbayes.mcmc.state import ChainState

from tests.oracles import BESSEL_FIXTURE, read_bessel_table

TINY_CONFIG = {
    "grid": {"N": 16, "h": 0.05, "origin": [-0.4, -0.4]},
    "design": {"observation_stride": 4},
    "kernel": {"t_max": 20, "burn_in": 5, "cloud_size": 8, "snapshot_every": 5},
}


class FlatTarget:
    """Vraisemblance constante : la loi cible est le prior."""

    def __init__(self, prior: PriorSpec, density: int = 16):
        self.prior = prior
        self.density = density

    def shape(self, cloud: PointCloud, tri: Triangulation | None = None) -> ShapeGeometry:
        return build_shape(cloud, density=self.density, tri=tri)

    def log_prior(self, theta: Theta) -> float:
        return log_prior(theta, self.prior)

    def energy(self, theta: Theta, shape: ShapeGeometry | None = None) -> float:
        if self.log_prior(theta) == IMPOSSIBLE:
            return np.inf
        if shape is None:
            shape = self.shape(theta.cloud)
        if not shape.valid:
            return np.inf
        return -self.prior.log_prior_b(theta.b_value)


def ring_points(rng: np.random.Generator, m: int = 12, radius: float = 0.2, jitter: float = 0.02) -> np.ndarray:
    """m points presque cocycliques, tous sommets de l'enveloppe convexe."""
    angles = 2.0 * np.pi * np.arange(m) / m
    radii = radius * (1.0 + jitter * rng.uniform(-1.0, 1.0, m))
    return np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def grid40() -> Grid2D:
    return Grid2D(N=40, h=0.02, origin=(-0.4, -0.4))


@pytest.fixture
def ring_cloud(rng) -> PointCloud:
    return PointCloud(ring_points(rng), alpha=0.3)


@pytest.fixture
def prior() -> PriorSpec:
    return PriorSpec(gamma_shape=2.0, gamma_rate=0.05, bounds=(-0.4, -0.4, 0.4, 0.4), alpha_max=1.2)


@pytest.fixture
def flat_target(prior) -> FlatTarget:
    return FlatTarget(prior)


@pytest.fixture
def ring_state(ring_cloud, flat_target) -> ChainState:
    return ChainState.evaluate(Theta(ring_cloud, 25.0), flat_target)


@pytest.fixture
def tiny_config() -> ExperimentConfig:
    return ExperimentConfig.from_dict(TINY_CONFIG)


@pytest.fixture
def tiny_config_file(tmp_path) -> Path:
    path = tmp_path / "tiny.yaml"
    data = {**TINY_CONFIG, "output_dir": str(tmp_path / "runs")}
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def bessel_table() -> np.ndarray:
    """Table de référence figée (200 points log-espacés sur [1e-3, 500])."""
    return read_bessel_table(BESSEL_FIXTURE)
