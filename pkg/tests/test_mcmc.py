"""Tests du noyau de transition, de la chaîne et des résumés."""

import math

import numpy as np
import pytest
from scipy.spatial.distance import pdist

from scatterbayes.bayes import Theta
from scatterbayes.core.errors import ConfigError, ContractError, InitializationError, InvalidStateError, SingularSystemError
from scatterbayes.geometry import PointCloud, build_shape, circumradius_range, delaunay
from scatterbayes.geometry.cloud import mean_pairwise_distance
from scatterbayes.mcmc import (
    AcceptanceMode,
    ChainRecord,
    ChainState,
    KernelConfig,
    MoveKind,
    accept_probability,
    draw_initial_state,
    mh_step,
    propose_alpha,
    propose_b,
    propose_point_move,
    propose_translate,
    read_chain_csv,
    run_chain,
    summarize,
    write_chain_csv,
    write_snapshots_csv,
)
from scatterbayes.monitoring import SamplerMetrics

from tests.conftest import FlatTarget

B_ONLY = (0.0, 0.0, 1.0, 0.0)
RANGES = {"area_range": (0.0, 0.64), "b_range": (0.0, 185.0)}


def bare_state(cloud: PointCloud, b_value: float = 25.0) -> ChainState:
    """État sans énergie, pour tester les propositions seules."""
    return ChainState(Theta(cloud, b_value), build_shape(cloud, density=16), 0.0)


class HighEnergyTarget(FlatTarget):
    """Tout candidat a une énergie énorme : il est toujours refusé."""

    def energy(self, theta, shape=None):
        return 1e9


class FailingSolverTarget(FlatTarget):
    def energy(self, theta, shape=None):
        raise SingularSystemError("reduced system is singular", rcond=0.0)


class AlwaysInvalidTarget(FlatTarget):
    def energy(self, theta, shape=None):
        return np.inf


class TestKernelConfig:
    @pytest.mark.parametrize("weights", [(0.5, 0.5, 0.5, 0.5), (1.2, -0.2, 0.0, 0.0), (0.5, 0.5)])
    def test_bad_weights(self, weights):
        with pytest.raises(ConfigError) as excinfo:
            KernelConfig(weights=weights)
        assert excinfo.value.field == "kernel.weights"

    def test_mode_accepts_its_string_value(self):
        config = KernelConfig(mode="paper-literal")
        assert config.mode is AcceptanceMode.PAPER_LITERAL
        assert not config.exact

    def test_t_max_must_be_positive(self):
        with pytest.raises(ConfigError):
            KernelConfig(t_max=0)


class TestProposals:
    SCALE = 3.7
    SHIFT = np.array([0.05, -0.02])

    @pytest.mark.parametrize("propose", [propose_point_move, propose_translate, propose_alpha])
    def test_moves_commute_with_scaling(self, ring_cloud, propose):
        candidate, _ = propose(bare_state(ring_cloud), np.random.default_rng(99))
        scaled, _ = propose(bare_state(ring_cloud.scaled(self.SCALE)), np.random.default_rng(99))

        np.testing.assert_allclose(scaled.cloud.points, self.SCALE * candidate.cloud.points, rtol=1e-12, atol=1e-15)
        assert scaled.alpha == pytest.approx(self.SCALE * candidate.alpha, rel=1e-12)

    @pytest.mark.parametrize("propose", [propose_point_move, propose_translate, propose_alpha])
    def test_moves_commute_with_translation(self, ring_cloud, propose):
        candidate, _ = propose(bare_state(ring_cloud), np.random.default_rng(99))
        shifted, _ = propose(bare_state(ring_cloud.translated(self.SHIFT)), np.random.default_rng(99))

        np.testing.assert_allclose(shifted.cloud.points, candidate.cloud.points + self.SHIFT, rtol=0.0, atol=1e-14)
        assert shifted.alpha == pytest.approx(candidate.alpha, rel=1e-12)

    def test_point_move_changes_one_point_within_the_spread(self, ring_cloud, rng):
        state = bare_state(ring_cloud)
        for _ in range(200):
            candidate, log_hastings = propose_point_move(state, rng)
            moved = np.flatnonzero(np.any(candidate.cloud.points != state.points, axis=1))
            assert log_hastings == 0.0
            assert moved.size == 1
            k = int(moved[0])
            step = candidate.cloud.points[k] - state.points[k]
            assert np.all(np.abs(step) < mean_pairwise_distance(state.points, exclude=k))

    def test_translate_keeps_the_shape(self, ring_cloud, rng):
        state = bare_state(ring_cloud)
        candidate, _ = propose_translate(state, rng)
        np.testing.assert_allclose(pdist(candidate.cloud.points), pdist(state.points), rtol=1e-12)
        assert candidate.alpha == state.alpha

    def test_alpha_move_stays_in_its_window(self, ring_cloud, rng):
        state = bare_state(ring_cloud)
        low = 0.5 * (state.alpha + state.shape.r_min)
        high = 0.5 * (state.alpha + state.shape.r_max)
        for _ in range(500):
            candidate, log_hastings = propose_alpha(state, rng)
            assert low <= candidate.alpha <= high
            assert log_hastings in (0.0, -math.inf)
            np.testing.assert_array_equal(candidate.cloud.points, state.points)

    def test_alpha_move_is_deterministic_on_a_single_triangle(self, rng):
        radius = 1.0 / np.sqrt(3.0)
        triangle = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])
        state = bare_state(PointCloud(triangle, alpha=radius))
        assert state.shape.r_min == state.shape.r_max

        for _ in range(5):
            candidate, log_hastings = propose_alpha(state, rng)
            assert candidate.alpha == pytest.approx(radius, rel=1e-14)
            assert log_hastings == 0.0

    def test_irreversible_alpha_move_in_exact_mode_only(self, ring_cloud):
        # α très au-dessus de r_max : le retour 2α − α′ sort de [r_min, r_max].
        state = bare_state(ring_cloud.with_alpha(1.0))
        _, exact = propose_alpha(state, np.random.default_rng(0), AcceptanceMode.EXACT_MH)
        _, literal = propose_alpha(state, np.random.default_rng(0), AcceptanceMode.PAPER_LITERAL)
        assert exact == -math.inf
        assert literal == 0.0

    def test_b_move_hastings_term(self, ring_cloud, prior, rng):
        state = bare_state(ring_cloud, b_value=30.0)
        candidate, log_hastings = propose_b(state, rng, prior)
        assert candidate.b_value > 0.0
        assert log_hastings == pytest.approx(prior.log_prior_b(30.0) - prior.log_prior_b(candidate.b_value))
        _, literal = propose_b(state, rng, prior, AcceptanceMode.PAPER_LITERAL)
        assert literal == 0.0


class TestStep:
    def test_accept_probability(self):
        assert accept_probability(1.0, 1.0) == 1.0
        assert accept_probability(2.0, 1.0) == 1.0
        assert accept_probability(1.0, 1.0 + math.log(2.0)) == pytest.approx(0.5)
        assert accept_probability(1.0, 1.0, log_hastings=-math.inf) == 0.0

    def test_rejection_keeps_the_state(self, ring_state, prior, rng):
        target = HighEnergyTarget(prior)
        config = KernelConfig(weights=(0.25, 0.25, 0.25, 0.25))
        for _ in range(50):
            result = mh_step(ring_state, target, prior, config, rng)
            assert result.state is ring_state
            assert not result.accepted

    def test_solver_failure_is_a_rejection(self, ring_state, prior, rng):
        metrics = SamplerMetrics()
        result = mh_step(ring_state, FailingSolverTarget(prior), prior, KernelConfig(weights=B_ONLY), rng, metrics)

        assert result.state is ring_state
        assert result.move is MoveKind.B
        assert result.reason == "solver"
        assert result.outcome == "invalid"
        assert metrics.proposal_count("b", "invalid") == 1.0

    def test_invalid_shape_is_never_installed(self, ring_state, flat_target, prior, rng):
        config = KernelConfig(weights=(1.0, 0.0, 0.0, 0.0))
        for _ in range(100):
            result = mh_step(ring_state, flat_target, prior, config, rng)
            assert result.state.valid
            if result.reason is not None:
                assert result.state is ring_state


class TestChain:
    def test_chain_records_only_valid_states(self, ring_state, flat_target, prior):
        config = KernelConfig(t_max=300, snapshot_every=100, seed=4)
        metrics = SamplerMetrics()
        record = run_chain(ring_state, flat_target, prior, config, metrics=metrics)

        assert len(record) == 300
        assert np.all(np.isfinite(record.energy))
        assert np.all(np.isfinite(record.area)) and np.all(record.area > 0.0)
        assert sorted(record.snapshots) == [0, 100, 200, 300]
        assert sum(record.proposal_counts().values()) == 300
        total = sum(metrics.proposal_count(m.value, o) for m in MoveKind for o in ("accepted", "rejected", "invalid"))
        assert total == 300.0

    def test_same_seed_same_chain(self, tmp_path, ring_state, flat_target, prior):
        config = KernelConfig(t_max=200, snapshot_every=50, seed=17)
        paths = []
        for run in ("a", "b"):
            record = run_chain(ring_state, flat_target, prior, config)
            path = tmp_path / f"chain_{run}.csv"
            write_chain_csv(path, record)
            paths.append(path)
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_invalid_initial_state_is_refused(self, ring_state, flat_target, prior):
        broken = ChainState(ring_state.theta, ring_state.shape, math.inf)
        with pytest.raises(InvalidStateError):
            run_chain(broken, flat_target, prior, KernelConfig(t_max=5))

    def test_flat_likelihood_recovers_the_gamma_prior(self, ring_state, flat_target, prior):
        config = KernelConfig(weights=B_ONLY, t_max=110_000, burn_in=10_000, seed=8)
        record = run_chain(ring_state, flat_target, prior, config)
        samples = record.after_burn_in(config.burn_in).b

        assert samples.mean() == pytest.approx(2.0 / 0.05, rel=0.03)
        assert samples.var() == pytest.approx(2.0 / 0.05**2, rel=0.03)
        assert record.acceptance_rates()["b"] == 1.0

    def test_flat_likelihood_with_every_move_keeps_the_gamma_prior(self, ring_state, flat_target, prior):
        config = KernelConfig(t_max=110_000, burn_in=10_000, snapshot_every=1, seed=9)
        record = run_chain(ring_state, flat_target, prior, config)
        samples = record.after_burn_in(config.burn_in).b

        assert samples.mean() == pytest.approx(40.0, rel=0.04)
        assert samples.var() == pytest.approx(800.0, rel=0.1)
        assert all(rate > 0.0 for rate in record.acceptance_rates().values())
        assert np.all((record.alpha > 0.0) & (record.alpha <= prior.alpha_max))

        alpha_move = MoveKind.ordered().index(MoveKind.ALPHA)
        accepted = np.flatnonzero((record.moves == alpha_move) & record.accepted)
        assert accepted.size > 1_000
        previous = np.concatenate([[ring_state.alpha], record.alpha[:-1]])
        for i in accepted:
            r_min, r_max = circumradius_range(delaunay(record.snapshots[int(record.iterations[i])]))
            reverse = 2.0 * previous[i] - record.alpha[i]
            assert r_min - 1e-9 <= reverse <= r_max + 1e-9

    def test_initial_state_is_valid_and_inside_the_domain(self, flat_target, prior):
        state = draw_initial_state(flat_target, prior, cloud_size=8, rng=np.random.default_rng(3))
        assert state.valid
        assert prior.contains_cloud(state.points)
        assert state.shape.r_min <= state.alpha <= state.shape.r_max

    def test_initialization_gives_up(self, prior):
        with pytest.raises(InitializationError):
            draw_initial_state(AlwaysInvalidTarget(prior), prior, 8, np.random.default_rng(0), attempts=5)


def constant_record(n: int = 10) -> ChainRecord:
    record = ChainRecord.allocate(n)
    record.energy[:] = 3.0
    record.area[:] = 0.05
    record.b[:] = 25.0
    record.alpha[:] = 0.3
    record.snapshots[0] = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    return record


class TestRecordAndSummary:
    @pytest.mark.parametrize("burn_in", [-1, 10, 11])
    def test_burn_in_must_leave_samples(self, burn_in):
        with pytest.raises(ContractError):
            constant_record().after_burn_in(burn_in)

    def test_unproposed_moves_have_no_rate(self):
        rates = constant_record().acceptance_rates()
        assert rates["point"] == 0.0
        assert math.isnan(rates["alpha"])

    def test_constant_chain_summary(self):
        summary = summarize(constant_record(), burn_in=4, **RANGES)
        assert summary.samples == 6
        assert summary.cm_area == summary.map_area == 0.05
        assert summary.cm_b == summary.map_b == 25.0
        assert summary.map_iteration == 1
        assert summary.area_histogram.counts.sum() == 6
        np.testing.assert_array_equal(summary.trace, np.full(6, -3.0))
        np.testing.assert_array_equal(summary.trace_iterations, np.arange(5, 11))
        assert summary.map_snapshot[0] == 0

    def test_map_is_searched_over_the_whole_chain(self):
        record = constant_record()
        record.energy[1] = -7.0
        record.area[1] = 0.09
        summary = summarize(record, burn_in=5, **RANGES)
        assert summary.map_iteration == 2
        assert summary.map_area == 0.09
        assert summary.cm_area == 0.05

    def test_histograms_share_fixed_edges(self):
        first, second = constant_record(), constant_record()
        second.area[:] = 0.2
        second.b[:] = 500.0
        a = summarize(first, burn_in=4, **RANGES, bins=8)
        b = summarize(second, burn_in=4, **RANGES, bins=8)

        np.testing.assert_array_equal(a.area_histogram.edges, b.area_histogram.edges)
        np.testing.assert_array_equal(a.b_histogram.edges, np.linspace(0.0, 185.0, 9))
        np.testing.assert_array_equal(b.b_histogram.edges, a.b_histogram.edges)
        assert b.b_histogram.counts[-1] == 6

    def test_empty_histogram_range_is_refused(self):
        with pytest.raises(ContractError):
            summarize(constant_record(), burn_in=4, area_range=(0.0, 0.64), b_range=(10.0, 10.0))

    def test_chain_csv_round_trip(self, tmp_path, ring_state, flat_target, prior):
        record = run_chain(ring_state, flat_target, prior, KernelConfig(t_max=50, snapshot_every=10, seed=2))
        write_chain_csv(tmp_path / "chain.csv", record)
        write_snapshots_csv(tmp_path / "snapshots.csv", record)
        loaded = read_chain_csv(tmp_path / "chain.csv")

        for name in ("iterations", "moves", "accepted", "energy", "b", "alpha", "area"):
            np.testing.assert_array_equal(getattr(loaded, name), getattr(record, name))
        assert sorted(loaded.snapshots) == sorted(record.snapshots)
        np.testing.assert_array_equal(loaded.snapshots[50], record.snapshots[50])
        assert loaded.move_names()[0] in {m.value for m in MoveKind}

    def test_bad_chain_header(self, tmp_path):
        path = tmp_path / "chain.csv"
        path.write_text("iteration,move\n", encoding="utf-8")
        with pytest.raises(ContractError):
            read_chain_csv(path)
