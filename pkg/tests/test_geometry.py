"""Tests de la chaîne géométrique : Delaunay, α-shape, spline, rastérisation."""

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from scatterbayes.core.errors import (
    DegenerateGeometryError,
    DomainError,
    InsufficientControlPointsError,
    InvalidGeometryError,
)
from scatterbayes.geometry import (
    HullPolygon,
    HullStatus,
    PointCloud,
    SplineBoundary,
    alpha_exposed_edges,
    alpha_shape,
    build_shape,
    circumradius_range,
    delaunay,
    disc,
    kite,
    mean_pairwise_distance,
    polygon_area,
    random_star,
    rasterize,
    spline_hull,
)
from scatterbayes.geometry.io import read_points_csv, write_points_csv

from tests.conftest import ring_points
from tests.oracles import brute_alpha_edges, brute_delaunay

UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
EQUILATERAL = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])


def cyclic_equal(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """Même cycle de sommets, au point de départ près."""
    return len(a) == len(b) and (not a or any(a[i:] + a[:i] == b for i in range(len(a))))


class TestPointCloud:
    def test_rejects_too_few_points(self):
        with pytest.raises(DegenerateGeometryError):
            PointCloud(np.array([[0.0, 0.0], [1.0, 0.0]]), alpha=1.0)

    def test_rejects_duplicate_points(self):
        with pytest.raises(DegenerateGeometryError):
            PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]]), alpha=1.0)

    @pytest.mark.parametrize("alpha", [0.0, -1.0, np.inf])
    def test_rejects_bad_alpha(self, alpha):
        with pytest.raises(DomainError):
            PointCloud(UNIT_SQUARE, alpha=alpha)

    def test_points_are_read_only(self):
        cloud = PointCloud(UNIT_SQUARE, alpha=1.0)
        with pytest.raises(ValueError):
            cloud.points[0, 0] = 5.0

    def test_scaled_moves_points_and_alpha(self):
        cloud = PointCloud(UNIT_SQUARE, alpha=1.0).scaled(3.0)
        assert cloud.alpha == 3.0
        np.testing.assert_array_equal(cloud.points, 3.0 * UNIT_SQUARE)

    def test_mean_distance_excluding_the_moved_point(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        assert mean_pairwise_distance(points, exclude=0) == pytest.approx(np.sqrt(2.0), rel=1e-15)
        assert mean_pairwise_distance(points) == pytest.approx((2.0 + np.sqrt(2.0)) / 3.0)


class TestDelaunay:
    def test_unit_square(self):
        tri = delaunay(UNIT_SQUARE)
        assert tri.size == 2
        assert circumradius_range(tri) == pytest.approx((np.sqrt(0.5), np.sqrt(0.5)))
        assert tri.edges.shape == (5, 2)

    def test_collinear_points_are_degenerate(self):
        with pytest.raises(DegenerateGeometryError):
            delaunay(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]))

    def test_matches_empty_circle_enumeration(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            points = rng.uniform(-1.0, 1.0, size=(int(rng.integers(5, 12)), 2))
            triangles = {tuple(sorted(t)) for t in delaunay(points).triangles.tolist()}
            assert triangles == brute_delaunay(points)


class TestAlphaShape:
    def test_exposed_edges_match_brute_force(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            points = rng.uniform(-1.0, 1.0, size=(int(rng.integers(8, 16)), 2))
            tri = delaunay(points)
            r_min, r_max = circumradius_range(tri)
            alphas = [0.5 * r_min, r_min + 0.25 * (r_max - r_min), 0.5 * (r_min + r_max), r_max, 4.0 * r_max]
            for alpha in alphas:
                found = {tuple(e) for e in alpha_exposed_edges(tri.vertices, alpha, tri).tolist()}
                assert found == brute_alpha_edges(points, alpha)

    def test_square_is_a_valid_polygon(self):
        polygon = alpha_shape(PointCloud(UNIT_SQUARE, alpha=1.0))
        assert polygon.status is HullStatus.VALID
        assert sorted(polygon.vertex_indices) == [0, 1, 2, 3]
        x, y = polygon.vertices.T
        signed_area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        assert signed_area == pytest.approx(1.0)

    def test_alpha_below_every_circumradius_is_empty(self):
        polygon = alpha_shape(PointCloud(UNIT_SQUARE, alpha=0.6))
        assert polygon.status is HullStatus.EMPTY
        assert not polygon.valid

    def test_two_far_triangles_are_disconnected(self):
        points = np.vstack([EQUILATERAL, EQUILATERAL + [10.0, 0.0]])
        assert alpha_shape(PointCloud(points, alpha=0.7)).status is HullStatus.DISCONNECTED

    def test_pendant_point_branches_the_boundary(self):
        points = np.vstack([EQUILATERAL, [[2.0, 0.0]]])
        assert alpha_shape(PointCloud(points, alpha=0.7)).status is HullStatus.BRANCHED

    @staticmethod
    def similar(points: np.ndarray, angle: float = 0.7, scale: float = 2.5, shift=(3.0, -1.0)) -> np.ndarray:
        rotation = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        return scale * points @ rotation.T + np.asarray(shift)

    def test_similarity_maps_the_shape_onto_itself(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            points = rng.uniform(-1.0, 1.0, size=(12, 2))
            r_min, r_max = circumradius_range(delaunay(points))
            for alpha in (r_min + 0.3 * (r_max - r_min), 0.5 * (r_min + r_max), 2.0 * r_max):
                original = alpha_shape(PointCloud(points, alpha))
                moved = alpha_shape(PointCloud(self.similar(points), 2.5 * alpha))
                assert moved.status is original.status
                assert moved.edges == original.edges
                assert cyclic_equal(moved.vertex_indices, original.vertex_indices)

    def test_ring_polygon_follows_a_similarity(self, ring_cloud):
        original = alpha_shape(ring_cloud)
        moved = alpha_shape(PointCloud(self.similar(ring_cloud.points), 2.5 * ring_cloud.alpha))
        assert original.valid and moved.valid
        assert cyclic_equal(moved.vertex_indices, original.vertex_indices)
        np.testing.assert_allclose(moved.vertices, self.similar(original.vertices)[
            [original.vertex_indices.index(i) for i in moved.vertex_indices]
        ], atol=1e-12)

    def test_small_perturbation_keeps_the_shape(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            points = rng.uniform(-1.0, 1.0, size=(12, 2))
            r_min, r_max = circumradius_range(delaunay(points))
            alpha = 0.5 * (r_min + r_max)
            nudged = points.copy()
            nudged[int(rng.integers(12))] += 1e-9 * rng.standard_normal(2)

            original = alpha_shape(PointCloud(points, alpha))
            perturbed = alpha_shape(PointCloud(nudged, alpha))
            assert perturbed.status is original.status
            assert perturbed.edges == original.edges

    def test_alpha_above_every_circumradius_gives_the_convex_hull(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            points = rng.uniform(-1.0, 1.0, size=(int(rng.integers(6, 16)), 2))
            r_max = circumradius_range(delaunay(points))[1]
            polygon = alpha_shape(PointCloud(points, r_max * (1.0 + 1e-6)))

            assert polygon.valid
            assert cyclic_equal(polygon.vertex_indices, tuple(int(i) for i in ConvexHull(points).vertices))


class TestSpline:
    def test_interpolates_the_vertices_and_closes(self, ring_cloud):
        polygon = alpha_shape(ring_cloud)
        boundary = spline_hull(polygon, density=32)

        assert boundary.simple
        np.testing.assert_array_equal(boundary.samples[0], boundary.samples[-1])
        assert boundary.samples.shape == (32 * polygon.size, 2)
        np.testing.assert_allclose(boundary.evaluate(boundary.knots[:-1]), polygon.vertices, atol=1e-12)

    def test_triangle_hull_has_too_few_control_points(self):
        polygon = alpha_shape(PointCloud(EQUILATERAL, alpha=1.0))
        assert polygon.valid
        with pytest.raises(InsufficientControlPointsError):
            spline_hull(polygon)

    def test_invalid_polygon_is_refused(self):
        with pytest.raises(InvalidGeometryError):
            spline_hull(alpha_shape(PointCloud(UNIT_SQUARE, alpha=0.6)))

    def test_raw_polyline_has_no_parameterization(self):
        boundary = SplineBoundary.from_polyline(UNIT_SQUARE)
        assert boundary.samples.shape == (5, 2)
        with pytest.raises(InvalidGeometryError):
            boundary.evaluate(np.array([0.0]))

    def test_octagon_spline_stays_close_to_the_circle(self):
        angles = 2.0 * np.pi * np.arange(8) / 8
        octagon = np.column_stack([np.cos(angles), np.sin(angles)])
        polygon = HullPolygon(HullStatus.VALID, vertex_indices=tuple(range(8)), vertices=octagon)
        boundary = spline_hull(polygon, n_s=2048)

        assert boundary.simple
        assert np.max(np.abs(np.hypot(*boundary.samples.T) - 1.0)) <= 0.02


class TestAreaAndRaster:
    def test_kite_area(self):
        assert polygon_area(kite(10_000, scale=0.1)) == pytest.approx(3.0 * np.pi / 200.0, rel=1e-6)

    def test_self_intersecting_polyline_has_no_area(self):
        bow_tie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(InvalidGeometryError):
            polygon_area(bow_tie)

    def test_disc_raster_matches_its_area(self, grid40):
        field = rasterize(disc(4096, radius=0.2), grid40, 25.0)
        assert field.b_value == 25.0
        area = field.support.size * grid40.h**2
        assert area == pytest.approx(np.pi * 0.04, rel=0.05)

    def test_nodes_on_the_boundary_count_as_inside(self, grid40):
        square = grid40.node_coordinates(np.array([[15, 15], [25, 15], [25, 25], [15, 25]]))
        field = rasterize(square, grid40, 3.0)
        assert field.support.size == 11 * 11

    def test_zero_contrast_is_empty(self, grid40):
        assert rasterize(kite(512, 0.1), grid40, 0.0).is_empty

    def test_random_stars_stay_simple(self, rng):
        for _ in range(10):
            boundary = SplineBoundary.from_polyline(random_star(rng, n=512))
            assert boundary.simple


class TestBuildShape:
    def test_ring_cloud_is_valid_and_round(self, rng):
        points = ring_points(rng)
        shape = build_shape(PointCloud(points, alpha=0.3))

        assert shape.valid, shape.reason
        assert shape.polygon.size == 12
        mean_radius = np.mean(np.linalg.norm(points, axis=1))
        assert shape.area == pytest.approx(np.pi * mean_radius**2, rel=0.05)
        assert shape.r_min <= shape.r_max

    def test_invalid_shape_carries_its_reason(self):
        shape = build_shape(PointCloud(UNIT_SQUARE, alpha=0.6))
        assert not shape.valid
        assert shape.reason == "empty"
        assert np.isnan(shape.area)

    def test_triangle_has_too_few_vertices(self):
        shape = build_shape(PointCloud(EQUILATERAL, alpha=1.0))
        assert shape.reason == "too_few_vertices"

    def test_reuses_a_given_triangulation(self, ring_cloud):
        tri = delaunay(ring_cloud.points)
        shape = build_shape(ring_cloud.with_alpha(0.35), tri=tri)
        assert shape.triangulation is tri


def test_points_csv_round_trip(tmp_path, ring_cloud):
    path = tmp_path / "cloud.csv"
    write_points_csv(path, ring_cloud.points)
    assert path.read_text(encoding="utf-8").startswith("x,y\n")
    np.testing.assert_array_equal(read_points_csv(path), ring_cloud.points)
