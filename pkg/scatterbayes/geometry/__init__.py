"""Geometry - point clouds, Delaunay, α-shapes, spline hulls and rasterization."""

from scatterbayes.geometry.alpha_shape import HullPolygon, HullStatus, alpha_exposed_edges, alpha_shape
from scatterbayes.geometry.cloud import PointCloud, mean_pairwise_distance
from scatterbayes.geometry.hull import ShapeGeometry, build_shape
from scatterbayes.geometry.raster import polygon_area, rasterize
from scatterbayes.geometry.shapes import disc, kite, named_curve, random_star
from scatterbayes.geometry.spline import SplineBoundary, spline_hull
from scatterbayes.geometry.triangulation import Triangulation, circumradius_range, delaunay

__all__ = [
    "HullPolygon",
    "HullStatus",
    "PointCloud",
    "ShapeGeometry",
    "SplineBoundary",
    "Triangulation",
    "alpha_exposed_edges",
    "alpha_shape",
    "build_shape",
    "circumradius_range",
    "delaunay",
    "disc",
    "kite",
    "mean_pairwise_distance",
    "named_curve",
    "polygon_area",
    "random_star",
    "rasterize",
    "spline_hull",
]
