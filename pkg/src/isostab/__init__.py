"""isostab: exact minimum-area convex polygon stabber for isothetic segments."""

from .geom import (
    Point, Segment, Polygon, Orient, Scalar,
    pt, hseg, vseg, orient2d, convex_hull, polygon_area,
    segment_intersects_polygon, line_extension_intersect, scalar_str,
)
from .solver import solve, SolveResult, Rejection
from .io import parse_instance, serialize_instance, result_to_doc

__all__ = [
    "Point", "Segment", "Polygon", "Orient", "Scalar",
    "pt", "hseg", "vseg", "orient2d", "convex_hull", "polygon_area",
    "segment_intersects_polygon", "line_extension_intersect", "scalar_str",
    "solve", "SolveResult", "Rejection",
    "parse_instance", "serialize_instance", "result_to_doc",
]
