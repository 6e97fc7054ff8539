"""Exact Gromov hyperbolicity constants of finite metric graphs and their line graphs."""

from hyperline.families import FamilySpec, generate, known_delta, parse_family
from hyperline.hyperbolicity import (
    DeltaResult,
    delta_exact_uniform,
    delta_lower_bound,
    delta_sampling_oracle,
    quadrilateral_gamma_check,
    upper_bound_report,
    verify_line_graph_inequalities,
)
from hyperline.line_graph import (
    build_line_graph,
    decompose_geodesic_image,
    g_c_map,
    h_map,
    h_preimage,
    verify_quasi_isometry,
)
from hyperline.metric_graph import (
    GraphPoint,
    MetricGraph,
    build_graph,
    diameter,
    enumerate_geodesics,
    pmv_points,
    point_distance,
)
from hyperline.thinness import GeodesicTriangle, make_triangle, triangle_thinness

__version__ = "0.1.0"
