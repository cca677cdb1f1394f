"""Exact Euler obstructions and dual degrees of projective toric surfaces and 3-folds."""

from .cones import (
    SMOOTH,
    ConeType2D,
    boundary_fan,
    classify_cone,
    cone_eu,
    cone_rsv,
    dual_cone_type,
    hj_eval,
    hj_expand,
    resolution_data,
)
from .errors import OracleMismatch, ToricError
from .general import general_euler
from .hull import LatticePolytope, convex_hull, subdiagram_volume
from .lattice import Sublattice, hermite_normal_form, lattice_index, smith_normal_form
from .surface import DualDegreeReport, surface_dual_degree, surface_euler_table, surface_vertex_eu
from .threefold import threefold_dual_degree, threefold_euler_table, vertex_pllp
from .wps import (
    Weights,
    WpsReport,
    defectivity_and_conjecture_scan,
    reduce_weights,
    wps2_dual_degree,
    wps_polytope,
    wps_report,
)

__version__ = "0.1.0"
