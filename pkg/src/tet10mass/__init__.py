"""Closed-form consistent mass matrices for 10-node tetrahedral elements.

The package computes the element consistent mass matrix four ways from
closed-form coefficient tables (exact cubic metric, constant, linear and
quadratic metric approximations), provides the 1/4/5/15-point quadrature
baselines, validates everything against an exact rational integration
oracle, and ships a randomized accuracy study plus a CLI.
"""

__version__ = "0.1.0"

from .element import (
    CENTROID,
    EDGE_VERTEX_PAIRS,
    METRIC_MONOMIALS,
    NODE_NATURAL_COORDS,
    InvalidElementError,
    JacobianDecomposition,
    centroid_jacobian,
    check_element,
    element_diameter,
    is_straight_sided,
    is_valid_element,
    jacobian_at,
    jacobian_decomposition,
    metric_at,
    metric_polynomial,
    metric_polynomial_value,
    metric_values,
    nodal_jacobians,
    nodal_metrics,
    shape_function_polynomials,
    shape_functions,
    shape_gradients,
    straight_element,
)
from .exactpoly import (
    ETA,
    LAMBDA0,
    ONE,
    XI,
    ZETA,
    TriPoly,
    integrate_over_reference,
    monomial_integral,
)
from .meshfile import (
    MESH_HEADER,
    MeshElement,
    MeshParseError,
    load_mesh,
    parse_mesh,
    save_mesh,
    serialize_mesh,
)
from .quadrature import (
    SUPPORTED_POINT_COUNTS,
    QuadratureRule,
    UnsupportedRuleError,
    integrate_numeric,
    mass_quadrature,
    standard_rule,
)
from .schemes import (
    LM_SCALE,
    M0_SCALE,
    QM_SCALE,
    SCHEME_NAMES,
    ConstantTables,
    compute_mass,
    element_volume,
    generate_constant_tables,
    mass_cm,
    mass_exact,
    mass_lm,
    mass_qm,
)
from .study import (
    DEFAULT_DELTAS,
    DEFAULT_ELEMENTS,
    DEFAULT_SCHEMES,
    DEFAULT_SEED,
    GENERATOR_NAME,
    StudyConfig,
    StudyResult,
    StudyRow,
    averaged_absolute_error,
    element_stream,
    make_element,
    run_study,
    sample_element,
)
from .validate import CheckResult, run_validation

__all__ = [name for name in dir() if not name.startswith("_")]
