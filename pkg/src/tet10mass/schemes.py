"""Closed-form consistent mass matrices for the 10-node tetrahedron.

Four schemes share one structure: the mass matrix is a contraction of
exactly integrated constant tables with a handful of metric evaluations.

========  =========================  ==========================================
scheme    metric model               metric evaluations
========  =========================  ==========================================
exact     full cubic polynomial      20 polynomial coefficients
cm        constant                   1 (centroid)
lm        linear (barycentric)       4 (corner nodes)
qm        quadratic (shape interp.)  10 (all nodes)
========  =========================  ==========================================

For a straight-sided element the metric is constant and all four schemes
coincide.  The constant tables are generated at first use from the exact
rational oracle and cached; runtime evaluation is double precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import quadrature
from .element import (
    METRIC_MONOMIALS,
    _det3,
    as_nodes,
    centroid_jacobian,
    check_element,
    metric_polynomial,
    nodal_jacobians,
    shape_function_polynomials,
)
from .exactpoly import (
    ETA,
    LAMBDA0,
    XI,
    ZETA,
    TriPoly,
    integrate_over_reference,
    monomial_integral,
)

#: Common denominators of the integer coefficient tables.
M0_SCALE = 2520
LM_SCALE = 5040
QM_SCALE = 45360

#: Scheme names accepted by :func:`compute_mass`, in canonical order.
SCHEME_NAMES = ("exact", "cm", "lm", "qm", "g1", "g4", "g5", "g15")

_GAUSS_POINTS = {"g1": 1, "g4": 4, "g5": 5, "g15": 15}


@dataclass(frozen=True)
class ConstantTables:
    """Exactly integrated coefficient tables shared by all schemes.

    m0:    (10, 10) integers; M0_SCALE * integral(phi_i phi_j).
    lm:    (4, 10, 10) integers; LM_SCALE * integral(L_k phi_i phi_j) for the
           four barycentric weights L_k.
    qm:    (10, 10, 10) integers; QM_SCALE * integral(phi_r phi_i phi_j).
    exact: (10, 10, 20) floats; integral(phi_i phi_j * monomial_w) in the
           canonical metric-monomial order.
    exact_rational: the same tensor as exact Fractions, kept for table
           validation and exact printing.
    """

    m0: np.ndarray
    lm: np.ndarray
    qm: np.ndarray
    exact: np.ndarray
    exact_rational: tuple

    def __post_init__(self):
        for arr in (self.m0, self.lm, self.qm, self.exact):
            arr.setflags(write=False)


def _symmetric_int_table(scale: int, weight: TriPoly, pairs) -> np.ndarray:
    """scale * integral(weight * phi_i * phi_j) as an exact integer table."""
    table = np.zeros((10, 10), dtype=np.int64)
    for i in range(10):
        for j in range(i, 10):
            value = scale * integrate_over_reference(weight * pairs[i][j])
            if value.denominator != 1:
                raise ArithmeticError(
                    f"table entry ({i + 1},{j + 1}) is not an integer: {value}"
                )
            table[i, j] = table[j, i] = int(value)
    return table


@lru_cache(maxsize=1)
def generate_constant_tables() -> ConstantTables:
    """Generate every constant table from the exact rational oracle.

    All tables are exactly symmetric in (i, j) by construction.  Sum
    identities tie them together: the four lm tables add up to 2 * m0 and
    the ten qm tables to 18 * m0, because the barycentric weights and the
    shape functions each sum to one.
    """
    phi = shape_function_polynomials()
    pairs = [[phi[i] * phi[j] for j in range(10)] for i in range(10)]

    m0 = _symmetric_int_table(M0_SCALE, TriPoly.constant(1), pairs)
    lm = np.stack([
        _symmetric_int_table(LM_SCALE, weight, pairs)
        for weight in (LAMBDA0, XI, ETA, ZETA)
    ])
    qm = np.stack([_symmetric_int_table(QM_SCALE, phi[r], pairs) for r in range(10)])

    exact_rational = [[None] * 10 for _ in range(10)]
    exact = np.zeros((10, 10, 20))
    for i in range(10):
        for j in range(i, 10):
            row = tuple(
                sum(
                    (
                        coeff * monomial_integral(a + wa, b + wb, c + wc)
                        for (a, b, c), coeff in pairs[i][j]
                    ),
                    Fraction(0),
                )
                for wa, wb, wc in METRIC_MONOMIALS
            )
            exact_rational[i][j] = exact_rational[j][i] = row
            exact[i, j] = exact[j, i] = [float(v) for v in row]

    return ConstantTables(
        m0=m0,
        lm=lm,
        qm=qm,
        exact=exact,
        exact_rational=tuple(tuple(r) for r in exact_rational),
    )


#: Exact reference-tetrahedron integral of each metric monomial.
@lru_cache(maxsize=1)
def _monomial_volumes() -> np.ndarray:
    vols = np.array([float(monomial_integral(*m)) for m in METRIC_MONOMIALS])
    vols.setflags(write=False)
    return vols


def element_volume(nodes) -> float:
    """Element volume: exact integral of the cubic metric polynomial."""
    nodes = as_nodes(nodes)
    check_element(nodes)
    return float(metric_polynomial(nodes) @ _monomial_volumes())


def mass_exact(nodes, rho0: float = 1.0) -> np.ndarray:
    """Exact consistent mass matrix of a (possibly curved-sided) element.

    Contracts the exact coefficient tensor with the 20 cubic-metric
    coefficients; the only floating-point error is the contraction itself.
    """
    nodes = as_nodes(nodes)
    check_element(nodes)
    coeffs = metric_polynomial(nodes)
    upper = np.triu_indices(10)
    values = rho0 * (generate_constant_tables().exact[upper] @ coeffs)
    mass = np.empty((10, 10))
    mass[upper] = values
    mass.T[upper] = values  # each unique entry computed once: exact symmetry
    return mass


def mass_cm(nodes, rho0: float = 1.0) -> np.ndarray:
    """Constant-metric mass matrix: one metric evaluation at the centroid.

    Exact for straight-sided elements; for curved ones it is the cheapest
    of the closed-form approximations.
    """
    nodes = as_nodes(nodes)
    check_element(nodes)
    metric = float(_det3(centroid_jacobian(nodes)))
    tables = generate_constant_tables()
    return (rho0 * metric / M0_SCALE) * tables.m0.astype(float)


def mass_lm(nodes, rho0: float = 1.0) -> np.ndarray:
    """Linear-metric mass matrix: metric evaluations at the 4 corner nodes."""
    nodes = as_nodes(nodes)
    check_element(nodes)
    corner_metrics = _det3(nodal_jacobians(nodes)[:4])
    tables = generate_constant_tables()
    return (rho0 / LM_SCALE) * np.einsum("k,kij->ij", corner_metrics, tables.lm)


def mass_qm(nodes, rho0: float = 1.0) -> np.ndarray:
    """Quadratic-metric mass matrix: metric evaluations at all 10 nodes."""
    nodes = as_nodes(nodes)
    check_element(nodes)
    node_metrics = _det3(nodal_jacobians(nodes))
    tables = generate_constant_tables()
    return (rho0 / QM_SCALE) * np.einsum("r,rij->ij", node_metrics, tables.qm)


def compute_mass(nodes, scheme: str, rho0: float = 1.0) -> np.ndarray:
    """Dispatch on a scheme name; g1/g4/g5/g15 are the quadrature baselines."""
    key = scheme.lower()
    if key == "exact":
        return mass_exact(nodes, rho0)
    if key == "cm":
        return mass_cm(nodes, rho0)
    if key == "lm":
        return mass_lm(nodes, rho0)
    if key == "qm":
        return mass_qm(nodes, rho0)
    if key in _GAUSS_POINTS:
        rule = quadrature.standard_rule(_GAUSS_POINTS[key])
        return quadrature.mass_quadrature(nodes, rho0, rule)
    raise ValueError(f"unknown scheme {scheme!r}; choose from {SCHEME_NAMES}")
