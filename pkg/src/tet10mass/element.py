"""Geometry of the 10-node isoparametric tetrahedral element.

Node ordering (1-based in the docs, 0-based in arrays): vertices first,
then mid-edge nodes::

    node  1-4   vertices
    node  5     edge (1,2)      node  8     edge (1,4)
    node  6     edge (2,3)      node  9     edge (2,4)
    node  7     edge (1,3)      node 10     edge (3,4)

In natural coordinates the vertices sit at (0,0,0), (1,0,0), (0,1,0),
(0,0,1) and each mid-edge node at the midpoint of its edge.  An element is
a (10, 3) array of Cartesian node coordinates in this ordering.

The Jacobian of the isoparametric map is linear in (xi, eta, zeta), so the
metric (its determinant) is a cubic polynomial with 20 coefficients.  The
coefficient ordering used throughout the package is the canonical
degree-then-lexicographic one of :data:`METRIC_MONOMIALS`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .exactpoly import LAMBDA0, XI, ETA, ZETA, TriPoly


class InvalidElementError(ValueError):
    """Element whose metric is not positive at a required sample point."""

    def __init__(self, message: str, point: tuple[float, float, float] | None = None):
        super().__init__(message)
        self.point = point


#: Natural coordinates of the 10 nodes (vertices then mid-edge nodes).
NODE_NATURAL_COORDS = np.array([
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
    [0.5, 0.0, 0.0],   # edge (1,2)
    [0.5, 0.5, 0.0],   # edge (2,3)
    [0.0, 0.5, 0.0],   # edge (1,3)
    [0.0, 0.0, 0.5],   # edge (1,4)
    [0.5, 0.0, 0.5],   # edge (2,4)
    [0.0, 0.5, 0.5],   # edge (3,4)
])
NODE_NATURAL_COORDS.setflags(write=False)

#: Vertex index pairs (0-based) for the six mid-edge nodes 5..10.
EDGE_VERTEX_PAIRS = ((0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3))

CENTROID = (0.25, 0.25, 0.25)

#: Exponent triples of the cubic metric polynomial, degree by degree:
#: 1; xi, eta, zeta; xi^2, xi*eta, eta^2, xi*zeta, eta*zeta, zeta^2;
#: xi^3, xi^2*eta, xi*eta^2, eta^3, xi^2*zeta, xi*eta*zeta, eta^2*zeta,
#: xi*zeta^2, eta*zeta^2, zeta^3.
METRIC_MONOMIALS = (
    (0, 0, 0),
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2),
    (3, 0, 0), (2, 1, 0), (1, 2, 0), (0, 3, 0), (2, 0, 1),
    (1, 1, 1), (0, 2, 1), (1, 0, 2), (0, 1, 2), (0, 0, 3),
)
METRIC_MONOMIAL_INDEX = {expo: w for w, expo in enumerate(METRIC_MONOMIALS)}

# Coefficients (constant, xi, eta, zeta) of each shape-function gradient
# component; row i, column n holds d(phi_i)/d(coord_n).
_GRAD_COEFFS = np.array([
    [[-3, 4, 4, 4], [-3, 4, 4, 4], [-3, 4, 4, 4]],
    [[-1, 4, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 0, 0, 0], [-1, 0, 4, 0], [0, 0, 0, 0]],
    [[0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 4]],
    [[4, -8, -4, -4], [0, -4, 0, 0], [0, -4, 0, 0]],
    [[0, 0, 4, 0], [0, 4, 0, 0], [0, 0, 0, 0]],
    [[0, 0, -4, 0], [4, -4, -8, -4], [0, 0, -4, 0]],
    [[0, 0, 0, -4], [0, 0, 0, -4], [4, -4, -4, -8]],
    [[0, 0, 0, 4], [0, 0, 0, 0], [0, 4, 0, 0]],
    [[0, 0, 0, 0], [0, 0, 0, 4], [0, 0, 4, 0]],
], dtype=float)
_GRAD_COEFFS.setflags(write=False)


def shape_functions(xi: float, eta: float, zeta: float) -> np.ndarray:
    """The 10 quadratic shape functions at a natural-coordinate point.

    The values form a partition of unity and interpolate nodal data: the
    i-th function is 1 at node i and 0 at every other node.
    """
    u = 1.0 - xi - eta - zeta
    return np.array([
        u * (2.0 * u - 1.0),
        xi * (2.0 * xi - 1.0),
        eta * (2.0 * eta - 1.0),
        zeta * (2.0 * zeta - 1.0),
        4.0 * xi * u,
        4.0 * xi * eta,
        4.0 * eta * u,
        4.0 * zeta * u,
        4.0 * xi * zeta,
        4.0 * eta * zeta,
    ])


def shape_gradients(xi: float, eta: float, zeta: float) -> np.ndarray:
    """(10, 3) array of shape-function derivatives w.r.t. (xi, eta, zeta)."""
    basis = np.array([1.0, xi, eta, zeta])
    return _GRAD_COEFFS @ basis


@lru_cache(maxsize=1)
def shape_function_polynomials() -> tuple[TriPoly, ...]:
    """The shape functions as exact rational polynomials.

    Built from the barycentric coordinates L = (1-xi-eta-zeta, xi, eta, zeta):
    vertex i carries L_i (2 L_i - 1), mid-edge node (a, b) carries 4 L_a L_b.
    """
    lam = (LAMBDA0, XI, ETA, ZETA)
    vertex = [l * (2 * l - 1) for l in lam]
    mid = [4 * lam[a] * lam[b] for a, b in EDGE_VERTEX_PAIRS]
    return tuple(vertex + mid)


class JacobianDecomposition(NamedTuple):
    """Linear pencil J(xi, eta, zeta) = j0 + xi j1 + eta j2 + zeta j3."""

    j0: np.ndarray
    j1: np.ndarray
    j2: np.ndarray
    j3: np.ndarray

    def evaluate(self, xi: float, eta: float, zeta: float) -> np.ndarray:
        return self.j0 + xi * self.j1 + eta * self.j2 + zeta * self.j3


def as_nodes(coords) -> np.ndarray:
    """Validate and return element coordinates as a (10, 3) float array."""
    nodes = np.asarray(coords, dtype=float)
    if nodes.shape != (10, 3):
        raise ValueError(f"element must have shape (10, 3), got {nodes.shape}")
    return nodes


def jacobian_decomposition(nodes) -> JacobianDecomposition:
    """Split the Jacobian of the isoparametric map into its linear pencil.

    Entry (m, n) of each matrix multiplies the corresponding basis monomial
    in d(X_m)/d(coord_n); for a straight-sided element j1 = j2 = j3 = 0.
    """
    nodes = as_nodes(nodes)
    pencil = np.einsum("im,ink->kmn", nodes, _GRAD_COEFFS)
    return JacobianDecomposition(*pencil)


def _det3(j):
    """Determinant of a 3x3 matrix (or a batch with leading axes)."""
    return (
        j[..., 0, 0] * j[..., 1, 1] * j[..., 2, 2]
        - j[..., 0, 0] * j[..., 1, 2] * j[..., 2, 1]
        - j[..., 2, 0] * j[..., 1, 1] * j[..., 0, 2]
        - j[..., 1, 0] * j[..., 0, 1] * j[..., 2, 2]
        + j[..., 1, 0] * j[..., 2, 1] * j[..., 0, 2]
        + j[..., 2, 0] * j[..., 0, 1] * j[..., 1, 2]
    )


def _pencil_at_points(dec: JacobianDecomposition, points: np.ndarray) -> np.ndarray:
    """Evaluate the Jacobian pencil at a (k, 3) batch of points -> (k, 3, 3)."""
    p = np.asarray(points, dtype=float)
    return (
        dec.j0
        + p[:, 0, None, None] * dec.j1
        + p[:, 1, None, None] * dec.j2
        + p[:, 2, None, None] * dec.j3
    )


def jacobian_at(nodes, point: Sequence[float]) -> np.ndarray:
    """Jacobian matrix of the isoparametric map at one natural point."""
    dec = jacobian_decomposition(nodes)
    return dec.evaluate(*point)


def metric_at(nodes, point: Sequence[float]) -> float:
    """Metric (Jacobian determinant) at one natural point."""
    return float(_det3(jacobian_at(nodes, point)))


def metric_values(nodes, points) -> np.ndarray:
    """Metric at a (k, 3) batch of natural points."""
    dec = jacobian_decomposition(nodes)
    return _det3(_pencil_at_points(dec, np.atleast_2d(points)))


def centroid_jacobian(nodes) -> np.ndarray:
    """Jacobian matrix at the element centroid (1/4, 1/4, 1/4)."""
    return jacobian_at(nodes, CENTROID)


def nodal_jacobians(nodes) -> np.ndarray:
    """(10, 3, 3) Jacobian matrices at the nodes' natural coordinates.

    The first entry (node 1, the origin of the natural frame) equals the
    constant matrix of the pencil.
    """
    dec = jacobian_decomposition(nodes)
    return _pencil_at_points(dec, NODE_NATURAL_COORDS)


def nodal_metrics(nodes) -> np.ndarray:
    """Metric at each of the 10 nodes."""
    return _det3(nodal_jacobians(nodes))


def metric_polynomial(nodes) -> np.ndarray:
    """The 20 coefficients of the cubic metric polynomial.

    Expands det(j0 + xi j1 + eta j2 + zeta j3) symbolically and collects
    monomial coefficients in the :data:`METRIC_MONOMIALS` order.  For a
    straight-sided element only the constant coefficient is non-zero.
    """
    dec = jacobian_decomposition(nodes)
    expos = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    entry = [
        [
            {expos[k]: dec[k][m, n] for k in range(4) if dec[k][m, n] != 0.0}
            for n in range(3)
        ]
        for m in range(3)
    ]

    def mul(p, q):
        out = {}
        for (a1, b1, c1), x in p.items():
            for (a2, b2, c2), y in q.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                out[key] = out.get(key, 0.0) + x * y
        return out

    def add(acc, p, sign):
        for key, val in p.items():
            acc[key] = acc.get(key, 0.0) + sign * val

    det: dict[tuple[int, int, int], float] = {}
    add(det, mul(mul(entry[0][0], entry[1][1]), entry[2][2]), 1.0)
    add(det, mul(mul(entry[0][0], entry[1][2]), entry[2][1]), -1.0)
    add(det, mul(mul(entry[2][0], entry[1][1]), entry[0][2]), -1.0)
    add(det, mul(mul(entry[1][0], entry[0][1]), entry[2][2]), -1.0)
    add(det, mul(mul(entry[1][0], entry[2][1]), entry[0][2]), 1.0)
    add(det, mul(mul(entry[2][0], entry[0][1]), entry[1][2]), 1.0)

    coeffs = np.zeros(len(METRIC_MONOMIALS))
    for expo, val in det.items():
        coeffs[METRIC_MONOMIAL_INDEX[expo]] = val
    return coeffs


def metric_polynomial_value(coeffs, xi: float, eta: float, zeta: float) -> float:
    """Evaluate a 20-coefficient metric polynomial at one point."""
    total = 0.0
    for (a, b, c), coeff in zip(METRIC_MONOMIALS, coeffs):
        total += coeff * xi**a * eta**b * zeta**c
    return total


def straight_element(corners) -> np.ndarray:
    """Build a straight-sided element from its 4 vertices.

    Mid-edge nodes are placed exactly at the edge midpoints, which makes the
    Jacobian constant.
    """
    corners = np.asarray(corners, dtype=float)
    if corners.shape != (4, 3):
        raise ValueError(f"expected 4 corner nodes, got shape {corners.shape}")
    mids = [(corners[a] + corners[b]) / 2.0 for a, b in EDGE_VERTEX_PAIRS]
    return np.vstack([corners, mids])


def element_diameter(nodes) -> float:
    """Largest inter-vertex distance (over the 4 corner nodes)."""
    corners = as_nodes(nodes)[:4]
    diffs = corners[:, None, :] - corners[None, :, :]
    return float(np.sqrt((diffs**2).sum(axis=-1)).max())


def is_straight_sided(nodes, tol: float = 1e-9) -> bool:
    """True if every mid-edge node sits at its edge midpoint.

    The deviation is measured relative to the element diameter so the
    classification is scale-invariant.  Degenerate elements (zero diameter)
    are never classified as straight-sided.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    nodes = as_nodes(nodes)
    diameter = element_diameter(nodes)
    if diameter == 0.0:
        return False
    deviation = 0.0
    for mid, (a, b) in zip(nodes[4:], EDGE_VERTEX_PAIRS):
        midpoint = (nodes[a] + nodes[b]) / 2.0
        deviation = max(deviation, float(np.linalg.norm(mid - midpoint)))
    return deviation < tol * diameter


@lru_cache(maxsize=1)
def validity_sample_points() -> np.ndarray:
    """Sample set for metric-positivity checks.

    Centroid, the 10 nodal points, and the 15-point quadrature rule's
    points: 26 points in total.  Positivity on this set is the element
    validity criterion used by every mass scheme; it is a sampling check,
    not a global positivity certificate.
    """
    from .quadrature import standard_rule  # deferred; quadrature imports this module

    points = np.vstack([
        np.array([CENTROID]),
        NODE_NATURAL_COORDS,
        standard_rule(15).points,
    ])
    points.setflags(write=False)
    return points


def check_element(nodes) -> None:
    """Raise :class:`InvalidElementError` if the metric is not positive on the sample set."""
    values = metric_values(nodes, validity_sample_points())
    if np.all(values > 0.0):
        return
    k = int(np.argmin(values))
    point = tuple(float(x) for x in validity_sample_points()[k])
    raise InvalidElementError(
        f"non-positive metric {values[k]:.6g} at natural point "
        f"({point[0]:.6g}, {point[1]:.6g}, {point[2]:.6g})",
        point=point,
    )


def is_valid_element(nodes) -> bool:
    """True if the metric is positive on the validity sample set."""
    return bool(np.all(metric_values(nodes, validity_sample_points()) > 0.0))
