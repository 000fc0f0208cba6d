"""Gauss-type integration rules on the reference tetrahedron.

Provides the 1, 4, 5 and 15 point rules commonly used for quadratic
tetrahedra.  Weights follow the reference-volume convention: they sum to
1/6, so the metric (Jacobian determinant) carries all the geometry.

Rule data provenance: the 1-point rule is the centroid rule; the 4 and
5 point rules are the classical Hammer-Marlowe-Stroud simplex rules; the
15-point degree-5 rule is Keast's (Comput. Methods Appl. Mech. Eng. 55,
1986).  The exactness certification tests against the rational oracle are
the source of trust for the literals below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .element import (
    InvalidElementError,
    _det3,
    _pencil_at_points,
    as_nodes,
    jacobian_decomposition,
    shape_functions,
)

SUPPORTED_POINT_COUNTS = (1, 4, 5, 15)


class UnsupportedRuleError(ValueError):
    """Requested point count has no rule in this package."""


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable point set with weights summing to the reference volume 1/6."""

    name: str
    points: np.ndarray = field(repr=False)   # (n, 3) natural coordinates
    weights: np.ndarray = field(repr=False)  # (n,)
    exact_degree: int

    def __post_init__(self):
        points = np.asarray(self.points, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if points.shape != (len(weights), 3):
            raise ValueError("points and weights length mismatch")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @property
    def n_points(self) -> int:
        return len(self.weights)


def _centroid_orbit():
    return [(0.25, 0.25, 0.25)]


def _s31_orbit(b):
    """Natural coordinates of the barycentric orbit (a, b, b, b), a = 1 - 3b."""
    a = 1.0 - 3.0 * b
    return [(b, b, b), (a, b, b), (b, a, b), (b, b, a)]


def _s22_orbit(a):
    """Natural coordinates of the barycentric orbit (a, a, b, b), b = 1/2 - a."""
    b = 0.5 - a
    return [(a, b, b), (b, a, b), (b, b, a), (a, a, b), (a, b, a), (b, a, a)]


def _build_rules() -> dict[int, QuadratureRule]:
    rules = {}

    rules[1] = QuadratureRule(
        name="centroid-1",
        points=np.array(_centroid_orbit()),
        weights=np.array([1.0 / 6.0]),
        exact_degree=1,
    )

    # Hammer-Marlowe-Stroud, degree 2: orbit of (a, b, b, b) with
    # a = (5 + 3*sqrt(5))/20, b = (5 - sqrt(5))/20, equal weights.
    b4 = (5.0 - math.sqrt(5.0)) / 20.0
    rules[4] = QuadratureRule(
        name="hammer-stroud-4",
        points=np.array(_s31_orbit(b4)),
        weights=np.full(4, 1.0 / 24.0),
        exact_degree=2,
    )

    # Hammer-Marlowe-Stroud, degree 3: negatively weighted centroid plus
    # the orbit of (1/2, 1/6, 1/6, 1/6).
    rules[5] = QuadratureRule(
        name="hammer-stroud-5",
        points=np.array(_centroid_orbit() + _s31_orbit(1.0 / 6.0)),
        weights=np.array([-2.0 / 15.0] + [3.0 / 40.0] * 4),
        exact_degree=3,
    )

    # Keast, degree 5, 15 points: centroid, face centroids (a = 0 orbit),
    # the (8/11, 1/11, 1/11, 1/11) orbit, and the (a, a, b, b) orbit with
    # a = 1/4 - sqrt(91)/52.  Exact weight fractions cross-checked by
    # solving the moment equations.
    a22 = 0.25 - math.sqrt(91.0) / 52.0
    rules[15] = QuadratureRule(
        name="keast-15",
        points=np.array(
            _centroid_orbit()
            + _s31_orbit(1.0 / 3.0)
            + _s31_orbit(1.0 / 11.0)
            + _s22_orbit(a22)
        ),
        weights=np.array(
            [6544.0 / 216090.0]
            + [81.0 / 13440.0] * 4
            + [161051.0 / 13829760.0] * 4
            + [338.0 / 30870.0] * 6
        ),
        exact_degree=5,
    )
    return rules


_RULES = _build_rules()


def standard_rule(n_points: int) -> QuadratureRule:
    """Return the standard rule with the requested point count (1, 4, 5 or 15)."""
    try:
        return _RULES[n_points]
    except KeyError:
        raise UnsupportedRuleError(
            f"no {n_points}-point rule; supported point counts: {SUPPORTED_POINT_COUNTS}"
        ) from None


def integrate_numeric(f: Callable[[float, float, float], float], rule: QuadratureRule) -> float:
    """Weighted sum of f over the rule's points.

    The metric factor is not applied here; integrands that need it must
    include it themselves.
    """
    return float(sum(w * f(*p) for p, w in zip(rule.points, rule.weights)))


def mass_quadrature(nodes, rho0: float, rule: QuadratureRule) -> np.ndarray:
    """Numerically integrated consistent mass matrix.

    Accumulates rho0 * w_p * J_p * phi_p phi_p^T over the rule points.  The
    result is symmetric by construction; its accuracy is limited by the
    rule's exactness degree (the integrand has degree 4 plus the metric's).
    """
    nodes = as_nodes(nodes)
    dec = jacobian_decomposition(nodes)
    metrics = _det3(_pencil_at_points(dec, rule.points))
    if not np.all(metrics > 0.0):
        k = int(np.argmin(metrics))
        point = tuple(float(x) for x in rule.points[k])
        raise InvalidElementError(
            f"non-positive metric {metrics[k]:.6g} at integration point "
            f"({point[0]:.6g}, {point[1]:.6g}, {point[2]:.6g}) of rule {rule.name}",
            point=point,
        )
    mass = np.zeros((10, 10))
    for point, weight, metric in zip(rule.points, rule.weights, metrics):
        phi = shape_functions(*point)
        mass += (weight * metric) * np.outer(phi, phi)
    return rho0 * mass
