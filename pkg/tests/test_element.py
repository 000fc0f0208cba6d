"""Tests for the 10-node tetrahedron geometry module."""

import numpy as np
import pytest

from tet10mass.element import (
    EDGE_VERTEX_PAIRS,
    METRIC_MONOMIALS,
    NODE_NATURAL_COORDS,
    InvalidElementError,
    centroid_jacobian,
    check_element,
    is_straight_sided,
    is_valid_element,
    jacobian_at,
    jacobian_decomposition,
    metric_at,
    metric_polynomial,
    metric_polynomial_value,
    nodal_jacobians,
    nodal_metrics,
    shape_function_polynomials,
    shape_functions,
    shape_gradients,
    straight_element,
)

from oracles import fit_metric_coefficients, metric_complex_step

REFERENCE = NODE_NATURAL_COORDS.copy()


def random_nodes(rng, spread=0.3):
    """Generic curved element: reference nodes plus arbitrary perturbations."""
    return REFERENCE + rng.uniform(-spread, spread, (10, 3))


def random_points_in_tet(rng, n):
    bary = rng.dirichlet(np.ones(4), size=n)
    return bary[:, 1:]


class TestShapeFunctions:
    def test_interpolation_at_nodes(self):
        for j, point in enumerate(NODE_NATURAL_COORDS):
            phi = shape_functions(*point)
            expected = np.zeros(10)
            expected[j] = 1.0
            np.testing.assert_allclose(phi, expected, atol=1e-14)

    def test_values_at_centroid(self):
        phi = shape_functions(0.25, 0.25, 0.25)
        expected = np.array([-0.125] * 4 + [0.25] * 6)
        np.testing.assert_allclose(phi, expected, atol=1e-15)
        assert abs(phi.sum() - 1.0) < 1e-14

    def test_partition_of_unity(self):
        rng = np.random.default_rng(3)
        for point in random_points_in_tet(rng, 100):
            assert abs(shape_functions(*point).sum() - 1.0) < 1e-14

    def test_exact_polynomials_match_float_evaluation(self):
        phi_poly = shape_function_polynomials()
        rng = np.random.default_rng(5)
        for point in random_points_in_tet(rng, 20):
            phi = shape_functions(*point)
            for i in range(10):
                assert float(phi_poly[i](*point)) == pytest.approx(phi[i], abs=1e-14)

    def test_exact_polynomials_sum_to_one(self):
        total = sum(shape_function_polynomials(), start=0)
        assert total == 1

    def test_exact_polynomial_vertex2(self):
        # xi(2 xi - 1) = 2 xi^2 - xi
        phi2 = shape_function_polynomials()[1]
        assert phi2.terms == {(2, 0, 0): 2, (1, 0, 0): -1}

    def test_exact_polynomial_mid_edge_node(self):
        phi5 = shape_function_polynomials()[4]
        assert phi5(0.5, 0, 0) == 1


class TestShapeGradients:
    def test_gradients_sum_to_zero(self):
        g = shape_gradients(0.13, 0.22, 0.31)
        np.testing.assert_allclose(g.sum(axis=0), 0.0, atol=1e-13)

    def test_against_finite_differences(self):
        rng = np.random.default_rng(9)
        h = 1e-6
        for point in random_points_in_tet(rng, 5):
            g = shape_gradients(*point)
            for axis in range(3):
                step = np.zeros(3)
                step[axis] = h
                fd = (shape_functions(*(point + step)) - shape_functions(*(point - step))) / (2 * h)
                np.testing.assert_allclose(g[:, axis], fd, atol=1e-8)


class TestJacobianDecomposition:
    def test_reference_element(self):
        dec = jacobian_decomposition(REFERENCE)
        np.testing.assert_allclose(dec.j0, np.eye(3), atol=1e-15)
        for mat in (dec.j1, dec.j2, dec.j3):
            np.testing.assert_allclose(mat, 0.0, atol=1e-15)

    def test_straight_sided_pencil_is_constant(self):
        rng = np.random.default_rng(17)
        corners = rng.uniform(-1, 1, (4, 3))
        nodes = straight_element(corners)
        dec = jacobian_decomposition(nodes)
        # columns of the constant part are the vertex edge vectors
        expected = np.column_stack([
            corners[1] - corners[0], corners[2] - corners[0], corners[3] - corners[0]
        ])
        np.testing.assert_allclose(dec.j0, expected, atol=1e-13)
        for mat in (dec.j1, dec.j2, dec.j3):
            np.testing.assert_allclose(mat, 0.0, atol=1e-13)

    def test_constant_part_frozen_formula(self):
        # j0 entry (m, n) patterns: -3 X_m1 - X_m2 + 4 X_m5 | -3 X_m1 - X_m3
        # + 4 X_m7 | -3 X_m1 - X_m4 + 4 X_m8 (1-based node indices).
        rng = np.random.default_rng(23)
        x = random_nodes(rng)
        dec = jacobian_decomposition(x)
        expected = np.empty((3, 3))
        for m in range(3):
            expected[m, 0] = -3 * x[0, m] - x[1, m] + 4 * x[4, m]
            expected[m, 1] = -3 * x[0, m] - x[2, m] + 4 * x[6, m]
            expected[m, 2] = -3 * x[0, m] - x[3, m] + 4 * x[7, m]
        np.testing.assert_allclose(dec.j0, expected, atol=1e-12)

    def test_reconstruction_matches_finite_differences_of_map(self):
        rng = np.random.default_rng(31)
        nodes = random_nodes(rng)
        dec = jacobian_decomposition(nodes)
        h = 1e-6
        for point in random_points_in_tet(rng, 5):
            jac = dec.evaluate(*point)
            for axis in range(3):
                step = np.zeros(3)
                step[axis] = h
                xp = shape_functions(*(point + step)) @ nodes
                xm = shape_functions(*(point - step)) @ nodes
                fd = (xp - xm) / (2 * h)
                np.testing.assert_allclose(jac[:, axis], fd, rtol=1e-8, atol=1e-8)


class TestMetric:
    def test_reference_metric_is_one_everywhere(self):
        rng = np.random.default_rng(37)
        for point in random_points_in_tet(rng, 10):
            assert metric_at(REFERENCE, point) == pytest.approx(1.0, abs=1e-15)

    def test_uniform_scaling(self):
        assert metric_at(2.0 * REFERENCE, (0.2, 0.3, 0.1)) == pytest.approx(8.0, rel=1e-14)

    def test_centroid_jacobian_frozen_formula(self):
        # centroid matrix rows (1-based nodes): [-X_m7 + X_m6 - X_m8 + X_m9,
        # X_m6 - X_m5 + X_m10 - X_m8, -X_m5 + X_m9 + X_m10 - X_m7]
        rng = np.random.default_rng(41)
        x = random_nodes(rng)
        expected = np.empty((3, 3))
        for m in range(3):
            expected[m, 0] = -x[6, m] + x[5, m] - x[7, m] + x[8, m]
            expected[m, 1] = x[5, m] - x[4, m] + x[9, m] - x[7, m]
            expected[m, 2] = -x[4, m] + x[8, m] + x[9, m] - x[6, m]
        np.testing.assert_allclose(centroid_jacobian(x), expected, atol=1e-12)

    def test_metric_at_centroid_uses_centroid_matrix(self):
        rng = np.random.default_rng(43)
        nodes = random_nodes(rng)
        det = np.linalg.det(centroid_jacobian(nodes))
        assert metric_at(nodes, (0.25, 0.25, 0.25)) == pytest.approx(det, rel=1e-12)

    def test_metric_against_complex_step_oracle(self):
        rng = np.random.default_rng(47)
        nodes = random_nodes(rng)
        points = random_points_in_tet(rng, 10)
        oracle = metric_complex_step(nodes, points)
        ours = [metric_at(nodes, p) for p in points]
        np.testing.assert_allclose(ours, oracle, rtol=1e-12)


class TestMetricPolynomial:
    def test_reference(self):
        coeffs = metric_polynomial(REFERENCE)
        expected = np.zeros(20)
        expected[0] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-15)

    def test_straight_sided_constant(self):
        rng = np.random.default_rng(53)
        nodes = straight_element(rng.uniform(-1, 1, (4, 3)))
        coeffs = metric_polynomial(nodes)
        assert coeffs[0] == pytest.approx(metric_at(nodes, (0.1, 0.2, 0.3)), rel=1e-13)
        np.testing.assert_allclose(coeffs[1:], 0.0, atol=1e-13)

    def test_single_perturbation_against_fit_oracle(self):
        nodes = REFERENCE.copy()
        nodes[4, 0] += 0.1  # node 5, x-coordinate
        rng = np.random.default_rng(59)
        points = random_points_in_tet(rng, 60)
        fitted = fit_metric_coefficients(nodes, points)
        np.testing.assert_allclose(metric_polynomial(nodes), fitted, atol=1e-10)

    def test_evaluation_matches_metric_at(self):
        rng = np.random.default_rng(61)
        nodes = random_nodes(rng)
        coeffs = metric_polynomial(nodes)
        for point in random_points_in_tet(rng, 50):
            direct = metric_at(nodes, point)
            via_poly = metric_polynomial_value(coeffs, *point)
            assert via_poly == pytest.approx(direct, rel=1e-12)

    def test_monomial_order_is_degree_then_lexicographic(self):
        degrees = [sum(m) for m in METRIC_MONOMIALS]
        assert degrees == sorted(degrees)
        assert METRIC_MONOMIALS[4] == (2, 0, 0)   # xi^2 leads the quadratics
        assert METRIC_MONOMIALS[10] == (3, 0, 0)  # xi^3 leads the cubics


class TestNodalJacobians:
    def test_reference_all_identity(self):
        mats = nodal_jacobians(REFERENCE)
        for mat in mats:
            np.testing.assert_allclose(mat, np.eye(3), atol=1e-15)

    def test_node1_equals_constant_pencil_part(self):
        rng = np.random.default_rng(67)
        nodes = random_nodes(rng)
        dec = jacobian_decomposition(nodes)
        np.testing.assert_allclose(nodal_jacobians(nodes)[0], dec.j0, atol=1e-14)

    def test_matches_pencil_at_node_coordinates(self):
        rng = np.random.default_rng(71)
        nodes = random_nodes(rng)
        mats = nodal_jacobians(nodes)
        for k, point in enumerate(NODE_NATURAL_COORDS):
            np.testing.assert_allclose(mats[k], jacobian_at(nodes, point), atol=1e-14)

    def test_nodal_metrics_match_pointwise_metric(self):
        rng = np.random.default_rng(73)
        nodes = random_nodes(rng)
        values = nodal_metrics(nodes)
        for k, point in enumerate(NODE_NATURAL_COORDS):
            assert values[k] == pytest.approx(metric_at(nodes, point), rel=1e-12)


class TestStraightSidedness:
    def test_reference_is_straight(self):
        assert is_straight_sided(REFERENCE)

    def test_perturbed_mid_node_is_not(self):
        nodes = REFERENCE.copy()
        nodes[4, 0] += 0.1
        assert not is_straight_sided(nodes, tol=1e-9)

    def test_construct_then_classify_round_trip(self):
        rng = np.random.default_rng(79)
        for _ in range(20):
            nodes = straight_element(rng.uniform(-5, 5, (4, 3)))
            assert is_straight_sided(nodes)

    def test_scale_invariance(self):
        nodes = REFERENCE.copy()
        nodes[4, 0] += 1e-6
        assert is_straight_sided(nodes, tol=1e-3) == is_straight_sided(1000 * nodes, tol=1e-3)

    def test_straight_metric_is_constant(self):
        rng = np.random.default_rng(83)
        nodes = straight_element(rng.uniform(-1, 1, (4, 3)))
        points = random_points_in_tet(rng, 20)
        values = [metric_at(nodes, p) for p in points]
        spread = (max(values) - min(values)) / abs(np.mean(values))
        assert spread < 1e-12


class TestValidity:
    def test_reference_is_valid(self):
        check_element(REFERENCE)
        assert is_valid_element(REFERENCE)

    def test_degenerate_element_is_invalid(self):
        nodes = np.ones((10, 3))
        assert not is_valid_element(nodes)
        with pytest.raises(InvalidElementError):
            check_element(nodes)

    def test_inverted_element_is_invalid(self):
        nodes = REFERENCE.copy()
        nodes[:, 0] *= -1.0
        assert not is_valid_element(nodes)

    def test_error_reports_offending_point(self):
        nodes = REFERENCE.copy()
        nodes[1] = [-1.0, 0.0, 0.0]  # pull vertex 2 through the origin
        with pytest.raises(InvalidElementError) as excinfo:
            check_element(nodes)
        assert "non-positive metric" in str(excinfo.value)
        assert excinfo.value.point is not None

    def test_mid_edge_nodes_listed_per_documented_edges(self):
        # node order contract: (1,2), (2,3), (1,3), (1,4), (2,4), (3,4)
        assert EDGE_VERTEX_PAIRS == ((0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3))
        for mid, (a, b) in zip(NODE_NATURAL_COORDS[4:], EDGE_VERTEX_PAIRS):
            np.testing.assert_allclose(
                mid, (NODE_NATURAL_COORDS[a] + NODE_NATURAL_COORDS[b]) / 2
            )
