import math

import numpy as np
import pytest

from rbfuq import (
    CollocationSet,
    KernelSpec,
    ParameterDomain,
    Tikhonov,
    assemble_gram,
    cc_nodes_weights,
    cc_rule,
    estimate_mean,
    halton_points,
    kernel_matrix,
    kernel_moments,
    moment_weights,
)


class TestUnivariateRule:
    def test_two_node_endpoint_rule(self):
        x, w = cc_nodes_weights(2)
        assert np.array_equal(x, [-1.0, 1.0])
        assert np.array_equal(w, [1.0, 1.0])

    def test_three_node_weights(self):
        x, w = cc_nodes_weights(3)
        assert np.array_equal(x, [-1.0, 0.0, 1.0])
        assert np.max(np.abs(w - np.array([1.0, 4.0, 1.0]) / 3.0)) < 1e-14

    @pytest.mark.parametrize("n", [2, 3, 5, 9, 65, 257])
    def test_weights_sum_to_interval_length(self, n):
        _, w = cc_nodes_weights(n)
        assert abs(w.sum() - 2.0) < 1e-13

    @pytest.mark.parametrize("n", [3, 5, 9, 65])
    def test_nodes_symmetric_ascending(self, n):
        x, w = cc_nodes_weights(n)
        assert np.all(np.diff(x) > 0)
        assert np.array_equal(x, -x[::-1])
        assert np.array_equal(w, w[::-1])
        assert x[n // 2] == 0.0

    def test_polynomial_exactness(self):
        x, w = cc_nodes_weights(5)
        assert abs(w @ x ** 2 - 2.0 / 3.0) < 1e-14
        assert abs(w @ x ** 4 - 2.0 / 5.0) < 1e-14
        assert abs(w @ x ** 3) < 1e-15

    def test_smooth_integrand_converges(self):
        x, w = cc_nodes_weights(65)
        exact = math.exp(1.0) - math.exp(-1.0)
        assert abs(w @ np.exp(x) - exact) < 1e-14

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            cc_nodes_weights(1)
        with pytest.raises(ValueError):
            cc_nodes_weights(4)


class TestTensorRule:
    def test_level_one_gives_endpoints(self):
        rule = cc_rule(ParameterDomain.unit(1), 1)
        assert rule.points_per_dim == 2
        assert np.array_equal(rule.nodes[0], [0.0, 1.0])
        assert np.array_equal(rule.weights[0], [0.5, 0.5])

    @pytest.mark.parametrize("level,n", [(1, 2), (2, 3), (3, 5), (7, 65)])
    def test_level_node_counts(self, level, n):
        rule = cc_rule(ParameterDomain.unit(1), level)
        assert rule.points_per_dim == n

    def test_mapping_to_box(self):
        dom = ParameterDomain.from_bounds([(2.0, 6.0)])
        rule = cc_rule(dom, 2)
        assert np.array_equal(rule.nodes[0], [2.0, 4.0, 6.0])
        assert abs(rule.weights[0].sum() - 4.0) < 1e-13

    def test_npoints(self):
        rule = cc_rule(ParameterDomain.unit(3), 3)
        assert rule.npoints == 125

    def test_point_cap_enforced(self):
        with pytest.raises(ValueError, match="level"):
            cc_rule(ParameterDomain.unit(3), 12)

    def test_point_cap_configurable(self):
        rule = cc_rule(ParameterDomain.unit(2), 7, max_points=10 ** 4)
        assert rule.npoints == 4225
        with pytest.raises(ValueError):
            cc_rule(ParameterDomain.unit(2), 7, max_points=4224)

    def test_rejects_level_zero(self):
        with pytest.raises(ValueError):
            cc_rule(ParameterDomain.unit(1), 0)


class TestKernelMoments:
    def test_matches_brute_force_tensor_sum(self):
        dom = ParameterDomain.from_bounds([(0.0, 1.0), (-1.0, 2.0)])
        rule = cc_rule(dom, 3)
        spec = KernelSpec(family="wendland1", dim=2)
        centers = halton_points(dom, 7)
        b = kernel_moments(spec, centers, rule)

        xx, yy = np.meshgrid(rule.nodes[0], rule.nodes[1], indexing="ij")
        nodes = np.stack([xx.ravel(), yy.ravel()], axis=1)
        wts = np.multiply.outer(rule.weights[0], rule.weights[1]).ravel()
        k = kernel_matrix(spec, nodes, centers.points)
        brute = (wts / dom.volume) @ k
        assert np.max(np.abs(b - brute)) < 1e-15

    def test_gaussian_moment_against_erf(self):
        # b_j = int_0^1 e^(-(y - c)^2) dy = sqrt(pi)/2 (erf(1-c) + erf(c))
        dom = ParameterDomain.unit(1)
        rule = cc_rule(dom, 9)
        spec = KernelSpec(family="gaussian", dim=1)
        centers = CollocationSet(np.array([[0.0], [0.3], [1.0]]), source="manual")
        b = kernel_moments(spec, centers, rule)
        for j, c in enumerate((0.0, 0.3, 1.0)):
            exact = math.sqrt(math.pi) / 2.0 * (math.erf(1.0 - c) + math.erf(c))
            assert abs(b[j] - exact) < 1e-14
        assert abs(b[0] - 0.7468241328124269) < 1e-15

    def test_density_normalization(self):
        # doubling the box halves the density; moments of the constant
        # profile at zero distance integrate rho to exactly 1
        dom = ParameterDomain.from_bounds([(0.0, 2.0)])
        rule = cc_rule(dom, 5)
        assert abs(rule.weights[0].sum() / dom.volume - 1.0) < 1e-14

    def test_deterministic(self):
        dom = ParameterDomain.unit(3)
        rule = cc_rule(dom, 4)
        spec = KernelSpec(family="matern32", dim=3)
        centers = halton_points(dom, 20)
        b1 = kernel_moments(spec, centers, rule)
        b2 = kernel_moments(spec, centers, rule)
        assert np.array_equal(b1, b2)

    def test_dimension_check(self):
        rule = cc_rule(ParameterDomain.unit(2), 3)
        centers = halton_points(ParameterDomain.unit(3), 5)
        with pytest.raises(ValueError):
            kernel_moments(KernelSpec(family="gaussian", dim=3), centers, rule)


class TestMomentWeights:
    def test_single_point_closed_form(self):
        # N=1: (1 + eps) omega = b
        dom = ParameterDomain.unit(1)
        points = halton_points(dom, 1)
        spec = KernelSpec(family="gaussian", dim=1)
        gram = assemble_gram(spec, points)
        rule = cc_rule(dom, 7)
        b = kernel_moments(spec, points, rule)
        eps = 1e-12
        weights = moment_weights(gram, Tikhonov(eps), b)
        assert abs(weights.omega[0] - b[0] / (1.0 + eps)) < 1e-16

    def test_constant_data_integrates_close_to_constant(self):
        dom = ParameterDomain.unit(1)
        points = halton_points(dom, 64)
        spec = KernelSpec(family="wendland3", dim=1)
        gram = assemble_gram(spec, points)
        b = kernel_moments(spec, points, cc_rule(dom, 7))
        weights = moment_weights(gram, Tikhonov(1e-12), b)
        est = estimate_mean(weights, np.full(64, 5.0))
        assert abs(est[0] - 5.0) < 1e-5

    def test_rhs_length_checked(self):
        dom = ParameterDomain.unit(1)
        points = halton_points(dom, 4)
        spec = KernelSpec(family="gaussian", dim=1)
        gram = assemble_gram(spec, points)
        with pytest.raises(ValueError):
            moment_weights(gram, None, np.ones(5))

    def test_estimate_mean_shapes(self):
        dom = ParameterDomain.unit(1)
        points = halton_points(dom, 4)
        spec = KernelSpec(family="gaussian", dim=1)
        gram = assemble_gram(spec, points)
        b = kernel_moments(spec, points, cc_rule(dom, 5))
        weights = moment_weights(gram, Tikhonov(1e-12), b)
        flat = estimate_mean(weights, np.ones(4))
        assert flat.shape == (1,)
        table = estimate_mean(weights, np.ones((4, 3)))
        assert table.shape == (3,)
        with pytest.raises(ValueError):
            estimate_mean(weights, np.ones((5, 2)))
