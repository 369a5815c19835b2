"""Tensor-product Clenshaw-Curtis quadrature and kernel moment weights.

The first stochastic moment of a quantity of interest is estimated as
sum_i omega_i u(y_i), where the weights omega solve A_reg omega = b and
b_j = integral k(y, y_j) rho(y) dy is computed by a full tensor product
of univariate Clenshaw-Curtis rules.  Quadrature nodes are deliberately
independent of the collocation points.

Tensor nodes are never materialized all at once: moment accumulation
walks the first-dimension slices in a fixed sequential order (and blocks
over centers), so results are reproducible run to run and memory stays
bounded for high levels.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .collocation import GramMatrix, Regularization, _factorize
from .kernels import KernelSpec, kernel_matrix
from .param_space import CollocationSet, ParameterDomain

# Soft bound on entries per kernel-evaluation block during accumulation.
_BLOCK_ENTRIES = 16_000_000


def cc_nodes_weights(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Univariate Clenshaw-Curtis nodes and weights on [-1, 1].

    Nodes are the Chebyshev extrema cos(j pi / (n-1)) in ascending order.
    Weights follow the explicit cosine-sum formula

        w_j = (c_j / m) * (1 - sum_{k=1}^{m/2} b_k cos(2 k theta_j) / (4k^2 - 1)),

    with m = n - 1, b_k = 1 for k = m/2 and 2 otherwise, and c_j = 1 at the
    endpoints and 2 inside.  n = 2 means the endpoint rule with weights 1, 1.
    """
    if n < 2:
        raise ValueError(f"Clenshaw-Curtis rule needs at least 2 nodes, got {n}")
    if n == 2:
        return np.array([-1.0, 1.0]), np.array([1.0, 1.0])
    if n % 2 == 0:
        raise ValueError(f"node count must be 2 or odd, got {n}")
    m = n - 1
    theta = np.arange(n) * np.pi / m
    k = np.arange(1, m // 2 + 1)
    bk = np.where(k == m // 2, 1.0, 2.0)
    # sums[j] = sum_k b_k cos(2 k theta_j) / (4 k^2 - 1)
    sums = np.cos(2.0 * np.outer(theta, k)) @ (bk / (4.0 * k * k - 1.0))
    cj = np.full(n, 2.0)
    cj[0] = cj[m] = 1.0
    w = cj / m * (1.0 - sums)
    x = np.cos(theta)
    # symmetrize so the midpoint is exactly 0 and mirror nodes match bitwise
    x = (x - x[::-1]) / 2.0
    w = (w + w[::-1]) / 2.0
    return x[::-1].copy(), w[::-1].copy()


def _level_nodes(level: int) -> int:
    # 2^(l-1) + 1 would give 2 at l = 1 only with the endpoint convention.
    if level < 1:
        raise ValueError(f"quadrature level must be >= 1, got {level}")
    return 2 if level == 1 else 2 ** (level - 1) + 1


@dataclass(frozen=True)
class TensorRule:
    """Per-dimension Clenshaw-Curtis nodes and weights mapped to a box.

    Attributes
    ----------
    level : int
    nodes, weights : tuple of np.ndarray
        One array per dimension; weights sum to the interval length.
    domain : ParameterDomain
    """

    level: int
    nodes: tuple
    weights: tuple
    domain: ParameterDomain

    @property
    def points_per_dim(self) -> int:
        return self.nodes[0].size

    @property
    def npoints(self) -> int:
        return int(np.prod([x.size for x in self.nodes], dtype=np.int64))


def cc_rule(
    domain: ParameterDomain, level: int, max_points: int = 10 ** 8
) -> TensorRule:
    """Tensor Clenshaw-Curtis rule over the domain box.

    Raises an error when the tensor grid would exceed ``max_points``
    points; in that case lower the level (sparse rules are out of scope).
    """
    n = _level_nodes(level)
    total = n ** domain.dim
    if total > max_points:
        raise ValueError(
            f"tensor rule at level {level} has {n}^{domain.dim} = {total:.3g} "
            f"points, above the cap of {max_points:.3g}; lower the level or "
            "raise max_points"
        )
    x, w = cc_nodes_weights(n)
    nodes = []
    weights = []
    for d in range(domain.dim):
        lo = domain.lower[d]
        hi = domain.upper[d]
        nodes.append((lo + hi) / 2.0 + (hi - lo) / 2.0 * x)
        weights.append((hi - lo) / 2.0 * w)
    return TensorRule(
        level=level, nodes=tuple(nodes), weights=tuple(weights), domain=domain
    )


def _rest_block(rule: TensorRule) -> tuple[np.ndarray, np.ndarray]:
    """Tensor nodes and weights of dimensions 2..D (a single row for D=1)."""
    if rule.domain.dim == 1:
        return np.zeros((1, 0)), np.ones(1)
    grids = np.meshgrid(*rule.nodes[1:], indexing="ij")
    z = np.stack([g.ravel() for g in grids], axis=1)
    w = rule.weights[1]
    for d in range(2, rule.domain.dim):
        w = np.multiply.outer(w, rule.weights[d])
    return z, np.asarray(w).ravel()


def kernel_moments(
    spec: KernelSpec, points: CollocationSet, rule: TensorRule
) -> np.ndarray:
    """Kernel moment vector b_j = sum_q w_q rho(z_q) k(z_q, y_j).

    The density is the domain's uniform product density; all tensor nodes
    lie inside the closed box, so rho is constant across the sum.
    """
    pts = points.points if isinstance(points, CollocationSet) else np.asarray(points)
    if pts.shape[1] != rule.domain.dim:
        raise ValueError(
            f"points of dimension {pts.shape[1]} under a rule of dimension "
            f"{rule.domain.dim}"
        )
    rho = 1.0 / rule.domain.volume
    z_rest, w_rest = _rest_block(rule)
    rows = z_rest.shape[0]
    col_block = max(1, _BLOCK_ENTRIES // rows)
    b = np.zeros(pts.shape[0])
    for x0, w0 in zip(rule.nodes[0], rule.weights[0]):
        z = np.concatenate([np.full((rows, 1), x0), z_rest], axis=1)
        wr = (w0 * rho) * w_rest
        for s in range(0, pts.shape[0], col_block):
            block = pts[s : s + col_block]
            b[s : s + len(block)] += wr @ kernel_matrix(spec, z, block)
    return b


@dataclass(frozen=True)
class MomentWeights:
    """Collocation quadrature weights for first-moment estimation.

    omega solves A_reg omega = b, so sum_i omega_i g(y_i) integrates the
    kernel interpolant of g against the parameter density.
    """

    omega: np.ndarray
    moments: np.ndarray
    spec: KernelSpec
    points: CollocationSet
    regularization: Regularization


def moment_weights(
    gram: GramMatrix, reg: Regularization, b: np.ndarray
) -> MomentWeights:
    """Solve A_reg omega = b for the quadrature weights."""
    b = np.asarray(b, dtype=float)
    if b.shape != (gram.n,):
        raise ValueError(f"moment vector has shape {b.shape}, expected ({gram.n},)")
    omega = _factorize(gram, reg).solve_vector(b)
    return MomentWeights(
        omega=omega,
        moments=b,
        spec=gram.spec,
        points=gram.points,
        regularization=reg,
    )


def estimate_mean(weights: MomentWeights, samples: np.ndarray) -> np.ndarray:
    """First-moment estimate sum_i omega_i samples[i, :] per channel."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    if samples.shape[0] != weights.omega.size:
        raise ValueError(
            f"sample table has {samples.shape[0]} rows for "
            f"{weights.omega.size} weights"
        )
    return weights.omega @ samples
