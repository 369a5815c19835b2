"""Gram systems, regularized solves, and kernel interpolants.

The interpolation matrix A[i,j] = k(y_i, y_j) is dense and symmetric.
Solves go through a direct LU factorization, optionally after Tikhonov
shifting (A + eps_reg I), or through a truncated SVD that discards
singular values below a relative drop tolerance.  Multi-channel data is
solved channel by channel against one shared factorization, which makes
the result for each channel independent of how many other channels are
solved alongside it, down to the last bit.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .kernels import KernelSpec, kernel_matrix
from .param_space import CollocationSet


class SingularGramError(RuntimeError):
    """Raised when an unregularized Gram system is numerically singular."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class Tikhonov:
    """Shift regularization: solve (A + eps_reg I) alpha = f."""

    eps_reg: float

    def __post_init__(self):
        if not self.eps_reg > 0:
            raise ValueError(f"eps_reg must be positive, got {self.eps_reg}")


@dataclass(frozen=True)
class TSVD:
    """Truncated-SVD regularization.

    Singular values below drop_tol * sigma_max are discarded; the solve
    applies the pseudoinverse of what remains.  The tolerance is relative,
    so the rule is invariant under rescaling of the kernel.
    """

    drop_tol: float

    def __post_init__(self):
        if not self.drop_tol > 0:
            raise ValueError(f"drop_tol must be positive, got {self.drop_tol}")


# A regularization is None (plain solve), Tikhonov, or TSVD.
Regularization = Tikhonov | TSVD | None


@dataclass(frozen=True)
class GramMatrix:
    """Dense symmetric kernel matrix over a collocation set.

    Symmetry is enforced by construction: the strict upper triangle is
    computed once and mirrored, and the diagonal is set to the kernel's
    value at zero distance.
    """

    values: np.ndarray
    spec: KernelSpec
    points: CollocationSet

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class ConditionReport:
    sigma_min: float
    sigma_max: float
    condition: float


@dataclass(frozen=True)
class Interpolant:
    """Kernel interpolant s(y) = sum_i coefficients[i, :] k(y, y_i).

    coefficients has shape (N, M) for M output channels.
    """

    coefficients: np.ndarray
    points: CollocationSet
    spec: KernelSpec
    regularization: Regularization

    @property
    def channels(self) -> int:
        return self.coefficients.shape[1]

    def eval(self, y) -> np.ndarray:
        """Interpolant value at one point, as an M-vector."""
        return self.eval_many(np.atleast_2d(np.asarray(y, dtype=float)))[0]

    def eval_many(self, queries: np.ndarray) -> np.ndarray:
        """Interpolant values at Q query points, shape (Q, M)."""
        queries = np.asarray(queries, dtype=float)
        if queries.ndim == 1:
            queries = queries[:, None]
        k = kernel_matrix(self.spec, queries, self.points.points)
        return k @ self.coefficients


def assemble_gram(spec: KernelSpec, points: CollocationSet) -> GramMatrix:
    """Assemble the kernel interpolation matrix for a collocation set.

    Duplicate points produce a warning only; the downstream solve may then
    be singular unless regularization is applied.
    """
    pts = points.points
    if pts.shape[1] != spec.dim:
        raise ValueError(
            f"kernel dimension {spec.dim} does not match point dimension {pts.shape[1]}"
        )
    if len(np.unique(pts, axis=0)) < pts.shape[0]:
        warnings.warn(
            "collocation set contains duplicate points; the unregularized "
            "Gram system is singular",
            stacklevel=2,
        )
    full = kernel_matrix(spec, pts, pts)
    upper = np.triu(full, 1)
    values = upper + upper.T
    np.fill_diagonal(values, float(spec.profile(0.0)))
    return GramMatrix(values=values, spec=spec, points=points)


class _LUFactor:
    """Shared LU factorization with single-vector solves."""

    def __init__(self, matrix: np.ndarray, context: str):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", LinAlgWarning)
            self._lu = lu_factor(matrix)
        if any(issubclass(w.category, LinAlgWarning) for w in caught):
            sv = np.linalg.svd(matrix, compute_uv=False, hermitian=True)
            cond = np.inf if sv[-1] == 0 else float(sv[0] / sv[-1])
            raise SingularGramError(
                f"{context}: Gram matrix is numerically singular "
                f"(condition {cond:.3e}); add regularization or remove "
                "duplicate points",
                condition=cond,
            )

    def solve_vector(self, rhs: np.ndarray) -> np.ndarray:
        return lu_solve(self._lu, rhs)


class _TSVDFactor:
    """Truncated pseudoinverse from one SVD, shared across solves."""

    def __init__(self, matrix: np.ndarray, drop_tol: float):
        u, s, vt = np.linalg.svd(matrix, hermitian=True)
        keep = s >= drop_tol * s[0]
        self._ut = u[:, keep].T.copy()
        self._v = vt[keep].T.copy()
        self._inv_s = 1.0 / s[keep]

    def solve_vector(self, rhs: np.ndarray) -> np.ndarray:
        return self._v @ (self._inv_s * (self._ut @ rhs))


def _factorize(gram: GramMatrix, reg: Regularization):
    """One factorization per (Gram, regularization); shared by all channels."""
    if reg is None:
        return _LUFactor(gram.values, context="unregularized solve")
    if isinstance(reg, Tikhonov):
        shifted = gram.values + reg.eps_reg * np.eye(gram.n)
        return _LUFactor(shifted, context=f"Tikhonov(eps_reg={reg.eps_reg:g})")
    if isinstance(reg, TSVD):
        return _TSVDFactor(gram.values, reg.drop_tol)
    raise TypeError(f"unknown regularization {reg!r}")


def solve(gram: GramMatrix, data: np.ndarray, reg: Regularization = None) -> Interpolant:
    """Solve the (regularized) Gram system for interpolation coefficients.

    Parameters
    ----------
    gram : GramMatrix
    data : array of shape (N,) or (N, M)
        Sample values per collocation point; M channels are solved one
        column at a time against the shared factorization.
    reg : None, Tikhonov, or TSVD

    Returns
    -------
    Interpolant

    Raises
    ------
    SingularGramError
        If reg is None and the system is numerically singular.
    """
    data = np.asarray(data, dtype=float)
    if data.ndim == 1:
        data = data[:, None]
    if data.shape[0] != gram.n:
        raise ValueError(
            f"data has {data.shape[0]} rows for {gram.n} collocation points"
        )
    factor = _factorize(gram, reg)
    coeffs = np.empty_like(data)
    # Column-wise solves keep each channel bit-identical to a standalone solve.
    for j in range(data.shape[1]):
        coeffs[:, j] = factor.solve_vector(data[:, j])
    return Interpolant(
        coefficients=coeffs, points=gram.points, spec=gram.spec, regularization=reg
    )


def lagrange_values(gram: GramMatrix, reg: Regularization, z) -> np.ndarray:
    """Values of the N Lagrange basis functions at a point z.

    Returns A_reg^{-1} (k(z, y_1), ..., k(z, y_N)); with z equal to a
    collocation point and no regularization this is a unit vector up to
    conditioning.
    """
    z = np.atleast_2d(np.asarray(z, dtype=float))
    rhs = kernel_matrix(gram.spec, gram.points.points, z)[:, 0]
    return _factorize(gram, reg).solve_vector(rhs)


def condition_report(gram: GramMatrix) -> ConditionReport:
    """Singular-value extremes of the Gram matrix (diagnostic only)."""
    sv = np.linalg.svd(gram.values, compute_uv=False, hermitian=True)
    smax = float(sv[0])
    smin = float(sv[-1])
    with np.errstate(divide="ignore"):
        cond = np.inf if smin == 0.0 else smax / smin
    return ConditionReport(sigma_min=smin, sigma_max=smax, condition=float(cond))
