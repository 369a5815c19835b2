"""Uniform-grid fields used as vector-valued quantities of interest."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Uniform tensor grid: per-axis extents and point counts.

    Grid points double as cell centers for averaging purposes; axis d
    carries ``counts[d]`` equispaced points spanning ``extents[d]``.
    """

    extents: tuple
    counts: tuple

    def __post_init__(self):
        extents = tuple((float(lo), float(hi)) for lo, hi in self.extents)
        counts = tuple(int(c) for c in self.counts)
        if len(extents) != len(counts) or not counts:
            raise ValueError("extents and counts must align, one pair per axis")
        for d, ((lo, hi), c) in enumerate(zip(extents, counts)):
            if c < 1:
                raise ValueError(f"axis {d} has count {c}")
            if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
                raise ValueError(f"axis {d} has bad extent ({lo}, {hi})")
        object.__setattr__(self, "extents", extents)
        object.__setattr__(self, "counts", counts)

    @property
    def dim(self) -> int:
        return len(self.counts)

    @property
    def npoints(self) -> int:
        return int(np.prod(self.counts, dtype=np.int64))

    def axes(self) -> tuple:
        return tuple(
            np.linspace(lo, hi, c) for (lo, hi), c in zip(self.extents, self.counts)
        )

    def points(self) -> np.ndarray:
        """All grid points, row-major over the axes, shape (M, dim)."""
        grids = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1)

    @classmethod
    def single(cls) -> "GridSpec":
        """One-point grid for scalar quantities of interest."""
        return cls(extents=((0.0, 0.0),), counts=(1,))

    @classmethod
    def index_line(cls, m: int) -> "GridSpec":
        """1-D grid over component indices 0..m-1, for raw output vectors."""
        return cls(extents=((0.0, float(max(m - 1, 0))),), counts=(m,))


@dataclass(frozen=True)
class GridField:
    """Flat value array over a GridSpec, length M = product of counts."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        if values.size != self.grid.npoints:
            raise ValueError(
                f"{values.size} values on a grid of {self.grid.npoints} points"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("grid field contains non-finite values")
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return self.values.size

    def reshaped(self) -> np.ndarray:
        return self.values.reshape(self.grid.counts)

    @classmethod
    def scalar(cls, value: float) -> "GridField":
        return cls(grid=GridSpec.single(), values=np.array([float(value)]))


def center_of_mass(indicator: GridField) -> np.ndarray:
    """Average position of the cells where the indicator is positive.

    Cells are equal-volume on a uniform grid, so the volume-weighted
    center reduces to the plain mean of the positive cells' coordinates.
    """
    mask = indicator.values > 0.0
    if not mask.any():
        raise ValueError("indicator has no positive cells")
    return indicator.grid.points()[mask].mean(axis=0)
