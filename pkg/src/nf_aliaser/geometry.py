"""Regular antenna lattices, scenes, and rectangular evaluation grids.

Arrays are exact lattices: element n = origin + sum_j n_j * spacing_j * axis_j,
with orthonormal lattice axes. All values are immutable after construction and
safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, GridError

ORTHO_TOL = 1e-12
ROLE_TAGS = ("transmit", "receive")


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class WaveParams:
    """Narrowband wave; every length in the package shares its unit."""

    wavelength: float

    def __post_init__(self):
        w = float(self.wavelength)
        if not np.isfinite(w) or w <= 0.0:
            raise GeometryError(f"wavelength must be positive and finite, got {self.wavelength}")
        object.__setattr__(self, "wavelength", w)

    @property
    def wavenumber(self) -> float:
        """2*pi / wavelength in rad per length unit (derived, never stored)."""
        return 2.0 * np.pi / self.wavelength


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform 1D/2D/3D antenna lattice.

    Parameters
    ----------
    origin : (d,) array_like
        Position of lattice index (0, ..., 0).
    axes : (n_axes, d) array_like
        Orthonormal lattice directions, 1 <= n_axes <= 3.
    counts : tuple of int
        Elements per lattice axis (each >= 1).
    spacings : (n_axes,) array_like
        Inter-element spacing per lattice axis (each > 0).
    role_tag : str
        "transmit" or "receive".
    """

    origin: np.ndarray
    axes: np.ndarray
    counts: tuple
    spacings: np.ndarray
    role_tag: str

    def __post_init__(self):
        origin = _readonly(np.atleast_1d(self.origin))
        axes = np.atleast_2d(np.asarray(self.axes, dtype=float))
        spacings = _readonly(np.atleast_1d(self.spacings))
        counts = tuple(int(c) for c in np.atleast_1d(self.counts))

        d = origin.shape[0]
        if origin.ndim != 1 or d < 1 or d > 3:
            raise GeometryError(f"origin must be a 1-3 component vector, got shape {origin.shape}")
        if axes.shape[1] != d:
            raise GeometryError(f"axes must have {d} components to match origin, got {axes.shape}")
        n_axes = axes.shape[0]
        if not 1 <= n_axes <= 3 or n_axes > d:
            raise GeometryError(f"need 1..min(3, {d}) lattice axes, got {n_axes}")
        gram = axes @ axes.T
        if not np.allclose(gram, np.eye(n_axes), atol=ORTHO_TOL):
            raise GeometryError("lattice axes must be pairwise orthogonal unit vectors")
        if len(counts) != n_axes or any(c < 1 for c in counts):
            raise GeometryError(f"counts must give >= 1 element per lattice axis, got {counts}")
        if spacings.shape != (n_axes,) or np.any(spacings <= 0) or not np.all(np.isfinite(spacings)):
            raise GeometryError(f"spacings must be positive per lattice axis, got {self.spacings}")
        if self.role_tag not in ROLE_TAGS:
            raise GeometryError(f"role_tag must be one of {ROLE_TAGS}, got {self.role_tag!r}")

        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "axes", _readonly(axes))
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "spacings", spacings)

    @property
    def ndim(self) -> int:
        return self.origin.shape[0]

    @property
    def n_axes(self) -> int:
        return self.axes.shape[0]

    @property
    def num_elements(self) -> int:
        n = 1
        for c in self.counts:
            n *= c
        return n

    @property
    def center(self) -> np.ndarray:
        offs = [(c - 1) / 2.0 * s for c, s in zip(self.counts, self.spacings)]
        return self.origin + np.asarray(offs) @ self.axes

    @property
    def aperture_lengths(self) -> np.ndarray:
        """Element-to-element extent per lattice axis, (counts-1)*spacing."""
        return (np.asarray(self.counts) - 1) * self.spacings

    def sampled_axes(self) -> tuple:
        """Indices of lattice axes that actually sample space (>= 2 elements)."""
        return tuple(j for j, c in enumerate(self.counts) if c >= 2)

    def element_positions(self) -> np.ndarray:
        """All element positions, (num_elements, d), in lattice index order.

        The first lattice axis varies slowest (row-major enumeration).
        """
        grids = np.meshgrid(*[np.arange(c, dtype=float) for c in self.counts], indexing="ij")
        idx = np.stack([g.ravel() for g in grids], axis=-1)
        steps = self.spacings[:, None] * self.axes
        return self.origin[None, :] + idx @ steps


def build_uniform_array(origin, axes, counts, spacings, role_tag) -> ArrayGeometry:
    """Construct a validated uniform lattice array.

    The array center is origin + sum_j (counts_j - 1)/2 * spacing_j * axis_j.
    Raises GeometryError for non-orthonormal axes, non-positive spacings or
    counts, or an unknown role tag.
    """
    return ArrayGeometry(origin=origin, axes=axes, counts=counts,
                         spacings=spacings, role_tag=role_tag)


def element_positions(geometry: ArrayGeometry) -> np.ndarray:
    """Element positions of a lattice array in deterministic lattice order."""
    return geometry.element_positions()


def min_element_distance(geometry: ArrayGeometry, point) -> float:
    """Smallest Euclidean distance from `point` to any array element."""
    p = np.asarray(point, dtype=float)
    return float(np.min(np.linalg.norm(geometry.element_positions() - p[None, :], axis=-1)))


@dataclass(frozen=True)
class Scene:
    """A single point scatterer with complex reflectivity."""

    scatterer: np.ndarray
    reflectivity: complex = 1.0 + 0.0j

    def __post_init__(self):
        pos = _readonly(np.atleast_1d(self.scatterer))
        if pos.ndim != 1 or not 1 <= pos.shape[0] <= 3 or not np.all(np.isfinite(pos)):
            raise GeometryError(f"scatterer must be a finite 1-3 component vector, got {self.scatterer}")
        object.__setattr__(self, "scatterer", pos)
        object.__setattr__(self, "reflectivity", complex(self.reflectivity))


@dataclass(frozen=True)
class EvalGrid:
    """Rectangular grid of tentative scatterer locations (cell centers)."""

    corner_min: np.ndarray
    corner_max: np.ndarray
    resolution: tuple

    def __post_init__(self):
        lo = _readonly(np.atleast_1d(self.corner_min))
        hi = _readonly(np.atleast_1d(self.corner_max))
        res = tuple(int(r) for r in np.atleast_1d(self.resolution))
        d = lo.shape[0]
        if hi.shape != (d,) or len(res) != d:
            raise GridError("corner_min, corner_max and resolution must share one dimensionality")
        if not np.all(lo < hi):
            raise GridError(f"corner_min must be < corner_max component-wise, got {lo} vs {hi}")
        if any(r < 2 for r in res):
            raise GridError(f"resolution must be >= 2 per axis, got {res}")
        object.__setattr__(self, "corner_min", lo)
        object.__setattr__(self, "corner_max", hi)
        object.__setattr__(self, "resolution", res)

    @property
    def ndim(self) -> int:
        return self.corner_min.shape[0]

    @property
    def num_cells(self) -> int:
        n = 1
        for r in self.resolution:
            n *= r
        return n

    @property
    def cell_sizes(self) -> np.ndarray:
        return (self.corner_max - self.corner_min) / np.asarray(self.resolution)

    def axis_centers(self, j: int) -> np.ndarray:
        size = self.cell_sizes[j]
        return self.corner_min[j] + (np.arange(self.resolution[j]) + 0.5) * size

    def cell_centers(self) -> np.ndarray:
        """All cell centers, (num_cells, d), row-major (first axis slowest)."""
        axes = [self.axis_centers(j) for j in range(self.ndim)]
        grids = np.meshgrid(*axes, indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    def cell_index(self, point) -> tuple:
        """Multi-index of the cell containing `point` (clipped to the grid)."""
        p = np.asarray(point, dtype=float)
        idx = np.floor((p - self.corner_min) / self.cell_sizes).astype(int)
        idx = np.clip(idx, 0, np.asarray(self.resolution) - 1)
        return tuple(int(i) for i in idx)

    def flat_index(self, point) -> int:
        return int(np.ravel_multi_index(self.cell_index(point), self.resolution))
