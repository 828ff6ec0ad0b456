"""Chirp-based aliasing analysis: local wavenumbers, per-axis maximum spatial
frequencies, and the aliasing-free predicate/masks.

A tentative location is aliasing-free for an array when, along every lattice
axis that samples space (>= 2 elements), the maximum spatial frequency of the
chirp over the element set stays within 2*pi / spacing. Boundary equality
counts as aliasing-free, with exact floating-point <=.
"""

from __future__ import annotations

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GridError, SingularityError
from .geometry import ArrayGeometry, EvalGrid, Scene, WaveParams
from .wavefield import exclusion_radius

CELL_BLOCK = 8192

AliasingVerdict = namedtuple("AliasingVerdict", ["per_axis", "ok"])


def local_wavenumber(probe, tentative, scatterer, wave: WaveParams, epsilon=None) -> np.ndarray:
    """Gradient of the chirp phase with respect to the probe position.

    k * ((probe - tentative)/|probe - tentative|
         - (probe - scatterer)/|probe - scatterer|); broadcasts over leading
    dimensions, trailing dimension = spatial components.
    """
    eps = exclusion_radius(wave, epsilon)
    p = np.asarray(probe, dtype=float)
    dt_vec = p - np.asarray(tentative, dtype=float)
    ds_vec = p - np.asarray(scatterer, dtype=float)
    d_t = np.sqrt(np.sum(dt_vec * dt_vec, axis=-1))
    d_s = np.sqrt(np.sum(ds_vec * ds_vec, axis=-1))
    if np.any(d_t <= eps) or np.any(d_s <= eps):
        raise SingularityError("probe within the exclusion radius of tentative or scatterer")
    return wave.wavenumber * (dt_vec / d_t[..., None] - ds_vec / d_s[..., None])


def max_spatial_frequency(array: ArrayGeometry, tentative, scatterer, wave: WaveParams,
                          axis_index: int, epsilon=None) -> float:
    """Largest |local wavenumber| projection on a lattice axis over all elements."""
    kvec = local_wavenumber(array.element_positions(), tentative, scatterer, wave, epsilon)
    return float(np.max(np.abs(kvec @ array.axes[axis_index])))


def aliasing_free(array: ArrayGeometry, tentative, scatterer, wave: WaveParams,
                  epsilon=None) -> AliasingVerdict:
    """Per-lattice-axis aliasing-free booleans and their conjunction.

    Axes with a single element perform no spatial sampling and are vacuously
    aliasing-free.
    """
    kvec = local_wavenumber(array.element_positions(), tentative, scatterer, wave, epsilon)
    per_axis = []
    for j in range(array.n_axes):
        if array.counts[j] < 2:
            per_axis.append(True)
            continue
        k_j = float(np.max(np.abs(kvec @ array.axes[j])))
        per_axis.append(bool(k_j <= 2.0 * np.pi / array.spacings[j]))
    return AliasingVerdict(per_axis=tuple(per_axis), ok=all(per_axis))


@dataclass
class MaskLayer:
    """Aliasing-free predicate of one array along one lattice axis."""

    array_label: str
    axis_index: int
    free: np.ndarray


@dataclass
class AliasingMask:
    """Per-array-per-axis aliasing-free layers and their conjunction."""

    grid: EvalGrid
    layers: tuple
    excluded: np.ndarray
    combined: np.ndarray = field(init=False)

    def __post_init__(self):
        combined = np.ones(self.grid.resolution, dtype=bool)
        for layer in self.layers:
            combined &= layer.free
        combined &= ~self.excluded
        self.combined = combined

    def per_array(self, array_label: str) -> np.ndarray:
        out = np.ones(self.grid.resolution, dtype=bool)
        for layer in self.layers:
            if layer.array_label == array_label:
                out &= layer.free
        return out & ~self.excluded


def _kmax_layers(array: ArrayGeometry, cells: np.ndarray, scatterer: np.ndarray,
                 k: float, eps: float, threads: int):
    """Max |k_axis| per cell for each sampled lattice axis, plus exclusion flags.

    Loops over elements (vectorized over cells) so each element's distance
    field is shared by all axis projections.
    """
    elements = array.element_positions()
    axes_idx = array.sampled_axes()
    units = [array.axes[j] for j in axes_idx]
    ds_vec = elements - scatterer[None, :]
    d_s = np.linalg.norm(ds_vec, axis=-1)
    if np.any(d_s <= eps):
        raise SingularityError("scatterer within the exclusion radius of an array element")
    pu = [(ds_vec @ u) / d_s for u in units]

    n = len(cells)
    kmax = [np.zeros(n) for _ in axes_idx]
    dmin = np.full(n, np.inf)
    cax = [cells @ u for u in units]

    def worker(start: int) -> None:
        stop = min(start + CELL_BLOCK, n)
        c = cells[start:stop]
        near = np.full(stop - start, np.inf)
        best = [np.zeros(stop - start) for _ in axes_idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            for ie, e in enumerate(elements):
                diff = e[None, :] - c
                dt = np.sqrt(np.einsum("ij,ij->i", diff, diff))
                np.minimum(near, dt, out=near)
                for ja in range(len(axes_idx)):
                    pt = (float(e @ units[ja]) - cax[ja][start:stop]) / dt
                    np.maximum(best[ja], np.abs(pt - pu[ja][ie]), out=best[ja])
        for ja in range(len(axes_idx)):
            kmax[ja][start:stop] = best[ja]
        dmin[start:stop] = near

    starts = range(0, n, CELL_BLOCK)
    if threads <= 1:
        for s in starts:
            worker(s)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(worker, starts))

    return axes_idx, [k * km for km in kmax], dmin


def aliasing_mask(tx: ArrayGeometry, rx: ArrayGeometry, scene: Scene, wave: WaveParams,
                  grid: EvalGrid, epsilon=None, threads: int = 1) -> AliasingMask:
    """Aliasing-free mask over a grid for both arrays.

    One boolean layer per (array, sampled lattice axis); the combined layer is
    their conjunction. Cells within the exclusion radius of any element of
    either array are marked excluded and false.
    """
    eps = exclusion_radius(wave, epsilon)
    if grid.ndim != tx.ndim or grid.ndim != rx.ndim:
        raise GridError("grid and arrays must share one dimensionality")
    cells = grid.cell_centers()
    k = wave.wavenumber
    shape = grid.resolution

    layers = []
    dmin_total = np.full(len(cells), np.inf)
    for label, array in (("tx", tx), ("rx", rx)):
        axes_idx, kmaxes, dmin = _kmax_layers(array, cells, scene.scatterer, k, eps, threads)
        np.minimum(dmin_total, dmin, out=dmin_total)
        for j, km in zip(axes_idx, kmaxes):
            free = km <= 2.0 * np.pi / array.spacings[j]
            layers.append(MaskLayer(array_label=label, axis_index=j,
                                    free=free.reshape(shape)))

    excluded = (dmin_total <= eps).reshape(shape)
    for layer in layers:
        layer.free &= ~excluded
    return AliasingMask(grid=grid, layers=tuple(layers), excluded=excluded)
