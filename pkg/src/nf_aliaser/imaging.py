"""Matched-filter imaging: monostatic partial images and the bistatic product.

Per-cell sums run in fixed lattice-element order (sequential accumulation), so
results are bit-identical no matter how the cell loop is chunked or threaded.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, GridError, SingularityError
from .geometry import ArrayGeometry, EvalGrid, Scene, WaveParams, min_element_distance
from .wavefield import exclusion_radius

# Cells per work block; fixed so the decomposition (and the output bits) do
# not depend on the thread count.
CELL_BLOCK = 8192


@dataclass
class ComplexField:
    """Complex value per grid cell plus an explicit exclusion flag."""

    grid: EvalGrid
    values: np.ndarray
    excluded: np.ndarray
    meta: dict = field(default_factory=dict)

    def magnitude(self) -> np.ndarray:
        return np.abs(self.values)


def _run_blocks(worker, n_cells: int, threads: int) -> None:
    starts = range(0, n_cells, CELL_BLOCK)
    if threads <= 1:
        for s in starts:
            worker(s)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(worker, starts))


def _check_clearance(array: ArrayGeometry, scene: Scene, eps: float) -> None:
    if min_element_distance(array, scene.scatterer) <= eps:
        raise SingularityError(
            f"scatterer lies within the exclusion radius {eps:.6g} of a {array.role_tag} element"
        )


def partial_image_at(array: ArrayGeometry, points, scene: Scene, wave: WaveParams,
                     epsilon=None) -> np.ndarray:
    """Monostatic partial image evaluated at arbitrary tentative points.

    Each value is the sum over array elements of the spatial chirp
    conj(z(tentative, element)) * z(scatterer, element). Raises
    SingularityError if any point or the scatterer is within the exclusion
    radius of an element.
    """
    eps = exclusion_radius(wave, epsilon)
    _check_clearance(array, scene, eps)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    elements = array.element_positions()
    k = wave.wavenumber
    d_s = np.linalg.norm(elements - scene.scatterer[None, :], axis=-1)

    acc = np.zeros(len(pts), dtype=np.complex128)
    for e, ds in zip(elements, d_s):
        diff = pts - e[None, :]
        dt = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        if np.any(dt <= eps):
            raise SingularityError(
                "tentative point within the exclusion radius of an array element"
            )
        acc += np.exp(1j * k * (dt - ds)) / (dt * ds)
    return acc


def partial_image(array: ArrayGeometry, scene: Scene, wave: WaveParams, grid: EvalGrid,
                  epsilon=None, threads: int = 1) -> ComplexField:
    """Monostatic partial image over a grid of tentative locations.

    Cells within the exclusion radius of any element are flagged excluded and
    carry the value 0.
    """
    eps = exclusion_radius(wave, epsilon)
    if array.num_elements < 1:
        raise GeometryError("array has no elements")
    _check_clearance(array, scene, eps)
    if grid.ndim != array.ndim:
        raise GridError(f"grid dimensionality {grid.ndim} != array dimensionality {array.ndim}")

    cells = grid.cell_centers()
    elements = array.element_positions()
    k = wave.wavenumber
    d_s = np.linalg.norm(elements - scene.scatterer[None, :], axis=-1)

    values = np.zeros(len(cells), dtype=np.complex128)
    dmin = np.full(len(cells), np.inf)

    def worker(start: int) -> None:
        stop = min(start + CELL_BLOCK, len(cells))
        c = cells[start:stop]
        acc = np.zeros(stop - start, dtype=np.complex128)
        near = np.full(stop - start, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            for e, ds in zip(elements, d_s):
                diff = c - e[None, :]
                dt = np.sqrt(np.einsum("ij,ij->i", diff, diff))
                np.minimum(near, dt, out=near)
                acc += np.exp(1j * k * (dt - ds)) / (dt * ds)
        values[start:stop] = acc
        dmin[start:stop] = near

    _run_blocks(worker, len(cells), threads)

    excluded = dmin <= eps
    if excluded.all():
        raise GridError("every grid cell lies within the exclusion radius of an element")
    values[excluded] = 0.0
    shape = grid.resolution
    meta = {"product": "partial_image", "role": array.role_tag,
            "scatterer": tuple(scene.scatterer), "wavelength": wave.wavelength,
            "epsilon": eps, "normalized": False}
    return ComplexField(grid=grid, values=values.reshape(shape),
                        excluded=excluded.reshape(shape), meta=meta)


def bistatic_image(tx_field: ComplexField, rx_field: ComplexField,
                   reflectivity: complex) -> ComplexField:
    """Bistatic image as the cell-wise product reflectivity * S_t * S_r."""
    gt, gr = tx_field.grid, rx_field.grid
    if (gt.resolution != gr.resolution
            or not np.array_equal(gt.corner_min, gr.corner_min)
            or not np.array_equal(gt.corner_max, gr.corner_max)):
        raise GridError("partial images must share one evaluation grid")
    scat_t = tx_field.meta.get("scatterer")
    scat_r = rx_field.meta.get("scatterer")
    if scat_t is not None and scat_r is not None and scat_t != scat_r:
        raise GridError("partial images were computed for different scenes")

    values = complex(reflectivity) * tx_field.values * rx_field.values
    excluded = tx_field.excluded | rx_field.excluded
    values = np.where(excluded, 0.0, values)
    meta = {"product": "bistatic_image", "scatterer": scat_t,
            "wavelength": tx_field.meta.get("wavelength"),
            "epsilon": tx_field.meta.get("epsilon"), "normalized": False}
    return ComplexField(grid=gt, values=values, excluded=excluded, meta=meta)


def direct_image(tx: ArrayGeometry, rx: ArrayGeometry, scene: Scene, wave: WaveParams,
                 grid: EvalGrid, epsilon=None, threads: int = 1) -> ComplexField:
    """Bistatic image as the literal double sum over (tx, rx) element pairs.

    Serves as the separability oracle for bistatic_image(partial, partial);
    accumulation is sequential in (tx-element, rx-element) lattice order.
    """
    eps = exclusion_radius(wave, epsilon)
    _check_clearance(tx, scene, eps)
    _check_clearance(rx, scene, eps)
    if grid.ndim != tx.ndim or grid.ndim != rx.ndim:
        raise GridError("grid and arrays must share one dimensionality")

    cells = grid.cell_centers()
    et = tx.element_positions()
    er = rx.element_positions()
    k = wave.wavenumber
    zeta = scene.reflectivity
    dst = np.linalg.norm(et - scene.scatterer[None, :], axis=-1)
    dsr = np.linalg.norm(er - scene.scatterer[None, :], axis=-1)
    z_t = np.exp(-1j * k * dst) / dst
    z_r = np.exp(-1j * k * dsr) / dsr

    values = np.zeros(len(cells), dtype=np.complex128)
    dmin = np.full(len(cells), np.inf)

    def worker(start: int) -> None:
        stop = min(start + CELL_BLOCK, len(cells))
        c = cells[start:stop]
        nloc = stop - start
        czt = np.empty((len(et), nloc), dtype=np.complex128)
        near = np.full(nloc, np.inf)
        with np.errstate(divide="ignore", invalid="ignore"):
            for it, e in enumerate(et):
                diff = c - e[None, :]
                dt = np.sqrt(np.einsum("ij,ij->i", diff, diff))
                np.minimum(near, dt, out=near)
                czt[it] = np.exp(1j * k * dt) / dt
            acc = np.zeros(nloc, dtype=np.complex128)
            for it in range(len(et)):
                for ir, e in enumerate(er):
                    diff = c - e[None, :]
                    dr = np.sqrt(np.einsum("ij,ij->i", diff, diff))
                    np.minimum(near, dr, out=near)
                    u = zeta * z_r[ir] * z_t[it]
                    acc += u * (np.exp(1j * k * dr) / dr) * czt[it]
        values[start:stop] = acc
        dmin[start:stop] = near

    _run_blocks(worker, len(cells), threads)

    excluded = dmin <= eps
    if excluded.all():
        raise GridError("every grid cell lies within the exclusion radius of an element")
    values[excluded] = 0.0
    shape = grid.resolution
    meta = {"product": "direct_image", "scatterer": tuple(scene.scatterer),
            "wavelength": wave.wavelength, "epsilon": eps, "normalized": False}
    return ComplexField(grid=grid, values=values.reshape(shape),
                        excluded=excluded.reshape(shape), meta=meta)


def magnitude_db(field_: ComplexField, floor_db: float) -> np.ndarray:
    """Peak-normalized magnitude in dB, clamped below at floor_db.

    Excluded cells are emitted at floor_db. Raises GridError when the field
    has no usable signal (all cells excluded or zero).
    """
    if floor_db >= 0:
        raise GridError(f"floor_db must be negative, got {floor_db}")
    usable = ~field_.excluded
    if not usable.any():
        raise GridError("field has no non-excluded cells")
    mag = np.abs(field_.values)
    peak = mag[usable].max()
    if peak == 0.0:
        raise GridError("field is identically zero on non-excluded cells")
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(mag / peak)
    db = np.maximum(db, floor_db)
    db[field_.excluded] = floor_db
    return db
