"""Run orchestration: compute requested products and write deterministic artifacts."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import __version__
from .chirp import aliasing_mask
from .config import RunConfig, SWEEP_PARAMS
from .errors import ConfigError
from .geometry import ArrayGeometry, Scene
from .imaging import bistatic_image, partial_image
from .outputs import (
    write_field_csv,
    write_field_pgm,
    write_manifest,
    write_mask_csv,
    write_mask_pgm,
    write_spectrum_csv,
    write_sweep_csv,
)
from .spectral import sample_chirp_along_axis, spectral_support


def _perp_axis(axis: np.ndarray, used: list) -> np.ndarray:
    """Deterministic unit vector orthogonal to all vectors in `used`."""
    d = axis.shape[0]
    if d == 2:
        return np.array([-axis[1], axis[0]])
    for candidate in np.eye(d):
        v = candidate.copy()
        for u in used:
            v -= (v @ u) * u
        norm = np.linalg.norm(v)
        if norm > 1e-9:
            return v / norm
    raise ConfigError("no orthogonal direction available for dimensionality sweep")


def _recentered(array: ArrayGeometry, axes: np.ndarray, counts: tuple,
                spacings: np.ndarray) -> ArrayGeometry:
    center = array.center
    offs = [(c - 1) / 2.0 * s for c, s in zip(counts, spacings)]
    origin = center - np.asarray(offs) @ axes
    return ArrayGeometry(origin=origin, axes=axes, counts=counts,
                         spacings=spacings, role_tag=array.role_tag)


def _sweep_variant(config: RunConfig, param: str, value):
    """Derived (tx, rx, scene, label) for one sweep value."""
    tx, rx, scene = config.tx, config.rx, config.scene
    wl = config.wave.wavelength

    if param == "spacing":
        n = int(value)
        if n < 2:
            raise ConfigError(f"sweep spacing value must be >= 2 antennas, got {value!r}")

        def rebuild(a: ArrayGeometry) -> ArrayGeometry:
            lengths = np.asarray(a.counts) * a.spacings
            counts = tuple(n for _ in a.counts)
            spacings = lengths / n
            return _recentered(a, a.axes, counts, spacings)

        return rebuild(tx), rebuild(rx), scene, f"N{n}"

    if param == "length":
        if isinstance(value, dict):
            try:
                length = float(value["length_lambda"]) * wl
                n = int(value["count"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(
                    f"sweep length value needs length_lambda and count, got {value!r}") from exc
        else:
            length = float(value) * wl
            n = None

        def rebuild(a: ArrayGeometry) -> ArrayGeometry:
            counts = []
            spacings = []
            for c, s in zip(a.counts, a.spacings):
                cnt = n if n is not None else max(int(round(length / s)), 2)
                counts.append(cnt)
                spacings.append(length / cnt)
            return _recentered(a, a.axes, tuple(counts), np.asarray(spacings))

        label = f"L{length / wl:g}_N{n}" if n is not None else f"L{length / wl:g}"
        return rebuild(tx), rebuild(rx), scene, label

    if param == "range":
        pos = np.asarray(value, dtype=float)
        if pos.ndim != 1 or pos.shape[0] != scene.scatterer.shape[0]:
            raise ConfigError(f"sweep range value must be a scatterer position, got {value!r}")
        new_scene = Scene(scatterer=pos * wl, reflectivity=scene.reflectivity)
        label = "pos" + "_".join(f"{v:g}" for v in pos)
        return tx, rx, new_scene, label

    if param == "dimensionality":
        v = int(value)

        def rebuild(a: ArrayGeometry) -> ArrayGeometry:
            if v < 1 or v > min(3, a.ndim):
                raise ConfigError(
                    f"dimensionality {v} not representable in {a.ndim}D space")
            axes = [np.asarray(a.axes[0])]
            while len(axes) < v:
                axes.append(_perp_axis(axes[0], axes))
            counts = tuple(a.counts[0] for _ in range(v))
            spacings = np.asarray([a.spacings[0]] * v)
            return _recentered(a, np.vstack(axes), counts, spacings)

        return rebuild(tx), rebuild(rx), scene, f"{v}d"

    raise ConfigError(f"unknown sweep parameter {param!r}; expected one of {SWEEP_PARAMS}")


def _image_stats(config: RunConfig, tx: ArrayGeometry, rx: ArrayGeometry, scene: Scene,
                 threads: int):
    eps = config.thresholds.epsilon(config.wave)
    mask = aliasing_mask(tx, rx, scene, config.wave, config.grid, epsilon=eps,
                         threads=threads)
    st = partial_image(tx, scene, config.wave, config.grid, epsilon=eps, threads=threads)
    sr = partial_image(rx, scene, config.wave, config.grid, epsilon=eps, threads=threads)
    image = bistatic_image(st, sr, scene.reflectivity)
    mag = np.abs(image.values)
    usable = ~image.excluded
    search = np.where(usable, mag, -1.0)
    peak_flat = int(np.argmax(search))
    peak_cell = np.unravel_index(peak_flat, config.grid.resolution)
    centers = [config.grid.axis_centers(j)[i] for j, i in enumerate(peak_cell)]
    outside = usable & ~mask.combined
    peak_val = mag[peak_cell]
    if outside.any() and mag[outside].max() > 0 and peak_val > 0:
        ratio_db = 20.0 * np.log10(peak_val / mag[outside].max())
    else:
        ratio_db = np.inf
    row = {
        "mask_cells": int(mask.combined.sum()),
        "peak_cell": tuple(int(i) for i in peak_cell),
        "peak_position_lambda": tuple(c / config.wave.wavelength for c in centers),
        "peak_to_artifact_db": float(ratio_db),
    }
    return mask, image, row


def _sweep_products(config: RunConfig, param, values, out_dir, threads: int):
    param = param or config.sweep_param
    values = values if values is not None else config.sweep_values
    if param is None or values is None:
        raise ConfigError("sweep requires a parameter and a list of values")
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"sweep.param: must be one of {SWEEP_PARAMS}, got {param!r}")

    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    rows = []
    files = {}
    for value in values:
        tx, rx, scene, label = _sweep_variant(config, param, value)
        mask, image, row = _image_stats(config, tx, rx, scene, threads)
        row = {"value": label, **row}
        rows.append(row)
        if out is not None:
            name = f"mask_{label}"
            csv_path = out / f"{name}.csv"
            write_mask_csv(csv_path, name, mask.combined, config.grid,
                           config.wave.wavelength)
            files[f"{name}.csv"] = csv_path
            if config.grid.ndim == 2:
                pgm_path = out / f"{name}.pgm"
                write_mask_pgm(pgm_path, name, mask.combined)
                files[f"{name}.pgm"] = pgm_path
    if out is not None:
        summary = out / "sweep_summary.csv"
        write_sweep_csv(summary, rows)
        files["sweep_summary.csv"] = summary
    return rows, files


def sweep(config: RunConfig, param: str | None = None, values=None,
          out_dir=None, threads: int = 1) -> list:
    """Evaluate mask/image statistics across a parameter sweep.

    Returns one summary row per value; when out_dir is given, also writes the
    per-value mask products and the summary CSV.
    """
    rows, _ = _sweep_products(config, param, values, out_dir, threads)
    return rows


def run(config: RunConfig, out_dir, threads: int = 1) -> dict:
    """Compute every requested product, write artifacts, and return the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    eps = config.thresholds.epsilon(config.wave)
    floor_db = config.thresholds.floor_db
    wl = config.wave.wavelength
    products = {}

    need_tx = "partial_tx" in config.outputs or "image" in config.outputs
    need_rx = "partial_rx" in config.outputs or "image" in config.outputs
    st = sr = None
    if need_tx:
        st = partial_image(config.tx, config.scene, config.wave, config.grid,
                           epsilon=eps, threads=threads)
    if need_rx:
        sr = partial_image(config.rx, config.scene, config.wave, config.grid,
                           epsilon=eps, threads=threads)

    def emit_field(name: str, field) -> None:
        csv_path = out / f"{name}.csv"
        write_field_csv(csv_path, name, field, wl)
        products[f"{name}.csv"] = csv_path
        if config.grid.ndim == 2:
            pgm_path = out / f"{name}.pgm"
            write_field_pgm(pgm_path, name, field, floor_db)
            products[f"{name}.pgm"] = pgm_path

    if "partial_tx" in config.outputs:
        emit_field("partial_tx", st)
    if "partial_rx" in config.outputs:
        emit_field("partial_rx", sr)
    if "image" in config.outputs:
        emit_field("image", bistatic_image(st, sr, config.scene.reflectivity))

    if "mask" in config.outputs:
        mask = aliasing_mask(config.tx, config.rx, config.scene, config.wave,
                             config.grid, epsilon=eps, threads=threads)
        csv_path = out / "mask.csv"
        write_mask_csv(csv_path, "mask", mask.combined, config.grid, wl)
        products["mask.csv"] = csv_path
        if config.grid.ndim == 2:
            pgm_path = out / "mask.pgm"
            write_mask_pgm(pgm_path, "mask", mask.combined)
            products["mask.pgm"] = pgm_path

    if "spectrum" in config.outputs:
        # Sampled at the grid center as a representative off-match point.
        point = (config.grid.corner_min + config.grid.corner_max) / 2.0
        oversample = config.thresholds.oversample
        for label, array in (("tx", config.tx), ("rx", config.rx)):
            for axis in array.sampled_axes():
                samples = sample_chirp_along_axis(array, point, config.scene.scatterer,
                                                  config.wave, axis, oversample,
                                                  epsilon=eps)
                support = spectral_support(samples, array.spacings[axis] / oversample,
                                           config.thresholds.support_db,
                                           window="hann", axis_index=axis)
                name = f"spectrum_{label}_ax{axis}"
                path = out / f"{name}.csv"
                write_spectrum_csv(path, name, support, wl)
                products[f"{name}.csv"] = path

    if "sweep" in config.outputs:
        _, sweep_files = _sweep_products(config, None, None, out, threads)
        products.update(sweep_files)

    manifest_path = out / "manifest.json"
    return write_manifest(manifest_path, __version__, config.resolved, products)
