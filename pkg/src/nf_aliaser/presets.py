"""Figure-reproduction presets as plain configuration dictionaries.

Length convention: an array of N antennas over length L uses spacing L/N
(element-to-element aperture (N-1)*L/N, lattice centered on the stated
center). The fixed-spacing pairs (N=32, 250 wavelengths) and (N=128,
1000 wavelengths) share one spacing only under this convention.
"""

from __future__ import annotations

from .errors import ConfigError


def _centered_linear(center, axis, n: int, length_lambda: float) -> dict:
    spacing = length_lambda / n
    origin = [c - (n - 1) / 2.0 * spacing * a for c, a in zip(center, axis)]
    return {"origin": origin, "axes": [list(axis)], "counts": [n],
            "spacings_lambda": [spacing]}


def fig1() -> dict:
    """Bistatic reconstruction of a scatterer at (1000, 1000) wavelengths.

    64-antenna, 500-wavelength arrays along the x and y axes centered at
    (500, 0) and (0, 500). The imaging window keeps a standoff from the
    arrays so the 1/r amplitude growth next to the elements does not swamp
    the matched-filter peak.
    """
    return {
        "wave": {"lambda": 1.0},
        "tx": _centered_linear([500.0, 0.0], [1.0, 0.0], 64, 500.0),
        "rx": _centered_linear([0.0, 500.0], [0.0, 1.0], 64, 500.0),
        "scene": {"scatterer": [1000.0, 1000.0], "reflectivity_re": 1.0,
                  "reflectivity_im": 0.0},
        "grid": {"min": [150.0, 150.0], "max": [1850.0, 1850.0],
                 "resolution": [255, 255]},
        "outputs": ["partial_tx", "partial_rx", "image", "mask"],
        "thresholds": {},
    }


def fig2a() -> dict:
    """Antenna-count (spacing) sweep at fixed 500-wavelength array length."""
    return {
        "wave": {"lambda": 1.0},
        "tx": _centered_linear([500.0, 0.0], [1.0, 0.0], 64, 500.0),
        "rx": _centered_linear([0.0, 500.0], [0.0, 1.0], 64, 500.0),
        "scene": {"scatterer": [500.0, 500.0], "reflectivity_re": 1.0,
                  "reflectivity_im": 0.0},
        "grid": {"min": [0.0, 0.0], "max": [1000.0, 1000.0],
                 "resolution": [255, 255]},
        "outputs": ["sweep"],
        "thresholds": {},
        "sweep": {"param": "spacing", "values": [16, 64]},
    }


def fig2b() -> dict:
    """Array-length sweep at fixed spacing.

    The scatterer sits off the diagonal: with the symmetric (500, 500)
    placement each array's broadside element dominates the aliasing bound and
    lengthening the arrays leaves the combined mask unchanged, so the length
    effect would be invisible.
    """
    cfg = {
        "wave": {"lambda": 1.0},
        "tx": _centered_linear([500.0, 0.0], [1.0, 0.0], 32, 250.0),
        "rx": _centered_linear([0.0, 500.0], [0.0, 1.0], 32, 250.0),
        "scene": {"scatterer": [800.0, 300.0], "reflectivity_re": 1.0,
                  "reflectivity_im": 0.0},
        "grid": {"min": [0.0, 0.0], "max": [1000.0, 1000.0],
                 "resolution": [255, 255]},
        "outputs": ["sweep"],
        "thresholds": {},
        "sweep": {"param": "length",
                  "values": [{"length_lambda": 250.0, "count": 32},
                             {"length_lambda": 1000.0, "count": 128}]},
    }
    return cfg


def fig2c() -> dict:
    """Dimensionality sweep: 64-element linear vs 64 x 64 planar arrays."""
    cfg = fig2a()
    cfg["sweep"] = {"param": "dimensionality", "values": [1, 2]}
    return cfg


PRESETS = {"fig1": fig1, "fig2a": fig2a, "fig2b": fig2b, "fig2c": fig2c}


def preset_config(name: str) -> dict:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {sorted(PRESETS)}") from None
    return factory()
