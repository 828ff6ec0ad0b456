import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nf_aliaser import (
    EvalGrid,
    GeometryError,
    GridError,
    Scene,
    WaveParams,
    build_uniform_array,
    element_positions,
)
from nf_aliaser.geometry import min_element_distance


def test_wavenumber_is_derived():
    wave = WaveParams(0.75)
    assert wave.wavenumber * wave.wavelength == pytest.approx(2 * np.pi, rel=1e-15)
    assert WaveParams(3.0).wavenumber == pytest.approx(2 * np.pi / 3.0, rel=1e-15)


@pytest.mark.parametrize("bad", [0.0, -1.0, np.nan, np.inf])
def test_wavelength_must_be_positive(bad):
    with pytest.raises(GeometryError):
        WaveParams(bad)


def test_two_element_lattice():
    arr = build_uniform_array([0, 0], [[1, 0]], [2], [0.5], "transmit")
    np.testing.assert_allclose(element_positions(arr), [[0, 0], [0.5, 0]])


def test_single_element_array():
    arr = build_uniform_array([3.0, -2.0], [[0, 1]], [1], [1.0], "receive")
    np.testing.assert_allclose(element_positions(arr), [[3.0, -2.0]])
    assert arr.sampled_axes() == ()


def test_fig1_style_linear_array():
    # 64 antennas over 500 wavelengths (spacing 500/64), centered at (500, 0)
    spacing = 500.0 / 64
    origin = [500.0 - 63 / 2 * spacing, 0.0]
    arr = build_uniform_array(origin, [[1, 0]], [64], [spacing], "transmit")
    assert arr.num_elements == 64
    np.testing.assert_allclose(arr.center, [500.0, 0.0], atol=1e-12)
    pos = element_positions(arr)
    assert pos.shape == (64, 2)
    np.testing.assert_allclose(pos[:, 1], 0.0)
    np.testing.assert_allclose(pos[-1, 0] - pos[0, 0], 63 * spacing, rtol=1e-14)


def test_receive_array_along_y_has_constant_x():
    spacing = 500.0 / 64
    arr = build_uniform_array([0.0, 250.0], [[0, 1]], [64], [spacing], "receive")
    pos = element_positions(arr)
    assert np.all(pos[:, 0] == 0.0)
    assert len(pos) == 64


def test_planar_array_matches_double_loop():
    spacing = 0.7
    arr = build_uniform_array([1.0, 2.0], [[1, 0], [0, 1]], [64, 64],
                              [spacing, spacing], "transmit")
    pos = element_positions(arr)
    assert pos.shape == (64 * 64, 2)
    expected = np.array([[1.0 + i * spacing, 2.0 + j * spacing]
                         for i in range(64) for j in range(64)])
    np.testing.assert_allclose(pos, expected, atol=1e-12)


def test_random_rotated_lattice_matches_triple_loop():
    rng = np.random.default_rng(42)
    theta = rng.uniform(0, 2 * np.pi)
    ax1 = np.array([np.cos(theta), np.sin(theta), 0.0])
    ax2 = np.array([-np.sin(theta), np.cos(theta), 0.0])
    ax3 = np.array([0.0, 0.0, 1.0])
    origin = rng.uniform(-5, 5, 3)
    counts = (3, 4, 2)
    spacings = rng.uniform(0.2, 2.0, 3)
    arr = build_uniform_array(origin, [ax1, ax2, ax3], counts, spacings, "transmit")
    pos = element_positions(arr)
    brute = []
    for i in range(counts[0]):
        for j in range(counts[1]):
            for k in range(counts[2]):
                brute.append(origin + i * spacings[0] * ax1 + j * spacings[1] * ax2
                             + k * spacings[2] * ax3)
    np.testing.assert_allclose(pos, np.array(brute), atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    counts=st.tuples(st.integers(1, 5), st.integers(1, 5)),
    spacing0=st.floats(0.1, 10.0),
    spacing1=st.floats(0.1, 10.0),
    theta=st.floats(0.0, 6.2),
)
def test_lattice_exactness_and_count(counts, spacing0, spacing1, theta):
    ax1 = np.array([np.cos(theta), np.sin(theta)])
    ax2 = np.array([-np.sin(theta), np.cos(theta)])
    arr = build_uniform_array([0.3, -0.7], [ax1, ax2], counts,
                              [spacing0, spacing1], "receive")
    pos = element_positions(arr).reshape(counts + (2,))
    assert pos.shape[0] * pos.shape[1] == arr.num_elements
    if counts[0] >= 2:
        steps = pos[1:, :, :] - pos[:-1, :, :]
        np.testing.assert_allclose(steps, np.broadcast_to(spacing0 * ax1, steps.shape),
                                   atol=1e-12 * spacing0 + 1e-12)
    if counts[1] >= 2:
        steps = pos[:, 1:, :] - pos[:, :-1, :]
        np.testing.assert_allclose(steps, np.broadcast_to(spacing1 * ax2, steps.shape),
                                   atol=1e-12 * spacing1 + 1e-12)


def test_element_positions_deterministic():
    arr = build_uniform_array([0.1, 0.2], [[1, 0], [0, 1]], [5, 7], [0.31, 0.57],
                              "transmit")
    a = element_positions(arr)
    b = element_positions(arr)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("axes", [
    [[1, 0], [1, 0]],            # parallel
    [[1, 0], [0.6, 0.8001]],     # not orthogonal
    [[2, 0]],                    # not unit norm
])
def test_bad_axes_rejected(axes):
    counts = [2] * len(axes)
    spacings = [1.0] * len(axes)
    with pytest.raises(GeometryError):
        build_uniform_array([0, 0], axes, counts, spacings, "transmit")


def test_bad_counts_and_spacings_rejected():
    with pytest.raises(GeometryError):
        build_uniform_array([0, 0], [[1, 0]], [0], [1.0], "transmit")
    with pytest.raises(GeometryError):
        build_uniform_array([0, 0], [[1, 0]], [4], [0.0], "transmit")
    with pytest.raises(GeometryError):
        build_uniform_array([0, 0], [[1, 0]], [4], [-2.0], "transmit")
    with pytest.raises(GeometryError):
        build_uniform_array([0, 0], [[1, 0]], [4], [1.0], "emitter")


def test_geometry_immutable():
    arr = build_uniform_array([0, 0], [[1, 0]], [4], [1.0], "transmit")
    with pytest.raises(ValueError):
        arr.origin[0] = 5.0


def test_min_element_distance():
    arr = build_uniform_array([0, 0], [[1, 0]], [3], [1.0], "transmit")
    assert min_element_distance(arr, [2.0, 3.0]) == pytest.approx(3.0)


def test_scene_validation():
    s = Scene([1.0, 2.0], 2j)
    assert s.reflectivity == 2j
    with pytest.raises(GeometryError):
        Scene([np.nan, 0.0])


class TestEvalGrid:
    def test_cell_centers_row_major(self):
        grid = EvalGrid([0.0, 0.0], [4.0, 2.0], (2, 2))
        np.testing.assert_allclose(
            grid.cell_centers(),
            [[1.0, 0.5], [1.0, 1.5], [3.0, 0.5], [3.0, 1.5]],
        )

    def test_cell_index(self):
        grid = EvalGrid([0.0, 0.0], [10.0, 10.0], (5, 5))
        assert grid.cell_index([0.1, 9.9]) == (0, 4)
        assert grid.cell_index([5.0, 5.0]) == (2, 2)
        # exactly on the outer corner clips into the last cell
        assert grid.cell_index([10.0, 10.0]) == (4, 4)

    def test_validation(self):
        with pytest.raises(GridError):
            EvalGrid([0.0, 0.0], [1.0, -1.0], (4, 4))
        with pytest.raises(GridError):
            EvalGrid([0.0, 0.0], [1.0, 1.0], (1, 4))
        with pytest.raises(GridError):
            EvalGrid([0.0], [1.0, 1.0], (4, 4))

    def test_num_cells_and_sizes(self):
        grid = EvalGrid([0.0, 0.0], [1.0, 2.0], (4, 8))
        assert grid.num_cells == 32
        np.testing.assert_allclose(grid.cell_sizes, [0.25, 0.25])
