import numpy as np
import pytest

from strichartz_lab.lattice import (
    FrequencyGrid,
    GridMismatchError,
    UniformGrid,
    WaveFunction,
    forward_transform,
    inner_product,
    inverse_transform,
    load_wavefunction,
    lp_norm,
    make_gaussian,
    sample_offgrid,
    save_wavefunction,
)

from conftest import random_band_limited


def test_grid_invariants():
    g = UniformGrid.symmetric(1024, 20.0)
    assert g.n == 1024 and g.dx > 0 and g.extent == pytest.approx(40.0)
    with pytest.raises(ValueError):
        UniformGrid(n=1000, dx=0.1, x0=0.0)  # not a power of two
    with pytest.raises(ValueError):
        UniformGrid(n=4, dx=0.1, x0=0.0)
    with pytest.raises(ValueError):
        UniformGrid(n=64, dx=-0.1, x0=0.0)
    with pytest.raises(GridMismatchError):
        WaveFunction(g, np.zeros(10))
    with pytest.raises(ValueError):
        WaveFunction(g, np.full(g.n, np.nan))


def test_dual_grid_nyquist(grid):
    dual = grid.dual()
    assert dual.nyquist == pytest.approx(np.pi / grid.dx)
    assert np.abs(dual.xi).max() <= dual.nyquist
    assert dual.spatial() == grid


def test_forward_point_mass(grid):
    # delta-like sample of weight 1 at x = 0 transforms to the constant 1
    vals = np.zeros(grid.n, dtype=complex)
    vals[grid.n // 2] = 1.0 / grid.dx  # x = 0 sits at index n/2
    fhat = forward_transform(WaveFunction(grid, vals))
    np.testing.assert_allclose(fhat.values, 1.0, atol=1e-12)


def test_forward_gaussian_closed_form(grid, gaussian):
    fhat = forward_transform(gaussian)
    xi = fhat.grid.xi
    np.testing.assert_allclose(fhat.values, np.sqrt(np.pi) * np.exp(-xi ** 2 / 4),
                               atol=1e-10)


def test_forward_modulation_shift(grid):
    f = WaveFunction(grid, np.exp(2j * grid.x) * np.exp(-grid.x ** 2))
    fhat = forward_transform(f)
    xi = fhat.grid.xi
    np.testing.assert_allclose(fhat.values, np.sqrt(np.pi) * np.exp(-(xi - 2) ** 2 / 4),
                               atol=1e-10)


def test_round_trip_random_band_limited(grid, rng):
    for _ in range(5):
        f = random_band_limited(grid, rng)
        back = inverse_transform(forward_transform(f))
        err = lp_norm(WaveFunction(grid, back.values - f.values), 2) / lp_norm(f, 2)
        assert err <= 1e-12


def test_inverse_gaussian_pair(grid):
    dual = grid.dual()
    ghat = WaveFunction(dual, np.sqrt(np.pi) * np.exp(-dual.xi ** 2 / 4))
    f = inverse_transform(ghat)
    np.testing.assert_allclose(f.values, np.exp(-grid.x ** 2), atol=1e-10)


def test_inverse_zero(grid):
    dual = grid.dual()
    f = inverse_transform(WaveFunction(dual, np.zeros(grid.n)))
    assert np.all(f.values == 0)


def test_round_trip_off_center_grid():
    g = UniformGrid(n=512, dx=0.05, x0=-3.0)  # asymmetric origin
    x = g.x
    f = WaveFunction(g, np.exp(-((x - 5.0) / 1.5) ** 2) * np.exp(1j * x))
    back = inverse_transform(forward_transform(f))
    np.testing.assert_allclose(back.values, f.values, atol=1e-12)


def test_lp_norm_unit_box():
    # [-16, 16) grid puts x = 0 and x = 1 exactly on grid points
    g = UniformGrid.symmetric(1024, 16.0)
    vals = ((g.x >= 0.0) & (g.x < 1.0)).astype(complex)
    assert lp_norm(WaveFunction(g, vals), 2) == pytest.approx(1.0, abs=1e-14)


def test_lp_norm_gaussian_closed_forms(gaussian):
    assert lp_norm(gaussian, 2) == pytest.approx((np.pi / 2) ** 0.25, rel=1e-12)
    assert lp_norm(gaussian, 6) == pytest.approx((np.pi / 6) ** (1 / 12), rel=1e-12)


def test_lp_norm_homogeneous(grid, rng):
    f = random_band_limited(grid, rng)
    c = 2.7 - 1.3j
    scaled = WaveFunction(grid, c * f.values)
    for p in (1.0, 2.0, 6.0):
        assert lp_norm(scaled, p) == pytest.approx(abs(c) * lp_norm(f, p), rel=1e-12)


def test_lp_norm_domain_error(gaussian):
    with pytest.raises(ValueError):
        lp_norm(gaussian, 0.5)


def test_inner_product_definitions(grid, rng):
    f = random_band_limited(grid, rng)
    g = random_band_limited(grid, rng)
    assert inner_product(f, f).real == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-12)
    # conjugate linearity in the first slot
    c = 1.2 + 0.7j
    cf = WaveFunction(grid, c * f.values)
    assert inner_product(cf, g) == pytest.approx(np.conj(c) * inner_product(f, g), rel=1e-12)


def test_inner_product_parity(grid, gaussian):
    odd = WaveFunction(grid, grid.x * gaussian.values)
    assert abs(inner_product(gaussian, odd)) <= 1e-14


def test_inner_product_grid_mismatch(grid, gaussian):
    other = UniformGrid.symmetric(512, 20.0)
    with pytest.raises(GridMismatchError):
        inner_product(gaussian, make_gaussian(other))


def test_plancherel_constant(grid, rng):
    for _ in range(3):
        f = random_band_limited(grid, rng)
        g = random_band_limited(grid, rng)
        lhs = inner_product(forward_transform(f), forward_transform(g))
        rhs = 2 * np.pi * inner_product(f, g)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_plancherel_norm(grid, gaussian):
    fhat = forward_transform(gaussian)
    assert lp_norm(fhat, 2) ** 2 == pytest.approx(2 * np.pi * lp_norm(gaussian, 2) ** 2,
                                                  rel=1e-10)


def test_parseval_polarization(grid, rng):
    # 4 <f,g> = ||f+g||^2 - ||f-g||^2 + i||f-ig||^2 - i||f+ig||^2
    f = random_band_limited(grid, rng)
    g = random_band_limited(grid, rng)

    def norm_sq(vals):
        return lp_norm(WaveFunction(grid, vals), 2) ** 2

    pol = (norm_sq(f.values + g.values) - norm_sq(f.values - g.values)
           + 1j * norm_sq(f.values - 1j * g.values) - 1j * norm_sq(f.values + 1j * g.values)) / 4
    assert pol == pytest.approx(inner_product(f, g), abs=1e-12)


def test_sample_offgrid_accuracy(grid):
    f = WaveFunction(grid, np.exp(-grid.x ** 2 / 2) * np.cos(2 * grid.x))
    pts = np.linspace(-3.0, 3.0, 101) + 0.0123
    exact = np.exp(-pts ** 2 / 2) * np.cos(2 * pts)
    np.testing.assert_allclose(sample_offgrid(f, pts), exact, atol=1e-9)
    with pytest.raises(ValueError):
        sample_offgrid(f, np.array([grid.x0 - 1.0]))


def test_wavefunction_csv_round_trip(tmp_path, grid, rng):
    f = random_band_limited(grid, rng)
    path = tmp_path / "wf.csv"
    save_wavefunction(f, path)
    g = load_wavefunction(path)
    assert g.grid == f.grid
    np.testing.assert_array_equal(g.values, f.values)
    # frequency-side functions round trip too
    fhat = forward_transform(f)
    save_wavefunction(fhat, path)
    ghat = load_wavefunction(path)
    assert isinstance(ghat.grid, FrequencyGrid)
    assert ghat.grid == fhat.grid
    np.testing.assert_array_equal(ghat.values, fhat.values)
