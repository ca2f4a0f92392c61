import numpy as np
import pytest

from strichartz_lab.bilinear import (
    BandSpec,
    bilinear_l3,
    hausdorff_young_density,
    make_band_limited,
    pair_time_quadrature,
    save_sweep,
    separation_sweep,
    sweep_grid,
)
from strichartz_lab.lattice import (
    UniformGrid,
    WaveFunction,
    forward_transform,
    lp_norm,
    make_gaussian,
)
from strichartz_lab.propagator import (
    default_time_quadrature,
    evolve_range,
    spacetime_lp,
)


def test_band_spec_bounds():
    assert BandSpec("low", s=1.5).bounds() == (0.0, 1.5)
    assert BandSpec("high", s=1.0, N=16).bounds() == (16.0, 32.0)
    assert BandSpec("annulus", lo=2.0, hi=5.0).bounds() == (2.0, 5.0)
    with pytest.raises(ValueError):
        BandSpec("high", s=1.0, N=0.5).bounds()
    with pytest.raises(ValueError):
        BandSpec("annulus", lo=5.0, hi=2.0).bounds()


def test_make_band_limited_low_flat(grid):
    f = make_band_limited(grid, BandSpec("low", s=1.0), "flat")
    assert lp_norm(f, 2) == pytest.approx(1.0, rel=1e-12)
    fhat = forward_transform(f)
    outside = np.abs(fhat.grid.xi) > 1.0
    assert np.abs(fhat.values[outside]).max() <= 1e-12


def test_make_band_limited_high_support(grid):
    f = make_band_limited(grid, BandSpec("high", s=1.0, N=16), "flat")
    fhat = forward_transform(f)
    xi = np.abs(fhat.grid.xi)
    outside = (xi < 16.0) | (xi > 32.0)
    assert np.abs(fhat.values[outside]).max() <= 1e-12


def test_make_band_limited_seed_reproducible(grid):
    a = make_band_limited(grid, BandSpec("low", s=2.0), "random", seed=7)
    b = make_band_limited(grid, BandSpec("low", s=2.0), "random", seed=7)
    np.testing.assert_array_equal(a.values, b.values)
    c = make_band_limited(grid, BandSpec("low", s=2.0), "random", seed=8)
    assert not np.array_equal(a.values, c.values)


def test_make_band_limited_nyquist_error(grid):
    with pytest.raises(ValueError):
        make_band_limited(grid, BandSpec("high", s=1.0, N=64), "flat")


def test_bilinear_gaussian_no_separation(grid, tq):
    f = make_gaussian(grid)
    val = bilinear_l3(f, f, tq)
    l6 = spacetime_lp(evolve_range(f, tq), 6)
    assert val == pytest.approx(l6 ** 2, rel=1e-10)
    assert val == pytest.approx(0.8281, abs=2e-3)


def test_bilinear_zero_input(grid, unit_gaussian, tq):
    zero = WaveFunction(grid, np.zeros(grid.n))
    assert bilinear_l3(unit_gaussian, zero, tq) == 0.0


def test_bilinear_separated_under_bound():
    g = sweep_grid(16, 1.0)
    h1 = make_band_limited(g, BandSpec("low", s=1.0), "flat")
    h2 = make_band_limited(g, BandSpec("high", s=1.0, N=16), "flat")
    val = bilinear_l3(h1, h2, pair_time_quadrature(16, 1.0))
    bound = hausdorff_young_density(h1, h2)
    assert val <= bound
    # the bound itself scales like N^{-1/6} with an order-one constant
    assert val <= 1.0 * 16 ** (-1 / 6)


def test_bilinear_galilean_invariance():
    # smooth in-band profiles: hard-edged bands shed slowly decaying tails
    # whose box truncation is not translation invariant
    g = sweep_grid(8, 1.0)
    dual = g.dual()
    xi = dual.xi
    from strichartz_lab.lattice import inverse_transform

    def profile(center, width):
        h = inverse_transform(WaveFunction(dual, np.exp(-((xi - center) / width) ** 2)))
        h.values /= lp_norm(h, 2)
        return h

    h1 = profile(0.0, 0.4)
    h2 = profile(12.0, 1.5)
    tq = pair_time_quadrature(8, 1.0)
    base = bilinear_l3(h1, h2, tq, switch=0.2)
    b = 1.0
    m1 = WaveFunction(g, np.exp(1j * b * g.x) * h1.values)
    m2 = WaveFunction(g, np.exp(1j * b * g.x) * h2.values)
    moved = bilinear_l3(m1, m2, tq, switch=0.2)
    assert moved == pytest.approx(base, rel=1e-6)


def test_hausdorff_young_swap_symmetry():
    g = sweep_grid(8, 1.0)
    h1 = make_band_limited(g, BandSpec("low", s=1.0), "random", seed=3)
    h2 = make_band_limited(g, BandSpec("high", s=1.0, N=8), "random", seed=4)
    assert hausdorff_young_density(h1, h2) == pytest.approx(
        hausdorff_young_density(h2, h1), rel=1e-12)


def test_hausdorff_young_overlap_error(grid):
    h1 = make_band_limited(grid, BandSpec("low", s=2.0), "flat")
    h2 = make_band_limited(grid, BandSpec("annulus", lo=1.0, hi=3.0), "flat")
    with pytest.raises(ValueError):
        hausdorff_young_density(h1, h2)


def test_hausdorff_young_bounds_smooth_pairs(grid, tq):
    # separated smooth profiles, not just hard bands
    dual = grid.dual()
    low = WaveFunction(dual, np.exp(-dual.xi ** 2) * (np.abs(dual.xi) <= 3.0))
    hi_mask = (np.abs(dual.xi) >= 12.0) & (np.abs(dual.xi) <= 24.0)
    high = WaveFunction(dual, np.exp(-((np.abs(dual.xi) - 18.0) / 3.0) ** 2) * hi_mask)
    from strichartz_lab.lattice import inverse_transform

    h1 = inverse_transform(low)
    h1.values /= lp_norm(h1, 2)
    h2 = inverse_transform(high)
    h2.values /= lp_norm(h2, 2)
    assert bilinear_l3(h1, h2, tq) <= hausdorff_young_density(h1, h2)


def test_separation_sweep_slope_window():
    res = separation_sweep(1.0, [4, 8, 16], profile="flat")
    assert -0.30 <= res.slope <= -1 / 6 + 0.05
    assert all(v <= b * (1 + 1e-8) for v, b in zip(res.values, res.bounds))


def test_separation_sweep_width_robustness():
    res1 = separation_sweep(1.0, [4, 8, 16], profile="flat")
    res2 = separation_sweep(2.0, [4, 8, 16], profile="flat")
    assert abs(res1.slope - res2.slope) <= 0.03


def test_separation_sweep_excludes_control_point():
    res = separation_sweep(1.0, [1, 4, 8], profile="flat")
    assert res.excluded == [1]
    assert len(res.values) == 3  # control point evaluated, not fitted
    res_no_control = separation_sweep(1.0, [4, 8], profile="flat")
    assert res.slope == pytest.approx(res_no_control.slope, rel=1e-12)


def test_separation_sweep_clipping_error():
    tiny = UniformGrid.symmetric(64, 10.0)
    with pytest.raises(ValueError):
        make_band_limited(tiny, BandSpec("high", s=1.0, N=16), "flat")


def test_sweep_csv(tmp_path):
    res = separation_sweep(1.0, [4, 8], profile="flat")
    path = tmp_path / "sweep.csv"
    save_sweep(res, path)
    lines = path.read_text().splitlines()
    assert lines[1] == "N,value,bound,slope_so_far,log10_N,log10_value"
    assert len(lines) == 2 + 2
