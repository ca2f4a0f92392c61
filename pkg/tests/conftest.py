import numpy as np
import pytest

from strichartz_lab.lattice import UniformGrid, WaveFunction, lp_norm, make_gaussian
from strichartz_lab.propagator import default_time_quadrature


@pytest.fixture(scope="session")
def grid():
    return UniformGrid.symmetric(n=1024, half_width=20.0)


@pytest.fixture(scope="session")
def tq():
    return default_time_quadrature()


@pytest.fixture()
def gaussian(grid):
    return make_gaussian(grid)


@pytest.fixture()
def unit_gaussian(grid):
    f = make_gaussian(grid)
    f.values /= lp_norm(f, 2)
    return f


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)


def random_band_limited(grid, rng, band=8.0):
    """Smooth random profile with spectrum inside |xi| <= band."""
    dual = grid.dual()
    xi = dual.xi
    vals = np.zeros(grid.n, dtype=complex)
    for _ in range(3):
        amp = rng.standard_normal() + 1j * rng.standard_normal()
        center = rng.uniform(-band / 2, band / 2)
        width = rng.uniform(1.0, 2.0)
        vals += amp * np.exp(-((xi - center) / width) ** 2)
    from strichartz_lab.lattice import inverse_transform

    f = inverse_transform(WaveFunction(dual, vals))
    f.values /= lp_norm(f, 2)
    return f
