"""Euler-Lagrange fixed-point machinery for Strichartz extremizers.

The stationarity condition for the L^6/L^2 functional is

    omega <g, f> = Q(g, f, f, f, f, f)   for all g in L^2,

with omega = Q(f,..,f) / ||f||_2^2 > 0.  The Riesz representative of the
right-hand side defines the quintic map

    Lambda f = KAPPA * int e^{-it Delta} ( |u|^4 u )(., t) dt,  u = e^{it Delta} f,

whose fixed rays are exactly the Euler-Lagrange solutions.  A normalized
Picard iteration f <- gauge_fix(Lambda f / ||Lambda f||_2) drives profiles
toward them; the gauge fixing quotients out the symmetry group (translation,
modulation, parabolic rescaling, global phase) so the iteration metric does
not stall on symmetry drift.

Far time nodes use the same chirp factorization as the propagator: with
ghat_t the factored profile and h = |ghat_t|^4 ghat_t,

    e^{-it xi^2} F[ |u|^4 u ](xi) = (4 pi t)^{-2} [ e^{i (1/4t) Delta} h ](xi)

where the flow on the right acts on the frequency axis (a Fresnel step of
duration 1/4t, small exactly when |t| is large).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lattice import (
    GridMismatchError,
    UniformGrid,
    WaveFunction,
    forward_transform,
    inverse_transform,
    lp_norm,
    warn_if_aliased,
)
from .propagator import (
    TimeQuadrature,
    _chirp_profile,
    default_time_quadrature,
    evolve_range,
    spacetime_lp,
    switch_time,
)
from .sextic_form import KAPPA

__all__ = [
    "IterationState",
    "PicardResult",
    "gauge_fix",
    "lambda_apply",
    "omega_of",
    "picard_iterate",
    "save_trajectory",
]

#: second moment of the unit-normalized reference profile e^{-x^2}
_TARGET_SECOND_MOMENT = 0.25


@dataclass
class IterationState:
    """One step of the normalized fixed-point iteration."""

    f: WaveFunction
    omega_estimate: float
    ratio: float
    step_index: int
    delta: float


@dataclass
class PicardResult:
    states: list[IterationState] = field(default_factory=list)
    converged: bool = False

    @property
    def final(self) -> IterationState:
        return self.states[-1]


def omega_of(f: WaveFunction, tq: TimeQuadrature | None = None) -> float:
    """Q(f,..,f) / ||f||_2^2.

    With all six slots equal the space-time integrand is |u|^6, so this is
    KAPPA ||u||_6^6 / ||f||_2^2; positivity is structural.
    """
    l2 = lp_norm(f, 2)
    if l2 == 0:
        raise ValueError("omega_of requires a nonzero input")
    if tq is None:
        tq = default_time_quadrature()
    u = evolve_range(f, tq)
    return float(KAPPA * spacetime_lp(u, 6) ** 6 / l2 ** 2)


def lambda_apply(f: WaveFunction, tq: TimeQuadrature | None = None,
                 switch: float | None = None) -> WaveFunction:
    """Apply the quintic Euler-Lagrange map Lambda.

    Satisfies <g, Lambda f> = Q(g, f, f, f, f, f) for every test function g;
    homogeneous of signed degree five: Lambda(c f) = |c|^4 c Lambda f.
    """
    if not isinstance(f.grid, UniformGrid):
        raise GridMismatchError("lambda_apply expects a spatial-grid function")
    if lp_norm(f, 2) == 0:
        raise ValueError("lambda_apply requires a nonzero input")
    # the quintic power spreads the spectrum fivefold
    warn_if_aliased(f, band_fraction=1.0 / 6.0, tol=1e-8, context="lambda_apply")
    if tq is None:
        tq = default_time_quadrature()
    if switch is None:
        switch = switch_time(f)
    grid = f.grid
    fhat = forward_transform(f)
    xi = fhat.grid.xi
    dual = fhat.grid
    w_axis = dual.as_spatial_axis()
    accum = np.zeros(grid.n, dtype=complex)
    phase_x0 = np.exp(1j * grid.x0 * xi)
    for t, w in zip(tq.nodes, tq.weights):
        if abs(t) <= switch:
            u = np.fft.ifft(np.fft.ifftshift(phase_x0 * fhat.values * np.exp(1j * t * xi ** 2))) / grid.dx
            quintic = np.abs(u) ** 4 * u
            n_hat = grid.dx * np.exp(-1j * grid.x0 * xi) * np.fft.fftshift(np.fft.fft(quintic))
            accum += w * np.exp(-1j * t * xi ** 2) * n_hat
        else:
            ghat = _chirp_profile(f.values, grid, t)
            h = WaveFunction(w_axis, np.abs(ghat) ** 4 * ghat)
            h_hat = forward_transform(h)
            h_hat.values *= np.exp(1j * (1.0 / (4.0 * t)) * h_hat.grid.xi ** 2)
            fresnel = inverse_transform(h_hat)
            accum += w * (4.0 * np.pi * t) ** (-2.0) * fresnel.values
    return inverse_transform(WaveFunction(dual, KAPPA * accum))


# ---------------------------------------------------------------------------
# gauge fixing
# ---------------------------------------------------------------------------

def _moments(axis: np.ndarray, power: np.ndarray) -> tuple[float, float]:
    total = power.sum()
    center = float((axis * power).sum() / total)
    second = float(((axis - center) ** 2 * power).sum() / total)
    return center, second


def _spectral_translate(fhat_values: np.ndarray, xi: np.ndarray, shift: float) -> np.ndarray:
    """fhat of f(. + shift)."""
    return np.exp(1j * shift * xi) * fhat_values


def _resample_scaled(f: WaveFunction, lam: float) -> np.ndarray:
    """Samples of sqrt(lam) f(lam x) on the same grid via the exact Fourier sum.

    Direct O(n^2) evaluation of the trigonometric interpolant; spectrally
    exact for band-limited data, used only for the parabolic rescale.  The
    interpolant is periodic, so evaluation points pushed outside the box by
    lam > 1 are set to zero (the true profile has decayed there) instead of
    wrapping around.
    """
    fhat = forward_transform(f)
    xi = fhat.grid.xi
    y = lam * f.grid.x
    half = 0.5 * f.grid.extent
    inside = (y >= -half) & (y < half)
    vals = np.zeros(f.grid.n, dtype=complex)
    kernel = np.exp(1j * np.outer(y[inside], xi))
    vals[inside] = kernel @ fhat.values * (fhat.grid.dxi / (2.0 * np.pi))
    return np.sqrt(lam) * vals


def gauge_fix(f: WaveFunction, tol: float = 1e-12) -> WaveFunction:
    """Quotient the symmetry group: center |f|^2 at x = 0, center |fhat|^2 at
    xi = 0, rescale parabolically to the reference second moment 1/4, make
    fhat(0) real positive, and normalize to unit L^2.

    Idempotent to rounding; leaves the Strichartz ratio unchanged because
    every operation is an invariance of the functional.
    """
    l2 = lp_norm(f, 2)
    if l2 == 0:
        raise ValueError("gauge_fix requires a nonzero input")
    grid = f.grid
    fhat = forward_transform(f)
    xi = fhat.grid.xi

    x_center, _ = _moments(grid.x, np.abs(f.values) ** 2)
    if abs(x_center) > tol:
        fhat.values = _spectral_translate(fhat.values, xi, x_center)
    xi_center, _ = _moments(xi, np.abs(fhat.values) ** 2)
    work = inverse_transform(fhat)
    if abs(xi_center) > tol:
        work.values = work.values * np.exp(-1j * xi_center * grid.x)

    _, second = _moments(grid.x, np.abs(work.values) ** 2)
    lam = np.sqrt(second / _TARGET_SECOND_MOMENT)
    if abs(lam - 1.0) > tol:
        work.values = _resample_scaled(work, lam)

    zero_mode = work.values.sum() * grid.dx  # fhat(0)
    if abs(zero_mode) > 0:
        work.values = work.values * np.exp(-1j * np.angle(zero_mode))
    work.values = work.values / lp_norm(work, 2)
    return work


def picard_iterate(f0: WaveFunction, tol: float = 1e-8, max_steps: int = 200,
                   tq: TimeQuadrature | None = None) -> PicardResult:
    """Run f <- gauge_fix(Lambda f / ||Lambda f||_2) from f0.

    Stops when the L^2 change between consecutive gauge-fixed iterates drops
    to tol, or flags the trajectory unconverged after max_steps.  Ratio and
    omega are recorded at every step; no monotonicity is assumed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if lp_norm(f0, 2) == 0:
        raise ValueError("picard_iterate requires a nonzero start")
    if tq is None:
        tq = default_time_quadrature()

    def observe(g: WaveFunction, step: int, delta: float) -> IterationState:
        # g is unit-normalized, so the L^6 norm of the flow is the ratio and
        # omega = KAPPA * ratio^6
        l6 = spacetime_lp(evolve_range(g, tq), 6)
        return IterationState(f=g, omega_estimate=float(KAPPA * l6 ** 6),
                              ratio=float(l6), step_index=step, delta=delta)

    result = PicardResult()
    current = gauge_fix(f0)
    result.states.append(observe(current, 0, np.inf))
    for step in range(1, max_steps + 1):
        lam_f = lambda_apply(current, tq)
        lam_f.values /= lp_norm(lam_f, 2)
        nxt = gauge_fix(lam_f)
        delta = lp_norm(WaveFunction(nxt.grid, nxt.values - current.values), 2)
        current = nxt
        result.states.append(observe(current, step, float(delta)))
        if delta <= tol:
            result.converged = True
            break
    return result


def save_trajectory(result: PicardResult, path) -> None:
    """CSV (step, delta, ratio, omega) for a Picard trajectory."""
    with open(path, "w") as fh:
        fh.write(f"# picard-trajectory steps={len(result.states)} "
                 f"converged={result.converged}\n")
        fh.write("step,delta,ratio,omega\n")
        for st in result.states:
            delta = "" if not np.isfinite(st.delta) else repr(st.delta)
            fh.write(f"{st.step_index},{delta},{st.ratio!r},{st.omega_estimate!r}\n")
