"""Grids, quadrature and wavevector superposition kernels.

All routines work in natural units (hbar = m = 1 unless the caller says
otherwise) and use the symmetric Fourier convention: a factor (2*pi)**(-d/2)
on the synthesis integral in d dimensions.  Quadrature is composite Simpson
on uniform grids; internally constructed grids always carry an odd number of
nodes so the rule applies cleanly, and sampled inputs with an even node
count are closed with a one-interval cubic end correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from numpy.typing import NDArray

ArrayF = NDArray[np.float64]
ArrayC = NDArray[np.complex128]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Grid1D:
    """Uniform one-dimensional grid with n nodes on [x_min, x_max]."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self) -> None:
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.n < 2:
            raise ValueError("grid needs at least 2 nodes")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    def points(self) -> ArrayF:
        return np.linspace(self.x_min, self.x_max, self.n)


@dataclass(frozen=True)
class KBall:
    """Radial quadrature domain for an isotropic ball |k| <= k_max."""

    k_max: float
    n_k: int = 513

    def __post_init__(self) -> None:
        if not np.isfinite(self.k_max) or self.k_max < 0.0:
            raise ValueError("k_max must be finite and nonnegative")
        if self.n_k < 2:
            raise ValueError("ball quadrature needs at least 2 nodes")

    def nodes(self) -> ArrayF:
        return np.linspace(0.0, self.k_max, _as_odd(self.n_k))


@dataclass(frozen=True)
class ComplexField:
    """Complex samples of a wavefunction (or amplitude) over a Grid1D."""

    grid: Grid1D
    values: ArrayC

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.n,):
            raise ValueError("field length must match the grid")
        if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", vals)

    def density(self) -> ArrayF:
        return np.abs(self.values) ** 2


@dataclass(frozen=True)
class SingleMode:
    """Symbolic single retained mode at wavenumber k0.

    Stands in for a delta spike in a spectral amplitude; consumers treat it
    analytically instead of sampling it on a grid.
    """

    k0: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.k0):
            raise ValueError("k0 must be finite")


Amplitude = Union[Callable[[ArrayF], ArrayC], SingleMode]
Interval = Union[Sequence[float], tuple]


def _as_odd(n: int) -> int:
    return n if n % 2 == 1 else n + 1


def _simpson_weights(n: int, h: float) -> ArrayF:
    """Composite Simpson weights for n uniform nodes with spacing h.

    Odd n is the plain composite rule.  Even n closes the final interval
    with the cubic three-point correction so the scheme stays O(h^4).
    n == 2 degrades to the trapezoid rule.
    """
    if n < 2:
        raise ValueError("quadrature needs at least 2 nodes")
    if h <= 0.0:
        raise ValueError("node spacing must be positive")
    if n == 2:
        return np.array([0.5 * h, 0.5 * h])
    w = np.zeros(n)
    m = n if n % 2 == 1 else n - 1
    w[0:m:2] += 2.0 * h / 3.0
    w[1:m:2] += 4.0 * h / 3.0
    w[0] -= h / 3.0
    w[m - 1] -= h / 3.0
    if n % 2 == 0:
        w[n - 3] += -h / 12.0
        w[n - 2] += 8.0 * h / 12.0
        w[n - 1] += 5.0 * h / 12.0
    return w


def integrate_1d(field: ComplexField) -> complex:
    """Integrate a sampled field over its grid by composite Simpson.

    Parameters
    ----------
    field : ComplexField
        Uniform samples; at least two nodes, all finite.

    Returns
    -------
    complex
        The approximate integral, O(h^4) accurate for smooth integrands.
    """
    vals = field.values
    if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
        raise ValueError("field values must be finite")
    w = _simpson_weights(field.grid.n, field.grid.spacing)
    return complex(np.dot(w, vals))


def integrate_real(values: ArrayF, spacing: float) -> float:
    """Simpson integral of real samples on a uniform grid."""
    vals = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(vals)):
        raise ValueError("values must be finite")
    return float(np.dot(_simpson_weights(vals.size, spacing), vals))


def integrate_ball(radial_samples: ArrayC, ball: KBall) -> complex:
    """Integrate f over the ball |k| <= k_max for isotropic f.

    The samples are f(k) on the ball's radial nodes; the result is
    4*pi * integral of f(k) k^2 dk from 0 to k_max.
    """
    k = ball.nodes()
    vals = np.asarray(radial_samples, dtype=np.complex128)
    if vals.shape != k.shape:
        raise ValueError("radial samples must match the ball's node count")
    if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
        raise ValueError("radial samples must be finite")
    w = _simpson_weights(k.size, k[1] - k[0]) if ball.k_max > 0.0 else None
    if w is None:
        return 0.0 + 0.0j
    return complex(4.0 * np.pi * np.dot(w, vals * k * k))


def _interval_bounds(domain) -> tuple[float, float]:
    if hasattr(domain, "k_lo") and hasattr(domain, "k_hi"):
        lo, hi = float(domain.k_lo), float(domain.k_hi)
    else:
        lo, hi = float(domain[0]), float(domain[1])
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
        raise ValueError("interval must be finite with k_hi >= k_lo")
    return lo, hi


def _unnormalized_sinc(z: ArrayF) -> ArrayF:
    # sin(z)/z with the limit value 1 at z = 0 (np.sinc carries a pi).
    return np.sinc(z / np.pi)


def radial_superposition(
    amplitude: Amplitude,
    ball: KBall,
    r,
    kernel: str = "oscillatory",
) -> ArrayC:
    """Isotropic 3-D superposition over a ball of wavevectors.

    Evaluates (2*pi)**(-3/2) * 4*pi * int_0^{k_max} k^2 chi(k) K(k, r) dk
    with K = sin(kr)/(kr) for kernel="oscillatory" and K = exp(-k|r|) for
    kernel="decaying".  Vectorized over r; returns an array matching r.
    """
    r_arr = np.atleast_1d(np.asarray(r, dtype=np.float64))
    if kernel not in ("oscillatory", "decaying"):
        raise ValueError("kernel must be 'oscillatory' or 'decaying'")
    pref = TWO_PI ** -1.5
    if isinstance(amplitude, SingleMode):
        k0 = amplitude.k0
        if not (0.0 <= k0 <= ball.k_max):
            out = np.zeros(r_arr.shape, dtype=np.complex128)
        elif kernel == "oscillatory":
            out = pref * 4.0 * np.pi * k0 * k0 * _unnormalized_sinc(k0 * r_arr)
            out = out.astype(np.complex128)
        else:
            out = pref * 4.0 * np.pi * k0 * k0 * np.exp(-k0 * np.abs(r_arr))
            out = out.astype(np.complex128)
        return out
    k = ball.nodes()
    if ball.k_max == 0.0:
        return np.zeros(r_arr.shape, dtype=np.complex128)
    amp = np.asarray(amplitude(k), dtype=np.complex128)
    w = _simpson_weights(k.size, k[1] - k[0])
    wts = w * k * k * amp
    out = np.empty(r_arr.shape, dtype=np.complex128)
    chunk = max(1, 2_000_000 // k.size)
    for i in range(0, r_arr.size, chunk):
        rc = r_arr[i : i + chunk]
        if kernel == "oscillatory":
            kern = _unnormalized_sinc(np.outer(rc, k))
        else:
            kern = np.exp(-np.outer(np.abs(rc), k))
        out[i : i + chunk] = pref * 4.0 * np.pi * (kern @ wts)
    return out


def line_superposition(
    amplitude: Amplitude,
    interval,
    x,
    n_k: int = 2001,
) -> ArrayC:
    """1-D Fourier synthesis over a wavenumber interval.

    Evaluates (2*pi)**(-1/2) * int_{k_lo}^{k_hi} chi(k) exp(i k x) dk,
    vectorized over x.
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    lo, hi = _interval_bounds(interval)
    pref = TWO_PI ** -0.5
    if isinstance(amplitude, SingleMode):
        k0 = amplitude.k0
        if not (lo <= k0 <= hi):
            return np.zeros(x_arr.shape, dtype=np.complex128)
        return pref * np.exp(1j * k0 * x_arr)
    if hi == lo:
        return np.zeros(x_arr.shape, dtype=np.complex128)
    k = np.linspace(lo, hi, _as_odd(n_k))
    amp = np.asarray(amplitude(k), dtype=np.complex128)
    wts = _simpson_weights(k.size, k[1] - k[0]) * amp
    out = np.empty(x_arr.shape, dtype=np.complex128)
    chunk = max(1, 2_000_000 // k.size)
    for i in range(0, x_arr.size, chunk):
        phases = np.exp(1j * np.outer(x_arr[i : i + chunk], k))
        out[i : i + chunk] = pref * (phases @ wts)
    return out


def superpose(amplitude: Amplitude, domain, x: float, dimension: int, n_k: int = 2001) -> complex:
    """Synthesize a wavefunction value from a per-wavenumber amplitude.

    Parameters
    ----------
    amplitude : callable or SingleMode
        chi(k); callables must accept an ndarray of wavenumbers.
    domain : KBall or (k_lo, k_hi)
        Wavevector domain; a ball for dimension 3, an interval for 1.
    x : float
        Position (radius for dimension 3).
    dimension : int
        1 or 3.
    n_k : int
        Node count for 1-D interval quadrature (balls carry their own).
    """
    if dimension == 3:
        if not isinstance(domain, KBall):
            raise ValueError("dimension 3 requires a KBall domain")
        return complex(radial_superposition(amplitude, domain, x)[0])
    if dimension == 1:
        return complex(line_superposition(amplitude, domain, x, n_k=n_k)[0])
    raise ValueError("dimension must be 1 or 3")


def superpose_field(
    amplitude: Amplitude,
    domain,
    grid: Grid1D,
    dimension: int,
    n_k: int = 2001,
) -> ComplexField:
    """Vectorized superpose over every node of a grid."""
    x = grid.points()
    if dimension == 3:
        if not isinstance(domain, KBall):
            raise ValueError("dimension 3 requires a KBall domain")
        vals = radial_superposition(amplitude, domain, x)
    elif dimension == 1:
        vals = line_superposition(amplitude, domain, x, n_k=n_k)
    else:
        raise ValueError("dimension must be 1 or 3")
    return ComplexField(grid, vals)
