"""Finite square well treated as a two-branch wavevector ensemble.

A particle bound in a well of depth V0 and half width x0 is an ensemble of
piecewise members: each member oscillates inside the well with wavenumber
k1 and decays outside with constant k2, the two tied by the energy budget
k1^2 + k2^2 = (m/hbar^2) V0.  The ensemble density integrates member
densities over k1 in [0, k0] inside the well and over k2 in [0, k0']
outside, with k0 and k0' the oscillatory and decaying bounds.

Members with cos(k1 x0) = 0 put all their weight inside the well; the
member formula divides by that cosine, so a small neighbourhood of each
such resonance is excluded from quadrature and the excluded measure is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensemble import ParticleModel
from .numerics import (
    ArrayF,
    Grid1D,
    _as_odd,
    _simpson_weights,
    integrate_real,
)


class ResonantMemberError(ValueError):
    """Raised for members whose interior cosine vanishes."""


@dataclass(frozen=True)
class WellConfig:
    """Square well of depth v0 > E_T and half width x0 in the bound regime."""

    particle: ParticleModel
    v0: float
    x0: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.v0) or self.v0 <= 0.0:
            raise ValueError("well depth v0 must be positive and finite")
        if not np.isfinite(self.x0) or self.x0 <= 0.0:
            raise ValueError("half width x0 must be positive and finite")
        if self.particle.total_energy >= self.v0:
            raise ValueError("bound regime requires E_T < v0")

    @property
    def pair_constant(self) -> float:
        """k1^2 + k2^2 budget, (m/hbar^2) v0."""
        return self.particle.mass * self.v0 / self.particle.hbar**2

    @property
    def k0(self) -> float:
        """Interior oscillatory bound sqrt(m E_T)/hbar."""
        p = self.particle
        return float(np.sqrt(p.mass * p.total_energy)) / p.hbar

    @property
    def k0_prime(self) -> float:
        """Exterior decay bound sqrt(m (v0 - E_T))/hbar."""
        p = self.particle
        return float(np.sqrt(p.mass * (self.v0 - p.total_energy))) / p.hbar


@dataclass(frozen=True)
class WellMember:
    """One piecewise member: interior wavenumber, decay constant, amplitude."""

    k1: float
    k2: float
    chi0: float


def member_amplitude_well(cfg: WellConfig, k1: float, k2: float) -> float:
    """Member amplitude sqrt(m k2/(1 + k2 x0)) * exp(k2 x0) * cos(k1 x0)."""
    m, x0 = cfg.particle.mass, cfg.x0
    if k2 < 0.0:
        raise ValueError("decay constant k2 must be nonnegative")
    return float(np.sqrt(m * k2 / (1.0 + k2 * x0)) * np.exp(k2 * x0) * np.cos(k1 * x0))


def pair_member(cfg: WellConfig, k1: float, resonance_tol: float = 1e-6) -> WellMember:
    """Build the member with interior wavenumber k1.

    The decay constant follows from the pairing k1^2 + k2^2 =
    (m/hbar^2) v0.  Members with |cos(k1 x0)| below resonance_tol are
    rejected with ResonantMemberError.
    """
    if not np.isfinite(k1) or k1 < 0.0 or k1 > cfg.k0:
        raise ValueError("k1 must lie in [0, k0]")
    k2 = float(np.sqrt(cfg.pair_constant - k1 * k1))
    if abs(np.cos(k1 * cfg.x0)) < resonance_tol:
        raise ResonantMemberError(f"member k1 = {k1} sits on an interior-cosine zero")
    return WellMember(k1=k1, k2=k2, chi0=member_amplitude_well(cfg, k1, k2))


def member_wavefunction(member: WellMember, cfg: WellConfig, x) -> ArrayF:
    """Piecewise member wavefunction, continuous at both walls.

    chi0 e^{k2 x} left of the well, chi0 e^{-k2 x0} cos(k1 x)/cos(k1 x0)
    inside, chi0 e^{-k2 x} to the right.
    """
    x_arr = np.asarray(x, dtype=np.float64)
    k1, k2, chi0, x0 = member.k1, member.k2, member.chi0, cfg.x0
    # grouping the cosine ratio keeps the wall nodes bitwise equal to the
    # outer branch: cos(k1 x0)/cos(k1 x0) is exactly 1.0
    inside = chi0 * np.exp(-k2 * x0) * (np.cos(k1 * x_arr) / np.cos(k1 * x0))
    right = chi0 * np.exp(-k2 * x_arr)
    left = chi0 * np.exp(k2 * x_arr)
    return np.where(np.abs(x_arr) <= x0, inside, np.where(x_arr > 0.0, right, left))


def bound_state_residual(cfg: WellConfig, k1: float) -> float:
    """Defect k2 - k1 tan(k1 x0); zero on even bound-state members."""
    k2 = float(np.sqrt(cfg.pair_constant - k1 * k1))
    return k2 - k1 * float(np.tan(k1 * cfg.x0))


def is_bound_state_member(cfg: WellConfig, k1: float, tol: float = 1e-9) -> bool:
    """Diagnostic predicate for the even bound-state condition."""
    return abs(bound_state_residual(cfg, k1)) <= tol


@dataclass(frozen=True)
class NormalizationAudit:
    """Quadrature check of one member's squared norm against the mass."""

    integral: float
    expected: float

    @property
    def ratio(self) -> float:
        return self.integral / self.expected


def normalization_audit(
    member: WellMember, cfg: WellConfig, n: int = 40001, tail_lengths: float = 40.0
) -> NormalizationAudit:
    """Integrate |member|^2 over the line and compare with the mass.

    The squared norm only equals m on members satisfying the bound-state
    condition k2 = k1 tan(k1 x0); elsewhere the audit reports the actual
    ratio instead of asserting it.
    """
    half = cfg.x0 + tail_lengths / member.k2
    x = np.linspace(-half, half, _as_odd(n))
    vals = member_wavefunction(member, cfg, x)
    integral = integrate_real(vals * vals, x[1] - x[0])
    return NormalizationAudit(integral=float(integral), expected=cfg.particle.mass)


@dataclass(frozen=True)
class WellDensityResult:
    """Normalized ensemble density with quadrature diagnostics."""

    grid: Grid1D
    values: ArrayF
    excluded_k_measure: float
    excluded_node_count: int
    norm_constant: float


def well_ensemble_density(
    cfg: WellConfig,
    grid: Grid1D,
    n_k: int = 2001,
    resonance_tol: float = 1e-6,
) -> WellDensityResult:
    """Two-branch ensemble density of the well, normalized to unit integral.

    Inside the well the density integrates member densities over k1 in
    [0, k0]; outside it integrates over k2 in [0, k0'], the partner
    wavenumber following from the pairing in both branches.  Resonant k1
    nodes are excluded from the interior quadrature and their k-measure is
    reported.  The result is even in x and renormalized on the grid.
    """
    m, x0 = cfg.particle.mass, cfg.x0
    x = grid.points()
    ax = np.abs(x)
    rho = np.zeros(x.shape)

    # interior branch
    k1 = np.linspace(0.0, cfg.k0, _as_odd(n_k))
    w1 = _simpson_weights(k1.size, k1[1] - k1[0])
    k2_of_k1 = np.sqrt(cfg.pair_constant - k1 * k1)
    cos_wall = np.cos(k1 * x0)
    keep = np.abs(cos_wall) >= resonance_tol
    excluded_measure = float(np.sum(w1[~keep]))
    excluded_count = int(np.count_nonzero(~keep))
    # member amplitude squared times its interior envelope, combined in one
    # expression: the bare exp(+2 k2 x0) inside chi0^2 overflows for deep
    # wells, the product never does.
    scale_in = np.where(keep, m * k2_of_k1 / (1.0 + k2_of_k1 * x0), 0.0)
    inner = ax <= x0
    if np.any(inner):
        cos_sq = np.cos(np.outer(ax[inner], k1)) ** 2
        rho[inner] = cos_sq @ (w1 * scale_in)

    # exterior branch
    k2 = np.linspace(0.0, cfg.k0_prime, _as_odd(n_k))
    w2 = _simpson_weights(k2.size, k2[1] - k2[0])
    k1_of_k2 = np.sqrt(cfg.pair_constant - k2 * k2)
    scale_out = m * k2 / (1.0 + k2 * x0) * np.cos(k1_of_k2 * x0) ** 2
    outer = ax > x0
    if np.any(outer):
        decay = np.exp(-2.0 * np.outer(ax[outer] - x0, k2))
        rho[outer] = decay @ (w2 * scale_out)

    norm = integrate_real(rho, grid.spacing)
    if norm <= 0.0:
        raise ValueError("ensemble density vanished on the grid")
    return WellDensityResult(
        grid=grid,
        values=rho / norm,
        excluded_k_measure=excluded_measure,
        excluded_node_count=excluded_count,
        norm_constant=float(norm),
    )
