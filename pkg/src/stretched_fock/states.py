"""Stretched coherent states: construction, photon statistics, time evolution,
and overlaps.

A state labelled by (zeta, sigma) has Fock amplitudes

    c_n = exp(-|zeta|^(2 sigma) / 2) * w^n / sqrt(n!),      w = zeta**sigma,

so its photon distribution is Poisson with mean |zeta|^(2 sigma) = |w|^2.
Amplitudes are assembled in log-polar form, which keeps them finite for any
cutoff the tail bound admits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    FockVector,
    StretchLabel,
    TruncationConfig,
    TruncationError,
    ladder_matrices,
    displacement_block,
    log_factorial_table,
    poisson_tail_bound,
    required_dim,
)

__all__ = [
    "PhotonStats",
    "EvolutionPhase",
    "state_from_amplitude",
    "make_state",
    "annihilation_residual",
    "photon_pmf",
    "photon_stats",
    "numeric_photon_stats",
    "evolve",
    "evolved_label",
    "overlap",
]


@dataclass(frozen=True)
class PhotonStats:
    """First two photon-number moments and the Mandel parameter.

    ``mandel_q`` is None for the vacuum, where (variance - mean)/mean is 0/0.
    """

    mean: float
    second_moment: float
    mandel_q: float | None


@dataclass(frozen=True)
class EvolutionPhase:
    """Dimensionless rotation angle omega*t of free harmonic evolution."""

    omega_t: float

    def __post_init__(self):
        if not math.isfinite(self.omega_t):
            raise ValueError(f"omega_t must be finite, got {self.omega_t}")


def _check_tail(mean: float, cfg: TruncationConfig) -> None:
    bound = poisson_tail_bound(mean, cfg.dim)
    if bound > cfg.tail_tol:
        if cfg.tail_tol > 0.0:
            need = required_dim(mean, cfg.tail_tol)
            raise TruncationError(
                f"dim={cfg.dim} leaves tail mass <= {bound:.3e} above the cutoff for "
                f"mean {mean:.6g}; need dim >= {need} for tail_tol={cfg.tail_tol:.3e}",
                required_dim=need,
            )
        raise TruncationError(
            f"tail_tol=0 is unattainable at any finite dim for mean {mean:.6g}",
            required_dim=None,
        )


def state_from_amplitude(w: complex, cfg: TruncationConfig, *, check_tail: bool = True) -> FockVector:
    """Fock amplitudes exp(-|w|^2/2) w^n / sqrt(n!) for a bare amplitude ``w``.

    This is the amplitude-level constructor: ``make_state`` delegates here
    with ``w = zeta**sigma``.  With ``check_tail`` the cutoff is validated
    against the Poisson tail bound before any amplitude is computed.
    """
    w = complex(w)
    mean = abs(w) ** 2
    if check_tail:
        _check_tail(mean, cfg)
    amps = np.zeros(cfg.dim, dtype=complex)
    if w == 0:
        amps[0] = 1.0
        return amps
    n = np.arange(cfg.dim)
    log_mean = 2.0 * math.log(abs(w))
    log_mag = 0.5 * (n * log_mean - log_factorial_table(cfg.dim)) - mean / 2.0
    phase = n * math.atan2(w.imag, w.real)
    amps = np.exp(log_mag) * (np.cos(phase) + 1j * np.sin(phase))
    return amps


def make_state(label: StretchLabel, cfg: TruncationConfig) -> FockVector:
    """Stretched coherent state of ``label`` in the truncated basis.

    Raises TruncationError (carrying the required dim) when the cutoff cannot
    hold the configured tail mass.
    """
    return state_from_amplitude(label.w, cfg)


def annihilation_residual(label: StretchLabel, cfg: TruncationConfig) -> float:
    """Norm of (a - w) applied to the state, on the testable low-n block.

    Zero in exact arithmetic: the state is an eigenvector of the annihilation
    operator with eigenvalue w = zeta**sigma.
    """
    a, _, _ = ladder_matrices(cfg)
    v = make_state(label, cfg)
    blk = displacement_block(cfg.dim, abs(label.w))
    resid = a @ v - label.w * v
    return float(np.linalg.norm(resid[:blk]))


def photon_pmf(label: StretchLabel, n: int) -> float:
    """Probability of finding ``n`` photons: Poisson with mean |zeta|^(2 sigma)."""
    if n < 0:
        raise ValueError(f"photon number must be >= 0, got {n}")
    mean = label.mean_photons
    if mean == 0.0:
        return 1.0 if n == 0 else 0.0
    log_mean = 2.0 * math.log(abs(label.w))
    return math.exp(n * log_mean - mean - math.lgamma(n + 1))


def photon_stats(label: StretchLabel) -> PhotonStats:
    """Closed-form photon-number mean, second moment, and Mandel parameter.

    mean = |zeta|^(2 sigma), second moment = mean + mean^2, and the Mandel
    parameter (variance/mean - 1) vanishes: the distribution is Poisson for
    every admissible sigma.
    """
    mean = label.mean_photons
    second = mean + mean**2
    if mean == 0.0:
        return PhotonStats(mean=0.0, second_moment=0.0, mandel_q=None)
    q = (second - mean**2) / mean - 1.0
    return PhotonStats(mean=mean, second_moment=second, mandel_q=q)


def numeric_photon_stats(label: StretchLabel, dim: int | None = None) -> PhotonStats:
    """Moments summed from the truncated photon distribution.

    Independent cross-check of the closed forms; ``dim`` defaults to a cutoff
    whose tail bound is below 1e-16 so the partial sums carry the full mass.
    """
    mean_cf = label.mean_photons
    if dim is None:
        dim = required_dim(mean_cf, 1e-16) + 16 if mean_cf > 0 else 8
    p = np.array([photon_pmf(label, n) for n in range(dim)])
    n = np.arange(dim)
    mean = float(n @ p)
    second = float((n * n) @ p)
    if mean == 0.0:
        return PhotonStats(mean=mean, second_moment=second, mandel_q=None)
    q = (second - mean**2) / mean - 1.0
    return PhotonStats(mean=mean, second_moment=second, mandel_q=q)


def evolve(state: FockVector, phase: EvolutionPhase) -> FockVector:
    """Free harmonic evolution: multiply amplitude n by exp(-i n omega_t)."""
    n = np.arange(len(state))
    return state * np.exp(-1j * phase.omega_t * n)


def evolved_label(label: StretchLabel, phase: EvolutionPhase) -> StretchLabel:
    """Label-level evolution zeta -> exp(-i omega_t / sigma) zeta.

    This reproduces ``evolve`` of the state only while the rotated label stays
    on the principal branch, i.e. while Arg(zeta) - omega_t/sigma does not
    wrap past (-pi, pi].  Across a wrap the two routes differ by the branch
    jump exp(2 pi i sigma); ``evolve`` is the unconditionally correct one.
    """
    factor = cmath.exp(-1j * phase.omega_t / label.sigma)
    return StretchLabel(factor * label.zeta, label.sigma)


def overlap(eta: StretchLabel, zeta: StretchLabel) -> complex:
    """Closed-form overlap <eta|zeta> of two states with a common sigma.

    exp(-|eta|^(2s)/2 - |zeta|^(2s)/2 + conj(eta^s) zeta^s); equals 1 at
    eta == zeta and never vanishes, so the family is overcomplete.
    """
    if eta.sigma != zeta.sigma:
        raise ValueError(f"labels carry different sigma: {eta.sigma} vs {zeta.sigma}")
    exponent = -eta.mean_photons / 2.0 - zeta.mean_photons / 2.0 + eta.w_conj * zeta.w
    return cmath.exp(exponent)
