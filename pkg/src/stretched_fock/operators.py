"""Displacement and squeezing operators as exactly-unitary truncated matrices,
their closed-form matrix elements, the multiplication law, and the Bogoliubov
coefficients.

Exponentials of anti-Hermitian generators are computed by eigendecomposition
of the Hermitian matrix i*G, so every operator built here is unitary to
roundoff regardless of the cutoff.  Truncation shows up instead as a
disagreement with the untruncated operator outside the contained low-n block
(see ``displacement_block`` / ``squeeze_block``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import (
    FockOperator,
    StretchLabel,
    TruncationConfig,
    complex_power,
    ladder_matrices,
    laguerre_assoc,
)

__all__ = [
    "SqueezeLabel",
    "ProductDecomposition",
    "ConvergenceError",
    "unitary_exp",
    "displacement",
    "displacement_from_amplitude",
    "displacement_normal_ordered",
    "matrix_element",
    "multiplication_law",
    "squeezing",
    "bogoliubov",
]


class ConvergenceError(RuntimeError):
    """A truncated power series failed to converge inside the basis."""


@dataclass(frozen=True)
class SqueezeLabel:
    """Squeeze label: complex ``xi = rho e^(i theta)`` and exponent ``upsilon``.

    Caches the hyperbolic pair of the stretched squeeze magnitude
    r = rho**upsilon: ``cosh_term`` = cosh r and ``sinh_phase`` =
    e^(i upsilon theta) sinh r, which satisfy cosh^2 - |sinh|^2 = 1.
    """

    xi: complex
    upsilon: float
    cosh_term: float = field(init=False, repr=False, compare=False)
    sinh_phase: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.upsilon <= 1.0:
            raise ValueError(f"upsilon must lie in (0, 1], got {self.upsilon}")
        object.__setattr__(self, "xi", complex(self.xi))
        xp = complex_power(self.xi, self.upsilon)
        r = abs(xp)
        object.__setattr__(self, "cosh_term", math.cosh(r))
        if r == 0.0:
            object.__setattr__(self, "sinh_phase", 0j)
        else:
            object.__setattr__(self, "sinh_phase", (xp / r) * math.sinh(r))

    @property
    def xi_pow(self) -> complex:
        """xi**upsilon on the principal branch."""
        return complex_power(self.xi, self.upsilon)

    @property
    def magnitude(self) -> float:
        """The squeeze magnitude r = |xi|**upsilon."""
        return abs(self.xi) ** self.upsilon


@dataclass(frozen=True)
class ProductDecomposition:
    """Result of composing two displacements: a standard displacement of
    ``combined_amplitude`` times the unit-modulus ``phase_factor``."""

    combined_amplitude: complex
    phase_factor: complex


def unitary_exp(generator: FockOperator) -> FockOperator:
    """exp(G) for anti-Hermitian G via eigendecomposition of i*G.

    Unitary to roundoff by construction, unlike Pade-based expm, which makes
    it the right primitive for identity testing.
    """
    vals, vecs = np.linalg.eigh(1j * generator)
    return (vecs * np.exp(-1j * vals)) @ vecs.conj().T


def displacement_from_amplitude(w: complex, cfg: TruncationConfig) -> FockOperator:
    """exp(w adag - conj(w) a) for a bare complex amplitude ``w``.

    At sigma = 1 this is the standard displacement operator; the stretched
    operator of any label is this applied to w = zeta**sigma.
    """
    a, adag, _ = ladder_matrices(cfg)
    gen = w * adag - np.conj(w) * a
    return unitary_exp(gen)


def displacement(label: StretchLabel, cfg: TruncationConfig) -> FockOperator:
    """Stretched displacement operator of ``label`` at the given cutoff.

    Column 0 is the stretched coherent state of the label; the operator
    depends on the label only through w = zeta**sigma.
    """
    return displacement_from_amplitude(label.w, cfg)


def _exp_series(m: FockOperator, rel_tol: float = 1e-16) -> FockOperator:
    """exp(m) for a strictly triangular ``m`` by its terminating power series.

    The series stops early once a term falls below ``rel_tol`` relative to the
    accumulated sum; if only nilpotency stops it the partial sums never
    numerically converged and a ConvergenceError is raised.
    """
    dim = m.shape[0]
    acc = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, dim):
        term = term @ m / k
        tn = np.linalg.norm(term)
        acc = acc + term
        if tn <= rel_tol * np.linalg.norm(acc):
            return acc
    raise ConvergenceError(
        f"series terms still at {np.linalg.norm(term):.3e} after {dim} steps; "
        "increase dim or reduce the amplitude"
    )


def displacement_normal_ordered(label: StretchLabel, cfg: TruncationConfig) -> FockOperator:
    """Normal-ordered displacement exp(-|w|^2/2) exp(w adag) exp(-conj(w) a).

    Each exponential factor is strictly triangular, so its series terminates;
    the low-n entries of the product are exact, making this an independent
    route to cross-check the eigendecomposition exponential.
    """
    a, adag, _ = ladder_matrices(cfg)
    up = _exp_series(label.w * adag)
    down = _exp_series(-label.w_conj * a)
    return math.exp(-label.mean_photons / 2.0) * (up @ down)


def matrix_element(m: int, n: int, label: StretchLabel) -> complex:
    """Closed-form number-basis entry <m|D|n> of the displacement operator.

    sqrt(n!/m!) w^(m-n) exp(-|w|^2/2) L_n^(m-n)(|w|^2), with the negative
    upper index of the Laguerre polynomial handled by ``laguerre_assoc`` when
    m < n.  The prefactor is assembled in log-polar form.
    """
    if m < 0 or n < 0:
        raise ValueError(f"indices must be >= 0, got m={m}, n={n}")
    w = label.w
    if w == 0:
        return 1.0 + 0j if m == n else 0j
    x = label.mean_photons
    lag = laguerre_assoc(n, m - n, x)
    log_mag = 0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1)) + (m - n) * math.log(abs(w)) - x / 2.0
    phase = (m - n) * math.atan2(w.imag, w.real)
    return lag * math.exp(log_mag) * complex(math.cos(phase), math.sin(phase))


def multiplication_law(z1: StretchLabel, z2: StretchLabel) -> ProductDecomposition:
    """Composition of two stretched displacements with a common sigma.

    D(z1) D(z2) equals the standard displacement of w1 + w2 times
    exp((w1 conj(w2) - conj(w1) w2)/2); the exponent is purely imaginary so
    the factor has unit modulus.
    """
    if z1.sigma != z2.sigma:
        raise ValueError(f"labels carry different sigma: {z1.sigma} vs {z2.sigma}")
    combined = z1.w + z2.w
    exponent = 0.5 * (z1.w * z2.w_conj - z1.w_conj * z2.w)
    return ProductDecomposition(combined_amplitude=combined, phase_factor=cmath.exp(exponent))


def squeezing(label: SqueezeLabel, cfg: TruncationConfig) -> FockOperator:
    """Stretched squeezing operator exp(conj(c) a^2 / 2 - c adag^2 / 2).

    Here c = xi**upsilon on the principal branch and conj(c) replaces the
    conjugated exponent, which keeps the generator anti-Hermitian and the
    result unitary.  At upsilon = 1 this is the standard squeezing operator.
    """
    a, adag, _ = ladder_matrices(cfg)
    c = label.xi_pow
    gen = 0.5 * np.conj(c) * (a @ a) - 0.5 * c * (adag @ adag)
    return unitary_exp(gen)


def bogoliubov(label: SqueezeLabel) -> tuple[float, complex]:
    """Coefficients (u, v) of the ladder mixing induced by the squeeze.

    Conjugation acts as S^+ a S = u a - v adag and S^+ adag S = u adag -
    conj(v) a with u = cosh r, v = e^(i upsilon theta) sinh r, so
    u^2 - |v|^2 = 1.
    """
    return label.cosh_term, label.sinh_phase
