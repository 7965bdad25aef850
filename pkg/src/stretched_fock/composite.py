"""Composite state families: squeezed coherent states, displaced number
states, their squeezed variants, and the modified displacement construction.

States are built by applying the exactly-unitary truncated operators in
composition order (displacement after squeezing); closed-form expansion
routes exist where the algebra provides them and serve as independent
cross-checks.  Every constructor audits the resulting norm against the
configured tail tolerance and raises TruncationError when mass has leaked
past the cutoff.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .fock import FockOperator, FockVector, StretchLabel, TruncationConfig, TruncationError
from .operators import SqueezeLabel, displacement, matrix_element, squeezing
from .states import make_state

__all__ = [
    "CompositeLabel",
    "SqueezedExpectations",
    "squeezed_coherent",
    "squeezed_expectations",
    "displaced_number",
    "squeezed_displaced_number",
    "modified_displacement",
    "modified_coherent",
    "modified_coherent_expansion",
]


@dataclass(frozen=True)
class CompositeLabel:
    """Displacement label, squeeze label, and a Fock index for the
    displaced-number families (n = 0 gives the coherent families)."""

    displace: StretchLabel
    squeeze: SqueezeLabel
    n: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Fock index must be >= 0, got {self.n}")


@dataclass(frozen=True)
class SqueezedExpectations:
    """Closed-form expectations in a squeezed coherent state.

    ``ea`` is <a> and ``en`` is <adag a>.  The <a a> expectation is exposed in
    two closed forms that differ for complex labels: ``ea2`` uses the modulus
    form |w|^2 - e^(2 i upsilon theta) sinh r cosh r, while
    ``ea2_bogoliubov`` follows the ladder-conjugation algebra,
    w^2 - e^(i upsilon theta) sinh r cosh r, and is the one the truncated
    sandwich value reproduces.  The two coincide for real positive zeta with
    theta = 0.
    """

    ea: complex
    ea2: complex
    ea2_bogoliubov: complex
    en: float


def _audit_norm(v: FockVector, cfg: TruncationConfig, what: str) -> FockVector:
    norm_sq = float(np.vdot(v, v).real)
    if norm_sq < 1.0 - cfg.tail_tol - 1e-13:
        raise TruncationError(
            f"{what}: norm^2 = {norm_sq:.15g} fell below 1 - tail_tol = "
            f"{1.0 - cfg.tail_tol:.15g}; increase dim",
            required_dim=None,
        )
    return v


def squeezed_coherent(label: CompositeLabel, cfg: TruncationConfig) -> FockVector:
    """Displace the squeezed vacuum: D(zeta) S(xi) |0>.

    Requires ``label.n == 0``; the general Fock index is handled by
    ``squeezed_displaced_number``.
    """
    if label.n != 0:
        raise ValueError(f"squeezed_coherent requires n = 0, got n = {label.n}")
    return squeezed_displaced_number(label, cfg)


def squeezed_expectations(label: CompositeLabel) -> SqueezedExpectations:
    """Closed-form <a>, <a a>, and <adag a> in the squeezed coherent state.

    No truncation enters: the values follow from the displacement and
    squeeze conjugation rules.  See SqueezedExpectations for the two <a a>
    variants.
    """
    w = label.displace.w
    mean = label.displace.mean_photons
    u = label.squeeze.cosh_term
    v = label.squeeze.sinh_phase
    s = abs(v)
    if s == 0.0:
        phase1 = phase2 = 1.0 + 0j
    else:
        phase1 = v / s
        phase2 = phase1 * phase1
    return SqueezedExpectations(
        ea=w,
        ea2=mean - phase2 * s * u,
        ea2_bogoliubov=w * w - phase1 * s * u,
        en=mean + s * s,
    )


def displaced_number(label: StretchLabel, n: int, cfg: TruncationConfig) -> FockVector:
    """Stretched displaced number state D(zeta)|n> from its closed form.

    Component m is the displacement matrix element <m|D|n>, i.e. column n of
    the operator, assembled without building the matrix.
    """
    if not 0 <= n < cfg.dim:
        raise ValueError(f"Fock index must lie in [0, dim), got n={n}, dim={cfg.dim}")
    amps = np.array([matrix_element(m, n, label) for m in range(cfg.dim)])
    return _audit_norm(amps, cfg, f"displaced number state n={n}")


def squeezed_displaced_number(label: CompositeLabel, cfg: TruncationConfig) -> FockVector:
    """D(zeta) S(xi) |n> by applying the truncated unitaries in order."""
    if label.n >= cfg.dim:
        raise ValueError(f"Fock index must lie in [0, dim), got n={label.n}, dim={cfg.dim}")
    basis_n = np.zeros(cfg.dim, dtype=complex)
    basis_n[label.n] = 1.0
    v = squeezing(label.squeeze, cfg) @ basis_n
    v = displacement(label.displace, cfg) @ v
    return _audit_norm(v, cfg, f"squeezed displaced number state n={label.n}")


def modified_displacement(alpha: StretchLabel, zeta: StretchLabel, cfg: TruncationConfig) -> FockOperator:
    """Displacement of alpha with the ladder operators shifted by zeta's
    amplitude: exp(wa (adag - conj(wz)) - conj(wa) (a - wz)).

    The shift only contributes the unit-modulus scalar
    exp(conj(wa) wz - wa conj(wz)), so the operator factorizes as that phase
    times the plain displacement of alpha.
    """
    if alpha.sigma != zeta.sigma:
        raise ValueError(f"labels carry different sigma: {alpha.sigma} vs {zeta.sigma}")
    prefactor = cmath.exp(alpha.w_conj * zeta.w - alpha.w * zeta.w_conj)
    return prefactor * displacement(alpha, cfg)


def modified_coherent(alpha: StretchLabel, zeta: StretchLabel, cfg: TruncationConfig) -> FockVector:
    """Modified coherent state: the modified displacement applied to the
    stretched coherent state of zeta (operator route)."""
    v = modified_displacement(alpha, zeta, cfg) @ make_state(zeta, cfg)
    return _audit_norm(v, cfg, "modified coherent state")


def modified_coherent_expansion(alpha: StretchLabel, zeta: StretchLabel, cfg: TruncationConfig) -> FockVector:
    """Modified coherent state from its number-state double expansion.

    Component m is the phase prefactor times
    exp(-|wz|^2/2) sum_n wz^n <m|D(alpha)|n> / sqrt(n!), built from the
    closed-form displacement matrix elements; independent of the operator
    route, which exponentiates a generator instead.
    """
    if alpha.sigma != zeta.sigma:
        raise ValueError(f"labels carry different sigma: {alpha.sigma} vs {zeta.sigma}")
    prefactor = cmath.exp(alpha.w_conj * zeta.w - alpha.w * zeta.w_conj)
    coherent = make_state(zeta, cfg)
    amps = np.zeros(cfg.dim, dtype=complex)
    for m in range(cfg.dim):
        amps[m] = sum(matrix_element(m, n, alpha) * coherent[n] for n in range(cfg.dim))
    v = prefactor * amps
    return _audit_norm(v, cfg, "modified coherent state (expansion route)")
