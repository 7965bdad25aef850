"""Truncated Fock-basis numerics: ladder operators, principal-branch powers,
log-factorial tables, associated Laguerre polynomials, and Poisson tail bounds
used to size and audit the truncation.

All matrices are dense complex ndarrays in the number basis |0>, ..., |dim-1>.
A state vector ("FockVector") is a length-dim complex ndarray of amplitudes;
an operator ("FockOperator") is a (dim, dim) complex ndarray.  Everything here
is a pure function of its inputs and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FockVector",
    "FockOperator",
    "TruncationConfig",
    "TruncationError",
    "StretchLabel",
    "complex_power",
    "ladder_matrices",
    "laguerre_assoc",
    "log_factorial_table",
    "poisson_tail_log",
    "poisson_tail_bound",
    "required_dim",
    "displacement_block",
    "squeeze_block",
]

# Documented aliases: amplitudes over |0..dim-1> and dense number-basis matrices.
FockVector = np.ndarray
FockOperator = np.ndarray


class TruncationError(ValueError):
    """The Fock cutoff cannot hold the requested probability tail.

    ``required_dim`` carries the smallest admissible basis size when a finite
    one exists, else None.
    """

    def __init__(self, message: str, required_dim: int | None = None):
        super().__init__(message)
        self.required_dim = required_dim


def complex_power(z: complex, s: float) -> complex:
    """Principal-branch fractional power ``z**s`` with Arg z in (-pi, pi].

    The exponent is restricted to (0, 1].  ``complex_power(0, s) == 0`` and
    ``complex_power(z, 1) == z`` exactly, so unit-exponent reductions are
    bit-for-bit.  Negative real ``z`` sits on the cut and gets Arg = +pi
    regardless of the sign bit of its imaginary part.
    """
    if not 0.0 < s <= 1.0:
        raise ValueError(f"exponent must lie in (0, 1], got {s}")
    z = complex(z)
    if z == 0:
        return 0j
    if s == 1.0:
        return z
    if z.imag == 0.0:
        theta = 0.0 if z.real > 0 else math.pi
    else:
        theta = math.atan2(z.imag, z.real)
    st = s * theta
    return abs(z) ** s * complex(math.cos(st), math.sin(st))


@dataclass(frozen=True)
class TruncationConfig:
    """Basis size plus the probability mass allowed above the cutoff."""

    dim: int
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")
        if not 0.0 <= self.tail_tol < 1.0:
            raise ValueError(f"tail_tol must lie in [0, 1), got {self.tail_tol}")


@dataclass(frozen=True)
class StretchLabel:
    """Displacement label: complex ``zeta`` and stretch exponent ``sigma``.

    The canonical amplitude ``w = zeta**sigma`` (principal branch) is cached
    at construction together with its conjugate; every downstream quantity
    depends on the label only through ``w``.
    """

    zeta: complex
    sigma: float
    w: complex = field(init=False, repr=False, compare=False)
    w_conj: complex = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0.0 < self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")
        w = complex_power(self.zeta, self.sigma)
        object.__setattr__(self, "zeta", complex(self.zeta))
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "w_conj", w.conjugate())

    @property
    def mean_photons(self) -> float:
        """|zeta|^(2 sigma), the Poisson mean of the photon distribution."""
        return abs(self.w) ** 2


def ladder_matrices(cfg: TruncationConfig) -> tuple[FockOperator, FockOperator, FockOperator]:
    """Annihilation, creation, and number operators at the given cutoff.

    a[n-1, n] = sqrt(n), adag[n+1, n] = sqrt(n+1), num = diag(0..dim-1).
    The commutator [a, adag] equals the identity except in the top row, a
    truncation artifact excluded from identity checks.
    """
    roots = np.sqrt(np.arange(1, cfg.dim, dtype=float))
    a = np.diag(roots, k=1).astype(complex)
    adag = np.diag(roots, k=-1).astype(complex)
    num = np.diag(np.arange(cfg.dim, dtype=float)).astype(complex)
    return a, adag, num


def log_factorial_table(n: int) -> np.ndarray:
    """Table of log(k!) for k = 0..n-1."""
    return np.array([math.lgamma(k + 1) for k in range(n)])


def laguerre_assoc(n: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_n^(k)(x), including negative k.

    For k >= 0 the three-term recurrence in the degree is used; it is the
    stable direction for x >= 0.  For -n <= k < 0 the reduction
    L_n^(-j)(x) = (-x)^j (n-j)!/n! L_{n-j}^(j)(x) with j = -k applies; the
    prefactor is assembled in log space so large j does not overflow.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    if k < -n:
        raise ValueError(f"upper index must satisfy k >= -n, got k={k}, n={n}")
    if k < 0:
        j = -k
        if x == 0.0:
            return 0.0
        scale = math.exp(j * math.log(abs(x)) + math.lgamma(n - j + 1) - math.lgamma(n + 1))
        sign = (-1.0) ** j if x > 0 else 1.0
        return sign * scale * laguerre_assoc(n - j, j, x)
    if n == 0:
        return 1.0
    prev = 1.0
    curr = 1.0 + k - x
    for i in range(1, n):
        prev, curr = curr, ((2 * i + 1 + k - x) * curr - (i + k) * prev) / (i + 1)
    return curr


def poisson_tail_log(mean: float, dim: int) -> float:
    """log of a Chernoff bound on P(X >= dim) for X ~ Poisson(mean).

    Returns -inf when the tail is empty (mean == 0) and 0.0 (the trivial
    bound log 1) when dim <= mean, where the bound carries no information.
    """
    if mean < 0:
        raise ValueError(f"mean must be >= 0, got {mean}")
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if mean == 0.0:
        return -math.inf
    d = float(dim)
    if d <= mean:
        return 0.0
    return -mean + d - d * math.log(d / mean)


def poisson_tail_bound(mean: float, dim: int) -> float:
    """Chernoff bound on the Poisson probability mass at or above ``dim``."""
    return math.exp(min(0.0, poisson_tail_log(mean, dim)))


def required_dim(mean: float, tail_tol: float) -> int:
    """Smallest cutoff whose Chernoff tail bound drops below ``tail_tol``."""
    if not 0.0 < tail_tol < 1.0:
        raise ValueError(f"tail_tol must lie in (0, 1) to size the basis, got {tail_tol}")
    if mean == 0.0:
        return 1
    target = math.log(tail_tol)
    d = int(math.ceil(mean)) + 1
    while poisson_tail_log(mean, d) > target:
        d += 1
    return d


def displacement_block(dim: int, w_abs: float) -> int:
    """Largest low-n block on which displacement identities are testable.

    A displaced number state |j> spreads to roughly j + 2|w| sqrt(j+1) + |w|^2
    levels; the block keeps every column of interest contained in the basis
    with padding for the sub-Gaussian overshoot.  Raises TruncationError when
    no column fits.
    """
    pad = 10.0 + 3.0 * w_abs
    blk = 0
    j = 0
    while j < dim and j + 2.0 * w_abs * math.sqrt(j + 1.0) + w_abs**2 + pad <= dim:
        blk = j + 1
        j += 1
    if blk < 1:
        raise TruncationError(
            f"dim={dim} leaves no testable block for |w|={w_abs:.3g}",
            required_dim=int(math.ceil(2.0 * w_abs * math.sqrt(2.0) + w_abs**2 + pad)) + 1,
        )
    return blk


def squeeze_block(dim: int, r: float) -> int:
    """Largest low-n block on which squeeze conjugation identities are testable.

    Squeezing spreads |j> multiplicatively, by about e^(2r), so the block
    shrinks by that factor rather than by an additive buffer.
    """
    blk = int(math.floor((dim - 12) * math.exp(-2.0 * r))) - 14
    if blk < 1:
        raise TruncationError(
            f"dim={dim} leaves no testable block for squeeze magnitude r={r:.3g}",
            required_dim=int(math.ceil(27 * math.exp(2.0 * r))) + 12,
        )
    return blk
