"""Cross-module identity suite behind the ``verify`` CLI command.

Each check evaluates one algebraic identity of the library over a small
parameter grid and reports the largest residual found.  Residuals are
deterministic: the random vectors used by the reconstruction and
inner-product checks come from a seeded generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .composite import (
    CompositeLabel,
    displaced_number,
    modified_coherent,
    modified_coherent_expansion,
    squeezed_coherent,
    squeezed_expectations,
)
from .fock import (
    StretchLabel,
    TruncationConfig,
    displacement_block,
    ladder_matrices,
    required_dim,
    squeeze_block,
)
from .operators import (
    SqueezeLabel,
    bogoliubov,
    displacement,
    displacement_from_amplitude,
    matrix_element,
    multiplication_law,
    squeezing,
)
from .quadrature import QuadratureSpec, inner_product, radial_completeness, reconstruct_vector
from .states import annihilation_residual, make_state, numeric_photon_stats, photon_stats

__all__ = ["CheckResult", "run_verification", "DEFAULT_SIGMAS", "DEFAULT_UPSILONS"]

DEFAULT_SIGMAS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_UPSILONS = (0.5, 0.8, 1.0)
_ZETA_MODS = (0.5, 2.0, 4.0)


@dataclass(frozen=True)
class CheckResult:
    """One identity check: its name, the identity it tests, the largest
    residual observed, and the tolerance it was held to."""

    name: str
    identity: str
    residual: float
    tol: float

    def __post_init__(self):
        object.__setattr__(self, "residual", float(self.residual))
        object.__setattr__(self, "tol", float(self.tol))

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


def _labels(sigmas) -> list[StretchLabel]:
    out = []
    for s in sigmas:
        for zmod in _ZETA_MODS:
            out.append(StretchLabel(zmod * np.exp(0.4j), s))
    return out


def _check_normalization(sigmas, tol) -> CheckResult:
    resid = 0.0
    for label in _labels(sigmas):
        dim = required_dim(label.mean_photons, 1e-13)
        v = make_state(label, TruncationConfig(dim, tail_tol=1e-12))
        resid = max(resid, abs(1.0 - float(np.vdot(v, v).real)))
    return CheckResult("state-normalization", "sum_n |c_n|^2 = 1", resid, tol)


def _check_eigenrelation(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = max(annihilation_residual(label, cfg) for label in _labels(sigmas))
    return CheckResult("annihilation-eigenrelation", "a |z> = z^sigma |z>", resid, tol)


def _check_moments(sigmas, tol) -> CheckResult:
    resid = 0.0
    for label in _labels(sigmas):
        cf = photon_stats(label)
        num = numeric_photon_stats(label)
        resid = max(
            resid,
            abs(cf.mean - num.mean),
            abs(cf.second_moment - num.second_moment),
            abs(cf.mandel_q),
            abs(num.mandel_q),
        )
    return CheckResult("photon-moments", "pmf sums match closed-form moments, Q = 0", resid, tol)


def _check_displacement_unitarity(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    eye = np.eye(dim)
    resid = 0.0
    for label in _labels(sigmas):
        d = displacement(label, cfg)
        resid = max(resid, float(np.linalg.norm(d.conj().T @ d - eye)))
    return CheckResult("displacement-unitarity", "D^+ D = I", resid, tol)


def _check_displacement_algebra(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    a, _, _ = ladder_matrices(cfg)
    eye = np.eye(dim)
    resid = 0.0
    for label in _labels(sigmas):
        w = label.w
        blk = displacement_block(dim, abs(w))
        d = displacement(label, cfg)
        comm = a @ d - d @ a - w * d
        conj_in = d.conj().T @ a @ d - (a + w * eye)
        conj_out = d @ a @ d.conj().T - (a - w * eye)
        resid = max(
            resid,
            float(np.linalg.norm(comm[:blk, :blk])),
            float(np.linalg.norm(conj_in[:blk, :blk])),
            float(np.linalg.norm(conj_out[:blk, :blk])),
        )
    return CheckResult(
        "displacement-algebra", "[a, D] = w D and D^+ a D = a + w", resid, tol
    )


def _check_vacuum_column(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = 0.0
    for label in _labels(sigmas):
        d = displacement(label, cfg)
        v = make_state(label, cfg)
        resid = max(resid, float(np.abs(d[:, 0] - v).max()))
    return CheckResult("displacement-vacuum", "D |0> = |z>", resid, tol)


def _check_matrix_elements(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = 0.0
    for s in sigmas:
        label = StretchLabel(1.5 * np.exp(1j * np.pi / 5), s)
        d = displacement(label, cfg)
        for m in range(13):
            for n in range(13):
                resid = max(resid, abs(matrix_element(m, n, label) - d[m, n]))
    return CheckResult(
        "matrix-element-closed-form",
        "<m|D|n> closed form = exponential route",
        resid,
        tol,
    )


def _check_multiplication_law(sigmas, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = 0.0
    for s in sigmas:
        z1 = StretchLabel(1.2 * np.exp(0.3j), s)
        z2 = StretchLabel(0.8 * np.exp(-0.9j), s)
        dec = multiplication_law(z1, z2)
        resid = max(resid, abs(abs(dec.phase_factor) - 1.0))
        lhs = displacement(z1, cfg) @ displacement(z2, cfg)
        rhs = dec.phase_factor * displacement_from_amplitude(dec.combined_amplitude, cfg)
        blk = displacement_block(dim, abs(z1.w) + abs(z2.w))
        resid = max(resid, float(np.linalg.norm((lhs - rhs)[:blk, :blk])))
    return CheckResult(
        "multiplication-law", "D(z1) D(z2) = phase * D(w1 + w2)", resid, tol
    )


def _check_squeeze_unitarity(upsilons, dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    eye = np.eye(dim)
    resid = 0.0
    for ups in upsilons:
        sq = SqueezeLabel(0.6 * np.exp(1j * np.pi / 4), ups)
        s = squeezing(sq, cfg)
        resid = max(resid, float(np.linalg.norm(s.conj().T @ s - eye)))
    return CheckResult("squeeze-unitarity", "S^+ S = I", resid, tol)


def _check_bogoliubov(upsilons, dim, tol) -> CheckResult:
    # conjugation needs room for the multiplicative spread of the squeeze;
    # raise the cutoff to the block policy's floor for the largest magnitude
    r_max = max(0.6**ups for ups in upsilons)
    dim = max(dim, int(math.ceil(27.0 * math.exp(2.0 * r_max))) + 13)
    cfg = TruncationConfig(dim)
    a, adag, _ = ladder_matrices(cfg)
    resid = 0.0
    for ups in upsilons:
        sq = SqueezeLabel(0.6 * np.exp(1j * np.pi / 4), ups)
        u, v = bogoliubov(sq)
        resid = max(resid, abs(u * u - abs(v) ** 2 - 1.0))
        s = squeezing(sq, cfg)
        blk = squeeze_block(dim, sq.magnitude)
        lhs = s.conj().T @ a @ s
        rhs = u * a - v * adag
        resid = max(resid, float(np.linalg.norm((lhs - rhs)[:blk, :blk])))
    return CheckResult(
        "bogoliubov-transform", "S^+ a S = u a - v a^+ with u^2 - |v|^2 = 1", resid, tol
    )


def _check_completeness(sigmas, tol) -> CheckResult:
    resid = 0.0
    for s in sigmas:
        spec = QuadratureSpec(sigma=s, radial_nodes=48)
        for n in range(21):
            resid = max(resid, abs(radial_completeness(n, spec) - 1.0))
    return CheckResult("radial-completeness", "radial weight integral = 1", resid, tol)


def _check_reconstruction(sigmas, seed, tol) -> CheckResult:
    rng = np.random.default_rng(seed)
    dim = 24
    resid = 0.0
    for s in sigmas:
        spec = QuadratureSpec(sigma=s, radial_nodes=48)
        for _ in range(3):
            psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            psi /= np.linalg.norm(psi)
            resid = max(resid, float(np.abs(reconstruct_vector(psi, spec) - psi).max()))
    return CheckResult(
        "vector-reconstruction", "resolution of unity reproduces psi", resid, tol
    )


def _check_inner_product(sigmas, seed, tol) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    dim = 24
    resid = 0.0
    for s in sigmas:
        spec = QuadratureSpec(sigma=s, radial_nodes=48)
        phi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        phi /= np.linalg.norm(phi)
        psi /= np.linalg.norm(psi)
        direct = complex(np.conj(phi) @ psi)
        resid = max(resid, abs(inner_product(phi, psi, spec) - direct))
    return CheckResult(
        "inner-product-idempotence",
        "coherent-representation inner product = direct inner product",
        resid,
        tol,
    )


def _check_reduction_coherent(dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = 0.0
    for zeta in (1.0 + 0j, 0.7 - 1.1j):
        label = StretchLabel(zeta, 1.0)
        v = make_state(label, cfg)
        ref = np.array(
            [
                np.exp(-abs(zeta) ** 2 / 2) * zeta**n / math.sqrt(math.factorial(n))
                for n in range(dim)
            ]
        )
        resid = max(resid, float(np.abs(v - ref).max()))
    return CheckResult(
        "reduction-standard-coherent",
        "sigma = 1 state matches standard coherent amplitudes",
        resid,
        tol,
    )


def _check_reduction_squeeze(dim, tol) -> CheckResult:
    # closed-form squeezed-vacuum amplitudes decay like tanh(rho)^k, so the
    # comparison needs room for that slow tail regardless of the user's dim
    dim = max(dim, 96)
    cfg = TruncationConfig(dim)
    rho, theta = 0.6, 0.6
    sq = SqueezeLabel(rho * np.exp(1j * theta), 1.0)
    sv = squeezing(sq, cfg)[:, 0]
    ref = np.zeros(dim, dtype=complex)
    for k in range(dim // 2):
        ref[2 * k] = (
            (-np.exp(1j * theta) * math.tanh(rho)) ** k
            * math.sqrt(math.factorial(2 * k))
            / (2**k * math.factorial(k) * math.sqrt(math.cosh(rho)))
        )
    return CheckResult(
        "reduction-standard-squeeze",
        "upsilon = 1 squeezed vacuum matches hyperbolic closed form",
        float(np.abs(sv - ref).max()),
        tol,
    )


def _check_composite_photon_number(dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    a, adag, _ = ladder_matrices(cfg)
    num = adag @ a
    resid = 0.0
    for zmod in (0.5, 1.5):
        for rho in (0.3, 0.8):
            lab = CompositeLabel(
                StretchLabel(zmod, 0.5), SqueezeLabel(rho * np.exp(0.5j), 0.8)
            )
            v = squeezed_coherent(lab, cfg)
            sandwich = float((np.conj(v) @ num @ v).real)
            resid = max(resid, abs(sandwich - squeezed_expectations(lab).en))
    return CheckResult(
        "composite-photon-number", "<a^+ a> = |w|^2 + sinh^2 r", resid, tol
    )


def _check_displaced_number_dual(dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    resid = 0.0
    label = StretchLabel(1.2, 0.6)
    d = displacement(label, cfg)
    for n in range(6):
        closed = displaced_number(label, n, cfg)
        resid = max(resid, float(np.abs(closed - d[:, n]).max()))
    return CheckResult(
        "displaced-number-dual", "closed-form displaced |n> = operator column", resid, tol
    )


def _check_modified_coherent_dual(dim, tol) -> CheckResult:
    cfg = TruncationConfig(dim)
    alpha = StretchLabel(1.0, 0.5)
    zeta = StretchLabel(0.8j, 0.5)
    via_op = modified_coherent(alpha, zeta, cfg)
    via_exp = modified_coherent_expansion(alpha, zeta, cfg)
    return CheckResult(
        "modified-coherent-dual",
        "modified state: operator route = expansion route",
        float(np.abs(via_op - via_exp).max()),
        tol,
    )


def run_verification(
    tol: float = 1e-8,
    dim: int = 96,
    seed: int = 0,
    sigma: float | None = None,
    upsilon: float | None = None,
) -> list[CheckResult]:
    """Run the full identity suite and return one result per check.

    ``sigma`` / ``upsilon`` pin the respective grids to a single value; by
    default the checks sweep the standard grids, including the unit values
    where everything must collapse to the standard-theory identities.
    ``dim`` has a floor of 64 (labels with 16 mean photons need that much
    room); individual checks may use more where their identities demand it.
    """
    dim = max(dim, 64)
    sigmas = (sigma,) if sigma is not None else DEFAULT_SIGMAS
    upsilons = (upsilon,) if upsilon is not None else DEFAULT_UPSILONS
    return [
        _check_normalization(sigmas, tol),
        _check_eigenrelation(sigmas, dim, tol),
        _check_moments(sigmas, tol),
        _check_displacement_unitarity(sigmas, dim, tol),
        _check_displacement_algebra(sigmas, dim, tol),
        _check_vacuum_column(sigmas, dim, tol),
        _check_matrix_elements(sigmas, dim, tol),
        _check_multiplication_law(sigmas, dim, tol),
        _check_squeeze_unitarity(upsilons, dim, tol),
        _check_bogoliubov(upsilons, dim, tol),
        _check_completeness(sigmas, tol),
        _check_reconstruction(sigmas, seed, tol),
        _check_inner_product(sigmas, seed, tol),
        _check_reduction_coherent(48, tol),
        _check_reduction_squeeze(dim, tol),
        _check_composite_photon_number(max(dim, 96), tol),
        _check_displaced_number_dual(dim, tol),
        _check_modified_coherent_dual(max(dim, 96), tol),
    ]
