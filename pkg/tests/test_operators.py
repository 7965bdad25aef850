"""Displacement and squeezing operators: unitarity, closed-form entries,
composition, and Bogoliubov mixing.  scipy.linalg.expm serves as the
independent exponentiation oracle throughout."""

import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from stretched_fock import (
    ConvergenceError,
    SqueezeLabel,
    StretchLabel,
    TruncationConfig,
    bogoliubov,
    displacement,
    displacement_block,
    displacement_from_amplitude,
    displacement_normal_ordered,
    ladder_matrices,
    make_state,
    matrix_element,
    multiplication_law,
    squeeze_block,
    squeezing,
)

CFG64 = TruncationConfig(64)


def expm_displacement(w, dim):
    """Independent oracle: Pade expm of the displacement generator."""
    a, adag, _ = ladder_matrices(TruncationConfig(dim))
    return scipy.linalg.expm(w * adag - np.conj(w) * a)


def expm_squeezing(c, dim):
    a, adag, _ = ladder_matrices(TruncationConfig(dim))
    return scipy.linalg.expm(0.5 * np.conj(c) * (a @ a) - 0.5 * c * (adag @ adag))


class TestDisplacement:
    def test_zero_label_is_identity(self):
        d = displacement(StretchLabel(0j, 0.5), TruncationConfig(8))
        np.testing.assert_allclose(d, np.eye(8), atol=1e-15)

    def test_column_zero_is_coherent_state(self):
        label = StretchLabel(2.0 * cmath.exp(0.5j), 0.5)
        d = displacement(label, CFG64)
        np.testing.assert_allclose(d[:, 0], make_state(label, CFG64), atol=1e-10)

    def test_unit_sigma_matches_expm_oracle(self):
        zeta = 1.2 - 0.6j
        d = displacement(StretchLabel(zeta, 1.0), CFG64)
        ref = expm_displacement(zeta, 64)
        blk = displacement_block(64, abs(zeta))
        assert np.abs((d - ref)[:blk, :blk]).max() < 1e-12

    def test_unitary_to_roundoff(self):
        for zeta, sigma in [(4.0, 0.5), (2.5 * cmath.exp(1.1j), 0.3)]:
            d = displacement(StretchLabel(zeta, sigma), CFG64)
            assert np.linalg.norm(d.conj().T @ d - np.eye(64)) < 1e-12

    def test_depends_only_on_amplitude_bitwise(self):
        # three labels with the same w = 2 produce identical matrices
        cfg = TruncationConfig(48)
        mats = [
            displacement(StretchLabel(4.0, 0.5), cfg),
            displacement(StretchLabel(2.0, 1.0), cfg),
            displacement(StretchLabel(16.0, 0.25), cfg),
        ]
        assert np.array_equal(mats[0], mats[1])
        assert np.array_equal(mats[0], mats[2])

    def test_commutator_identity(self):
        label = StretchLabel(1.8 * cmath.exp(0.9j), 0.7)
        a, _, _ = ladder_matrices(CFG64)
        d = displacement(label, CFG64)
        blk = displacement_block(64, abs(label.w))
        resid = (a @ d - d @ a - label.w * d)[:blk, :blk]
        assert np.linalg.norm(resid) < 1e-8

    def test_conjugation_identities(self):
        label = StretchLabel(2.0 * cmath.exp(-0.4j), 0.6)
        a, _, _ = ladder_matrices(CFG64)
        d = displacement(label, CFG64)
        eye = np.eye(64)
        blk = displacement_block(64, abs(label.w))
        fwd = (d.conj().T @ a @ d - (a + label.w * eye))[:blk, :blk]
        bwd = (d @ a @ d.conj().T - (a - label.w * eye))[:blk, :blk]
        assert np.linalg.norm(fwd) < 1e-8
        assert np.linalg.norm(bwd) < 1e-8


class TestNormalOrdered:
    def test_zero_label_is_identity(self):
        d = displacement_normal_ordered(StretchLabel(0j, 1.0), TruncationConfig(6))
        np.testing.assert_allclose(d, np.eye(6), atol=1e-15)

    def test_matches_eigendecomposition_route(self):
        label = StretchLabel(2.0, 0.5)
        d1 = displacement(label, CFG64)
        d2 = displacement_normal_ordered(label, CFG64)
        blk = displacement_block(64, abs(label.w))
        assert np.abs((d1 - d2)[:blk, :blk]).max() < 1e-9

    def test_vacuum_expectation(self):
        label = StretchLabel(1.7 * cmath.exp(0.3j), 0.8)
        d = displacement_normal_ordered(label, CFG64)
        assert d[0, 0] == pytest.approx(math.exp(-label.mean_photons / 2), rel=1e-12)

    def test_nonconvergence_flagged(self):
        with pytest.raises(ConvergenceError):
            displacement_normal_ordered(StretchLabel(8.0, 1.0), TruncationConfig(12, tail_tol=0.9))


class TestMatrixElement:
    def test_vacuum_to_vacuum(self):
        label = StretchLabel(2.2 * cmath.exp(1.0j), 0.45)
        assert matrix_element(0, 0, label) == pytest.approx(
            math.exp(-label.mean_photons / 2), rel=1e-13
        )

    def test_diagonal_degree_one(self):
        # <1|D|1> = e^{-x/2} (1 - x) at x = |w|^2 = 4
        label = StretchLabel(4.0, 0.5)
        assert matrix_element(1, 1, label) == pytest.approx(-3 * math.exp(-2), rel=1e-13)

    def test_grid_against_displacement(self):
        label = StretchLabel(1.5 * cmath.exp(1j * np.pi / 5), 0.7)
        d = displacement(label, CFG64)
        err = max(
            abs(matrix_element(m, n, label) - d[m, n]) for m in range(13) for n in range(13)
        )
        assert err < 1e-8

    def test_hermitian_relation(self):
        # D(w)^+ = D(-w): <m|D|n> = conj(<n|D|m>) with w -> -w
        label = StretchLabel(1.1 * cmath.exp(0.7j), 0.5)
        neg = StretchLabel(-label.w, 1.0)  # unit-sigma label with amplitude -w
        assert neg.w == -label.w
        for m, n in [(0, 3), (2, 5), (4, 1)]:
            assert matrix_element(m, n, label) == pytest.approx(
                matrix_element(n, m, neg).conjugate(), rel=1e-11
            )

    def test_zero_label(self):
        label = StretchLabel(0j, 0.5)
        assert matrix_element(3, 3, label) == 1.0
        assert matrix_element(2, 3, label) == 0.0


class TestMultiplicationLaw:
    def test_real_labels_no_phase(self):
        dec = multiplication_law(StretchLabel(2.0, 0.5), StretchLabel(1.0, 0.5))
        assert dec.phase_factor == pytest.approx(1.0)
        assert dec.combined_amplitude == pytest.approx(math.sqrt(2) + 1.0)

    def test_worked_phase(self):
        # w1 = i, w2 = 1: exponent (i*1 - (-i)*1)/2 = i
        dec = multiplication_law(StretchLabel(1j, 1.0), StretchLabel(1.0, 1.0))
        assert dec.phase_factor == pytest.approx(cmath.exp(1j))

    def test_operator_composition(self):
        cfg = TruncationConfig(64)
        pairs = [
            (StretchLabel(1.2 * cmath.exp(0.3j), 0.5), StretchLabel(0.8, 0.5)),
            (StretchLabel(2.0, 0.75), StretchLabel(1.0 * cmath.exp(-1.0j), 0.75)),
            (StretchLabel(0.5j, 1.0), StretchLabel(1.5, 1.0)),
        ]
        for z1, z2 in pairs:
            dec = multiplication_law(z1, z2)
            lhs = displacement(z1, cfg) @ displacement(z2, cfg)
            rhs = dec.phase_factor * displacement_from_amplitude(dec.combined_amplitude, cfg)
            blk = displacement_block(64, abs(z1.w) + abs(z2.w))
            assert np.linalg.norm((lhs - rhs)[:blk, :blk]) < 1e-8

    def test_sigma_mismatch_rejected(self):
        with pytest.raises(ValueError):
            multiplication_law(StretchLabel(1.0, 0.5), StretchLabel(1.0, 1.0))

    @given(
        m1=st.floats(min_value=0.05, max_value=2.0),
        m2=st.floats(min_value=0.05, max_value=2.0),
        p1=st.floats(min_value=-3.0, max_value=3.0),
        p2=st.floats(min_value=-3.0, max_value=3.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_phase_factor_unit_modulus(self, m1, m2, p1, p2):
        z1 = StretchLabel(m1 * cmath.exp(1j * p1), 0.5)
        z2 = StretchLabel(m2 * cmath.exp(1j * p2), 0.5)
        dec = multiplication_law(z1, z2)
        assert abs(dec.phase_factor) == pytest.approx(1.0, abs=1e-14)


class TestSqueezing:
    def test_zero_label_is_identity(self):
        s = squeezing(SqueezeLabel(0j, 0.5), TruncationConfig(8))
        np.testing.assert_allclose(s, np.eye(8), atol=1e-15)

    def test_unit_upsilon_matches_expm_oracle(self):
        xi = 0.5 * cmath.exp(0.9j)
        s = squeezing(SqueezeLabel(xi, 1.0), CFG64)
        ref = expm_squeezing(xi, 64)
        blk = squeeze_block(64, 0.5)
        assert np.abs((s - ref)[:blk, :blk]).max() < 1e-12

    def test_unitary(self):
        for ups in (0.5, 0.8, 1.0):
            s = squeezing(SqueezeLabel(0.7 * cmath.exp(0.4j), ups), CFG64)
            assert np.linalg.norm(s.conj().T @ s - np.eye(64)) < 1e-9

    def test_squeezed_vacuum_parity(self):
        # only even levels populated
        s = squeezing(SqueezeLabel(0.8, 1.0), CFG64)
        sv = s[:, 0]
        assert np.abs(sv[1::2]).max() < 1e-12
        assert abs(sv[0]) == pytest.approx(1 / math.sqrt(math.cosh(0.8)), rel=1e-10)


class TestSqueezeLabel:
    def test_hyperbolic_pair(self):
        lab = SqueezeLabel(1.0, 0.5)  # rho^upsilon = 1
        assert lab.cosh_term == pytest.approx(math.cosh(1.0))
        assert lab.sinh_phase == pytest.approx(math.sinh(1.0))

    def test_invariant(self):
        for rho, theta, ups in [(0.3, 0.0, 1.0), (2.0, 1.2, 0.4), (0.9, -2.0, 0.77)]:
            lab = SqueezeLabel(rho * cmath.exp(1j * theta), ups)
            assert lab.cosh_term**2 - abs(lab.sinh_phase) ** 2 == pytest.approx(1.0, abs=1e-12)

    def test_phase_convention(self):
        rho, theta, ups = 1.5, 0.8, 0.6
        lab = SqueezeLabel(rho * cmath.exp(1j * theta), ups)
        r = rho**ups
        assert lab.sinh_phase == pytest.approx(cmath.exp(1j * ups * theta) * math.sinh(r))

    def test_upsilon_domain(self):
        with pytest.raises(ValueError):
            SqueezeLabel(1.0, 0.0)

    @given(
        rho=st.floats(min_value=0.0, max_value=4.0),
        theta=st.floats(min_value=-3.1, max_value=3.1),
        ups=st.floats(min_value=0.05, max_value=1.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_hyperbolic_identity_property(self, rho, theta, ups):
        lab = SqueezeLabel(rho * cmath.exp(1j * theta), ups)
        assert lab.cosh_term**2 - abs(lab.sinh_phase) ** 2 == pytest.approx(1.0, abs=1e-12)


class TestBogoliubov:
    def test_zero_squeeze(self):
        assert bogoliubov(SqueezeLabel(0j, 0.5)) == (1.0, 0j)

    def test_worked_example(self):
        u, v = bogoliubov(SqueezeLabel(1.0, 0.5))
        assert u == pytest.approx(1.543081, abs=1e-6)
        assert v == pytest.approx(1.175201, abs=1e-6)

    def test_conjugation_matrix_oracle(self):
        cfg = TruncationConfig(80)
        a, adag, _ = ladder_matrices(cfg)
        lab = SqueezeLabel(0.6 * cmath.exp(1j * np.pi / 4), 0.8)
        s = squeezing(lab, cfg)
        u, v = bogoliubov(lab)
        blk = squeeze_block(80, lab.magnitude)
        resid = (s.conj().T @ a @ s - (u * a - v * adag))[:blk, :blk]
        assert np.linalg.norm(resid) < 1e-8

    def test_creation_conjugation(self):
        cfg = TruncationConfig(96)
        a, adag, _ = ladder_matrices(cfg)
        lab = SqueezeLabel(0.5 * cmath.exp(-0.7j), 0.6)
        s = squeezing(lab, cfg)
        u, v = bogoliubov(lab)
        blk = squeeze_block(96, lab.magnitude)
        resid = (s.conj().T @ adag @ s - (u * adag - np.conj(v) * a))[:blk, :blk]
        assert np.linalg.norm(resid) < 1e-8
