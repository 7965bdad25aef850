"""State construction, photon statistics, time evolution, overlaps."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stretched_fock import (
    EvolutionPhase,
    StretchLabel,
    TruncationConfig,
    TruncationError,
    annihilation_residual,
    evolve,
    evolved_label,
    make_state,
    numeric_photon_stats,
    overlap,
    photon_pmf,
    photon_stats,
    state_from_amplitude,
)

CFG64 = TruncationConfig(64)
CFG128 = TruncationConfig(128)


class TestMakeState:
    def test_vacuum(self):
        v = make_state(StretchLabel(0j, 0.5), TruncationConfig(8))
        expected = np.zeros(8, dtype=complex)
        expected[0] = 1.0
        np.testing.assert_array_equal(v, expected)

    def test_ground_amplitude(self):
        v = make_state(StretchLabel(4.0, 0.5), CFG64)
        assert abs(v[0]) ** 2 == pytest.approx(math.exp(-4.0), rel=1e-13)

    def test_unit_sigma_standard_coherent(self):
        # independently coded standard amplitudes with exact factorials
        zeta = 1.0
        v = make_state(StretchLabel(zeta, 1.0), TruncationConfig(32))
        ref = np.array(
            [math.exp(-0.5) * zeta**n / math.sqrt(math.factorial(n)) for n in range(32)]
        )
        np.testing.assert_allclose(v, ref, atol=1e-15)

    def test_norm_within_tail_window(self):
        for sigma in (0.25, 0.5, 0.75, 1.0):
            for zmod in (0.5, 2.0, 4.0):
                label = StretchLabel(zmod * cmath.exp(0.3j), sigma)
                from stretched_fock import required_dim

                dim = required_dim(label.mean_photons, 1e-12)
                v = make_state(label, TruncationConfig(dim, tail_tol=1e-12))
                norm_sq = float(np.vdot(v, v).real)
                assert 1.0 - 1e-12 <= norm_sq <= 1.0

    def test_truncation_error_carries_required_dim(self):
        label = StretchLabel(4.0, 1.0)  # mean 16
        with pytest.raises(TruncationError) as info:
            make_state(label, TruncationConfig(8))
        assert info.value.required_dim is not None
        make_state(label, TruncationConfig(info.value.required_dim))

    def test_complex_label_amplitude_phases(self):
        label = StretchLabel(2.0 * cmath.exp(1j * np.pi / 5), 0.7)
        v = make_state(label, CFG64)
        # c_{n+1}/c_n = w / sqrt(n+1)
        for n in range(10):
            assert v[n + 1] / v[n] == pytest.approx(label.w / math.sqrt(n + 1), rel=1e-12)


class TestAnnihilationResidual:
    def test_vacuum_exact(self):
        assert annihilation_residual(StretchLabel(0j, 0.5), TruncationConfig(16)) == 0.0

    @pytest.mark.parametrize(
        "zeta,sigma", [(4.0, 0.5), (2.0, 1.0), (0.5, 0.25), (4.0 * cmath.exp(0.8j), 0.75)]
    )
    def test_small_on_block(self, zeta, sigma):
        assert annihilation_residual(StretchLabel(zeta, sigma), CFG64) < 1e-10

    def test_eigenvalue_is_fractional_power(self):
        # direct matrix-vector oracle: a v ~= w v componentwise on low n
        label = StretchLabel(4.0, 0.5)
        v = make_state(label, CFG64)
        from stretched_fock import ladder_matrices

        a, _, _ = ladder_matrices(CFG64)
        av = a @ v
        np.testing.assert_allclose(av[:40], label.w * v[:40], atol=1e-12)


class TestPhotonPmf:
    def test_vacuum(self):
        assert photon_pmf(StretchLabel(0j, 0.5), 0) == 1.0
        assert photon_pmf(StretchLabel(0j, 0.5), 3) == 0.0

    def test_poisson_oracle(self):
        # mean |4|^{2*0.5} = 4: pmf(4) = 4^4 e^{-4} / 4!
        got = photon_pmf(StretchLabel(4.0, 0.5), 4)
        assert got == pytest.approx(4**4 * math.exp(-4) / math.factorial(4), rel=1e-14)

    def test_sums_to_one_with_tail(self):
        from stretched_fock import poisson_tail_bound

        for sigma, zmod in [(0.25, 4.0), (0.5, 2.0), (1.0, 4.0)]:
            label = StretchLabel(zmod, sigma)
            dim = 256
            partial = sum(photon_pmf(label, n) for n in range(dim))
            tail = poisson_tail_bound(label.mean_photons, dim)
            assert partial <= 1.0 + 1e-14
            assert partial + tail >= 1.0 - 1e-12
            assert partial == pytest.approx(1.0, abs=1e-12)

    @given(
        zmod=st.floats(min_value=0.1, max_value=3.0),
        sigma=st.floats(min_value=0.1, max_value=1.0),
        n=st.integers(min_value=0, max_value=40),
    )
    @settings(max_examples=60, deadline=None)
    def test_state_consistency(self, zmod, sigma, n):
        label = StretchLabel(zmod * cmath.exp(0.4j), sigma)
        v = state_from_amplitude(label.w, TruncationConfig(48), check_tail=False)
        if n < 48:
            assert abs(v[n]) ** 2 == pytest.approx(photon_pmf(label, n), abs=1e-14, rel=1e-12)


class TestPhotonStats:
    def test_closed_forms(self):
        stats = photon_stats(StretchLabel(4.0, 0.5))
        assert stats.mean == pytest.approx(4.0)
        assert stats.second_moment == pytest.approx(20.0)
        assert stats.mandel_q == pytest.approx(0.0, abs=1e-14)

    def test_unit_sigma_poisson_moments(self):
        stats = photon_stats(StretchLabel(1.0, 1.0))
        assert stats.mean == pytest.approx(1.0)
        assert stats.second_moment == pytest.approx(2.0)

    def test_vacuum_undefined_mandel(self):
        stats = photon_stats(StretchLabel(0j, 0.5))
        assert stats.mean == 0.0
        assert stats.mandel_q is None

    def test_numeric_route_agrees(self):
        for sigma in (0.25, 0.5, 1.0):
            for zmod in (0.5, 2.0, 4.0):
                label = StretchLabel(zmod, sigma)
                cf = photon_stats(label)
                num = numeric_photon_stats(label)
                assert num.mean == pytest.approx(cf.mean, abs=1e-10)
                assert num.second_moment == pytest.approx(cf.second_moment, abs=1e-10)
                assert abs(num.mandel_q) < 1e-10

    def test_second_moment_dominates_mean_squared(self):
        for zmod in (0.3, 1.0, 5.0):
            stats = photon_stats(StretchLabel(zmod, 0.6))
            assert stats.second_moment >= stats.mean**2


class TestEvolve:
    def test_zero_angle_identity(self):
        v = make_state(StretchLabel(1.5, 0.5), CFG64)
        np.testing.assert_array_equal(evolve(v, EvolutionPhase(0.0)), v)

    def test_full_turn_identity(self):
        v = make_state(StretchLabel(1.5, 0.5), CFG64)
        np.testing.assert_allclose(evolve(v, EvolutionPhase(2 * np.pi)), v, atol=1e-12)

    def test_unit_sigma_label_map(self):
        # at sigma = 1 the label map is branch-free
        phase = EvolutionPhase(np.pi / 3)
        v = evolve(make_state(StretchLabel(2.0, 1.0), CFG64), phase)
        ref = make_state(StretchLabel(2.0 * cmath.exp(-1j * np.pi / 3), 1.0), CFG64)
        np.testing.assert_allclose(v, ref, atol=1e-12)

    def test_amplitude_level_stability(self):
        # evolving amplitudes equals rebuilding from the rotated amplitude,
        # for any sigma and angle
        label = StretchLabel(1.2 * cmath.exp(2.8j), 0.4)
        for omega_t in (0.3, 2.0, 5.9):
            got = evolve(make_state(label, CFG64), EvolutionPhase(omega_t))
            ref = state_from_amplitude(cmath.exp(-1j * omega_t) * label.w, CFG64)
            np.testing.assert_allclose(got, ref, atol=1e-12)

    def test_label_map_matches_inside_branch_window(self):
        label = StretchLabel(cmath.exp(1j * 3 * np.pi / 4), 0.5)
        phase = EvolutionPhase(0.5 * np.pi)  # omega_t/sigma = pi, no wrap
        via_label = make_state(evolved_label(label, phase), CFG64)
        via_amps = evolve(make_state(label, CFG64), phase)
        np.testing.assert_allclose(via_label, via_amps, atol=1e-12)

    def test_label_map_breaks_across_branch_cut(self):
        # wrapping Arg past -pi picks up the branch jump exp(2 pi i sigma)
        label = StretchLabel(cmath.exp(-1j * 3 * np.pi / 4), 0.5)
        phase = EvolutionPhase(0.5 * np.pi)
        via_label = make_state(evolved_label(label, phase), CFG64)
        via_amps = evolve(make_state(label, CFG64), phase)
        assert np.abs(via_label - via_amps).max() > 0.1
        jump = cmath.exp(2j * np.pi * label.sigma)
        ratio = evolved_label(label, phase).w / (cmath.exp(-1j * phase.omega_t) * label.w)
        assert ratio == pytest.approx(jump, rel=1e-12)


class TestOverlap:
    def test_self_overlap_is_one(self):
        lab = StretchLabel(1.7 * cmath.exp(0.4j), 0.6)
        assert overlap(lab, lab) == pytest.approx(1.0)

    def test_worked_example(self):
        got = overlap(StretchLabel(1.0, 0.5), StretchLabel(4.0, 0.5))
        assert got == pytest.approx(math.exp(-0.5), rel=1e-13)

    def test_against_truncated_inner_product(self):
        cfg = TruncationConfig(96)
        eta = StretchLabel(1.1 * cmath.exp(0.7j), 0.5)
        zeta = StretchLabel(2.0 * cmath.exp(-0.2j), 0.5)
        direct = complex(np.vdot(make_state(eta, cfg), make_state(zeta, cfg)))
        assert overlap(eta, zeta) == pytest.approx(direct, abs=1e-10)

    def test_sigma_mismatch_rejected(self):
        with pytest.raises(ValueError):
            overlap(StretchLabel(1.0, 0.5), StretchLabel(1.0, 0.6))

    def test_magnitude_identity(self):
        # |<eta|zeta>|^2 = exp(-|eta^s - zeta^s|^2)
        eta = StretchLabel(1.4 * cmath.exp(1.1j), 0.35)
        zeta = StretchLabel(0.6 * cmath.exp(-0.5j), 0.35)
        got = abs(overlap(eta, zeta)) ** 2
        assert got == pytest.approx(math.exp(-abs(eta.w - zeta.w) ** 2), rel=1e-12)

    @given(
        m1=st.floats(min_value=0.1, max_value=2.5),
        m2=st.floats(min_value=0.1, max_value=2.5),
        p1=st.floats(min_value=-3.0, max_value=3.0),
        p2=st.floats(min_value=-3.0, max_value=3.0),
        sigma=st.floats(min_value=0.1, max_value=1.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_hermitian_symmetry(self, m1, m2, p1, p2, sigma):
        eta = StretchLabel(m1 * cmath.exp(1j * p1), sigma)
        zeta = StretchLabel(m2 * cmath.exp(1j * p2), sigma)
        assert overlap(eta, zeta) == pytest.approx(overlap(zeta, eta).conjugate(), rel=1e-12)
