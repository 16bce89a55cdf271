"""Polarized beams, the eraser bench and the absorber interferometer."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qensemble.optics import (
    DEFAULT_SEED,
    X_HAT,
    Y_HAT,
    Z_HAT,
    EraserConfig,
    EraserStage,
    MZConfig,
    PolarizedBeam,
    diagonal_polarizer,
    efficiency_account,
    em_intensity,
    eraser_intensity_fields,
    eraser_intensity_statevector,
    formalism_agreement,
    horizontal_beam,
    mirror,
    mz_probabilities,
    rotate_polarization,
    split_beam,
    visibility,
)


class TestPolarizedBeam:
    def test_directions_are_normalized(self):
        beam = PolarizedBeam(1.0, 1.0, e_dir=[2.0, 0.0, 0.0], b_dir=[0.0, 3.0, 0.0], k_dir=[0.0, 0.0, 0.5])
        assert_allclose(beam.e_dir, X_HAT, rtol=0.0)
        assert_allclose(beam.b_dir, Y_HAT, rtol=0.0)
        assert_allclose(beam.k_dir, Z_HAT, rtol=0.0)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"e_dir": X_HAT, "b_dir": X_HAT, "k_dir": Z_HAT},
            {"e_dir": X_HAT, "b_dir": Y_HAT, "k_dir": X_HAT},
            {"e_dir": [0.0, 0.0, 0.0], "b_dir": Y_HAT, "k_dir": Z_HAT},
            {"e_dir": [1.0, 0.0], "b_dir": Y_HAT, "k_dir": Z_HAT},
        ],
    )
    def test_rejects_bad_frames(self, kwargs):
        with pytest.raises(ValueError):
            PolarizedBeam(1.0, 1.0, **kwargs)

    def test_rejects_nonpositive_speed(self):
        with pytest.raises(ValueError):
            horizontal_beam(c=0.0)

    def test_phase_enters_field_vectors(self):
        beam = horizontal_beam().with_phase(math.pi / 2.0)
        assert_allclose(beam.e_vec, 1j * X_HAT, atol=1e-16)
        assert_allclose(beam.b_vec, 1j * Y_HAT, atol=1e-16)

    def test_scaled_multiplies_both_amplitudes(self):
        beam = horizontal_beam(e_amp=2.0, b_amp=2.0).scaled(0.5j)
        assert beam.e_amp == 1.0j and beam.b_amp == 1.0j


class TestEmIntensity:
    def test_single_unit_beam(self):
        assert em_intensity(horizontal_beam()) == 1.0

    def test_matched_amplitudes_at_other_speed(self):
        # a physical wave keeps |B| = |E|/c, so the two terms stay equal
        assert em_intensity(horizontal_beam(e_amp=2.0, b_amp=1.0, c=2.0)) == 1.0

    def test_coherent_recombination_doubles(self):
        assert_allclose(em_intensity(split_beam(horizontal_beam())), 2.0, rtol=1e-15)

    def test_rejects_mixed_speeds(self):
        with pytest.raises(ValueError):
            em_intensity([horizontal_beam(c=1.0), horizontal_beam(c=2.0)])

    def test_rejects_empty_collection(self):
        with pytest.raises(ValueError):
            em_intensity([])


class TestElements:
    def test_rotator_quarter_turn(self):
        once = rotate_polarization(horizontal_beam())
        assert_allclose(once.e_dir, Y_HAT, atol=1e-16)
        assert_allclose(once.b_dir, -X_HAT, atol=1e-16)
        twice = rotate_polarization(once)
        assert_allclose(twice.e_dir, -X_HAT, atol=1e-16)
        assert em_intensity(twice) == 1.0

    def test_mirror_reverses_and_preserves(self):
        beam = horizontal_beam()
        back = mirror(beam, Z_HAT)
        assert_allclose(back.k_dir, -Z_HAT, atol=1e-16)
        assert em_intensity(back) == 1.0
        again = mirror(back, Z_HAT)
        assert_allclose(again.k_dir, beam.k_dir, atol=1e-16)
        assert_allclose(again.e_dir, beam.e_dir, atol=1e-16)

    def test_split_halves_energy(self):
        one, two = split_beam(horizontal_beam())
        assert_allclose(em_intensity(one), 0.5, rtol=1e-15)
        assert_allclose(em_intensity(one) + em_intensity(two), 1.0, rtol=1e-15)

    def test_diagonal_polarizer_halves_horizontal(self):
        out = diagonal_polarizer(horizontal_beam())
        assert_allclose(em_intensity(out), 0.5, rtol=1e-15)

    def test_polarizer_rejects_axis_along_beam(self):
        with pytest.raises(ValueError):
            diagonal_polarizer(horizontal_beam(), axis=Z_HAT)


class TestEraser:
    @pytest.mark.parametrize("phase", np.linspace(0.0, 2.0 * math.pi, 9))
    def test_stage_curves(self, phase):
        base = eraser_intensity_fields(EraserConfig(EraserStage.BASELINE, phase))
        rot = eraser_intensity_fields(EraserConfig(EraserStage.ROTATOR, phase))
        diag = eraser_intensity_fields(EraserConfig(EraserStage.ROTATOR_DIAGONAL, phase))
        assert abs(base - (1.0 + math.cos(phase))) <= 1e-12
        assert abs(rot - 1.0) <= 1e-12
        assert abs(diag - 0.5 * (1.0 + math.cos(phase))) <= 1e-12

    @pytest.mark.parametrize("stage", list(EraserStage))
    def test_routes_agree(self, stage):
        for phase in np.linspace(0.0, 2.0 * math.pi, 9):
            cfg = EraserConfig(stage, float(phase))
            f = eraser_intensity_fields(cfg)
            s = eraser_intensity_statevector(cfg)
            assert abs(f - s) <= 1e-12

    def test_visibility_edge_cases(self):
        assert visibility([2.0, 2.0, 2.0]) == 0.0
        assert visibility([0.0, 0.0]) == 0.0
        with pytest.raises(ValueError):
            visibility([1.0, -0.5])

    def test_formalism_constant_and_visibilities(self):
        report = formalism_agreement(n_phases=64)
        assert abs(report.constant - 1.0) <= 1e-12
        assert report.max_abs_deviation <= 1e-12
        for table in (report.field_visibility, report.state_visibility):
            assert abs(table["baseline"] - 1.0) <= 1e-12
            assert abs(table["rotator_in_path1"]) <= 1e-12
            assert abs(table["rotator_plus_diagonal"] - 1.0) <= 1e-12

    def test_formalism_constant_tracks_scale(self):
        # the state route is normalized, so doubled field amplitudes
        # surface as a fitted constant of four
        report = formalism_agreement(n_phases=32, e_amp=2.0, b_amp=2.0)
        assert abs(report.constant - 4.0) <= 1e-12


class TestInterferometer:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"reflectivity": -0.1},
            {"reflectivity": 1.1},
            {"efficiency": -0.1},
            {"efficiency": 1.1},
        ],
    )
    def test_config_validation(self, kwargs):
        with pytest.raises(ValueError):
            MZConfig(**kwargs)

    @pytest.mark.parametrize("r", [0.0, 0.3, 0.5, 0.77, 1.0])
    def test_dark_port_silent_without_absorber(self, r):
        probs = mz_probabilities(MZConfig(bomb_present=False, reflectivity=r))
        assert probs.dark == 0.0
        assert probs.absorbed == 0.0
        assert probs.bright == 1.0

    def test_balanced_splitter_closed_form(self):
        probs = mz_probabilities(MZConfig(bomb_present=True, reflectivity=0.5))
        assert probs.absorbed == 0.5
        assert probs.bright == 0.25
        assert probs.dark == 0.25

    @pytest.mark.parametrize("r", [0.2, 0.5, 0.8])
    def test_against_splitter_matrix_cascade(self, r):
        t = 1.0 - r
        u = np.array([[math.sqrt(r), math.sqrt(t)], [math.sqrt(t), -math.sqrt(r)]])
        survivor = np.array([0.0, math.sqrt(t)])
        out = u @ survivor
        probs = mz_probabilities(MZConfig(bomb_present=True, reflectivity=r))
        assert abs(probs.bright - out[0] ** 2) <= 1e-12
        assert abs(probs.dark - out[1] ** 2) <= 1e-12
        assert probs.bright + probs.dark + probs.absorbed == 1.0

    def test_identity_cascade_without_absorber(self):
        r = 0.37
        t = 1.0 - r
        u = np.array([[math.sqrt(r), math.sqrt(t)], [math.sqrt(t), -math.sqrt(r)]])
        cascade = u @ u
        assert_allclose(cascade, np.eye(2), atol=1e-15)


class TestEfficiencyLedger:
    def test_deterministic_for_fixed_seed(self):
        cfg = MZConfig(bomb_present=True, reflectivity=0.5, efficiency=0.02)
        a = efficiency_account(cfg, 5000, seed=77)
        b = efficiency_account(cfg, 5000, seed=77)
        assert a.counts == b.counts

    def test_counts_partition_trials(self):
        cfg = MZConfig(bomb_present=True, reflectivity=0.5, efficiency=0.02)
        ledger = efficiency_account(cfg, 12345, seed=3)
        assert sum(ledger.counts.values()) == 12345

    def test_rejects_nonpositive_trials(self):
        with pytest.raises(ValueError):
            efficiency_account(MZConfig(), 0)

    def test_counts_track_expectations_at_default_seed(self):
        cfg = MZConfig(bomb_present=True, reflectivity=0.5, efficiency=0.02)
        n = 100000
        ledger = efficiency_account(cfg, n)
        assert ledger.seed == DEFAULT_SEED
        for key, p in ledger.expected.items():
            sigma = math.sqrt(n * p * (1.0 - p))
            assert abs(ledger.counts[key] - n * p) <= 3.0 * sigma
        assert ledger.expected_undetected_bound_share == 0.98
        assert abs(ledger.observed_undetected_bound_share - 0.98) <= 5e-3
