import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from privisac._rng import substream
from privisac.channel import (BeamPattern, FadingModel, PhaseProfile, RisArray, beam_gain,
                              cascaded_power, path_gain, sample_fading, steering_vector)
from privisac.scenario import RadioParams


def test_path_gain_examples():
    r = RadioParams(reference_gain=1e-3, reference_distance=1.0, pathloss_exponent=2.0)
    assert path_gain(1.0, r) == 1e-3
    assert path_gain(2.0, r) == pytest.approx(1e-3 / 4, rel=1e-15)
    assert path_gain(0.0, r) == 1e-3
    r3 = RadioParams(reference_distance=5.0, pathloss_exponent=3.7, min_distance=1.0)
    assert path_gain(5.0, r3) == r3.reference_gain


def test_path_gain_strictly_decreasing_beyond_dmin():
    r = RadioParams()
    d = np.linspace(1.0, 500.0, 1000)
    assert np.all(np.diff(path_gain(d, r)) < 0)


def test_fading_none_is_one():
    assert sample_fading(FadingModel.NONE, None) == 1


def test_rayleigh_mean_and_median():
    g = sample_fading(FadingModel.RAYLEIGH, substream(5, "fading-test"), 1_000_000)
    assert 0.997 <= g.mean() <= 1.003
    assert abs(np.mean(g > math.log(2)) - 0.5) <= 0.002


def test_omni_gain():
    assert beam_gain(BeamPattern.omni(), 0.3, -2.0) == 1


def test_sector_examples():
    assert beam_gain(BeamPattern.sector(4.0, math.pi / 8), 0.0, 0.1) == 4.0
    p4 = BeamPattern.sector(4.0, math.pi / 8)
    # (1 - 4/8) / (7/8)
    assert p4.side_gain == pytest.approx(4.0 / 7.0, rel=1e-14)
    assert beam_gain(p4, 0.0, math.pi) == pytest.approx(4.0 / 7.0, rel=1e-14)


def test_sector_main_lobe_with_gain_8():
    # G_m = 8 over a pi/4 beam leaves no side-lobe energy; use a narrower beam
    with pytest.raises(ValueError):
        BeamPattern.sector(8.0, math.pi / 8)
    p = BeamPattern.sector(8.0, math.pi / 12)
    assert beam_gain(p, 0.0, 0.1) == 8.0


def test_sector_wraps_offset():
    p = BeamPattern.sector(4.0, math.pi / 8)
    assert beam_gain(p, math.pi - 0.05, -math.pi + 0.05) == 4.0


def test_sector_rejects_broken_normalization():
    with pytest.raises(ValueError):
        BeamPattern("sector", 4.0, 0.9, math.pi / 8)


@given(st.floats(0.01, 3.0), st.floats(1.0001, 50.0))
def test_sector_normalization_identity(half, gm):
    frac = half / math.pi
    if gm * frac >= 1.0:
        return
    p = BeamPattern.sector(gm, half)
    assert abs(p.normalization() - 1.0) <= 1e-12


def test_sector_from_side():
    p = BeamPattern.sector_from_side(1e-6, math.pi / 8)
    assert p.side_gain == 1e-6
    assert abs(p.normalization() - 1.0) <= 1e-12


def test_steering_broadside():
    assert np.array_equal(steering_vector(RisArray(), 0.0), np.ones(64))


def test_steering_two_elements():
    v = steering_vector(RisArray(1, 2, 0.5), math.pi / 2)
    assert np.allclose(np.angle(v), [0.0, math.pi])


def test_steering_four_elements():
    v = steering_vector(RisArray(1, 4, 0.5), math.pi / 6)
    expected = np.exp(1j * np.array([0, math.pi / 2, math.pi, 3 * math.pi / 2]))
    assert np.allclose(v, expected, atol=1e-12)


@given(st.floats(-3.2, 3.2))
def test_steering_unit_modulus(theta):
    assert np.allclose(np.abs(steering_vector(RisArray(), theta)), 1.0, atol=1e-12)


def test_phase_profile_wraps():
    p = PhaseProfile([-0.5, 7.0, 2 * math.pi, -1e-18])
    assert np.all((p.phases >= 0) & (p.phases < 2 * math.pi))
    assert np.allclose(np.abs(p.coefficients()), 1.0)


def test_cascaded_examples():
    z = np.zeros(4, complex)
    assert cascaded_power(1.0, 0.0, z, np.ones(4), np.zeros(4)) == 0
    ones = np.ones(64)
    assert cascaded_power(1.0, 0.0, ones, ones, np.zeros(64)) == pytest.approx(4096.0, rel=1e-15)
    rng = np.random.default_rng(0)
    h = rng.normal(size=8) + 1j * rng.normal(size=8)
    a = rng.normal(size=8) + 1j * rng.normal(size=8)
    phi = rng.uniform(0, 6, 8)
    assert cascaded_power(2.0, 0.3j, h, a, phi) == 2 * cascaded_power(1.0, 0.3j, h, a, phi)


def test_cascaded_dimension_mismatch():
    with pytest.raises(ValueError):
        cascaded_power(1.0, 0, np.ones(3), np.ones(4), np.zeros(4))


def test_cascaded_coherent_alignment():
    rng = np.random.default_rng(1)
    h = rng.normal(size=16) + 1j * rng.normal(size=16)
    a = rng.normal(size=16) + 1j * rng.normal(size=16)
    phi = -np.angle(np.conj(a) * h)
    coherent = np.sum(np.abs(a) * np.abs(h)) ** 2
    assert cascaded_power(1.0, 0.0, h, a, phi) == pytest.approx(coherent, rel=1e-12)


complex_vec = st.integers(1, 12).flatmap(
    lambda n: st.tuples(*[st.lists(st.floats(-5, 5), min_size=n, max_size=n) for _ in range(5)]))


@settings(max_examples=200)
@given(complex_vec, st.floats(-3, 3), st.floats(-3, 3), st.floats(1e-3, 1e3))
def test_cascaded_properties(vecs, dre, dim, power):
    hr, hi, ar, ai, phi = (np.array(v) for v in vecs)
    h, a, hd = hr + 1j * hi, ar + 1j * ai, complex(dre, dim)
    g = cascaded_power(power, hd, h, a, phi)
    bound = power * (abs(hd) + np.sum(np.abs(a) * np.abs(h))) ** 2
    assert 0 <= g <= bound * (1 + 1e-12) + 1e-300
    unit = cascaded_power(1.0, hd, h, a, phi)
    if unit > 0:
        assert abs(g / power - unit) <= 1e-12 * unit
