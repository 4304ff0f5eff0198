import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairbreaker.antenna import CouplingSpectrum, coupling_spectrum
from pairbreaker.core import CONST, gap_from_threshold, make_grid
from pairbreaker.errors import DomainError, NoRootError, ValidationError
from pairbreaker.fixtures import (FIXTURE_FREQS, fixture_receiver, fixture_transmitter,
                                  matched_series_rlc)
from pairbreaker.junction import JunctionParams, QpState, ambegaokar_baratoff_current
from pairbreaker.radiation import (BlackbodyEnvironment, EnclosureParams, TransferSpectrum,
                                   baseline_parity_rate, boltzmann_tail_rate, bose_occupation,
                                   effective_temperature, implied_efficiency_product,
                                   parity_rate_spectrum, photon_absorption_rate,
                                   transmitter_radiated_power, wall_absorption_efficiency,
                                   wall_surface_impedance)

DELTA_AL = 190.3e-6 * CONST.e_charge
F_THRESHOLD = 92e9

# trapezoid on 4e6+1 log-spaced points, flat e_c = 1, T = 0.46 K, [92 GHz, 2 THz]
FLAT_BASELINE_460MK = 650174.9704201453


def reference_transmitter():
    return JunctionParams(33.0e3, 3.0e-15, 8.3e-9, DELTA_AL)


def flat_spectrum(e0=1.0, lo=50e9, hi=2.5e12):
    return CouplingSpectrum([lo, hi], [e0, e0])


def test_wall_surface_impedance_hand_value():
    z = wall_surface_impedance(7.2e7, 270e9)
    assert z.real == pytest.approx(0.12167, rel=1e-4)
    assert z.imag == z.real


def test_wall_surface_impedance_sqrt_scaling():
    z1 = wall_surface_impedance(7.2e7, 100e9)
    z4 = wall_surface_impedance(7.2e7, 400e9)
    assert z4.real == pytest.approx(2 * z1.real, rel=1e-14)


def test_perfect_conductor_absorbs_nothing():
    assert wall_surface_impedance(math.inf, 270e9) == 0
    assert wall_absorption_efficiency(0.0) == 0.0


def test_matched_wall_absorbs_everything():
    assert wall_absorption_efficiency(CONST.z_freespace) == pytest.approx(1.0, rel=1e-15)


def test_wall_absorption_small_impedance_limit():
    z = wall_surface_impedance(7.2e7, 270e9)
    eta = wall_absorption_efficiency(z)
    assert eta == pytest.approx(4 * z.real / CONST.z_freespace, rel=1e-3)
    assert eta == pytest.approx(1.29e-3, rel=1e-2)


@given(st.floats(1e5, 1e9), st.floats(1e9, 5e12))
def test_wall_absorption_in_unit_interval(sigma, f):
    eta = wall_absorption_efficiency(wall_surface_impedance(sigma, f))
    assert 0 < eta < 1


def test_radiated_power():
    tx = reference_transmitter()
    p = transmitter_radiated_power(tx, QpState(0.0), 1.0)
    assert p == pytest.approx(8.3e-9**2 * 33e3 / 8, rel=1e-14)
    assert p == pytest.approx(2.84e-13, rel=1e-2)
    assert transmitter_radiated_power(tx, QpState(0.0), 0.0) == 0.0
    with pytest.raises(DomainError):
        transmitter_radiated_power(tx, QpState(0.0), 1.5)


def test_photon_rate_hand_oracle_at_270ghz():
    tx = reference_transmitter()
    enc = EnclosureParams(7.2e7, 3.2e-3, 1.0)
    f = 270e9
    eta = 4 * math.sqrt(math.pi * f * CONST.mu0 / 7.2e7) / 376.730
    hand = (1 / (16 * eta)) * (CONST.c_light / f) ** 2 / 3.2e-3 * 8.3e-9**2 * 33e3 / (CONST.h * f)
    rate = photon_absorption_rate(f, tx, QpState(0.0), 1.0, 1.0, enc)
    assert rate == pytest.approx(hand, rel=2e-3)
    assert rate == pytest.approx(2.37e8, rel=2e-2)


def test_implied_efficiency_product():
    tx = reference_transmitter()
    enc = EnclosureParams(7.2e7, 3.2e-3, 1.0)
    prod = implied_efficiency_product(11400.0, 270e9, tx, QpState(0.0), enc)
    assert prod == pytest.approx(4.8e-5, rel=2e-2)


def test_photon_rate_scales_linearly():
    tx = reference_transmitter()
    qp = QpState(0.0)
    full = photon_absorption_rate(270e9, tx, qp, 0.5, 0.4, EnclosureParams())
    assert photon_absorption_rate(270e9, tx, qp, 0.5, 0.4, EnclosureParams(scale_factor=0.07)) == \
        pytest.approx(0.07 * full, rel=1e-14)
    assert photon_absorption_rate(270e9, tx, qp, 1.0, 0.4, EnclosureParams()) == \
        pytest.approx(2 * full, rel=1e-14)
    assert photon_absorption_rate(270e9, tx, qp, 0.5, 0.4, EnclosureParams(scale_factor=0.0)) == 0.0


@pytest.mark.parametrize("kwargs", [dict(sigma_wall=0), dict(area_inner=-1), dict(scale_factor=1.5),
                                    dict(scale_factor=-0.1)])
def test_enclosure_invariants(kwargs):
    with pytest.raises(DomainError):
        EnclosureParams(**kwargs)


def fixture_chain():
    tx, rx = fixture_transmitter(), fixture_receiver()
    grid = make_grid(100e9, 500e9, 401)
    tx_table, _ = matched_series_rlc(tx, 270e9, FIXTURE_FREQS, mismatch=4.0)
    rx_table, _ = matched_series_rlc(rx, 270e9, FIXTURE_FREQS, mismatch=4.0)
    return tx, coupling_spectrum(tx_table, tx, grid), coupling_spectrum(rx_table, rx, grid), grid


def test_parity_rate_spectrum_structure():
    tx, tx_spec, rx_spec, grid = fixture_chain()
    spec = parity_rate_spectrum(tx_spec, rx_spec, tx, QpState(0.084), EnclosureParams(scale_factor=0.07),
                                110.0, grid)
    np.testing.assert_allclose(spec.gamma_p - spec.gamma_j, 110.0, rtol=1e-12)
    assert spec.gamma_0 == pytest.approx(110.0)
    f_peak, rate_peak = spec.peak()
    assert f_peak == pytest.approx(270e9, abs=2e9)
    assert rate_peak > 110.0


def test_parity_rate_spectrum_scale_zero_is_baseline_only():
    tx, tx_spec, rx_spec, grid = fixture_chain()
    spec = parity_rate_spectrum(tx_spec, rx_spec, tx, QpState(0.0), EnclosureParams(scale_factor=0.0),
                                12.8, grid)
    assert np.all(spec.gamma_j == 0)
    assert np.all(spec.gamma_p == 12.8)


def test_transfer_spectrum_validation():
    with pytest.raises(ValidationError):
        TransferSpectrum([1, 2], [0, 0], [0, 0], [0, 0], [0, -1], [0, 0])
    with pytest.raises(ValidationError):
        TransferSpectrum([2, 1], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0])


def test_bose_occupation_no_overflow():
    n = bose_occupation(np.array([1e9, 1e12, 1e15]), 0.01)
    assert np.all(np.isfinite(n))
    assert n[-1] == 0.0
    assert bose_occupation(1e9, 1.0) == pytest.approx(1 / math.expm1(CONST.h * 1e9 / CONST.k_B), rel=1e-12)


def test_baseline_matches_frozen_trapezoid_oracle():
    env = BlackbodyEnvironment(0.46, F_THRESHOLD, 2e12)
    assert baseline_parity_rate(flat_spectrum(), env, rel_tol=1e-9) == \
        pytest.approx(FLAT_BASELINE_460MK, rel=1e-7)


@pytest.mark.parametrize("t", [0.2, 0.3, 0.41, 0.46, 0.49])
def test_baseline_matches_boltzmann_tail(t):
    env = BlackbodyEnvironment(t, F_THRESHOLD, 2e12)
    got = baseline_parity_rate(flat_spectrum(0.3), env)
    assert got == pytest.approx(boltzmann_tail_rate(0.3, F_THRESHOLD, 2e12, t), rel=1e-2)


def test_baseline_requires_coverage():
    env = BlackbodyEnvironment(0.3, F_THRESHOLD, 2e12)
    with pytest.raises(DomainError):
        baseline_parity_rate(CouplingSpectrum([100e9, 3e12], [1, 1]), env)
    with pytest.raises(DomainError):
        baseline_parity_rate(CouplingSpectrum([50e9, 1e12], [1, 1]), env)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.05, 2.0))
def test_baseline_monotone_in_temperature(t1, t2):
    lo, hi = sorted((t1, t2))
    if hi - lo < 1e-3:
        return
    spec = flat_spectrum(0.5)
    r_lo = baseline_parity_rate(spec, BlackbodyEnvironment(lo, F_THRESHOLD))
    r_hi = baseline_parity_rate(spec, BlackbodyEnvironment(hi, F_THRESHOLD))
    assert r_hi > r_lo


def wide_receiver_spectrum():
    rx = fixture_receiver()
    table, _ = matched_series_rlc(rx, 270e9, FIXTURE_FREQS, mismatch=4.0)
    return coupling_spectrum(table, rx, make_grid(60e9, 2.05e12, 4000))


@pytest.mark.parametrize("t", [0.41, 0.46, 0.49])
def test_effective_temperature_round_trip(t):
    rx = wide_receiver_spectrum()
    template = BlackbodyEnvironment(1.0, F_THRESHOLD, 2e12)
    gamma_0 = baseline_parity_rate(rx, BlackbodyEnvironment(t, F_THRESHOLD, 2e12))
    assert effective_temperature(rx, gamma_0, template) == pytest.approx(t, rel=1e-3)


def test_effective_temperature_unreachable():
    template = BlackbodyEnvironment(1.0, F_THRESHOLD, 2e12)
    with pytest.raises(NoRootError, match="not reachable"):
        effective_temperature(flat_spectrum(1e-6), 1e12, template)
    with pytest.raises(DomainError):
        effective_temperature(flat_spectrum(), 0.0, template)


def test_environment_invariants():
    with pytest.raises(DomainError):
        BlackbodyEnvironment(0.0, F_THRESHOLD)
    with pytest.raises(DomainError):
        BlackbodyEnvironment(0.3, 3e12, 2e12)


def test_ab_current_feeds_rate():
    i0 = ambegaokar_baratoff_current(33e3, gap_from_threshold(92e9))
    p = JunctionParams(33e3, 3e-15, i0, DELTA_AL)
    qp = QpState(0.084)
    r1 = photon_absorption_rate(270e9, p, qp, 1, 1, EnclosureParams())
    r0 = photon_absorption_rate(270e9, p, QpState(0.0), 1, 1, EnclosureParams())
    assert r1 / r0 == pytest.approx((1 - 0.084) ** 2, rel=1e-12)
