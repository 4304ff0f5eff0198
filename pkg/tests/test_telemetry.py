import math
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from pairbreaker.errors import BoundaryWarning, DomainError, ValidationError
from pairbreaker.telemetry import (ParityTimeSeries, PsdEstimate, autocorrelation, average_psd,
                                   fit_linear, fit_lorentzian, flip_probability, lorentzian_psd,
                                   periodogram, simulate_measure_idle_measure, simulate_records,
                                   simulate_telegraph)

DT = 50e-6


def test_flip_probability_values():
    assert flip_probability(612.0, DT) == pytest.approx(0.02968, rel=1e-3)
    assert flip_probability(0.0, DT) == 0.0
    assert flip_probability(1e12, DT) == pytest.approx(0.5)


@given(st.floats(0, 1e5), st.integers(1, 50))
def test_flip_probability_reproduces_continuous_correlation(gamma, k):
    p = flip_probability(gamma, DT)
    assert (1 - 2 * p) ** k == pytest.approx(math.exp(-2 * gamma * k * DT), rel=1e-9, abs=1e-300)


def test_simulation_is_seeded():
    a = simulate_telegraph(612, DT, 5000, 0.9, seed=11)
    b = simulate_telegraph(612, DT, 5000, 0.9, seed=11)
    c = simulate_telegraph(612, DT, 5000, 0.9, seed=12)
    d = simulate_telegraph(612, DT, 5000, 0.9, seed=11, record_index=1)
    assert np.array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
    assert not np.array_equal(a.values, d.values)
    assert a.seed == 11


def test_records_independent_of_parallelism():
    serial = simulate_records(612, DT, 2000, 0.9, 5, 9)
    with ThreadPoolExecutor(4) as ex:
        threaded = simulate_records(612, DT, 2000, 0.9, 5, 9, executor=ex)
    for s, t in zip(serial, threaded):
        assert np.array_equal(s.values, t.values)


def test_zero_rate_perfect_readout_is_constant():
    s = simulate_telegraph(0.0, DT, 1000, 1.0, seed=3)
    assert np.all(s.values == s.values[0])


def test_readout_error_rate():
    s = simulate_telegraph(0.0, DT, 200_000, 0.8, seed=4)
    frac = np.mean(s.values != np.sign(np.sum(s.values)))
    assert frac == pytest.approx(0.1, abs=3e-3)


def test_switch_rate_statistics():
    s = simulate_telegraph(612, DT, 400_000, 1.0, seed=8)
    flips = np.count_nonzero(np.diff(s.values))
    expected = flip_probability(612, DT) * (len(s) - 1)
    assert flips == pytest.approx(expected, rel=5 * math.sqrt(expected) / expected)


def test_autocorrelation_decay():
    s = simulate_telegraph(612, DT, 400_000, 0.9, seed=9)
    ac = autocorrelation(s.values, 40)
    lags = np.arange(1, 41)
    model = 0.81 * np.exp(-2 * 612 * lags * DT)
    np.testing.assert_allclose(ac[1:], model, atol=0.02)


@pytest.mark.parametrize("kwargs", [dict(gamma_p=-1), dict(fidelity=0.0), dict(fidelity=1.1),
                                    dict(n_samples=1), dict(dt=0.0)])
def test_simulation_rejects_bad_inputs(kwargs):
    base = dict(gamma_p=100.0, dt=DT, n_samples=100, fidelity=0.9, seed=1)
    base.update(kwargs)
    with pytest.raises(DomainError):
        simulate_telegraph(**base)


def test_series_validation():
    with pytest.raises(ValidationError):
        ParityTimeSeries(np.array([1, 0, 1]), DT)
    with pytest.raises(ValidationError):
        ParityTimeSeries(np.array([1]), DT)
    with pytest.raises(ValidationError):
        ParityTimeSeries(np.array([1, -1]), 0.0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(10, 3000))
def test_parseval_normalization(seed, gamma):
    s = simulate_telegraph(gamma, DT, 4096, 0.9, seed)
    freqs, power = periodogram(s.values, DT)
    n = len(s)
    # double the positive bins, Nyquist bin appears once
    total = (2 * power[:-1].sum() + power[-1]) / (n * DT)
    assert total == pytest.approx(np.var(s.values.astype(float)), rel=1e-2)


def test_periodogram_drops_dc():
    freqs, power = periodogram(np.ones(64), DT)
    assert freqs[0] > 0
    assert np.all(power == 0)


def test_lorentzian_total_power():
    # Lorentzian part integrates to F**2 over both signs of frequency
    gamma, fid = 612.0, 0.9
    val, _ = quad(lambda f: lorentzian_psd(f, gamma, fid, DT) - (1 - fid**2) * DT, -np.inf, np.inf)
    assert val == pytest.approx(fid**2, rel=1e-8)


def test_average_psd_requires_matching_records():
    a = simulate_telegraph(100, DT, 100, 0.9, 1)
    b = simulate_telegraph(100, DT, 200, 0.9, 1)
    with pytest.raises(ValidationError):
        average_psd([a, b])
    with pytest.raises(ValidationError):
        average_psd([])


@pytest.mark.parametrize("gamma,fid", [(110, 0.9), (612, 0.7), (1060, 1.0), (3000, 0.5)])
def test_fit_recovers_noiseless_model(gamma, fid):
    freqs = np.fft.rfftfreq(5000, DT)[1:]
    psd = PsdEstimate(freqs, lorentzian_psd(freqs, gamma, fid, DT), 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryWarning)
        fit = fit_lorentzian(psd, DT)
    assert fit.gamma_p == pytest.approx(gamma, rel=1e-6)
    assert fit.fidelity == pytest.approx(fid, rel=1e-6)
    assert fit.residual_norm < 1e-8


def test_fit_on_simulated_records():
    records = simulate_records(612, DT, 5000, 0.9, 20211, 9)
    fit = fit_lorentzian(average_psd(records), DT)
    assert fit.gamma_p == pytest.approx(612, rel=0.15)
    assert fit.fidelity == pytest.approx(0.9, abs=0.05)


def test_fit_flags_bound():
    freqs = np.fft.rfftfreq(5000, DT)[1:]
    psd = PsdEstimate(freqs, lorentzian_psd(freqs, 500, 1.0, DT), 1)
    with pytest.warns(BoundaryWarning):
        fit = fit_lorentzian(psd, DT)
    assert "fidelity" in fit.at_bound


def test_fit_needs_enough_bins():
    psd = PsdEstimate(np.arange(1, 10.0), np.ones(9), 1)
    with pytest.raises(ValidationError):
        fit_lorentzian(psd, DT)


def test_measure_idle_measure_slope():
    t = np.linspace(0, 20e-6, 11)
    pts = simulate_measure_idle_measure(500.0, 0.01, t, 200_000, seed=2)
    slope, intercept = fit_linear(pts)
    assert slope == pytest.approx(500.0, rel=0.05)
    assert intercept == pytest.approx(0.01, abs=1e-3)


def test_measure_idle_measure_rejects():
    with pytest.raises(DomainError):
        simulate_measure_idle_measure(1e6, 0.0, [1.0], 1000, 1)
    with pytest.raises(DomainError):
        simulate_measure_idle_measure(1.0, 0.0, [1.0], 10, 1)


def test_fit_linear_exact_and_degenerate():
    assert fit_linear([(0, 1), (1, 3), (2, 5)]) == pytest.approx((2.0, 1.0))
    with pytest.raises(ValidationError):
        fit_linear([(1, 1), (1, 2), (1, 3)])
