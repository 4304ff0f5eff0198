import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairbreaker.core import CONST
from pairbreaker.errors import DomainError
from pairbreaker.fixtures import DEVICE_TABLE
from pairbreaker.transmon import (TransmonParams, asymptotic_f01, asymptotic_two_delta_f,
                                  charge_basis_levels, dispersion, dispersion_scan, fit_ej_ec,
                                  qubit_frequency)

# full dense diagonalization, N = 40, E_c = 360 MHz, E_J = 28 E_c
DENSE_F_EVEN = 4998727668.729298
DENSE_F_ODD = 4997735959.780575
DENSE_TWO_DELTA_F = 991708.9487228394

QUOTED_RATIO = {"xmon_q1": 22, "xmon_q2": 24, "xmon_q3": 25,
                "circmon_q1": 26, "circmon_q2": 28, "circmon_q3": 29}


def dense_levels(e_j, e_c, n_g, n):
    k = np.arange(-n, n + 1)
    h = np.diag(4 * e_c * (k - n_g) ** 2) - e_j / 2 * (np.eye(2 * n + 1, k=1) + np.eye(2 * n + 1, k=-1))
    return np.linalg.eigvalsh(h)[:3]


def params_360():
    return TransmonParams.from_frequencies(28 * 360e6, 360e6)


def test_dispersion_matches_dense_oracle():
    d = dispersion(params_360())
    assert d.f01_even_at_0 == pytest.approx(DENSE_F_EVEN, rel=1e-10)
    assert d.f01_odd_at_0 == pytest.approx(DENSE_F_ODD, rel=1e-10)
    assert d.two_delta_f == pytest.approx(DENSE_TWO_DELTA_F, rel=1e-6)
    assert d.f01_reported == pytest.approx(0.5 * (DENSE_F_EVEN + DENSE_F_ODD), rel=1e-10)


@pytest.mark.parametrize("n_g", [0.0, 0.13, 0.25, 0.5])
def test_levels_match_dense_diagonalization(n_g):
    p = TransmonParams(20 * CONST.h * 1e9, CONST.h * 1e9, n_cutoff=12)
    ref = dense_levels(p.e_j, p.e_c, n_g, 12)
    np.testing.assert_allclose(charge_basis_levels(p, n_g), ref, rtol=1e-10)


def test_f01_near_asymptotic_value():
    p = params_360()
    assert qubit_frequency(p) == pytest.approx(asymptotic_f01(28 * 360e6, 360e6), rel=1e-2)


def test_truncation_converged():
    a = dispersion(TransmonParams.from_frequencies(28 * 360e6, 360e6, n_cutoff=15))
    b = dispersion(TransmonParams.from_frequencies(28 * 360e6, 360e6, n_cutoff=30))
    assert a.f01_reported == pytest.approx(b.f01_reported, rel=1e-9)


def test_asymptotic_dispersion_order_of_magnitude():
    exact = dispersion(params_360()).two_delta_f
    approx = asymptotic_two_delta_f(28 * 360e6, 360e6)
    assert 0.5 < approx / exact < 2


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 1.0))
def test_charge_periodicity_and_reflection(n_g):
    p = TransmonParams.from_frequencies(15e9, 0.8e9, n_cutoff=15)
    f = qubit_frequency(p, n_g)
    assert qubit_frequency(p, n_g + 1.0) == pytest.approx(f, rel=1e-11)
    assert qubit_frequency(p, -n_g) == pytest.approx(f, rel=1e-11)


def test_dispersion_scan_bands_swap_at_half_period():
    p = TransmonParams.from_frequencies(15e9, 0.8e9, n_cutoff=15)
    n_g = np.linspace(0, 1, 21)
    even, odd = dispersion_scan(p, n_g)
    np.testing.assert_allclose(even[:11], odd[10:], rtol=1e-12)
    assert np.max(np.abs(even - odd)) == pytest.approx(dispersion(p).two_delta_f, rel=1e-9)


@pytest.mark.parametrize("row", DEVICE_TABLE, ids=lambda r: r["name"])
def test_device_rows_reproduce_quoted_ratio(row):
    p = fit_ej_ec(row["f01_hz"], row["two_delta_f_hz"])
    assert p.ratio == pytest.approx(QUOTED_RATIO[row["name"]], abs=1.0)
    d = dispersion(p)
    assert d.f01_reported == pytest.approx(row["f01_hz"], rel=1e-8)
    assert d.two_delta_f == pytest.approx(row["two_delta_f_hz"], rel=1e-8)


@settings(max_examples=20, deadline=None)
@given(st.floats(20.0, 30.0), st.floats(250e6, 450e6))
def test_forward_inverse_round_trip(ratio, e_c_hz):
    truth = TransmonParams.from_frequencies(ratio * e_c_hz, e_c_hz)
    d = dispersion(truth)
    fit = fit_ej_ec(d.f01_reported, d.two_delta_f)
    assert fit.e_j == pytest.approx(truth.e_j, rel=1e-3)
    assert fit.e_c == pytest.approx(truth.e_c, rel=1e-3)


def test_dispersion_decreases_with_ratio():
    ratios = np.linspace(20, 30, 41)
    d = [dispersion(TransmonParams.from_frequencies(r * 300e6, 300e6)).two_delta_f for r in ratios]
    assert np.all(np.diff(d) < 0)


@pytest.mark.parametrize("f01,d", [(0.0, 1e6), (5e9, 0.0), (5e9, -1e6), (5e9, 1e9)])
def test_fit_rejects_bad_inputs(f01, d):
    with pytest.raises(DomainError):
        fit_ej_ec(f01, d)


@pytest.mark.parametrize("kwargs", [dict(e_j=0, e_c=1), dict(e_j=1, e_c=-1),
                                    dict(e_j=1, e_c=1, n_cutoff=5), dict(e_j=1, e_c=1, n_cutoff=12.5)])
def test_params_invariants(kwargs):
    with pytest.raises(DomainError):
        TransmonParams(**kwargs)


def test_ratio_property():
    assert params_360().ratio == pytest.approx(28.0)
    assert math.isclose(TransmonParams.from_frequencies(1e9, 1e8).e_j, 1e9 * CONST.h)


def test_vanishing_josephson_energy_gives_charge_levels():
    e_c = CONST.h * 1e9
    p = TransmonParams(1e-40, e_c)
    np.testing.assert_allclose(charge_basis_levels(p, 0.0), [0, 4 * e_c, 4 * e_c], atol=1e-12 * e_c)
    lv = charge_basis_levels(p, 0.25)
    assert lv[1] - lv[0] == pytest.approx(2 * e_c, rel=1e-12)


def test_f01_extremized_at_integer_and_half_offset():
    p = TransmonParams.from_frequencies(25 * 300e6, 300e6, n_cutoff=15)
    n_g = np.linspace(0, 1, 201)
    even, _ = dispersion_scan(p, n_g)
    assert np.argmax(even) in (0, 200)
    assert n_g[np.argmin(even)] == pytest.approx(0.5)
