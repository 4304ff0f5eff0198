"""Synthetic parity telemetry and its spectral analysis.

Parity records are a symmetric random telegraph observed through a readout
that flips each sample independently with probability ``(1 - F) / 2``. Their
averaged periodogram follows::

    S_P(f) = 4 F**2 Gamma / ((2 Gamma)**2 + (2 pi f)**2) + (1 - F**2) dt

where the Lorentzian is normalized so that its integral over all
frequencies (both signs) equals the signal variance ``F**2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .errors import BoundaryWarning, DomainError, FitError, ValidationError


@dataclass(frozen=True)
class ParityTimeSeries:
    values: np.ndarray
    dt: float
    seed: int | None = None

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size < 2:
            raise ValidationError("parity series needs at least 2 samples")
        if not np.all((v == 1) | (v == -1)):
            raise ValidationError("parity values must be +1 or -1")
        if not self.dt > 0:
            raise ValidationError("dt must be > 0")
        v = v.astype(np.int8)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class PsdEstimate:
    freqs: np.ndarray
    power: np.ndarray
    n_records_averaged: int


@dataclass(frozen=True)
class LorentzianFit:
    gamma_p: float
    fidelity: float
    residual_norm: float
    at_bound: tuple = ()


def record_rng(seed, record_index=0):
    """Independent generator for one record, derived from ``(seed, record_index)``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(record_index,)))


def flip_probability(gamma_p, dt):
    """Per-step flip probability of a telegraph with switching rate ``gamma_p``.

    Chosen so the discrete autocorrelation ``(1 - 2p)**k`` equals
    ``exp(-2 gamma_p k dt)``.
    """
    return -0.5 * math.expm1(-2 * gamma_p * dt)


def simulate_telegraph(gamma_p, dt, n_samples, fidelity, seed, record_index=0) -> ParityTimeSeries:
    if gamma_p < 0:
        raise DomainError("gamma_p must be >= 0")
    if not 0 < fidelity <= 1:
        raise DomainError("fidelity must lie in (0, 1]")
    if not dt > 0 or n_samples < 2:
        raise DomainError("need dt > 0 and n_samples >= 2")
    rng = record_rng(seed, record_index)
    p = flip_probability(gamma_p, dt)
    start = 1 if rng.random() < 0.5 else -1
    flips = rng.random(n_samples - 1) < p
    parity = np.ones(n_samples, dtype=np.int8)
    parity[1:] = 1 - 2 * (np.cumsum(flips) % 2)
    parity *= start
    readout_errors = rng.random(n_samples) < (1 - fidelity) / 2
    parity[readout_errors] *= -1
    return ParityTimeSeries(parity, dt, seed)


def simulate_records(gamma_p, dt, n_samples, fidelity, seed, n_records, executor=None):
    """``n_records`` independent series; record ``k`` uses substream ``(seed, k)``."""
    def one(k):
        return simulate_telegraph(gamma_p, dt, n_samples, fidelity, seed, k)
    if executor is None:
        return [one(k) for k in range(n_records)]
    return list(executor.map(one, range(n_records)))


def periodogram(values, dt):
    """Mean-removed periodogram on positive frequencies (DC dropped).

    Normalized as a two-sided density ``|X_k|**2 dt / N``, so the sum over all
    nonzero bins times ``1 / (N dt)`` equals the sample variance.
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    spec = np.fft.rfft(x - x.mean())
    power = (spec.real**2 + spec.imag**2) * dt / n
    freqs = np.fft.rfftfreq(n, dt)
    return freqs[1:], power[1:]


def average_psd(series_list) -> PsdEstimate:
    if not series_list:
        raise ValidationError("need at least one series")
    dt = series_list[0].dt
    n = len(series_list[0])
    for s in series_list[1:]:
        if s.dt != dt or len(s) != n:
            raise ValidationError("all series must share dt and length")
    acc = None
    for s in series_list:
        freqs, power = periodogram(s.values, dt)
        acc = power if acc is None else acc + power
    return PsdEstimate(freqs, acc / len(series_list), len(series_list))


def lorentzian_psd(f, gamma_p, fidelity, dt):
    f = np.asarray(f, dtype=float)
    f2 = fidelity * fidelity
    return 4 * f2 * gamma_p / ((2 * gamma_p) ** 2 + (2 * np.pi * f) ** 2) + (1 - f2) * dt


def _initial_guess(freqs, power, dt):
    # floor from the top quarter of the band; plateau from the lowest bins
    n = freqs.size
    floor = float(np.mean(power[-max(n // 4, 1):]))
    f2 = min(max(1 - floor / dt, 1e-3), 1.0)
    excess = power - floor
    plateau = float(np.mean(excess[: max(n // 200, 3)]))
    below = np.flatnonzero(excess < 0.5 * plateau)
    f_half = freqs[below[0]] if below.size else freqs[-1]
    # half power where 2 pi f = 2 Gamma
    gamma = max(math.pi * f_half, freqs[0])
    return min(gamma, 0.99 * math.pi / dt), math.sqrt(f2)


def fit_lorentzian(psd: PsdEstimate, dt, rtol_bound=1e-6) -> LorentzianFit:
    """Least-squares fit of ``(Gamma_p, F)`` to an averaged parity PSD.

    Residuals are taken in linear power with uniform weights. Bounds are
    ``0 < Gamma_p < pi/dt`` and ``0 < F <= 1``; a parameter that finishes on a
    bound raises a :class:`BoundaryWarning`.
    """
    freqs = np.asarray(psd.freqs, dtype=float)
    power = np.asarray(psd.power, dtype=float)
    if freqs.size < 16:
        raise ValidationError("need at least 16 PSD bins to fit")
    gamma_max = math.pi / dt
    g0, fid0 = _initial_guess(freqs, power, dt)
    scale = float(np.max(np.abs(power))) or 1.0

    def residual(p):
        return (lorentzian_psd(freqs, p[0], p[1], dt) - power) / scale

    lo = np.array([gamma_max * 1e-9, 1e-6])
    hi = np.array([gamma_max, 1.0])
    x0 = np.clip([g0, fid0], lo * (1 + 1e-9), hi * (1 - 1e-9))
    try:
        sol = least_squares(residual, x0, bounds=(lo, hi), x_scale=[g0, 0.1],
                            ftol=1e-15, xtol=1e-15, gtol=1e-15, max_nfev=2000)
    except ValueError as exc:
        raise FitError(f"Lorentzian fit failed: {exc}") from None
    if sol.status <= 0:
        raise FitError(f"Lorentzian fit did not converge: {sol.message}",
                       residual=float(np.linalg.norm(sol.fun)))
    gamma_p, fidelity = (float(v) for v in sol.x)
    at_bound = tuple(
        name for name, v, a, b in zip(("gamma_p", "fidelity"), sol.x, lo, hi)
        if abs(v - a) <= rtol_bound * b or abs(b - v) <= rtol_bound * b
    )
    if at_bound:
        warnings.warn(f"Lorentzian fit pinned at bound: {', '.join(at_bound)}",
                      BoundaryWarning, stacklevel=2)
    resid = float(np.linalg.norm(sol.fun * scale) / np.linalg.norm(power))
    return LorentzianFit(gamma_p, fidelity, resid, at_bound)


def autocorrelation(values, max_lag):
    """Biased sample autocorrelation of a (mean-removed) series for lags ``0..max_lag``."""
    x = np.asarray(values, dtype=float)
    x = x - x.mean()
    n = x.size
    return np.array([np.dot(x[: n - k], x[k:]) / n for k in range(max_lag + 1)])


def simulate_measure_idle_measure(gamma_up, p0_residual, idle_times, shots_per_point, seed):
    """Binomial estimates of ``P(1|0)`` after each idle time.

    The success probability is ``p0_residual + gamma_up * t`` (short-time
    linear regime). Returns a list of ``(idle_time, p1_estimate)``.
    """
    t = np.asarray(idle_times, dtype=float)
    if shots_per_point < 100:
        raise DomainError("need at least 100 shots per point")
    if gamma_up < 0 or p0_residual < 0 or np.any(t < 0):
        raise DomainError("rates, residual population and idle times must be >= 0")
    p = p0_residual + gamma_up * t
    if np.any(p > 1):
        raise DomainError("excitation probability exceeds 1; idle times too long")
    rng = np.random.default_rng(seed)
    counts = rng.binomial(int(shots_per_point), p)
    return [(float(ti), c / shots_per_point) for ti, c in zip(t, counts)]


def fit_linear(points):
    """Ordinary least-squares line through ``(x, y)`` points; returns ``(slope, intercept)``."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3 or pts.shape[1] != 2:
        raise ValidationError("need at least 3 (x, y) points")
    x, y = pts[:, 0], pts[:, 1]
    if np.unique(x).size < 2:
        raise ValidationError("abscissae are degenerate")
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    slope = float(np.dot(dx, y - ym) / np.dot(dx, dx))
    return slope, float(ym - slope * xm)
