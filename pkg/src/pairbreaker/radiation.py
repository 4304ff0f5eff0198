"""Transmit/receive power balance and blackbody baseline rates.

Photons radiated by a voltage-biased transmitter junction are assumed to
bounce around a closed aluminum enclosure until the walls absorb them. The
resulting isotropic, randomly polarized field is sampled by the receiver's
antenna mode. Broadband stray radiation is modeled as a blackbody that sets
the baseline parity rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import bisect

from .antenna import CouplingSpectrum
from .core import CONST, as_grid
from .errors import DomainError, NoRootError, ValidationError
from .junction import JunctionParams, QpState, suppressed_critical_current
from .quadrature import adaptive_simpson

# 6061 aluminum at 4 K
AL6061_CONDUCTIVITY = 7.2e7
# empirical loss factor that brings the naive power balance onto measured rates
EMPIRICAL_SCALE = 0.07
DEFAULT_F_CUTOFF = 2e12
T_BRACKET = (0.010, 5.0)

TRANSFER_HEADER = ("frequency_hz", "e_c_tr", "e_c_rec", "eta", "gamma_j_per_s", "gamma_p_per_s")


@dataclass(frozen=True)
class EnclosureParams:
    """Enclosure wall conductivity (S/m), inner area (m^2) and loss scale factor."""

    sigma_wall: float = AL6061_CONDUCTIVITY
    area_inner: float = 3.2e-3
    scale_factor: float = 1.0

    def __post_init__(self):
        if not self.sigma_wall > 0:
            raise DomainError(f"sigma_wall must be > 0, got {self.sigma_wall!r}")
        if not self.area_inner > 0:
            raise DomainError(f"area_inner must be > 0, got {self.area_inner!r}")
        # 0 switches the Josephson contribution off entirely
        if not 0 <= self.scale_factor <= 1:
            raise DomainError(f"scale_factor must lie in [0, 1], got {self.scale_factor!r}")


@dataclass(frozen=True)
class BlackbodyEnvironment:
    temperature: float
    f_threshold: float
    f_cutoff: float = DEFAULT_F_CUTOFF

    def __post_init__(self):
        if not self.temperature > 0:
            raise DomainError(f"temperature must be > 0, got {self.temperature!r}")
        if not 0 < self.f_threshold < self.f_cutoff:
            raise DomainError("need 0 < f_threshold < f_cutoff")


@dataclass(frozen=True)
class TransferSpectrum:
    """Per-frequency record of the transmit/receive chain.

    All arrays share the shape of ``freqs``. ``gamma_j`` already includes the
    enclosure scale factor; ``gamma_p = gamma_0 + gamma_j``.
    """

    freqs: np.ndarray
    e_c_tr: np.ndarray
    e_c_rec: np.ndarray
    eta: np.ndarray
    gamma_j: np.ndarray
    gamma_p: np.ndarray

    def __post_init__(self):
        arrays = {}
        for name in ("freqs", "e_c_tr", "e_c_rec", "eta", "gamma_j", "gamma_p"):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            arr.setflags(write=False)
            arrays[name] = arr
        shape = arrays["freqs"].shape
        if arrays["freqs"].ndim != 1 or any(a.shape != shape for a in arrays.values()):
            raise ValidationError("transfer spectrum columns must be 1-D and equal length")
        if np.any(np.diff(arrays["freqs"]) <= 0):
            raise ValidationError("frequencies must be strictly increasing")
        if np.any(arrays["gamma_j"] < 0) or np.any(arrays["gamma_p"] < 0):
            raise ValidationError("rates must be non-negative")
        for name, arr in arrays.items():
            object.__setattr__(self, name, arr)

    @property
    def gamma_0(self):
        """Baseline rate implied by the rows (``gamma_p - gamma_j`` at the first row)."""
        return float(self.gamma_p[0] - self.gamma_j[0])

    def peak(self):
        """Frequency and rate of the largest predicted parity rate."""
        i = int(np.argmax(self.gamma_p))
        return float(self.freqs[i]), float(self.gamma_p[i])


def wall_surface_impedance(sigma, f):
    """Normal-skin-effect surface impedance ``(1+j) sqrt(omega mu0 / (2 sigma))``."""
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise DomainError("frequency must be > 0")
    if np.isinf(sigma):
        r = np.zeros_like(f)
    else:
        r = np.sqrt(2 * np.pi * f * CONST.mu0 / (2 * sigma))
    z = r + 1j * r
    return complex(z) if np.ndim(z) == 0 else z


def wall_absorption_efficiency(z_wall, z_fs=CONST.z_freespace):
    """Fraction of normally incident power absorbed by a wall of impedance ``z_wall``."""
    z_wall = np.asarray(z_wall, dtype=complex)
    if np.any(z_wall.real < 0):
        raise DomainError("wall impedance must have non-negative real part")
    gamma = (z_wall - z_fs) / (z_wall + z_fs)
    eta = 1 - (gamma.real**2 + gamma.imag**2)
    return float(eta) if np.ndim(eta) == 0 else eta


def transmitter_radiated_power(params: JunctionParams, qp: QpState, e_c_tr):
    """Power (W) radiated into free space, ``e_c_tr * I0(x_qp)**2 * R_n / 8``."""
    e = np.asarray(e_c_tr, dtype=float)
    if np.any(e < 0) or np.any(e > 1):
        raise DomainError("e_c_tr must lie in [0, 1]")
    i0 = suppressed_critical_current(params.i0_bare, qp)
    p = e * i0**2 * params.r_n / 8
    return float(p) if np.ndim(p) == 0 else p


def photon_absorption_rate(f, params_tr: JunctionParams, qp: QpState, e_c_tr, e_c_rec,
                           enc: EnclosureParams):
    """Rate (1/s) of Josephson photons absorbed by the receiver antenna.

    Power balance: the transmitter output equals the wall loss
    ``pi * eta * S * A_enc``, with ``S`` the power per unit solid angle per
    unit area. The receiver collects ``S * lambda**2 * e_c_rec / 2``. Dividing
    by ``h f`` gives::

        e_c_tr e_c_rec / (16 eta) * lambda**2 / A_enc * I0**2 R_n / (h f)

    times ``enc.scale_factor``. Vectorized over ``f`` and the efficiencies.
    """
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise DomainError("frequency must be > 0")
    e_tr = np.asarray(e_c_tr, dtype=float)
    e_rec = np.asarray(e_c_rec, dtype=float)
    for e in (e_tr, e_rec):
        if np.any(e < 0) or np.any(e > 1):
            raise DomainError("coupling efficiencies must lie in [0, 1]")
    eta = wall_absorption_efficiency(wall_surface_impedance(enc.sigma_wall, f))
    wavelength = CONST.c_light / f
    i0 = suppressed_critical_current(params_tr.i0_bare, qp)
    rate = (
        enc.scale_factor
        * e_tr * e_rec / (16 * eta)
        * wavelength**2 / enc.area_inner
        * i0**2 * params_tr.r_n / (CONST.h * f)
    )
    return float(rate) if np.ndim(rate) == 0 else rate


def implied_efficiency_product(gamma_j, f, params_tr: JunctionParams, qp: QpState,
                               enc: EnclosureParams):
    """Product ``e_c_tr * e_c_rec`` needed for the chain to produce ``gamma_j``."""
    return gamma_j / photon_absorption_rate(f, params_tr, qp, 1.0, 1.0, enc)


def parity_rate_spectrum(tx_spec: CouplingSpectrum, rx_spec: CouplingSpectrum,
                         params_tr: JunctionParams, qp: QpState, enc: EnclosureParams,
                         gamma_0, grid) -> TransferSpectrum:
    """Predicted parity-switching rate ``gamma_0 + Gamma_J(f)`` over ``grid``."""
    if gamma_0 < 0:
        raise DomainError("gamma_0 must be >= 0")
    f = as_grid(grid).points
    e_tr = np.atleast_1d(tx_spec.at(f))
    e_rec = np.atleast_1d(rx_spec.at(f))
    eta = np.atleast_1d(wall_absorption_efficiency(wall_surface_impedance(enc.sigma_wall, f)))
    gamma_j = np.atleast_1d(photon_absorption_rate(f, params_tr, qp, e_tr, e_rec, enc))
    return TransferSpectrum(f, e_tr, e_rec, eta, gamma_j, gamma_0 + gamma_j)


def bose_occupation(f, temperature):
    """``1 / (exp(h f / k T) - 1)`` without overflow for large ``h f / k T``."""
    x = CONST.h * np.asarray(f, dtype=float) / (CONST.k_B * temperature)
    q = np.exp(-x)
    return q / -np.expm1(-x)


def baseline_parity_rate(rx_spec: CouplingSpectrum, env: BlackbodyEnvironment, rel_tol=1e-6):
    """Blackbody pair-breaking rate ``int e_c(f) n_B(f, T) df`` from threshold to cutoff.

    Panels are log-spaced between the limits and also broken at every node of
    the coupling spectrum, so each panel sees a smooth integrand.
    """
    if rx_spec.f_min > env.f_threshold or rx_spec.f_max < env.f_cutoff:
        raise DomainError(
            f"coupling spectrum [{rx_spec.f_min:.6g}, {rx_spec.f_max:.6g}] Hz does not cover "
            f"[{env.f_threshold:.6g}, {env.f_cutoff:.6g}] Hz"
        )
    nodes = rx_spec.freqs[(rx_spec.freqs > env.f_threshold) & (rx_spec.freqs < env.f_cutoff)]
    panels = np.geomspace(env.f_threshold, env.f_cutoff, 65)
    breaks = np.union1d(panels, nodes)
    temperature = env.temperature

    def integrand(f):
        return np.interp(f, rx_spec.freqs, rx_spec.e_c) * bose_occupation(f, temperature)

    return adaptive_simpson(integrand, breaks, rel_tol=rel_tol).value


def effective_temperature(rx_spec: CouplingSpectrum, gamma_0_measured,
                          env_template: BlackbodyEnvironment, bracket=T_BRACKET):
    """Blackbody temperature (K) whose baseline rate equals ``gamma_0_measured``.

    The rate rises strictly with temperature, so bisection on ``bracket``
    finds the unique root.
    """
    if not gamma_0_measured > 0:
        raise DomainError("measured baseline rate must be > 0")

    def residual(t):
        return baseline_parity_rate(rx_spec, replace(env_template, temperature=t)) - gamma_0_measured

    lo, hi = bracket
    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo > 0 or r_hi < 0:
        raise NoRootError(
            f"baseline rate {gamma_0_measured:.6g} 1/s not reachable for T in "
            f"[{lo}, {hi}] K (range {r_lo + gamma_0_measured:.6g}..{r_hi + gamma_0_measured:.6g} 1/s)"
        )
    return bisect(residual, lo, hi, xtol=1e-12, rtol=1e-10, maxiter=200)


def boltzmann_tail_rate(e0, f1, f2, temperature):
    """Closed form of the baseline integral for flat ``e_c = e0`` when ``h f >> k T``."""
    kt_h = CONST.k_B * temperature / CONST.h
    return e0 * kt_h * (math.exp(-f1 / kt_h) - math.exp(-f2 / kt_h))
