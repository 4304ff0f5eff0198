"""Charge-basis transmon spectrum, charge dispersion and (E_J, E_c) fitting.

The Hamiltonian in the Cooper-pair number basis ``|n>``, ``n = -N..N``, is::

    H = sum_n 4 E_c (n - n_g)**2 |n><n| - (E_J / 2) (|n><n+1| + h.c.)

with ``n_g`` the offset charge in units of 2e. A quasiparticle tunneling
event shifts ``n_g`` by one half, so the odd-parity band is the even band
evaluated at ``n_g + 1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .core import CONST
from .errors import DomainError, FitError

DEFAULT_N_CUTOFF = 30


@dataclass(frozen=True)
class TransmonParams:
    """Josephson and charging energies in joules, plus the charge-basis cutoff."""

    e_j: float
    e_c: float
    n_cutoff: int = DEFAULT_N_CUTOFF

    def __post_init__(self):
        if not self.e_j > 0 or not self.e_c > 0:
            raise DomainError("e_j and e_c must be > 0")
        if int(self.n_cutoff) != self.n_cutoff or self.n_cutoff < 10:
            raise DomainError(f"n_cutoff must be an integer >= 10, got {self.n_cutoff!r}")

    @classmethod
    def from_frequencies(cls, e_j_hz, e_c_hz, n_cutoff=DEFAULT_N_CUTOFF):
        return cls(e_j_hz * CONST.h, e_c_hz * CONST.h, n_cutoff)

    @property
    def ratio(self):
        return self.e_j / self.e_c


@dataclass(frozen=True)
class DispersionResult:
    f01_even_at_0: float
    f01_odd_at_0: float
    f01_reported: float
    two_delta_f: float


def _lowest_levels(e_j, e_c, n_g, n_cutoff, count=3):
    n = np.arange(-n_cutoff, n_cutoff + 1)
    diag = 4 * e_c * (n - n_g) ** 2
    off = np.full(2 * n_cutoff, -e_j / 2)
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, count - 1))


def charge_basis_levels(params: TransmonParams, n_g=0.0):
    """Lowest three eigenenergies (J), ascending."""
    return _lowest_levels(params.e_j, params.e_c, n_g, params.n_cutoff)


def qubit_frequency(params: TransmonParams, n_g=0.0):
    """0-1 transition frequency (Hz) at offset charge ``n_g``."""
    levels = _lowest_levels(params.e_j / CONST.h, params.e_c / CONST.h, n_g, params.n_cutoff, 2)
    return float(levels[1] - levels[0])


def _dispersion_hz(e_j_hz, e_c_hz, n_cutoff):
    # work in Hz so eigenvalues are O(1e9) rather than O(1e-24)
    even = _lowest_levels(e_j_hz, e_c_hz, 0.0, n_cutoff, 2)
    odd = _lowest_levels(e_j_hz, e_c_hz, 0.5, n_cutoff, 2)
    f_even = even[1] - even[0]
    f_odd = odd[1] - odd[0]
    return f_even, f_odd


def dispersion(params: TransmonParams) -> DispersionResult:
    f_even, f_odd = _dispersion_hz(params.e_j / CONST.h, params.e_c / CONST.h, params.n_cutoff)
    return DispersionResult(
        f01_even_at_0=float(f_even),
        f01_odd_at_0=float(f_odd),
        f01_reported=float(0.5 * (f_even + f_odd)),
        two_delta_f=float(abs(f_even - f_odd)),
    )


def dispersion_scan(params: TransmonParams, n_g):
    """Even and odd band 0-1 frequencies (Hz) along an array of offset charges."""
    n_g = np.asarray(n_g, dtype=float)
    even = np.array([qubit_frequency(params, x) for x in n_g.ravel()]).reshape(n_g.shape)
    odd = np.array([qubit_frequency(params, x + 0.5) for x in n_g.ravel()]).reshape(n_g.shape)
    return even, odd


def asymptotic_f01(e_j, e_c):
    return math.sqrt(8 * e_j * e_c) - e_c


def asymptotic_two_delta_f(e_j, e_c):
    """Large-E_J/E_c estimate of the peak-to-peak 0-1 dispersion.

    Uses the level bandwidths
    ``eps_m = (-1)**m E_c 2**(4m+5)/m! sqrt(2/pi) (E_J/2E_c)**(m/2+3/4) exp(-sqrt(8 E_J/E_c))``.
    """
    r = e_j / e_c
    pref = e_c * math.sqrt(2 / math.pi) * math.exp(-math.sqrt(8 * r))
    eps0 = pref * 2**5 * (r / 2) ** 0.75
    eps1 = pref * 2**9 * (r / 2) ** 1.25
    return eps0 + eps1


def _initial_guess(f01, two_delta_f):
    def ratio_residual(log_r):
        r = math.exp(log_r)
        e_c = f01 / (math.sqrt(8 * r) - 1)
        return math.log(asymptotic_two_delta_f(r * e_c, e_c) / two_delta_f)

    try:
        log_r = brentq(ratio_residual, math.log(2.0), math.log(1e4))
    except ValueError:
        log_r = math.log(25.0)
    r = math.exp(log_r)
    e_c = f01 / (math.sqrt(8 * r) - 1)
    return r * e_c, e_c


def fit_ej_ec(f01_meas, two_delta_f_meas, n_cutoff=DEFAULT_N_CUTOFF,
              tol=1e-9, max_iter=100) -> TransmonParams:
    """Solve for (E_J, E_c) reproducing the measured f01 (band mean) and 2*delta_f.

    Damped Newton iteration in log-parameters, started from the asymptotic
    transmon formulas. The residuals are the relative errors in f01 and in
    the dispersion; convergence requires both below ``tol``.
    """
    if not f01_meas > 0 or not two_delta_f_meas > 0:
        raise DomainError("f01 and two_delta_f must be > 0")
    if two_delta_f_meas >= 0.1 * f01_meas:
        raise DomainError("charge dispersion must be small compared to f01")

    def residual(p):
        f_even, f_odd = _dispersion_hz(math.exp(p[0]), math.exp(p[1]), n_cutoff)
        return np.array([
            0.5 * (f_even + f_odd) / f01_meas - 1,
            abs(f_even - f_odd) / two_delta_f_meas - 1,
        ])

    p = np.log(np.array(_initial_guess(f01_meas, two_delta_f_meas)))
    r = residual(p)
    norm = np.max(np.abs(r))
    step_h = 1e-6
    for _ in range(max_iter):
        if norm < tol:
            e_j_hz, e_c_hz = np.exp(p)
            return TransmonParams.from_frequencies(e_j_hz, e_c_hz, n_cutoff)
        jac = np.empty((2, 2))
        for k in range(2):
            dp = np.zeros(2)
            dp[k] = step_h
            jac[:, k] = (residual(p + dp) - residual(p - dp)) / (2 * step_h)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            raise FitError("singular Jacobian in transmon fit", residual=norm) from None
        # keep each update within a factor e of the current energies
        step *= min(1.0, 1.0 / np.max(np.abs(step)))
        lam = 1.0
        while lam > 1e-4:
            trial = p + lam * step
            r_trial = residual(trial)
            n_trial = np.max(np.abs(r_trial))
            if n_trial < norm:
                break
            lam *= 0.5
        else:
            raise FitError("transmon fit stalled", residual=norm)
        p, r, norm = trial, r_trial, n_trial
    raise FitError(f"transmon fit did not converge in {max_iter} iterations", residual=norm)
