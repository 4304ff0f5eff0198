"""Photon-assisted qubit transitions accompanying pair-breaking absorption.

A pair-breaking photon of energy ``hbar*omega = w * Delta`` absorbed at the
junction either leaves the qubit in ``|0>`` or excites it. The ratio of
upward transitions to parity switches is::

    Gamma_up / Gamma_p = 1 / (1 + sqrt(8 (E_J/E_c) S_minus / S_plus))

with the BCS structure factors::

    S_pm(w) = int_1^{w-1} [x (w - x) +- 1] / (sqrt(x**2 - 1) sqrt((w - x)**2 - 1)) dx
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import CONST
from .errors import DomainError, RegimeWarning
from .quadrature import gauss_kronrod
from .radiation import TransferSpectrum

DEFAULT_REL_TOL = 1e-8
# above ~500 GHz for aluminum the model is outside its trusted band
TRUSTED_W_MAX = 12.0


@dataclass(frozen=True)
class StructureFactors:
    s_plus: float
    s_minus: float
    w: float
    rel_tol_achieved: float

    @property
    def ratio(self):
        return self.s_minus / self.s_plus


def _mirror_integrand(w, sign):
    # with x = cosh(u): a = x - 1 and b = (w - x) - 1, both formed without cancellation
    excess = w - 2.0

    def g(u):
        a = 2.0 * np.sinh(0.5 * u) ** 2
        b = excess - a
        num = 2.0 + a + b + a * b if sign > 0 else a + b + a * b
        return num / np.sqrt(b * (b + 2.0))
    return g


def _half_integrand(w, sign):
    # x = cosh(u) on [1, w/2]: dx / sqrt(x^2 - 1) = du removes the left singularity
    return _mirror_integrand(w, sign)


def _half_integral(w, sign, rel_tol):
    return gauss_kronrod(_half_integrand(w, sign), 0.0, math.acosh(w / 2), rel_tol=rel_tol)


def _right_half_integral(w, sign, rel_tol):
    # mirror substitution x = w - cosh(v) on [w/2, w-1]; same integrand in v
    g = _mirror_integrand(w, sign)
    return gauss_kronrod(g, 0.0, math.acosh(w / 2), rel_tol=rel_tol)


def structure_factors(w, rel_tol=DEFAULT_REL_TOL) -> StructureFactors:
    """S+ and S- at reduced photon energy ``w = hbar*omega/Delta``.

    The integrand is symmetric under ``x -> w - x``, so each factor is twice
    the integral over ``[1, w/2]`` after the substitution ``x = cosh(u)``.
    """
    if not w > 2:
        raise DomainError(f"reduced photon energy must exceed 2, got {w!r}")
    if not 1e-12 <= rel_tol <= 1e-3:
        raise DomainError(f"rel_tol must lie in [1e-12, 1e-3], got {rel_tol!r}")
    plus = _half_integral(w, +1.0, rel_tol)
    minus = _half_integral(w, -1.0, rel_tol)
    achieved = max(plus.abserr / abs(plus.value),
                   minus.abserr / abs(minus.value) if minus.value else 0.0)
    return StructureFactors(2 * plus.value, 2 * minus.value, float(w), achieved)


def structure_factors_split(w, rel_tol=DEFAULT_REL_TOL):
    """S+ and S- from separate left and right halves, without using the symmetry."""
    if not w > 2:
        raise DomainError(f"reduced photon energy must exceed 2, got {w!r}")
    out = []
    for sign in (+1.0, -1.0):
        out.append(_half_integral(w, sign, rel_tol).value + _right_half_integral(w, sign, rel_tol).value)
    return tuple(out)


def upward_fraction(w, ej_over_ec, rel_tol=DEFAULT_REL_TOL):
    """Ratio of photon-assisted upward transitions to parity switches."""
    if not ej_over_ec > 0:
        raise DomainError("ej_over_ec must be > 0")
    sf = structure_factors(w, rel_tol)
    return upward_fraction_from_ratio(sf.ratio, ej_over_ec)


def upward_fraction_from_ratio(s_ratio, ej_over_ec):
    return 1.0 / (1.0 + math.sqrt(8 * ej_over_ec * s_ratio))


def reduced_energy(f, delta):
    """``h f / Delta`` for photon frequency ``f`` (Hz) and gap ``delta`` (J)."""
    return CONST.h * np.asarray(f, dtype=float) / delta


@dataclass(frozen=True)
class UpwardSpectrum:
    freqs: np.ndarray
    w: np.ndarray
    ratio: np.ndarray
    gamma_up: np.ndarray


def predicted_upward_spectrum(parity_spectrum: TransferSpectrum, delta, ej_over_ec,
                              include_baseline=False, rel_tol=DEFAULT_REL_TOL) -> UpwardSpectrum:
    """Upward transition rates implied by a parity-rate spectrum.

    By default the ratio multiplies only the photon-induced part ``gamma_j``.
    With ``include_baseline=True`` it multiplies the full ``gamma_p``.
    """
    f = np.asarray(parity_spectrum.freqs, dtype=float)
    w = reduced_energy(f, delta)
    below = np.flatnonzero(w <= 2)
    if below.size:
        rows = ", ".join(f"{i + 1} ({f[i]:.6g} Hz)" for i in below[:10])
        raise DomainError(f"frequencies at or below the pair-breaking threshold: rows {rows}")
    if np.any(w > TRUSTED_W_MAX):
        warnings.warn(
            f"{int(np.sum(w > TRUSTED_W_MAX))} frequencies have w > {TRUSTED_W_MAX:g}",
            RegimeWarning, stacklevel=2,
        )
    ratio = np.array([upward_fraction(x, ej_over_ec, rel_tol) for x in w])
    source = parity_spectrum.gamma_p if include_baseline else parity_spectrum.gamma_j
    return UpwardSpectrum(f, w, ratio, ratio * np.asarray(source, dtype=float))
