"""Physical constants, frequency grids and small helpers shared by all modules.

Everything is SI internally (Hz, ohm, J, K, A, V). Complex impedances are
plain Python/numpy complex numbers: ``z.real`` is the resistance and
``z.imag`` the reactance, both in ohms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import constants as _sc

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    h: float
    hbar: float
    e_charge: float
    phi0: float
    k_B: float
    mu0: float
    c_light: float
    z_freespace: float


# CODATA 2018 (exact SI values for h, e, k_B, c). The free-space impedance is
# pinned at 376.730 ohm rather than the rounded 377 ohm.
CONST = PhysicalConstants(
    h=_sc.h,
    hbar=_sc.hbar,
    e_charge=_sc.e,
    phi0=_sc.h / (2 * _sc.e),
    k_B=_sc.k,
    mu0=_sc.mu_0,
    c_light=_sc.c,
    z_freespace=376.730,
)


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing set of positive frequencies in Hz."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=float))
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("frequency grid must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(pts)) or np.any(pts <= 0):
            raise DomainError("frequency grid points must be finite and > 0")
        if np.any(np.diff(pts) <= 0):
            raise DomainError("frequency grid must be strictly increasing")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.size

    def __iter__(self):
        return iter(self.points)


def josephson_frequency(bias_voltage):
    """Josephson oscillation frequency ``V / Phi0`` in Hz for a bias in volts."""
    v = np.asarray(bias_voltage, dtype=float)
    if np.any(v < 0):
        raise DomainError(f"bias voltage must be >= 0, got {bias_voltage!r}")
    f = v / CONST.phi0
    return float(f) if np.ndim(f) == 0 else f


def gap_from_threshold(threshold_frequency):
    """Gap energy (J) from the pair-breaking threshold frequency ``2*Delta/h``."""
    f = float(threshold_frequency)
    if not f > 0:
        raise DomainError(f"threshold frequency must be > 0, got {threshold_frequency!r}")
    return CONST.h * f / 2


def threshold_from_gap(delta):
    """Pair-breaking threshold frequency ``2*Delta/h`` in Hz."""
    if not delta > 0:
        raise DomainError(f"gap must be > 0, got {delta!r}")
    return 2 * delta / CONST.h


def make_grid(f_start, f_stop, n_points) -> FrequencyGrid:
    """Linear grid from ``f_start`` to ``f_stop`` inclusive."""
    if not 0 < f_start < f_stop:
        raise DomainError(f"need 0 < f_start < f_stop, got {f_start!r}, {f_stop!r}")
    if int(n_points) != n_points or n_points < 2:
        raise DomainError(f"n_points must be an integer >= 2, got {n_points!r}")
    return FrequencyGrid(np.linspace(f_start, f_stop, int(n_points)))


def as_grid(frequencies) -> FrequencyGrid:
    if isinstance(frequencies, FrequencyGrid):
        return frequencies
    return FrequencyGrid(frequencies)


def ev_to_joule(energy_ev):
    return energy_ev * CONST.e_charge


def joule_to_ev(energy_j):
    return energy_j / CONST.e_charge
