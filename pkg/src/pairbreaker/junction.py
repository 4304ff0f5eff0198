"""Electrical model of an Al-AlOx-Al tunnel junction.

The junction is treated as a Norton source: a current ``I0`` in parallel with
the admittance ``1/R_n + j*omega*C_j``. Quasiparticles injected into the leads
suppress ``I0`` linearly in the reduced density ``x_qp``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import CONST
from .errors import ClampWarning, DomainError

# Nominal specific capacitance of Al-AlOx-Al junctions, F per square micron.
SPECIFIC_CAPACITANCE = 75e-15


@dataclass(frozen=True)
class JunctionParams:
    """Junction parameters in SI units.

    Parameters
    ----------
    r_n : float
        Normal-state tunnel resistance (ohm).
    c_j : float
        Junction self-capacitance (F).
    i0_bare : float
        Critical current with no quasiparticle suppression (A).
    delta : float
        Superconducting gap of each electrode (J).
    """

    r_n: float
    c_j: float
    i0_bare: float
    delta: float

    def __post_init__(self):
        if not self.r_n > 0:
            raise DomainError(f"r_n must be > 0, got {self.r_n!r}")
        if not self.c_j > 0:
            raise DomainError(f"c_j must be > 0, got {self.c_j!r}")
        if not self.i0_bare >= 0:
            raise DomainError(f"i0_bare must be >= 0, got {self.i0_bare!r}")
        if not self.delta > 0:
            raise DomainError(f"delta must be > 0, got {self.delta!r}")

    @classmethod
    def from_resistance(cls, r_n, c_j, delta):
        """Build parameters with ``i0_bare`` from the Ambegaokar-Baratoff relation."""
        return cls(r_n, c_j, ambegaokar_baratoff_current(r_n, delta), delta)

    @property
    def tau(self):
        return self.r_n * self.c_j


@dataclass(frozen=True)
class QpState:
    """Reduced quasiparticle density in the junction leads."""

    x_qp: float = 0.0

    def __post_init__(self):
        if not 0 <= self.x_qp < 1:
            raise DomainError(f"x_qp must lie in [0, 1), got {self.x_qp!r}")


def junction_impedance(params: JunctionParams, f):
    """Complex impedance of the parallel R_n, C_j combination at frequency ``f``.

    Accepts a scalar or an array of frequencies and returns the same shape.
    """
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise DomainError("frequency must be >= 0")
    wt = 2 * np.pi * f * params.tau
    z = params.r_n * (1 - 1j * wt) / (1 + wt * wt)
    return complex(z) if np.ndim(z) == 0 else z


def ambegaokar_baratoff_current(r_n, delta):
    """Zero-temperature critical current ``pi*Delta / (2*e*R_n)`` in amperes."""
    if not r_n > 0 or not delta > 0:
        raise DomainError("r_n and delta must be > 0")
    return math.pi * delta / (2 * CONST.e_charge * r_n)


def suppressed_critical_current(i0_bare, qp: QpState):
    return i0_bare * (1 - qp.x_qp)


def steady_state_xqp(generation_rate, recombination_rate) -> QpState:
    """Steady state of ``dx/dt = g - r*x**2``.

    ``generation_rate`` is per Cooper pair per second and ``recombination_rate``
    is the reduced recombination rate in 1/s. A solution at or above 1 is
    clamped just below 1 with a :class:`ClampWarning`.
    """
    if not recombination_rate > 0:
        raise DomainError(f"recombination rate must be > 0, got {recombination_rate!r}")
    if generation_rate < 0:
        raise DomainError(f"generation rate must be >= 0, got {generation_rate!r}")
    x = math.sqrt(generation_rate / recombination_rate)
    if x >= 1:
        warnings.warn(f"x_qp = {x:.3g} clamped below 1", ClampWarning, stacklevel=2)
        x = math.nextafter(1.0, 0.0)
    return QpState(x)


def generation_rate_for_xqp(x_qp, recombination_rate):
    """Generation rate that holds the leads at ``x_qp`` in steady state."""
    return recombination_rate * x_qp**2


def capacitance_from_area(area_um2, specific_capacitance=SPECIFIC_CAPACITANCE):
    """Junction capacitance (F) from area (square microns) and F per square micron."""
    if not area_um2 > 0 or not specific_capacitance > 0:
        raise DomainError("area and specific capacitance must be > 0")
    return area_um2 * specific_capacitance
