"""Tabulated radiation impedance and conjugate-match coupling efficiency."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .core import as_grid
from .errors import OutOfRangeError, ParseError, SingularityError, ValidationError
from .junction import JunctionParams, junction_impedance

IMPEDANCE_HEADER = ("frequency_hz", "re_ohm", "im_ohm")


@dataclass(frozen=True)
class ImpedanceTable:
    """Radiation impedance ``z`` (complex ohm) sampled at ``freqs`` (Hz)."""

    freqs: np.ndarray
    z: np.ndarray
    label: str = ""

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=float)
        z = np.asarray(self.z, dtype=complex)
        if freqs.ndim != 1 or freqs.shape != z.shape:
            raise ValidationError("freqs and z must be 1-D arrays of equal length")
        if freqs.size < 2:
            raise ValidationError("impedance table needs at least 2 rows")
        if not (np.all(np.isfinite(freqs)) and np.all(np.isfinite(z))):
            raise ValidationError("impedance table holds non-finite values")
        bad = np.flatnonzero(np.diff(freqs) <= 0)
        if bad.size:
            raise ValidationError(
                f"frequencies must be strictly increasing (row {bad[0] + 1} -> {bad[0] + 2})"
            )
        neg = np.flatnonzero(z.real < 0)
        if neg.size:
            raise ValidationError(f"negative resistance at row {neg[0] + 1}")
        freqs.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "z", z)

    def __len__(self):
        return self.freqs.size

    @property
    def f_min(self):
        return float(self.freqs[0])

    @property
    def f_max(self):
        return float(self.freqs[-1])


@dataclass(frozen=True)
class CouplingSpectrum:
    """Coupling efficiency ``e_c`` (0..1) sampled at ``freqs`` (Hz)."""

    freqs: np.ndarray
    e_c: np.ndarray
    label: str = ""

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=float)
        e_c = np.asarray(self.e_c, dtype=float)
        if freqs.ndim != 1 or freqs.shape != e_c.shape or freqs.size == 0:
            raise ValidationError("freqs and e_c must be non-empty 1-D arrays of equal length")
        if np.any(np.diff(freqs) <= 0):
            raise ValidationError("frequencies must be strictly increasing")
        if np.any(e_c < 0) or np.any(e_c > 1):
            raise ValidationError("coupling efficiency must lie in [0, 1]")
        freqs.setflags(write=False)
        e_c.setflags(write=False)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "e_c", e_c)

    @property
    def f_min(self):
        return float(self.freqs[0])

    @property
    def f_max(self):
        return float(self.freqs[-1])

    def at(self, f):
        """Piecewise-linear interpolation of ``e_c``; no extrapolation."""
        f = np.asarray(f, dtype=float)
        _check_range(f, self.f_min, self.f_max, self.label or "coupling spectrum")
        out = np.interp(f, self.freqs, self.e_c)
        return float(out) if np.ndim(out) == 0 else out


def _check_range(f, lo, hi, what):
    if np.any(f < lo) or np.any(f > hi):
        bad = f[(f < lo) | (f > hi)] if f.ndim else f
        raise OutOfRangeError(
            f"frequency {float(np.ravel(bad)[0]):.9g} Hz outside {what} range [{lo:.9g}, {hi:.9g}] Hz"
        )


def load_impedance_table(source, label=None) -> ImpedanceTable:
    """Parse an impedance CSV.

    ``source`` may be a path, ``bytes``, or a binary/text file object. The file
    may begin with ``#`` comment lines; the first other line must be the header
    ``frequency_hz,re_ohm,im_ohm``.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
        if label is None:
            label = os.path.splitext(os.path.basename(os.fspath(source)))[0]
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data

    freqs, z = [], []
    header_seen = False
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip():
            continue
        if not header_seen:
            if row[0].lstrip().startswith("#"):
                continue
            if tuple(c.strip() for c in row) != IMPEDANCE_HEADER:
                raise ParseError(f"expected header {','.join(IMPEDANCE_HEADER)!r}", lineno)
            header_seen = True
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", lineno)
        try:
            f, re, im = (float(c) for c in row)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if re < 0:
            raise ValidationError(f"line {lineno}: negative resistance re_ohm={re!r}")
        freqs.append(f)
        z.append(complex(re, im))
    if not header_seen:
        raise ParseError("missing header")
    return ImpedanceTable(np.array(freqs), np.array(z, dtype=complex), label or "")


def write_impedance_table(table: ImpedanceTable, path, comment=None):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if comment:
            for line in str(comment).splitlines():
                fh.write(f"# {line}\n")
        fh.write(",".join(IMPEDANCE_HEADER) + "\n")
        for f, z in zip(table.freqs, table.z):
            fh.write(f"{f:.9g},{z.real:.9g},{z.imag:.9g}\n")


def radiation_impedance(table: ImpedanceTable, f):
    """Interpolate the table at ``f``; real and imaginary parts separately."""
    f = np.asarray(f, dtype=float)
    _check_range(f, table.f_min, table.f_max, table.label or "impedance table")
    z = np.interp(f, table.freqs, table.z.real) + 1j * np.interp(f, table.freqs, table.z.imag)
    return complex(z) if np.ndim(z) == 0 else z


def coupling_efficiency(z_rad, z_j):
    """Power coupling ``1 - |(z_rad - conj(z_j)) / (z_rad + z_j)|**2``.

    Evaluated through the equivalent ``4 Re(z_rad) Re(z_j) / |z_rad + z_j|**2``,
    which stays inside [0, 1] for passive loads without cancellation. Works
    elementwise on arrays.
    """
    z_rad = np.asarray(z_rad, dtype=complex)
    z_j = np.asarray(z_j, dtype=complex)
    den = z_rad + z_j
    den2 = den.real**2 + den.imag**2
    if np.any(den2 == 0):
        raise SingularityError("z_rad + z_j = 0")
    e_c = 4 * z_rad.real * z_j.real / den2
    return float(e_c) if np.ndim(e_c) == 0 else e_c


def coupling_spectrum(table: ImpedanceTable, params: JunctionParams, grid) -> CouplingSpectrum:
    """Coupling efficiency of ``params`` to the tabulated antenna at each grid point."""
    f = as_grid(grid).points
    e_c = coupling_efficiency(radiation_impedance(table, f), junction_impedance(params, f))
    return CouplingSpectrum(f, np.atleast_1d(e_c), table.label)
