"""CSV readers and writers for the plot-ready outputs.

Every writer formats floats with 9 significant digits so repeated runs are
byte-identical.
"""

from __future__ import annotations

import csv
import io
import os

import numpy as np

from .errors import ParseError, ValidationError
from .radiation import TRANSFER_HEADER, TransferSpectrum
from .telemetry import ParityTimeSeries, PsdEstimate

PSD_HEADER = ("frequency_hz", "psd")
SERIES_HEADER = ("index", "parity")
UPWARD_HEADER = ("frequency_hz", "gamma_up_per_s")
RATIO_HEADER = ("frequency_hz", "w", "ratio")
DISPERSION_HEADER = ("n_g", "f01_even_hz", "f01_odd_hz")
MEASURED_PARITY_HEADER = ("frequency_hz", "gamma_p_per_s")


def fmt(x):
    return f"{x:.9g}"


def write_columns(path, header, columns, comments=()):
    cols = [np.asarray(c) for c in columns]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in zip(*cols):
            fh.write(",".join(str(v) if isinstance(v, (int, np.integer)) else fmt(v) for v in row))
            fh.write("\n")
    return os.fspath(path)


def read_columns(source, header=None):
    """Read a numeric CSV with optional ``#`` comment lines.

    Returns ``(header, columns, meta)`` where ``meta`` collects ``key=value``
    pairs found in comments.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    meta = {}
    found_header = None
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or not "".join(row).strip():
            continue
        if found_header is None:
            if row[0].lstrip().startswith("#"):
                body = ",".join(row).lstrip()[1:].strip()
                if "=" in body:
                    k, v = body.split("=", 1)
                    meta[k.strip()] = v.strip()
                continue
            found_header = tuple(c.strip() for c in row)
            if header is not None and found_header != tuple(header):
                raise ParseError(f"expected header {','.join(header)!r}, got {','.join(found_header)!r}", lineno)
            continue
        if len(row) != len(found_header):
            raise ParseError(f"expected {len(found_header)} fields, got {len(row)}", lineno)
        try:
            rows.append([float(c) for c in row])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if found_header is None:
        raise ParseError("missing header")
    data = np.array(rows, dtype=float).reshape(-1, len(found_header))
    return found_header, [data[:, k] for k in range(data.shape[1])], meta


def write_transfer_spectrum(spec: TransferSpectrum, path):
    return write_columns(path, TRANSFER_HEADER, [
        spec.freqs, spec.e_c_tr, spec.e_c_rec, spec.eta, spec.gamma_j, spec.gamma_p,
    ])


def read_parity_spectrum(path, gamma_0=None) -> TransferSpectrum:
    """Read a transfer spectrum, or a measured ``frequency_hz,gamma_p_per_s`` table.

    For measured tables the photon-induced part is ``gamma_p - gamma_0``
    (clipped at zero) and the efficiency columns are NaN.
    """
    header, cols, _ = read_columns(path)
    if not cols[0].size:
        raise ValidationError(f"{os.fspath(path)}: spectrum has no rows")
    if header == TRANSFER_HEADER:
        return TransferSpectrum(*cols)
    if header == MEASURED_PARITY_HEADER:
        f, gp = cols
        g0 = 0.0 if gamma_0 is None else float(gamma_0)
        nan = np.full_like(f, np.nan)
        return TransferSpectrum(f, nan, nan, nan, np.clip(gp - g0, 0, None), gp)
    raise ParseError(
        f"{os.fspath(path)}: header must be {','.join(TRANSFER_HEADER)!r} "
        f"or {','.join(MEASURED_PARITY_HEADER)!r}"
    )


def write_parity_series(series: ParityTimeSeries, path, record_index=None):
    comments = [f"dt_s={fmt(series.dt)}", f"seed={series.seed}"]
    if record_index is not None:
        comments.append(f"record={record_index}")
    return write_columns(path, SERIES_HEADER,
                         [np.arange(len(series)), series.values.astype(int)], comments)


def read_parity_series(path) -> ParityTimeSeries:
    _, cols, meta = read_columns(path, SERIES_HEADER)
    if "dt_s" not in meta:
        raise ParseError(f"{os.fspath(path)}: missing '# dt_s=' metadata")
    seed = meta.get("seed")
    seed = None if seed in (None, "None") else int(seed)
    return ParityTimeSeries(cols[1].astype(int), float(meta["dt_s"]), seed)


def write_psd(psd: PsdEstimate, path):
    return write_columns(path, PSD_HEADER, [psd.freqs, psd.power],
                         [f"n_records={psd.n_records_averaged}"])


def read_psd(path) -> PsdEstimate:
    _, (f, p), meta = read_columns(path, PSD_HEADER)
    return PsdEstimate(f, p, int(meta.get("n_records", 1)))


def write_upward_spectrum(spectrum, path):
    return write_columns(path, UPWARD_HEADER, [spectrum.freqs, spectrum.gamma_up])


def write_upward_ratio(spectrum, path):
    return write_columns(path, RATIO_HEADER, [spectrum.freqs, spectrum.w, spectrum.ratio])


def write_dispersion_scan(n_g, f_even, f_odd, path):
    return write_columns(path, DISPERSION_HEADER, [n_g, f_even, f_odd])
