"""Closed-form impedance tables and a ready-to-run fixture set.

The finite-element antenna impedances behind the measured devices are not
public, so tests and demos use lumped RLC stand-ins. ``matched_series_rlc``
builds a series RLC whose reactance cancels the junction's at a chosen
frequency, which puts the coupling peak there by construction.

Run ``python -m pairbreaker.fixtures <dir>`` to regenerate the files shipped
in ``fixtures/``.
"""

from __future__ import annotations

import os
import sys

import numpy as np
import yaml

from .antenna import ImpedanceTable, write_impedance_table
from .core import gap_from_threshold
from .junction import JunctionParams, junction_impedance

AL_THRESHOLD = 92e9


def series_rlc_impedance(f, r, l, c):
    w = 2 * np.pi * np.asarray(f, dtype=float)
    return r + 1j * (w * l - 1 / (w * c))


def parallel_rlc_impedance(f, r, l, c):
    w = 2 * np.pi * np.asarray(f, dtype=float)
    return 1 / (1 / r + 1 / (1j * w * l) + 1j * w * c)


def series_rlc_table(freqs, r, l, c, label="series_rlc"):
    return ImpedanceTable(freqs, series_rlc_impedance(freqs, r, l, c), label)


def parallel_rlc_table(freqs, r, l, c, label="parallel_rlc"):
    return ImpedanceTable(freqs, parallel_rlc_impedance(freqs, r, l, c), label)


def matched_series_rlc(params: JunctionParams, f0, freqs, mismatch=1.0, slope=2.0, label=None):
    """Series RLC that conjugate-matches ``params`` at ``f0`` when ``mismatch == 1``.

    The resistance is ``mismatch * Re Z_j(f0)``. The reactance equals
    ``-Im Z_j(f0)`` at ``f0``, with ``omega0 * L = slope * (-Im Z_j(f0))``;
    ``slope > 1`` keeps the capacitance positive. Larger ``mismatch`` lowers
    and broadens the coupling peak.

    Returns ``(table, (r, l, c))``.
    """
    if slope <= 1:
        raise ValueError("slope must exceed 1")
    zj = junction_impedance(params, f0)
    x0 = -zj.imag
    w0 = 2 * np.pi * f0
    r = mismatch * zj.real
    l = slope * x0 / w0
    c = 1 / (w0 * (w0 * l - x0))
    table = series_rlc_table(freqs, r, l, c, label or f"matched_rlc_{f0 / 1e9:g}GHz")
    return table, (r, l, c)


# Junctions used by the shipped fixtures. The receiver follows the Xmon Q2 row
# of the device table; the transmitter capacitance is a stand-in.
def fixture_transmitter():
    return JunctionParams.from_resistance(33.0e3, 3.0e-15, gap_from_threshold(AL_THRESHOLD))


def fixture_receiver():
    return JunctionParams.from_resistance(16.6e3, 4.6e-15, gap_from_threshold(AL_THRESHOLD))


FIXTURE_FREQS = np.linspace(50e9, 2.1e12, 2051)

DEVICE_TABLE = [
    {"name": "xmon_q1", "f01_hz": 4.828e9, "two_delta_f_hz": 4.6e6},
    {"name": "xmon_q2", "f01_hz": 4.782e9, "two_delta_f_hz": 2.7e6},
    {"name": "xmon_q3", "f01_hz": 4.829e9, "two_delta_f_hz": 2.1e6},
    {"name": "circmon_q1", "f01_hz": 4.595e9, "two_delta_f_hz": 1.5e6},
    {"name": "circmon_q2", "f01_hz": 4.949e9, "two_delta_f_hz": 1.1e6},
    {"name": "circmon_q3", "f01_hz": 4.443e9, "two_delta_f_hz": 0.8e6},
]


def fixture_configs():
    tx, rx = fixture_transmitter(), fixture_receiver()
    transmitter = {"impedance_table": "tx_rlc_270ghz.csv", "r_n": tx.r_n, "c_j": tx.c_j,
                   "threshold_hz": AL_THRESHOLD, "x_qp": 0.084}
    receiver = {"impedance_table": "rx_rlc_270ghz.csv", "r_n": rx.r_n, "c_j": rx.c_j,
                "threshold_hz": AL_THRESHOLD}
    enclosure = {"sigma_wall": 7.2e7, "area_inner": 3.2e-3, "scale_factor": 0.07}
    return {
        "spectrum.yaml": {
            "transmitter": transmitter, "receiver": receiver, "enclosure": enclosure,
            "gamma_0": 110.0,
            "grid": {"f_start": 100e9, "f_stop": 500e9, "n_points": 401},
        },
        "baseline.yaml": {
            "receiver": receiver,
            "environment": {"gamma_0": 12.8, "f_threshold": AL_THRESHOLD, "f_cutoff": 2e12,
                            "n_points": 1909},
        },
        "telegraph.yaml": {
            "seed": 20211,
            "telemetry": {"gamma_p": 612.0, "dt": 50e-6, "n_samples": 5000, "n_records": 9,
                          "fidelity": 0.9},
        },
        "transitions.yaml": {
            "transitions": {"parity_spectrum": "parity_spectrum.csv", "threshold_hz": AL_THRESHOLD,
                            "ej_over_ec": 28.0, "include_baseline": False},
        },
        "transmon.yaml": {
            "transmon": {"n_cutoff": 30, "devices": DEVICE_TABLE, "scan_points": 0},
        },
    }


def write_fixture_set(directory):
    """Write the impedance tables, a parity spectrum and one config per command."""
    from .antenna import coupling_spectrum
    from .core import make_grid
    from .io import write_transfer_spectrum
    from .junction import QpState
    from .radiation import EnclosureParams, parity_rate_spectrum

    os.makedirs(directory, exist_ok=True)
    tx, rx = fixture_transmitter(), fixture_receiver()
    tx_table, tx_rlc = matched_series_rlc(tx, 270e9, FIXTURE_FREQS, mismatch=4.0, label="tx_rlc_270ghz")
    rx_table, rx_rlc = matched_series_rlc(rx, 270e9, FIXTURE_FREQS, mismatch=4.0, label="rx_rlc_270ghz")
    written = []
    for table, rlc, junction in ((tx_table, tx_rlc, tx), (rx_table, rx_rlc, rx)):
        path = os.path.join(directory, f"{table.label}.csv")
        comment = (
            "synthetic series RLC antenna impedance (not measured data)\n"
            f"R={rlc[0]:.9g} ohm L={rlc[1]:.9g} H C={rlc[2]:.9g} F\n"
            f"reactance cancels junction R_n={junction.r_n:g} ohm C_j={junction.c_j:g} F at 270 GHz"
        )
        write_impedance_table(table, path, comment)
        written.append(path)

    grid = make_grid(100e9, 500e9, 401)
    spec = parity_rate_spectrum(
        coupling_spectrum(tx_table, tx, grid), coupling_spectrum(rx_table, rx, grid),
        tx, QpState(0.084), EnclosureParams(scale_factor=0.07), 110.0, grid,
    )
    path = os.path.join(directory, "parity_spectrum.csv")
    write_transfer_spectrum(spec, path)
    written.append(path)

    for name, cfg in fixture_configs().items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            yaml.safe_dump(cfg, fh, sort_keys=False)
        written.append(path)
    return written


if __name__ == "__main__":
    for p in write_fixture_set(sys.argv[1] if len(sys.argv) > 1 else "fixtures"):
        print(p)
