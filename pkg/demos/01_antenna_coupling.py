"""Coupling between a junction and a spurious antenna mode.

A small junction looks like a resistor in parallel with its self-capacitance.
At a few hundred GHz the capacitance dominates, so only an antenna mode with
the right inductive reactance can draw power from it.
"""

# %%
import numpy as np

from pairbreaker import JunctionParams, coupling_spectrum, junction_impedance, make_grid
from pairbreaker.core import gap_from_threshold
from pairbreaker.fixtures import matched_series_rlc

delta = gap_from_threshold(92e9)
junction = JunctionParams(15.0e3, 3.2e-15, 10e-9, delta)
print("tau = R_n C_j =", junction.tau, "s")

# %% Junction impedance at a few frequencies
for f in (0.0, 50e9, 240e9, 1e12):
    z = junction_impedance(junction, f)
    print(f"{f / 1e9:7.1f} GHz  Z_j = {z.real:10.3f} {z.imag:+10.3f}j ohm")

# %% A series RLC stand-in for the antenna, conjugate-matched at 240 GHz
freqs = np.linspace(50e9, 600e9, 2201)
table, (r, l, c) = matched_series_rlc(junction, 240e9, freqs, mismatch=1.0)
print(f"series RLC: R = {r:.3f} ohm, L = {l:.3e} H, C = {c:.3e} F")

grid = make_grid(100e9, 500e9, 81)
spec = coupling_spectrum(table, junction, grid)
for f, e in zip(spec.freqs[::8], spec.e_c[::8]):
    print(f"{f / 1e9:6.0f} GHz  e_c = {e:.4f}  " + "#" * int(60 * e))

# %% Resistive mismatch lowers the peak coupling
for mismatch in (1.0, 2.0, 4.0, 10.0):
    t, _ = matched_series_rlc(junction, 240e9, freqs, mismatch=mismatch)
    peak = coupling_spectrum(t, junction, grid).e_c.max()
    print(f"R_rad / Re(Z_j) = {mismatch:4.1f}  ->  peak e_c = {peak:.3f}")
