"""Baseline poisoning from stray blackbody radiation.

Without any transmitter the receiver still sees pair-breaking photons from
warmer stages. Treating that background as a blackbody, the baseline rate
fixes an effective radiation temperature.
"""

# %%
import numpy as np

from pairbreaker import (BlackbodyEnvironment, CouplingSpectrum, baseline_parity_rate,
                         coupling_spectrum, effective_temperature, make_grid)
from pairbreaker.fixtures import FIXTURE_FREQS, fixture_receiver, matched_series_rlc
from pairbreaker.radiation import boltzmann_tail_rate

# %% Flat coupling: the integral is nearly a pure Boltzmann tail
flat = CouplingSpectrum([50e9, 2.5e12], [1.0, 1.0])
for t in (0.2, 0.3, 0.4, 0.5):
    env = BlackbodyEnvironment(t, 92e9, 2e12)
    print(f"T = {t:.1f} K  Gamma0 = {baseline_parity_rate(flat, env):.4g} /s  "
          f"(tail {boltzmann_tail_rate(1.0, 92e9, 2e12, t):.4g})")

# %% Resonant receiver antenna
rx = fixture_receiver()
table, _ = matched_series_rlc(rx, 270e9, FIXTURE_FREQS, mismatch=4.0)
spec = coupling_spectrum(table, rx, make_grid(92e9, 2e12, 2000))
temps = np.linspace(0.3, 0.6, 7)
for t in temps:
    print(f"T = {t * 1e3:4.0f} mK  Gamma0 = {baseline_parity_rate(spec, BlackbodyEnvironment(t, 92e9)):9.2f} /s")

# %% Inverting measured baselines
template = BlackbodyEnvironment(1.0, 92e9)
for g0 in (12.8, 110.0, 1060.0):
    print(f"Gamma0 = {g0:7.1f} /s  ->  T_eff = {effective_temperature(spec, g0, template) * 1e3:.1f} mK")
