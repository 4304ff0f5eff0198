"""Extracting a parity switching rate from noisy telegraph records.

Each record is 5000 parity samples spaced by 50 us, read out with imperfect
fidelity. Nine records are averaged into one power spectral density and
fitted with a Lorentzian plus white floor.
"""

# %%
import numpy as np

from pairbreaker import average_psd, fit_lorentzian
from pairbreaker.telemetry import autocorrelation, lorentzian_psd, simulate_records

dt, gamma, fidelity = 50e-6, 612.0, 0.9
records = simulate_records(gamma, dt, 5000, fidelity, seed=20211, n_records=9)
print("first 60 samples:", "".join("+" if v > 0 else "-" for v in records[0].values[:60]))

# %% Autocorrelation decays as F^2 exp(-2 Gamma t)
ac = np.mean([autocorrelation(r.values, 10) for r in records], axis=0)
for k in (1, 2, 5, 10):
    print(f"lag {k:2d}: {ac[k]:.3f}  model {fidelity**2 * np.exp(-2 * gamma * k * dt):.3f}")

# %% Averaged PSD and fit
psd = average_psd(records)
fit = fit_lorentzian(psd, dt)
print(f"fit: Gamma_p = {fit.gamma_p:.1f} /s (true {gamma}), F = {fit.fidelity:.3f}")
for f in (10, 100, 1000, 5000):
    i = np.searchsorted(psd.freqs, f)
    print(f"{psd.freqs[i]:7.1f} Hz  S = {psd.power[i]:.3e}  model {lorentzian_psd(psd.freqs[i], fit.gamma_p, fit.fidelity, dt):.3e}")

# %% Scatter over seeds
fits = [fit_lorentzian(average_psd(simulate_records(gamma, dt, 5000, fidelity, s, 9)), dt).gamma_p
        for s in range(20)]
print(f"20 seeds: mean {np.mean(fits):.1f} /s, std {np.std(fits, ddof=1):.1f} /s")
