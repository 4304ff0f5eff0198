"""Charge dispersion of a transmon and the (E_J, E_c) fit.

The even and odd parity bands are the same band shifted by half a Cooper
pair of offset charge. Their splitting shrinks exponentially with E_J/E_c.
"""

# %%
import numpy as np

from pairbreaker import TransmonParams, dispersion, fit_ej_ec
from pairbreaker.fixtures import DEVICE_TABLE
from pairbreaker.transmon import asymptotic_f01, dispersion_scan

p = TransmonParams.from_frequencies(28 * 360e6, 360e6)
d = dispersion(p)
print(f"f01 = {d.f01_reported / 1e9:.4f} GHz (asymptotic {asymptotic_f01(28 * 360e6, 360e6) / 1e9:.4f})")
print(f"2 delta f = {d.two_delta_f / 1e6:.3f} MHz")

# %% Bands versus offset charge
n_g = np.linspace(0, 1, 11)
even, odd = dispersion_scan(p, n_g)
for x, e, o in zip(n_g, even, odd):
    print(f"n_g = {x:.1f}  even {(e - d.f01_reported) / 1e3:+8.1f} kHz  odd {(o - d.f01_reported) / 1e3:+8.1f} kHz")

# %% Exponential suppression
for r in (20, 25, 30, 40, 50):
    dd = dispersion(TransmonParams.from_frequencies(r * 300e6, 300e6)).two_delta_f
    print(f"E_J/E_c = {r:2d}  2 delta f = {dd / 1e6:9.5f} MHz")

# %% Fitting the device table
for row in DEVICE_TABLE:
    fit = fit_ej_ec(row["f01_hz"], row["two_delta_f_hz"])
    print(f"{row['name']:11s} f01 = {row['f01_hz'] / 1e9:.3f} GHz  2df = {row['two_delta_f_hz'] / 1e6:.1f} MHz"
          f"  ->  E_J/E_c = {fit.ratio:5.2f}, E_c/h = {fit.e_c / 6.62607015e-34 / 1e6:.0f} MHz")
