"""Qubit excitations that accompany pair-breaking photon absorption.

Just above the pair-breaking threshold almost every absorbed photon also
excites the qubit. Far above it the fraction levels off at a few percent.
"""

# %%
import numpy as np

from pairbreaker import predicted_upward_spectrum, structure_factors, upward_fraction
from pairbreaker.core import gap_from_threshold
from pairbreaker.io import read_parity_spectrum

for w in (2.0001, 2.001, 2.01, 2.1, 3.0, 4.0, 6.0, 10.0, 20.0):
    sf = structure_factors(w)
    print(f"w = {w:8.4f}  S+ = {sf.s_plus:8.4f}  S- = {sf.s_minus:8.5f}  "
          f"up fraction = {upward_fraction(w, 28):.4f}")

# %% Near threshold S-/S+ is about (w - 2)/2
for eps in (1e-2, 1e-3, 1e-4, 1e-5):
    sf = structure_factors(2 + eps)
    print(f"w - 2 = {eps:.0e}  (S-/S+) / ((w-2)/2) = {sf.ratio / (eps / 2):.5f}")

# %% Applied to the fixture parity spectrum
import os

path = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures", "parity_spectrum.csv")
spec = read_parity_spectrum(path)
up = predicted_upward_spectrum(spec, gap_from_threshold(92e9), 28)
for f, ratio, g in list(zip(up.freqs, up.ratio, up.gamma_up))[::50]:
    print(f"{f / 1e9:5.0f} GHz  ratio {ratio:.3f}  Gamma_up = {g:9.2f} /s")
print("peak upward rate", np.max(up.gamma_up), "/s")
