"""
Classical, separable and entangled optima for two qubits
========================================================

For qubit marginals with larger eigenvalues p_a and p_b there are closed
forms for the most correlated classical, separable and entangled composites.
Their spectra are ordered by majorization, and so are their correlations.
"""

import sys

from corrcap import io
from corrcap.composite import is_classically_correlated
from corrcap.twoqubit import QubitPair, fig1_curve, hierarchy, sigma_classical, sigma_entangled, sigma_separable

pair = QubitPair(0.65, 0.5)
for name, lam in zip(("classical", "separable", "entangled"), hierarchy(pair)):
    print(f"{name:>10}: {lam}")

for fn in (sigma_classical, sigma_separable, sigma_entangled):
    print(fn.__name__, "classically correlated:", is_classically_correlated(fn(pair)))

# Sweep p_b with p_a fixed at 0.65 and write the three curves as CSV
rows = fig1_curve(0.65, steps=11)
io.write_fig1_csv(rows, sys.stdout)
