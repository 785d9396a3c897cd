"""
Cat-like states on many parties
===============================

``sum_k sqrt(lam_k) |k k ... k>`` has every marginal equal to ``diag(lam)``.
The pure state carries N times the local entropy as correlation; removing
its coherences leaves N - 1 times.
"""

from corrcap import correlation_information, shannon_entropy
from corrcap.twoqubit import feline_state

lam = (0.65, 0.35)
s = shannon_entropy(lam)
for n in range(2, 7):
    psi, dephased = feline_state(n, lam)
    print(f"n={n}: pure {correlation_information(psi.density()):.6f} (N*S {n * s:.6f}), "
          f"dephased {correlation_information(dephased):.6f} ((N-1)*S {(n - 1) * s:.6f})")
