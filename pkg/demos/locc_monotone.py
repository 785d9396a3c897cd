"""
A correlation measure that local measurements cannot raise
==========================================================

For a pure state, the sum of marginal entropies minus the largest one never
grows on average under a local measurement. On qubits it equals the
separable capacity of the marginals.
"""

from corrcap.locc import conjecture_probe, entropy_sum_minus_max, monotonicity_trial, separable_capacity
from corrcap.sampling import SeededStream, haar_pure

psi = haar_pure((2, 2, 2, 2), SeededStream(11))
print("f:", entropy_sum_minus_max(psi), " capacity:", separable_capacity(psi))

report = monotonicity_trial(psi, trials=500, seed=1)
print("trials:", report.trials, "max increase:", report.max_violation, "mean drop:", round(report.mean_margin, 4))

# Beyond qubits the capacity is only conjectured to behave; look for evidence
probe = conjecture_probe((3, 3, 3), trials=200, seed=2)
print("qutrit probe: violations", len(probe.violations), "max increase", probe.max_violation)
