"""
Meets and joins of probability vectors
======================================

Majorization orders distributions by how concentrated they are. Two vectors
need not be comparable, yet every set has a greatest lower bound and a least
upper bound.
"""

import numpy as np

from corrcap import compare, infimum, shannon_entropy, supremum
from corrcap.majorization import prefix_sums

# Two distributions whose prefix sums cross
a = (0.5, 0.5, 0.0)
b = (0.6, 0.2, 0.2)
print("prefix sums a:", prefix_sums(a, 3))
print("prefix sums b:", prefix_sums(b, 3))
print("order:", compare(a, b).value)

# The meet takes the pointwise smaller prefix sum
meet = infimum([a, b])
print("infimum:", meet, "entropy", round(shannon_entropy(meet), 6))

# The join takes the pointwise larger prefix sum, then flattens any dip
# so that the result is still sorted
c = (0.6, 0.15, 0.15, 0.10)
d = (0.5, 0.25, 0.25, 0.0)
print("max of prefix sums:", np.maximum(prefix_sums(c, 4), prefix_sums(d, 4)))
print("supremum:", supremum([c, d]))

# Both bounds sit where they should
for v in (a, b):
    print(v, "meet below:", compare(meet, v).is_below)
