"""
Fields where local solvability is enough
========================================

For d in {-23, -31, -47, -59, -71} passing every local test already means
alpha is a sum of two squares. We sample locally solvable elements of
Q(sqrt(-23)) and look for explicit witnesses.
"""

import random

from twosquares import SearchBounds, decide, find_witness, hasse_field_list, local_table
from twosquares.acceptance import box_elements

print("local-global fields:", sorted(hasse_field_list()))

rng = random.Random(0)
population = [a for a in box_elements(-23, 25, 300) if local_table(a).all_pass]
sample = rng.sample(population, 40)

found = 0
for alpha in sample:
    w = find_witness(alpha, SearchBounds(200))
    found += w is not None
print(f"{found}/{len(sample)} sampled locally solvable elements have a witness")

alpha = sample[0]
v = decide(alpha)
print(f"\nexample: {alpha} -> {v.status.value} ({v.mode.value}), witness {[str(w) for w in v.witness]}")
