"""
An explicit criterion in Q(sqrt(-79))
=====================================

Local tests are not enough here. The primes in the norm of alpha are sorted
by two Legendre symbols and by whether x^3 - 307x + 1772 has a root mod p;
a weighted exponent sum then decides. We line the verdicts up against a
bounded witness search.
"""

from collections import Counter

from twosquares import QuadInt, decide, field
from twosquares.acceptance import box_elements

F = field(-79)

# the three worked instances
for alpha in (QuadInt(F, 2, 0), QuadInt(F, 5, 0), QuadInt(F, 1, 1, 2)):
    v = decide(alpha)
    witness = None if v.witness is None else [str(w) for w in v.witness]
    nf = v.criterion_trace.factorization
    print(f"{str(alpha):<20} N={alpha.norm():<4} classes={list(nf.odd_primes)} "
          f"sum={v.criterion_trace.sum} -> {v.status.value} {witness or ''}")

# a small box: how do criterion and search compare?
tally = Counter()
for alpha in box_elements(-79, 6, 1000):
    v = decide(alpha)
    tally[(v.mode.value, v.status.value, v.witness is not None)] += 1

print("\nmode, status, witnessed -> count")
for key, n in sorted(tally.items()):
    print(f"  {key}: {n}")
