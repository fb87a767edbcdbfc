"""
The parity criterion in Q(sqrt(17))
===================================

In the real field Q(sqrt(17)) the sign at both real places matters, and
the criterion is a parity condition: the power of 2 in the norm plus a
weighted count of odd primes must be even.
"""

from twosquares import QuadInt, decide, field

F = field(17)

for alpha in (QuadInt(F, 0, 1), QuadInt(F, 4, 1), QuadInt(F, 17, 4), QuadInt(F, 13, 3, 2)):
    v = decide(alpha)
    t = v.criterion_trace
    print(f"\nalpha = {alpha}   norm {alpha.norm()}")
    print(f"  failing places: {[str(lv.place) for lv in v.local.failing()] or 'none'}")
    print(f"  s1={t.factorization.s1} odd primes={list(t.factorization.odd_primes)} sum={t.sum} accept={t.accept}")
    print(f"  -> {v.status.value} ({v.mode.value})", end="")
    if v.witness:
        x, y = v.witness
        print(f", ({x})^2 + ({y})^2 = {x * x + y * y}")
    else:
        print()
