"""
Pell equations with small right-hand side
=========================================

For a prime p exactly one of x^2 - p*y^2 = -1, 2, -2 is picked out by
p mod 8, and it always has a solution. The continued fraction of sqrt(p)
finds it; the same expansion gives the fundamental unit.
"""

from twosquares import field, fundamental_unit, render, yokoi_check
from twosquares.pell import cf_sqrt

# sqrt(7) = [2; 1, 1, 1, 4, 1, 1, 1, 4, ...]
cf = cf_sqrt(7)
print("sqrt(7) =", [cf.a0, list(cf.period)])

# one solved equation per prime, grouped by residue
print(f"{'p':>4} {'case':<10} {'x':>12} {'y':>12}")
for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 79, 103, 167):
    res = yokoi_check(p)
    s = res.solution
    print(f"{p:>4} {res.case.value:<10} {s.x0:>12} {s.y0:>12}   (x^2 - {p}y^2 = {s.N})")

# fundamental units; fields with p = 1 mod 4 may need half-integer coordinates
for p in (2, 3, 5, 7, 13, 17, 29, 31, 79):
    eps = fundamental_unit(field(p))
    print(f"unit of Q(sqrt({p})): {render(eps)}  norm {eps.norm():+d}")
