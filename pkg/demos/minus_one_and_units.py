"""
Sums of two squares equal to -1 or to a unit
============================================

In Q(sqrt(-p)) the equation x^2 + y^2 = -1 is solvable unless p = 7 mod 8,
and a solution is read off a Pell solution. In Q(sqrt(p)) the fundamental
unit is never a sum of two squares: it is negative somewhere when its norm
is -1, and otherwise the obstruction sits above 2.
"""

from twosquares import epsilon_obstruction, minus_one_witness

print("x^2 + y^2 = -1 in Q(sqrt(-p))")
for p in (2, 3, 5, 7, 11, 13, 23, 43, 67):
    res = minus_one_witness(p)
    if res.witness:
        x, y = res.witness
        print(f"  p={p:<3} ({x})^2 + ({y})^2 = -1")
    else:
        print(f"  p={p:<3} no solution; fails at {[str(pl) for pl in res.obstruction]}")

print("\nx^2 + y^2 = eps in Q(sqrt(p))")
for p in (2, 3, 5, 7, 11, 13, 19, 31):
    ob = epsilon_obstruction(p)
    extra = ""
    if ob.auxiliary:
        aux = ob.auxiliary
        extra = f"  via {aux.A}^2 - {p}*{aux.B}^2 = 1"
    print(f"  p={p:<3} eps={ob.epsilon}  fails at {ob.failing_place} ({ob.verdict.reason.value}){extra}")
