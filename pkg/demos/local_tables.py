"""
Where can x^2 + y^2 = alpha fail locally?
=========================================

A sum of two squares must be one at every completion. At a real place
that means positivity; at an odd place with residue field of size k
it fails only when k = 3 mod 4 and the valuation is odd; above 2 the
answer comes from a closed form (2 split) or an exhaustive enumeration
of the ring modulo a power of 2.
"""

from twosquares import field, local_table, parse_alpha

cases = [
    (17, "(0+1*sqrt(17))"),  # negative at one real place
    (17, "(17+4*sqrt(17))"),  # fine everywhere
    (-79, "(1+1*sqrt(-79))/2"),  # fine everywhere, yet not a sum of two squares
    (-7, "-1"),  # -1 = 7 mod 8 fails at both places above 2
    (-3, "7"),  # 7 splits in Q(sqrt -3) and 7 = 3 mod 4
    (7, "(8+3*sqrt(7))"),  # the fundamental unit, blocked above 2
]

for d, text in cases:
    alpha = parse_alpha(text, field(d))
    table = local_table(alpha)
    print(f"\nalpha = {text} in Q(sqrt({d})), norm {alpha.norm()}")
    for v in table.verdicts:
        val = "-" if v.valuation is None else v.valuation
        print(f"  {str(v.place):<12} {'ok' if v.solvable else 'FAIL':<5} v={val:<3} {v.reason.value}")
    print("  all places pass" if table.all_pass else "  locally obstructed")
