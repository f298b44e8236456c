"""ppt-entangled families: where algebraic bounds suffice and where optimization helps.

Run: python demos/03_bound_entanglement.py   (about a minute)
"""

from entk.cli import scan_row

print("family      a      min PT eig   best alg    optimized   quasi-pure")
for family, grid in [
    ("hor33", [0.2, 0.5, 0.8]),
    ("hor24", [0.2, 0.5, 0.8]),
    ("horror", [0.3, 1.2, 1.5, 2.0]),
]:
    for a in grid:
        row = scan_row(family, a, restarts=10, seed=0)
        print(f"{family:8s} {a:5.2f}  " + "  ".join(f"{x:+.5f}" for x in row[1:]))
# hor33 is caught by the algebraic bound, hor24 only after optimizing over
# combinations, and horror with 1.1 <= a <= 1.5 likewise by the optimized bound.
