"""
Filled shells as test families
==============================

Filling every eigenspace up to degree K gives an orthonormal family whose
density is constant, by the addition formula.  Both sides of each inequality
are then exact, and the smallest ratio seen bounds the best constant from
above.
"""
from diraclt.families import KINDS, bracket_scan, dirac_shell_report

r = dirac_shell_report(2, 3)
print("S^2, K=3:", r.lhs, r.rho, float(r.ratio), r.satisfied)

for kind in KINDS:
    b = bracket_scan(2, kind, 200)
    print(f"{kind:18s} [{float(b.lower):.6f}, {float(b.upper):.6f}]  all satisfied: {b.all_satisfied}")
