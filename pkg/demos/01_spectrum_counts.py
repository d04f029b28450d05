"""
Counting Dirac eigenvalues on spheres
=====================================

The positive Dirac eigenvalues on S^n sit at n/2 + k with binomial
multiplicities.  Summing them gives a step function that a smooth
power of the energy bounds from above.
"""
from fractions import Fraction

from diraclt.spectrum import count_envelope, cumulative_count, spectral_lines

# the first few levels on S^3
for line in spectral_lines(3, 5):
    print(f"k={line.k}  lambda={line.eigenvalue}  multiplicity={line.multiplicity}")

# on S^2 the count below E in (m, m+1] is m^2 + m
print([cumulative_count(2, Fraction(m) + Fraction(1, 2)) for m in range(8)])

# the envelope sits strictly above the count once E clears the gap n/2
n = 4
for E in (Fraction(5, 2), 5, 10, 40):
    exact, env = cumulative_count(n, E), count_envelope(n, E)
    print(f"n={n} E={E}: count={exact} envelope={float(env):.1f} ratio={float(exact / env):.4f}")
