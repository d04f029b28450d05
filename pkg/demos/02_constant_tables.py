"""
Lower and upper bounds for the constants
========================================

Lower bounds for the first-moment and energy constants in normalized
measure, then upper bounds on the scalar Lieb-Thirring constant in surface
measure next to the older gradient bound.
"""
from diraclt._precision import fixed
from diraclt.constants import build_table, k_upper

for row in build_table("table1", range(1, 6)):
    print(row["n"], fixed(row["K_lower"], 6), fixed(row["K_prime_lower"], 7), row["source"])

print()
for row in build_table("table2", range(4, 9)):
    print(row["n"], fixed(row["kowalski"], 7), fixed(row["improved"], 7))

# the improved bound wins from n = 5 on and keeps pulling ahead
for n in (5, 10, 20, 40):
    print(n, float(k_upper(n, source="improved") / k_upper(n, source="kowalski")))
