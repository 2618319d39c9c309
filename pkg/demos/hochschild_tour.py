"""Hochschild homology of k[s]/(s^n) in a few characteristics.

HH_1 agrees with Omega; HH_2 jumps from n - 1 to n when p divides n, and
the classes of s^m eta span it.
"""

from artinian_forms import Field, hh, kaehler, truncated_poly
from artinian_forms.hochschild import hh2_generator_check

for field in (Field.Q(), Field.Fp(2), Field.Fp(3)):
    for n in (2, 3, 4):
        a = truncated_poly(field, n)
        gen = hh2_generator_check(n, field)
        print(f"{field.name:>2} n={n}: HH_0 {hh(a, 0).dim}  HH_1 {hh(a, 1).dim} "
              f"(Omega {kaehler(a).kdim})  HH_2 {gen['dim']}  eta spans: {gen['generates']}")
