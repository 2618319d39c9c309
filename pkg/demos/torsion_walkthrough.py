"""Forms on k[x, y]/(x^3, xy, y^2) sent into k[s]/(s^5) by x -> s^2, y -> s^3.

Over Q the target is tame, y dx dies, and the bracket pins tau down to it.
Over F5 the target is wild (5 divides 5): Omega_A injects, so this algebra
is no counterexample, and the bracket is not defined for a wild target.
"""

from artinian_forms import Field, induced_map, kaehler, make_hom, quotient_presentation, tau_bracket, truncated_poly
from artinian_forms.algebra import is_tame_pia

for field in (Field.Q(), Field.Fp(5)):
    B = truncated_poly(field, 5)
    A = quotient_presentation(field, ["x", "y"], 4, ["x^3", "x*y", "y^2"])
    f = make_hom(A, B, {"x": "s^2", "y": "s^3"})
    w = kaehler(A)
    ker = induced_map(f).kernel()
    print(f"over {field.name}: dim Omega_A = {w.kdim}, kernel = "
          f"{[w.format(v) for v in ker.basis] or 0}")
    if is_tame_pia(B):
        br = tau_bracket(A, [f]).describe()
        print(f"    {br['lower_dim']} <= dim tau <= {br['upper_dim']}: {br['upper']}")
    else:
        print("    target is wild; no bracket")
