"""Why x_i -> s_i^2 cannot pin down tau for square-zero algebras over F2.

d(s^2) = 2 s ds vanishes in characteristic 2, so the map into cubes kills
every form and the upper bound stays at all of Omega.  Sending x_i to s_i^3
inside k[s_i]/(s_i^5) keeps the generators alive and closes the bracket at
C(m + 1, 2).
"""

from math import comb

from artinian_forms import Field, make_hom, product, quotient_presentation, tau_bracket, truncated_poly

F2 = Field.Fp(2)

for m in (2, 3, 4):
    A = quotient_presentation(F2, m, 2, [])
    for n, power in ((3, 2), (5, 3)):
        B, *_ = product(*[truncated_poly(F2, n, f"s{i + 1}") for i in range(m)])
        f = make_hom(A, B, {v: f"s{i + 1}^{power}" for i, v in enumerate(A.var_names)})
        d = tau_bracket(A, [f]).describe()
        verdict = "closed" if d["certified_equal"] else "open"
        print(f"m={m}  x_i -> s_i^{power} in k[s]/(s^{n}):  "
              f"{d['lower_dim']} <= tau <= {d['upper_dim']}  ({verdict}; C(m+1,2) = {comb(m + 1, 2)})")
