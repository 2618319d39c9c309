"""Seeded random instances and the invariant checks run against them.

Each ``check_*`` takes a ``random.Random`` and returns ``(ok, detail)``;
``run_properties`` runs every check ``count`` times from one seed, so a
failure is reproducible from ``(seed, name, index)``.
"""

import random
from math import comb

from .algebra import (
    AlgebraError,
    product,
    quotient_presentation,
    subalgebra_generated,
    truncated_poly,
)
from .differentials import kaehler
from .hochschild import bar_complex
from .linalg import Field, Matrix, Subspace, intersect, kernel_basis, vec_add, vec_scale
from .torsion import tau_bracket

FIELDS = (Field.Q(), Field.Fp(2), Field.Fp(3), Field.Fp(5))


def random_scalar(rng, field, lo=-3, hi=3):
    if field.p:
        return rng.randrange(field.p)
    return field(rng.randint(lo, hi))


def random_matrix(rng, field, rows, cols, density=0.6):
    data = [[random_scalar(rng, field) if rng.random() < density else field.zero
             for _ in range(cols)] for _ in range(rows)]
    return Matrix.from_rows(field, data)


def random_subspace(rng, field, n, k):
    vecs = [tuple(random_scalar(rng, field) for _ in range(n)) for _ in range(k)]
    return Subspace.span(field, n, vecs)


def _random_poly(rng, names, N):
    terms = []
    for _ in range(rng.randint(1, 2)):
        exps = [0] * len(names)
        for _ in range(rng.randint(1, N - 1)):
            exps[rng.randrange(len(names))] += 1
        c = rng.choice([1, 1, 2, -1])
        mono = "*".join(f"{v}^{e}" for v, e in zip(names, exps) if e)
        terms.append(f"{c}*{mono}")
    return " + ".join(terms)


def random_algebra(rng, field, max_dim=6):
    """A small local or split algebra, dimension at most ``max_dim``."""
    for _ in range(50):
        kind = rng.randrange(4)
        try:
            if kind == 0:
                a = truncated_poly(field, rng.randint(1, max_dim))
            elif kind == 1:
                rels = [_random_poly(rng, ["x", "y"], 3) for _ in range(rng.randint(0, 2))]
                a = quotient_presentation(field, ["x", "y"], 3, rels)
            elif kind == 2:
                B = truncated_poly(field, rng.randint(4, 9))
                exps = sorted(rng.sample(range(2, B.dim), min(2, B.dim - 2)))
                a, _ = subalgebra_generated(B, [f"s^{e}" for e in exps])
            else:
                a = product(truncated_poly(field, rng.randint(1, 3), "s"),
                            truncated_poly(field, rng.randint(1, 3), "t"))[0]
        except AlgebraError:
            continue
        if a.dim <= max_dim:
            return a
    return truncated_poly(field, 2)


def random_element(rng, a):
    return tuple(random_scalar(rng, a.field) for _ in range(a.dim))


def random_tame_pia(rng, field):
    factors = []
    for i in range(rng.randint(1, 2)):
        choices = [n for n in range(2, 8) if not field.p or n % field.p]
        factors.append(truncated_poly(field, rng.choice(choices), f"s{i + 1}"))
    return product(*factors)[0] if len(factors) > 1 else factors[0]


# --------------------------------------------------------------------------
# checks

def check_b_squared(rng):
    field = rng.choice(FIELDS)
    a = random_algebra(rng, field, max_dim=5)
    top = 3 if a.dim <= 4 else 2
    cx = bar_complex(a, top)
    for q in range(2, top + 1):
        for col in cx.boundaries[q]:
            if cx.apply(q - 1, col):
                return False, f"b_{q - 1} b_{q} != 0 on {a!r} over {field.name}"
    return True, ""


def check_rank_nullity(rng):
    field = rng.choice(FIELDS)
    m = random_matrix(rng, field, rng.randint(1, 7), rng.randint(1, 7))
    k = kernel_basis(m)
    if m.rank + k.dim != m.cols:
        return False, f"rank {m.rank} + nullity {k.dim} != {m.cols}"
    for v in k.basis:
        if any(m.apply(v)):
            return False, "kernel vector not killed"
    return True, ""


def check_grassmann(rng):
    field = rng.choice(FIELDS)
    n = rng.randint(1, 7)
    u = random_subspace(rng, field, n, rng.randint(0, n))
    v = random_subspace(rng, field, n, rng.randint(0, n))
    s, i = u + v, intersect(u, v)
    if s.dim + i.dim != u.dim + v.dim:
        return False, f"dims {u.dim}, {v.dim}, sum {s.dim}, meet {i.dim}"
    if not (i <= u and i <= v and u <= s and v <= s):
        return False, "containments fail"
    return True, ""


def check_leibniz(rng):
    field = rng.choice(FIELDS)
    a = random_algebra(rng, field)
    w = kaehler(a)
    x, y = random_element(rng, a), random_element(rng, a)
    lhs = w.d(a.mul(x, y))
    rhs = vec_add(field, w.act(x, w.d(y)), w.act(y, w.d(x)))
    if lhs != rhs:
        return False, f"d(xy) != x dy + y dx on {a!r}"
    c = random_scalar(rng, field)
    if w.d(vec_add(field, x, vec_scale(field, c, y))) != \
            vec_add(field, w.d(x), vec_scale(field, c, w.d(y))):
        return False, "d is not linear"
    if any(w.d(a.unit)):
        return False, "d(1) != 0"
    return True, ""


def check_bracket_containment(rng):
    field = rng.choice(FIELDS)
    B = random_tame_pia(rng, field)
    M = B.nilradical
    gens = []
    for _ in range(rng.randint(1, 3)):
        coeffs = [random_scalar(rng, field) for _ in M.basis]
        v = tuple(field.zero for _ in range(B.dim))
        for c, b in zip(coeffs, M.basis):
            v = vec_add(field, v, vec_scale(field, c, b))
        if any(v):
            gens.append(v)
    if not gens:
        return True, ""
    A, inc = subalgebra_generated(B, gens)
    if A.dim == 1:
        return True, ""
    br = tau_bracket(A, [inc])
    if not br.upper.contains(br.lower):
        return False, f"lower bound escapes upper bound for {A!r}"
    return True, ""


CHECKS = {
    "b_squared": check_b_squared,
    "rank_nullity": check_rank_nullity,
    "grassmann": check_grassmann,
    "leibniz": check_leibniz,
    "bracket_containment": check_bracket_containment,
}


def run_properties(seed=0, count=100, names=None):
    """``{name: {"runs": n, "failures": [(index, detail), ...]}}``."""
    out = {}
    for name in names or CHECKS:
        rng = random.Random(f"{seed}:{name}")
        fails = []
        for i in range(count):
            ok, detail = CHECKS[name](rng)
            if not ok:
                fails.append((i, detail))
        out[name] = {"runs": count, "failures": fails}
    return out


def binomial_identity(m):
    """The three expressions for dim V_A of the cube-truncated polynomial ring."""
    return (2 * comb(m + 1, 3), 2 * comb(m, 3) + 2 * comb(m, 2),
            m * comb(m + 1, 2) - comb(m + 2, 3))
