import random

import pytest
from hypothesis import given, settings, strategies as st

from artinian_forms.algebra import (
    make_hom,
    product,
    quotient_presentation,
    subalgebra_generated,
    truncated_poly,
)
from artinian_forms.differentials import (
    h0_dr,
    hc1,
    hc1_integration_check,
    induced_map,
    kaehler,
    relative_omega,
)
from artinian_forms.linalg import Field, rank_of_vectors
from artinian_forms.randomized import FIELDS, random_algebra, random_element

Q, F2, F3, F5 = Field.Q(), Field.Fp(2), Field.Fp(3), Field.Fp(5)


def omega_by_diagonal(a):
    """dim I/I^2 for I = ker(A (x) A -> A): an independent route to Omega."""
    F, n = a.field, a.dim
    N = n * n

    def pure(x, y):
        return tuple(F.norm(x[i] * y[j]) for i in range(n) for j in range(n))

    def tmul(u, v):
        out = [F.zero] * N
        for p, cu in enumerate(u):
            if not cu:
                continue
            for q, cv in enumerate(v):
                if not cv:
                    continue
                left = a.mul(a.basis(p // n), a.basis(q // n))
                right = a.mul(a.basis(p % n), a.basis(q % n))
                c = cu * cv
                for i, li in enumerate(left):
                    if li:
                        for j, rj in enumerate(right):
                            if rj:
                                out[i * n + j] = F.norm(out[i * n + j] + c * li * rj)
        return tuple(out)

    one = a.unit
    # I is spanned by x (x) 1 - 1 (x) x as an A (x) A module; as a space by
    # (b_i (x) 1)(b_j (x) 1 - 1 (x) b_j)
    gens = [tuple(F.norm(u - v) for u, v in zip(pure(a.basis(j), one), pure(one, a.basis(j))))
            for j in range(1, n)]
    I = [tmul(pure(a.basis(i), one), g) for i in range(n) for g in gens]
    I2 = [tmul(u, v) for u in gens for v in gens]
    I2 = [tmul(pure(a.basis(i), one), w) for i in range(n) for w in I2]
    return rank_of_vectors(F, N, I) - rank_of_vectors(F, N, I2)


@pytest.mark.parametrize("field, n, expected", [
    (Q, 5, 4), (F5, 5, 5), (F3, 5, 4), (F2, 4, 4), (F2, 3, 2), (Q, 1, 0),
])
def test_truncated_poly_omega(field, n, expected):
    assert kaehler(truncated_poly(field, n)).kdim == expected


def test_square_zero_omega():
    for m, dims in ((2, (3, 5)), (3, (6, 9))):
        assert kaehler(quotient_presentation(Q, m, 2, [])).kdim == dims[0]
        assert kaehler(quotient_presentation(F2, m, 2, [])).kdim == dims[1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_omega_matches_diagonal_oracle(seed, field):
    a = random_algebra(random.Random(seed), field, max_dim=5)
    assert kaehler(a).kdim == omega_by_diagonal(a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(FIELDS))
def test_leibniz(seed, field):
    rng = random.Random(seed)
    a = random_algebra(rng, field)
    w = kaehler(a)
    x, y = random_element(rng, a), random_element(rng, a)
    lhs = w.d(a.mul(x, y))
    rhs = tuple(field.norm(u + v) for u, v in zip(w.act(x, w.d(y)), w.act(y, w.d(x))))
    assert lhs == rhs
    assert not any(w.d(a.unit))


def test_induced_map_is_functorial():
    A = quotient_presentation(Q, ["x"], 3, [])
    B = truncated_poly(Q, 6)
    C = truncated_poly(Q, 12, "t")
    f = make_hom(A, B, {"x": "s^2 + s^3"})
    g = make_hom(B, C, {"s": "t^2"})
    gf = g.compose(f)
    assert induced_map(gf).matrix == induced_map(g).matrix @ induced_map(f).matrix


def test_relative_omega_of_semigroup_ring():
    S = truncated_poly(Q, 9)
    R, inc = subalgebra_generated(S, ["s^3", "s^5"])
    ro = relative_omega(inc)
    assert ro.dim == 2
    assert [ro.format_class(i) for i in range(ro.dim)] == ["ds", "s*ds"]


def test_hc1_and_de_rham():
    assert hc1(truncated_poly(Q, 6)).dim == 0
    P = product(truncated_poly(Q, 2), truncated_poly(Q, 3, "t"))[0]
    assert hc1(P).dim == 0 and h0_dr(P).dim == 2
    K = quotient_presentation(Q, ["x", "y"], 2, [])
    assert hc1(K).dim == 1 and h0_dr(K).dim == 1


def test_integration_sequence_exact():
    B = truncated_poly(Q, 6)
    A, inc = subalgebra_generated(B, ["s^2", "s^3"])
    r = hc1_integration_check(inc)
    assert tuple(r["dims"]) == (2, 2, 1, 1) and r["exact"]
