import math
import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from artinian_forms.algebra import (
    make_hom,
    product,
    quotient_presentation,
    subalgebra_generated,
    truncated_poly,
)
from artinian_forms.differentials import induced_map, kaehler
from artinian_forms.linalg import Field
from artinian_forms.randomized import binomial_identity, random_tame_pia
from artinian_forms.torsion import (
    TorsionError,
    euler_differential,
    guettes_check,
    m3_witness,
    nonembeddable_witness,
    seminormal_kernel,
    tau_bracket,
    tau_lower_socle,
    tau_upper,
    valuation,
    valuation_profile,
)

Q, F2, F3, F5 = Field.Q(), Field.Fp(2), Field.Fp(3), Field.Fp(5)


@pytest.mark.parametrize("exps", [(2, 3), (2, 3, 2), (3, 4, 5)])
def test_seminormal_kernel_basis(exps):
    r = seminormal_kernel(len(exps), exps)
    assert r["kernel_dim"] == comb(len(exps), 2) == r["expected"]
    assert r["basis_matches"]


@pytest.mark.parametrize("field, n, image, top", [(F2, 5, "s^3", 2), (F5, 29, "s^6", 5)])
def test_wild_truncations_close_the_bracket(field, n, image, top):
    A = truncated_poly(field, top, "x")
    B = truncated_poly(field, n)
    f = make_hom(A, B, {"x": image})
    br = tau_bracket(A, [f])
    d = br.describe()
    assert br.certified_equal
    assert d["upper"] == [f"x^{top - 1}*dx" if top > 2 else "x*dx"]


def test_bracket_for_square_zero_algebras():
    for m in (2, 3):
        A = quotient_presentation(Q, m, 2, [])
        B, *_ = product(*[truncated_poly(Q, 2, f"s{i + 1}") for i in range(m)])
        f = make_hom(A, B, {v: f"s{i + 1}" for i, v in enumerate(A.var_names)})
        br = tau_bracket(A, [f])
        assert br.certified_equal and br.upper.dim == comb(m, 2)


def test_square_zero_char_two_needs_odd_powers():
    A = quotient_presentation(F2, 2, 2, [])
    cubes, *_ = product(truncated_poly(F2, 3, "s1"), truncated_poly(F2, 3, "s2"))
    squares = make_hom(A, cubes, {"x": "s1^2", "y": "s2^2"})
    assert induced_map(squares).kernel().dim == kaehler(A).kdim
    fifths, *_ = product(truncated_poly(F2, 5, "s1"), truncated_poly(F2, 5, "s2"))
    g = make_hom(A, fifths, {"x": "s1^3", "y": "s2^3"})
    br = tau_bracket(A, [g])
    assert br.certified_equal and br.upper.dim == comb(3, 2)


def test_cube_truncation_socle_forms():
    for m, v in ((2, 2), (3, 8)):
        A = quotient_presentation(Q, m, 3, [])
        assert tau_lower_socle(A).dim == v == 2 * comb(m + 1, 3)


@pytest.mark.parametrize("m", range(1, 7))
def test_binomial_expressions_agree(m):
    a, b, c = binomial_identity(m)
    assert a == b == c


def test_euler_form_dies_in_the_normalisation():
    B = truncated_poly(Q, 6)
    A, inc = subalgebra_generated(B, ["s^2", "s^3"], ["x", "y"])
    w = euler_differential(A, {"x": 2, "y": 3}, "x", "y")
    assert any(w)
    assert not any(induced_map(inc).apply(w))
    # x^3 = y^2 once s^6 survives, so equal degrees are inconsistent
    A7, _ = subalgebra_generated(truncated_poly(Q, 7), ["s^2", "s^3"], ["x", "y"])
    with pytest.raises(TorsionError):
        euler_differential(A7, {"x": 1, "y": 1}, "x", "y")


def test_valuations():
    B = truncated_poly(Q, 8)
    A, inc = subalgebra_generated(B, ["s^2", "s^3"], ["x", "y"])
    assert valuation(inc, "x") == 2
    assert valuation(inc, "x*y") == 5
    assert valuation(inc, "0") == math.inf
    assert valuation_profile(inc)["1"] == 0


def test_multiplicity_bound():
    B = truncated_poly(Q, 12)
    A, inc = subalgebra_generated(B, ["s^4", "s^5", "s^6", "s^7"])
    r = guettes_check(inc)
    assert (r["e"], r["m"], r["prediction"]) == (4, 4, True)
    assert r["observed_kernel_dim"] > 0


def test_witnesses():
    K = quotient_presentation(Q, ["x", "y"], 3, ["x^2", "y^2"])
    x, y = nonembeddable_witness(K)
    assert any(K.mul(x, y)) and not any(K.mul(x, x))
    assert nonembeddable_witness(quotient_presentation(Q, ["x", "y"], 2, [])) is None
    assert nonembeddable_witness(truncated_poly(Q, 4)) is None
    wit = m3_witness(quotient_presentation(Q, ["x", "y"], 3, []))
    assert any(wit.form) and wit.status == "certified"
    with pytest.raises(TorsionError):
        m3_witness(truncated_poly(Q, 3))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([Q, F2, F3, F5]))
def test_upper_bound_lies_in_every_kernel(seed, field):
    rng = random.Random(seed)
    B = random_tame_pia(rng, field)
    gens = [v for v in B.nilradical.basis if rng.random() < 0.5] or [B.nilradical.basis[-1]]
    A, inc = subalgebra_generated(B, gens)
    up = tau_upper(A, [inc])
    f = induced_map(inc)
    assert all(not any(f.apply(v)) for v in up.basis)
    assert up.contains(tau_bracket(A, [inc]).lower)
