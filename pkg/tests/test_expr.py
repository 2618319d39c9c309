from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from artinian_forms.expr import (
    Add, Call, Div, ExprError, Mul, Neg, Num, Pow, Sub, Var,
    monomial_label, parse, parse_poly, render,
)


def test_precedence():
    t = parse("1 + 2*x^3")
    assert t == Add(Num(Fraction(1)), Mul(Num(Fraction(2)), Pow(Var("x"), 3)))
    assert parse("-x^2") == Neg(Pow(Var("x"), 2))
    assert parse("a - b - c") == Sub(Sub(Var("a"), Var("b")), Var("c"))


def test_calls_and_fractions():
    t = parse("y*d(x) + 1/2")
    assert isinstance(t.left.right, Call) and t.left.right.name == "d"
    assert parse("3/4") == Div(Num(Fraction(3)), Num(Fraction(4)))


@pytest.mark.parametrize("bad, pos", [("x+*y", 2), ("(x", 2), ("x^y", 2), ("2 3", 2)])
def test_errors_have_positions(bad, pos):
    with pytest.raises(ExprError) as ei:
        parse(bad)
    assert ei.value.pos == pos


def test_poly_expansion():
    assert parse_poly("(x+y)^2 - x^2", ["x", "y"]) == {(1, 1): 2, (0, 2): 1}
    assert parse_poly("x - x", ["x"]) == {}
    with pytest.raises(ExprError):
        parse_poly("z", ["x"])


def test_monomial_label():
    assert monomial_label(["x", "y"], (2, 1)) == "x^2*y"
    assert monomial_label(["x", "y"], (0, 0)) == "1"


names = st.sampled_from(["x", "y", "s1"])
leaves = st.one_of(names.map(Var),
                   st.fractions(min_value=0, max_value=9, max_denominator=3).map(Num))


def _extend(children):
    binary = st.sampled_from([Add, Sub, Mul, Div])
    return st.one_of(
        st.builds(lambda op, a, b: op(a, b), binary, children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(1, 4)),
        st.builds(lambda a: Call("d", (a,)), children),
    )


trees = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_render_is_a_fixed_point(t):
    text = render(t)
    again = render(parse(text))
    assert again == text
    assert render(parse(again)) == again
