import json

import pytest
from hypothesis import given, settings, strategies as st

from artinian_forms import dsl
from artinian_forms.corpus import load_cases

BASIC = """\
field F5
B = trunc(s, 5)
A = subalg(B; s^2, s^3)
f = include(A, B)
o: omega A
k: kernel f
p: push f 2*x*dx
"""


def test_basic_run():
    res = dsl.run(BASIC)
    assert res.ok and res.field == "F5"
    assert res.record("o").payload["dim"] == 4
    assert res.record("k").payload["dim"] == 0
    assert res.record("p").payload["value"] == "4*s^3*ds"
    assert res.record("o").line == 5


def test_unlabelled_query_is_named_by_its_text():
    res = dsl.run("field Q\nA = trunc(s, 3)\nomega A\n")
    assert res.record("omega A").payload["dim"] == 2


@pytest.mark.parametrize("text, line, col, needle", [
    ("A = trunc(s, 3)\n", 1, 1, "field"),
    ("field Q\nfield F2\n", 2, 1, "duplicate"),
    ("field F4\n", 1, 7, "prime"),
    ("field Q\nomega A\n", 2, 7, "unknown"),
    ("field Q\nA = trunc(s, 3)\nA = trunc(t, 2)\n", 3, 1, "already bound"),
    ("field Q\nA = trunc(s, 3)\nx: omega A\nx: dim A\n", 4, 1, "already used"),
    ("field Q\nA = trunc(s)\n", 2, 11, None),
    ("field Q\nA = trunc(s, 3)\n  f = bogus(A)\n", 3, 7, "bogus"),
    ("field Q\nA = trunc(s, 3)\nfrobnicate A\n", 3, 1, None),
])
def test_parse_diagnostics(text, line, col, needle):
    res = dsl.run(text)
    assert not res.ok and res.exit_code == 1
    d = res.diagnostics[0]
    assert (d.line, d.column) == (line, col)
    if needle:
        assert needle in d.message


def test_all_parse_errors_are_collected():
    with pytest.raises(dsl.ScriptError) as ei:
        dsl.parse("field Q\nomega A\ndim B\n")
    assert [d.line for d in ei.value.diagnostics] == [2, 3]


def test_evaluation_errors_do_not_stop_the_run():
    text = "field Q\nA = trunc(s, 3)\nB = trunc(t, 2)\nf = hom(A, B; s=1+t)\no: omega B\n"
    res = dsl.run(text)
    assert res.diagnostics and res.diagnostics[0].line == 4
    assert res.record("o").payload["dim"] == 1


def test_json_shape_and_determinism():
    a, b = dsl.run(BASIC).to_json(), dsl.run(BASIC).to_json()
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["version", "field", "results", "diagnostics"]
    assert doc["version"] == 1
    assert set(doc["results"][0]) == {"name", "kind", "payload", "summary", "line"}


def test_infinite_valuation_serialises():
    text = "field Q\nB = trunc(s, 4)\nA = subalg(B; s^2)\nf = include(A, B)\nv: valuation f 0\n"
    doc = json.loads(dsl.run(text).to_json())
    assert doc["results"][0]["payload"]["value"] == "inf"


def test_text_output():
    out = dsl.run(BASIC).to_text()
    assert out.splitlines()[0].startswith("o: ")


@pytest.mark.parametrize("case", load_cases(), ids=lambda c: c.id)
def test_corpus_scripts_round_trip(case):
    s = dsl.parse(case.script)
    text = dsl.render(s)
    assert dsl.parse(text) == s
    assert dsl.render(dsl.parse(text)) == text


spaces = st.text(" ", max_size=2)


@settings(max_examples=80, deadline=None)
@given(spaces, spaces, spaces, st.integers(2, 7), st.sampled_from(["s", "t", "u1"]))
def test_whitespace_does_not_change_meaning(a, b, c, n, var):
    text = f"field Q\nA{a}={b}trunc({var},{c}{n})\no:{a}omega{b} A\n"
    canon = f"field Q\nA = trunc({var}, {n})\no: omega A\n"
    assert dsl.render(dsl.parse(text)) == canon
    assert dsl.run(text).record("o").payload == dsl.run(canon).record("o").payload


def test_bindings_are_exposed():
    res = dsl.run(BASIC)
    assert set(res.bindings) >= {"A", "B", "f"}
    assert res.bindings["A"].dim == 4


def test_max_dim_caps_hochschild():
    text = "field Q\nA = trunc(s, 6)\nh: hh A deg 2\n"
    assert dsl.run(text).ok
    res = dsl.run(text, max_dim=50)
    assert not res.ok and "cap" in res.diagnostics[0].message
