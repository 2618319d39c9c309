import json

import pytest

from artinian_forms.corpus import (
    ORIGINS,
    CorpusError,
    case_ids,
    load_cases,
    parse_case,
    run_case,
    run_corpus,
)

MANIFEST = [
    "a-m-family", "a-m-family-F3", "a3-kernels", "cube-zero-witness", "double-relative",
    "eta-F2", "eta-F3", "eta-Q", "euler", "guettes", "hc1", "hh1-iso-F2", "hh1-iso-Q",
    "mayer-vietoris", "porism", "rel-line-F2", "rel-line-Q", "rel-presentation",
    "rel-socle", "rel-square-zero", "rel-square-zero-F2", "seminormal", "socle-cube",
    "square-zero-F2", "square-zero-Q", "surjectivity", "tame-def-F2", "tame-def-F3",
    "tame-def-Q", "valuation", "wild-a-F5", "wild-a-Q", "wild-b-F2", "wild-pia-F2",
    "wild-pia-F5",
]


def test_manifest():
    assert sorted(case_ids()) == sorted(MANIFEST)


def test_every_case_has_sourced_expectations():
    for case in load_cases():
        assert case.expectations, case.id
        for e in case.expectations:
            assert e.origin in ORIGINS
            assert e.origin == "trivial" or e.where


@pytest.mark.parametrize("case", load_cases(), ids=lambda c: c.id)
def test_case_passes(case):
    rep = run_case(case)
    bad = [(o.expectation.path, o.expectation.expected, o.actual)
           for o in rep.outcomes if not o.ok]
    assert not rep.diagnostics, rep.diagnostics
    assert not bad


def test_expect_lines_keep_line_numbers():
    text = "field Q\nexpect o.dim = 2 | trivial |\nA = trunc(s, 3)\no: omega A\n"
    case = parse_case("t", text)
    assert case.script.splitlines()[1] == ""
    assert run_case(case).result.record("o").line == 4


@pytest.mark.parametrize("line", [
    "expect o.dim = 2",
    "expect o.dim 2 | stated | x",
    "expect o.dim = 2 | guessed | x",
    "expect o.dim = 2 | stated |",
    "expect o.dim = [1, | derived | x",
])
def test_malformed_expectations(line):
    with pytest.raises(CorpusError):
        parse_case("t", f"field Q\n{line}\n")


def test_mismatch_is_reported():
    case = parse_case("t", "field Q\nA = trunc(s, 3)\no: omega A\n"
                           "expect o.dim = 5 | derived | deliberately wrong\n"
                           "expect o.nope = 1 | trivial |\n")
    rep = run_case(case)
    assert not rep.ok
    assert [o.actual for o in rep.outcomes][0] == 2
    assert rep.as_dict()["expectations"][1]["actual"] is None


def test_glob_and_report_formats():
    rep = run_corpus("eta-*")
    assert [c.id for c in rep.cases] == ["eta-F2", "eta-F3", "eta-Q"]
    assert rep.ok and rep.exit_code == 0 and rep.mismatches == 0
    doc = json.loads(rep.to_json())
    assert doc["version"] == 1 and len(doc["cases"]) == 3
    assert rep.to_text().splitlines()[-1].endswith("0 mismatches")
