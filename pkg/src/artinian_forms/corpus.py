"""Worked-example fixtures and the runner that checks them.

A fixture is a script plus ``expect`` lines:

    expect k.dim = 0 | stated | wild example (a): Omega_A injects into Omega_B

The left side is ``label.key`` (further ``.key`` or ``.index`` steps walk
into nested payloads), the value is JSON, then the origin of the number
(``stated``, ``derived`` or ``trivial``) and where it comes from.
"""

import fnmatch
import json
import time
from dataclasses import dataclass, field
from importlib import resources

from .dsl import Diagnostic, run

ORIGINS = ("stated", "derived", "trivial")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Expectation:
    path: str
    expected: object
    origin: str
    where: str
    line: int


@dataclass(frozen=True)
class CorpusCase:
    id: str
    script: str
    expectations: tuple


def parse_case(case_id, text):
    """Split fixture text into the script and its expectations."""
    script_lines = []
    expectations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.strip()
        if not body.startswith("expect "):
            script_lines.append(raw)
            continue
        script_lines.append("")
        parts = body[len("expect "):].rsplit("|", 2)
        if len(parts) != 3:
            raise CorpusError(f"{case_id}:{lineno}: expected 'expect path = value | origin | where'")
        lhs, origin, where = (p.strip() for p in parts)
        path, eq, value = lhs.partition("=")
        if not eq:
            raise CorpusError(f"{case_id}:{lineno}: missing '='")
        if origin not in ORIGINS:
            raise CorpusError(f"{case_id}:{lineno}: origin must be one of {ORIGINS}")
        if origin != "trivial" and not where:
            raise CorpusError(f"{case_id}:{lineno}: a {origin} value needs a source note")
        try:
            expected = json.loads(value.strip())
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{case_id}:{lineno}: bad JSON value: {exc}") from None
        expectations.append(Expectation(path.strip(), expected, origin, where, lineno))
    return CorpusCase(case_id, "\n".join(script_lines) + "\n", tuple(expectations))


def _fixture_files():
    root = resources.files(__package__) / "corpus"
    return sorted((p for p in root.iterdir() if p.name.endswith(".alg")), key=lambda p: p.name)


def load_cases():
    return [parse_case(p.name[:-4], p.read_text(encoding="utf-8")) for p in _fixture_files()]


def case_ids():
    return [p.name[:-4] for p in _fixture_files()]


_MISSING = object()


def lookup(result, path):
    label, _, rest = path.partition(".")
    try:
        node = result.record(label).payload
    except KeyError:
        return _MISSING
    for step in rest.split(".") if rest else ():
        if isinstance(node, list) and step.isdigit() and int(step) < len(node):
            node = node[int(step)]
        elif isinstance(node, dict) and step in node:
            node = node[step]
        else:
            return _MISSING
    return node


@dataclass
class Outcome:
    expectation: Expectation
    actual: object
    ok: bool

    def as_dict(self):
        e = self.expectation
        return {"path": e.path, "expected": e.expected,
                "actual": None if self.actual is _MISSING else self.actual,
                "ok": self.ok, "origin": e.origin, "where": e.where}


@dataclass
class CaseReport:
    id: str
    outcomes: list
    diagnostics: list
    seconds: float
    result: object = None

    @property
    def ok(self):
        return not self.diagnostics and all(o.ok for o in self.outcomes)

    def as_dict(self):
        return {"id": self.id, "ok": self.ok,
                "expectations": [o.as_dict() for o in self.outcomes],
                "diagnostics": [d.as_dict() for d in self.diagnostics]}


@dataclass
class CorpusReport:
    cases: list
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.cases)

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    @property
    def mismatches(self):
        return sum(1 for c in self.cases for o in c.outcomes if not o.ok) + \
            sum(len(c.diagnostics) for c in self.cases)

    def as_dict(self):
        return {"version": 1, "ok": self.ok, "warnings": list(self.warnings),
                "cases": [c.as_dict() for c in self.cases]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self):
        lines = [f"warning: {w}" for w in self.warnings]
        for c in self.cases:
            passed = sum(o.ok for o in c.outcomes)
            lines.append(f"{'PASS' if c.ok else 'FAIL'} {c.id} ({passed}/{len(c.outcomes)})")
            for o in c.outcomes:
                if not o.ok:
                    got = "missing" if o.actual is _MISSING else json.dumps(o.actual)
                    lines.append(f"    {o.expectation.path}: expected "
                                 f"{json.dumps(o.expectation.expected)}, got {got}")
            for d in c.diagnostics:
                lines.append(f"    error: {d}")
        total = sum(len(c.outcomes) for c in self.cases)
        lines.append(f"{len(self.cases)} cases, {total} expectations, "
                     f"{self.mismatches} mismatches")
        return "\n".join(lines) + "\n"


def run_case(case, max_dim=None):
    t0 = time.perf_counter()
    result = run(case.script, max_dim=max_dim)
    outcomes = []
    for e in case.expectations:
        actual = lookup(result, e.path)
        outcomes.append(Outcome(e, actual, actual is not _MISSING and actual == e.expected))
    diags = list(result.diagnostics)
    return CaseReport(case.id, outcomes, diags, time.perf_counter() - t0, result)


def run_corpus(pattern=None, max_dim=None):
    """Run every case whose id matches the glob ``pattern`` (all if None)."""
    cases = load_cases()
    warnings = []
    if pattern:
        cases = [c for c in cases if fnmatch.fnmatchcase(c.id, pattern)]
        if not cases:
            warnings.append(f"no corpus case matches {pattern!r}")
    reports = [run_case(c, max_dim) for c in sorted(cases, key=lambda c: c.id)]
    return CorpusReport(reports, warnings)


__all__ = ["CorpusCase", "CorpusError", "CorpusReport", "Diagnostic", "Expectation",
           "case_ids", "load_cases", "lookup", "parse_case", "run_case", "run_corpus"]
