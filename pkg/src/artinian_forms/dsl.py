"""A line-oriented script language for algebras, maps and queries.

    field F5
    B = trunc(s, 29)
    A = present(x; 6; x^5)
    f = hom(A, B; x=s^6)
    k: kernel f

One statement per line, ``#`` starts a comment.  ``parse`` turns text into
a ``Script`` (or raises ``ScriptError`` carrying every diagnostic),
``render`` prints a script back in canonical form, and ``run`` evaluates
it into ``ResultRecord`` objects plus diagnostics.
"""

import json
import math
import re
from dataclasses import dataclass, field as dc_field, fields, is_dataclass

from . import expr as E
from .algebra import (
    Algebra,
    AlgebraError,
    ElementBackend,
    Hom,
    Ideal,
    embedding_dim,
    identity_hom,
    ideal_generated,
    is_pia,
    is_tame_pia,
    local_decomposition,
    make_hom,
    product,
    quotient_by_ideal,
    quotient_presentation,
    radical,
    socle,
    subalgebra_generated,
    truncated_poly,
)
from .differentials import (
    DifferentialsError,
    OmegaBackend,
    h0_dr,
    hc1,
    hc1_integration_check,
    induced_map,
    kaehler,
    mayer_vietoris_check,
    relative_omega,
)
from .hochschild import (
    HochschildError,
    _digits,
    double_relative_hh0,
    eta_element,
    hh,
    hh1_omega_check,
    hh1_rel_presentation_check,
    hh1_relative_by_presentation,
    hh2_generator_check,
    hh_relative,
    les_check,
    surjectivity_check,
)
from .linalg import Field, LinalgError
from .torsion import (
    TorsionError,
    euler_differential,
    guettes_check,
    m3_witness,
    nonembeddable_witness,
    seminormal_kernel,
    tau_bracket,
    tau_lower_pairs,
    tau_lower_socle,
    tau_upper,
    valuation,
    valuation_profile,
)

SCHEMA_VERSION = 1


class ScriptError(ValueError):
    """Raised by ``parse``; ``diagnostics`` lists every problem found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0]
        super().__init__(f"line {first.line}, column {first.column}: {first.message}")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def as_dict(self):
        return {"line": self.line, "column": self.column, "message": self.message}

    def __str__(self):
        return f"line {self.line}, column {self.column}: {self.message}"


# --------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class Item:
    """One constructor argument: ``key=value`` or a bare value."""

    key: object
    value: object


@dataclass(frozen=True)
class Ctor:
    name: str
    sections: tuple


@dataclass(frozen=True)
class FieldDecl:
    name: str
    line: int = dc_field(default=0, compare=False)
    column: int = dc_field(default=1, compare=False)


@dataclass(frozen=True)
class Binding:
    name: str
    ctor: Ctor
    line: int = dc_field(default=0, compare=False)
    column: int = dc_field(default=1, compare=False)


@dataclass(frozen=True)
class Query:
    label: object
    kind: str
    args: tuple
    line: int = dc_field(default=0, compare=False)
    column: int = dc_field(default=1, compare=False)

    def arg(self, key, default=None):
        for k, v in self.args:
            if k == key:
                return v
        return default


@dataclass(frozen=True)
class Script:
    field: object
    statements: tuple


class _Fail(Exception):
    def __init__(self, message, column):
        super().__init__(message)
        self.column = column


_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_BINDING = re.compile(rf"^({_IDENT})\s*=\s*(?!=)")
_LABEL = re.compile(r"^([A-Za-z_][A-Za-z0-9_\-]*)\s*:\s*")


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def _split_top(text, sep, base):
    """Split at ``sep`` outside parentheses; yields (piece, offset)."""
    depth = 0
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise _Fail("unbalanced ')'", base + i)
        elif ch == sep and depth == 0:
            out.append((text[start:i], base + start))
            start = i + 1
    if depth:
        raise _Fail("unbalanced '('", base + len(text))
    out.append((text[start:], base + start))
    return out


def _parse_expr(text, offset):
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    if not stripped:
        raise _Fail("empty expression", offset)
    try:
        return E.parse(stripped)
    except E.ExprError as exc:
        raise _Fail(str(exc), offset + lead + (exc.pos or 0))


# -- constructors -----------------------------------------------------------

# Per constructor: a tuple of section kinds.
#   names   - one or more binding names      name  - exactly one binding name
#   name2   - two binding names              var_int - (variable, integer)
#   name_int - (binding name, integer)       int   - one integer
#   vars    - variable names                 exprs / exprs? - expressions
#   items   - expressions with optional key=  assigns - key=expression list
CTORS = {
    "trunc": ("var_int",),
    "product": ("names",),
    "present": ("vars", "int", "exprs?"),
    "subalg": ("name", "items"),
    "quot": ("name", "exprs"),
    "hom": ("name2", "assigns"),
    "include": ("name2",),
    "proj": ("name_int",),
    "surj": ("name",),
    "compose": ("name2",),
    "id": ("name",),
    "ideal": ("name", "exprs"),
    "maxideal": ("name",),
    "radical": ("name",),
    "socle": ("name",),
}


def _ident(text, offset, what="name"):
    s = text.strip()
    if not re.fullmatch(_IDENT, s):
        raise _Fail(f"expected a {what}, got {s!r}", offset + len(text) - len(text.lstrip()))
    return s


def _int(text, offset):
    s = text.strip()
    if not s.isdigit():
        raise _Fail(f"expected an integer, got {s!r}", offset + len(text) - len(text.lstrip()))
    return int(s)


def _items(text, offset, keyed):
    out = []
    if not text.strip():
        return out
    for piece, off in _split_top(text, ",", offset):
        m = re.match(rf"^\s*({_IDENT})\s*=(?!=)", piece)
        if m:
            out.append(Item(m.group(1), _parse_expr(piece[m.end():], off + m.end())))
        elif keyed:
            raise _Fail("expected name=expression", off)
        else:
            out.append(Item(None, _parse_expr(piece, off)))
    return out


def _parse_ctor(text, offset, known):
    m = re.match(rf"^\s*({_IDENT})\s*\(", text)
    if not m or not text.rstrip().endswith(")"):
        raise _Fail("expected a constructor call such as trunc(s, 4)", offset)
    name = m.group(1)
    if name not in CTORS:
        raise _Fail(f"unknown constructor {name!r}", offset + m.start(1))
    body_start = m.end()
    body = text[body_start:len(text.rstrip()) - 1]
    base = offset + body_start
    spec = CTORS[name]
    pieces = _split_top(body, ";", base)
    if len(pieces) == len(spec) - 1 and spec[-1].endswith("?"):
        pieces.append(("", base + len(body)))
    if len(pieces) != len(spec):
        raise _Fail(f"{name} takes {len(spec)} ';'-separated sections, got {len(pieces)}", offset)
    sections = []
    for kind, (piece, off) in zip(spec, pieces):
        parts = _split_top(piece, ",", off) if piece.strip() else []

        def ref(t, o):
            nm = _ident(t, o)
            if nm not in known:
                raise _Fail(f"unknown identifier {nm!r}", o + len(t) - len(t.lstrip()))
            return nm

        if kind in ("name", "names", "name2"):
            want = {"name": 1, "name2": 2}.get(kind)
            if (want and len(parts) != want) or not parts:
                raise _Fail(f"{name} expects {want or 'at least one'} name(s), got {len(parts)}", off)
            sections.append(tuple(Item(None, ref(t, o)) for t, o in parts))
        elif kind in ("var_int", "name_int"):
            if len(parts) != 2:
                raise _Fail(f"{name} expects 2 arguments, got {len(parts)}", off)
            first = _ident(*parts[0], what="variable") if kind == "var_int" else ref(*parts[0])
            sections.append((Item(None, first), Item(None, _int(*parts[1]))))
        elif kind == "int":
            if len(parts) != 1:
                raise _Fail(f"{name} expects one integer here", off)
            sections.append((Item(None, _int(*parts[0])),))
        elif kind == "vars":
            if not parts:
                raise _Fail("need at least one variable", off)
            vs = [_ident(t, o, "variable") for t, o in parts]
            if len(set(vs)) != len(vs):
                raise _Fail("repeated variable name", off)
            sections.append(tuple(Item(None, v) for v in vs))
        else:
            items = _items(piece, off, keyed=(kind == "assigns"))
            if not items and not kind.endswith("?"):
                raise _Fail(f"{name} needs at least one expression", off)
            if kind in ("exprs", "exprs?") and any(it.key for it in items):
                raise _Fail("unexpected name= here", off)
            sections.append(tuple(items))
    return Ctor(name, tuple(sections))


# -- queries ----------------------------------------------------------------

_QUERY_SHAPES = {
    "omega": "N", "dim": "N", "kernel": "N", "hc1": "N", "h0dr": "N",
    "relomega": "N", "pia": "N", "tame": "N", "embdim": "N", "decompose": "N",
    "vsocle": "N", "witness": "N", "guettes": "N", "m3": "N", "valprofile": "N",
    "hh": "N deg I", "hh_rel": "N N deg I", "hh1_pres": "N N", "hh0_double": "N N",
    "eta": "I I", "hh2gen": "I", "seminormal": "I+", "valuation": "N E",
    "print": "N E", "push": "N E", "inker": "N E",
}
_CHECK_SHAPES = {
    "mv": "N N", "hc1seq": "N", "presentation": "N N N", "les": "N N",
    "surj": "N N", "hh1iso": "N",
}
_SPECIAL = {"tau_bracket", "tau_lower", "tau_upper", "euler", "check"}
QUERY_KINDS = sorted(set(_QUERY_SHAPES) | _SPECIAL)


class _Cursor:
    def __init__(self, text, offset, known):
        self.text = text
        self.pos = 0
        self.offset = offset
        self.known = known

    @property
    def col(self):
        return self.offset + self.pos

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def done(self):
        self.skip()
        return self.pos >= len(self.text)

    def word(self, what="name"):
        self.skip()
        m = re.compile(_IDENT).match(self.text, self.pos)
        if not m:
            got = self.text[self.pos:].split()[0] if not self.done() else "end of line"
            raise _Fail(f"expected a {what}, got {got!r}", self.col)
        self.pos = m.end()
        return m.group(0)

    def peek_word(self):
        self.skip()
        m = re.compile(_IDENT).match(self.text, self.pos)
        return m.group(0) if m else None

    def ref(self):
        col = (self.skip(), self.col)[1]
        nm = self.word()
        if nm not in self.known:
            raise _Fail(f"unknown identifier {nm!r}", col)
        return nm

    def integer(self):
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise _Fail("expected an integer", self.col)
        self.pos = m.end()
        return int(m.group(0))

    def keyword(self, kw):
        col = (self.skip(), self.col)[1]
        if self.word(repr(kw)) != kw:
            raise _Fail(f"expected {kw!r}", col)

    def punct(self, ch):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            raise _Fail(f"expected {ch!r}", self.col)
        self.pos += 1

    def at(self, ch):
        self.skip()
        return self.text.startswith(ch, self.pos)

    def rest_expr(self):
        self.skip()
        start = self.col
        text = self.text[self.pos:]
        self.pos = len(self.text)
        return _parse_expr(text, start)

    def group(self):
        """``(e1, e2)``."""
        self.skip()
        if not self.at("("):
            raise _Fail("expected '('", self.col)
        depth = 0
        for i in range(self.pos, len(self.text)):
            if self.text[i] == "(":
                depth += 1
            elif self.text[i] == ")":
                depth -= 1
                if depth == 0:
                    inner = self.text[self.pos + 1:i]
                    base = self.col + 1
                    self.pos = i + 1
                    parts = _split_top(inner, ",", base)
                    if len(parts) != 2:
                        raise _Fail("expected a pair (x, y)", base - 1)
                    return tuple(_parse_expr(t, o) for t, o in parts)
        raise _Fail("unbalanced '('", self.col)

    def ref_list(self):
        out = [self.ref()]
        while self.at(","):
            self.punct(",")
            out.append(self.ref())
        return tuple(out)


def _shape(cur, shape):
    args = []
    for tok in shape.split():
        if tok == "N":
            args.append(cur.ref())
        elif tok == "I":
            args.append(cur.integer())
        elif tok == "I+":
            xs = [cur.integer()]
            while cur.at(","):
                cur.punct(",")
                xs.append(cur.integer())
            args.append(tuple(xs))
        elif tok == "E":
            args.append(cur.rest_expr())
        else:
            cur.keyword(tok)
    return tuple(("arg", a) for a in args)


def _parse_query(text, offset, known):
    cur = _Cursor(text, offset, known)
    col = (cur.skip(), cur.col)[1]
    kind = cur.word("query")
    if kind not in _QUERY_SHAPES and kind not in _SPECIAL:
        raise _Fail(f"unknown statement {kind!r}", col)
    if kind in _QUERY_SHAPES:
        args = _shape(cur, _QUERY_SHAPES[kind])
    elif kind == "check":
        col2 = (cur.skip(), cur.col)[1]
        sub = cur.word("check name")
        if sub not in _CHECK_SHAPES:
            raise _Fail(f"unknown check {sub!r}", col2)
        kind = f"check {sub}"
        args = _shape(cur, _CHECK_SHAPES[sub])
    elif kind == "euler":
        args = [("algebra", cur.ref())]
        cur.keyword("grading")
        grading = []
        while True:
            v = cur.word("variable")
            cur.punct("=")
            grading.append((v, cur.integer()))
            if not cur.at(","):
                break
            cur.punct(",")
        args.append(("grading", tuple(grading)))
        cur.keyword("at")
        args.append(("at", cur.group()))
        if cur.peek_word() == "check":
            cur.word()
            args.append(("check", cur.ref()))
        args = tuple(args)
    else:
        args = [("algebra", cur.ref())]
        allowed = {"tau_bracket": ("using", "pairs"), "tau_lower": ("pairs",),
                   "tau_upper": ("using",)}[kind]
        seen = set()
        while not cur.done():
            col2 = cur.col
            kw = cur.word("keyword")
            if kw not in allowed or kw in seen:
                raise _Fail(f"unexpected {kw!r}", col2)
            seen.add(kw)
            if kw == "using":
                args.append(("using", cur.ref_list()))
            else:
                pairs = [cur.group()]
                while cur.at("("):
                    pairs.append(cur.group())
                args.append(("pairs", tuple(pairs)))
        if kind == "tau_upper" and "using" not in seen:
            raise _Fail("tau_upper needs 'using f, ...'", cur.col)
        order = {"algebra": 0, "using": 1, "pairs": 2}
        args = tuple(sorted(args, key=lambda kv: order[kv[0]]))
    if not cur.done():
        raise _Fail(f"unexpected trailing text {cur.text[cur.pos:].strip()!r}", cur.col)
    return kind, args


def _parse_field(rest, offset):
    toks = rest.split()
    if len(toks) == 2 and toks[0] == "Fp" and toks[1].isdigit():
        name = f"F{toks[1]}"
    elif len(toks) == 1:
        name = toks[0]
    else:
        raise _Fail("expected 'field Q', 'field F<p>' or 'field Fp <p>'", offset)
    try:
        return Field.parse(name)
    except LinalgError as exc:
        raise _Fail(str(exc), offset)


def parse(text):
    """Parse script text; raises ``ScriptError`` with all diagnostics."""
    diags = []
    statements = []
    field = None
    known = set()
    labels = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        col0 = indent + 1
        try:
            if body == "field" or body.startswith("field "):
                if field is not None:
                    raise _Fail("duplicate field declaration", col0)
                if statements:
                    raise _Fail("the field declaration must come first", col0)
                field = _parse_field(body[5:], col0 + 6)
                statements.append(FieldDecl(field.name, lineno, col0))
                continue
            if field is None:
                raise _Fail("the script must start with a field declaration", col0)
            m = _BINDING.match(body)
            if m:
                name = m.group(1)
                if name in known:
                    raise _Fail(f"name {name!r} is already bound", col0)
                ctor = _parse_ctor(body[m.end():], col0 + m.end(), known)
                statements.append(Binding(name, ctor, lineno, col0))
                known.add(name)
                continue
            label = None
            m = _LABEL.match(body)
            start = 0
            if m:
                label = m.group(1)
                if label in labels:
                    raise _Fail(f"label {label!r} is already used", col0)
                start = m.end()
            kind, args = _parse_query(body[start:], col0 + start, known)
            if label:
                labels.add(label)
            statements.append(Query(label, kind, args, lineno, col0))
        except _Fail as exc:
            diags.append(Diagnostic(lineno, exc.column, str(exc)))
    if field is None and not diags:
        diags.append(Diagnostic(1, 1, "missing field declaration"))
    if diags:
        raise ScriptError(diags)
    return Script(field, tuple(statements))


# --------------------------------------------------------------------------
# rendering

def _render_item(it):
    if isinstance(it.value, (str, int)):
        val = str(it.value)
    else:
        val = E.render(it.value)
    return f"{it.key}={val}" if it.key else val


def render_ctor(c):
    return f"{c.name}({'; '.join(', '.join(_render_item(i) for i in s) for s in c.sections)})"


def _render_pair(p):
    return f"({E.render(p[0])}, {E.render(p[1])})"


def render_query(q):
    kind = q.kind
    parts = [kind]
    if kind.startswith("check ") or kind in _QUERY_SHAPES:
        shape = _CHECK_SHAPES[kind[6:]] if kind.startswith("check ") else _QUERY_SHAPES[kind]
        vals = iter(v for _, v in q.args)
        for tok in shape.split():
            if tok in ("N", "I"):
                parts.append(str(next(vals)))
            elif tok == "I+":
                parts.append(", ".join(str(x) for x in next(vals)))
            elif tok == "E":
                parts.append(E.render(next(vals)))
            else:
                parts.append(tok)
    elif kind == "euler":
        parts.append(q.arg("algebra"))
        parts.append("grading " + ", ".join(f"{v}={d}" for v, d in q.arg("grading")))
        parts.append("at " + _render_pair(q.arg("at")))
        if q.arg("check"):
            parts.append("check " + q.arg("check"))
    else:
        parts.append(q.arg("algebra"))
        if q.arg("using"):
            parts.append("using " + ", ".join(q.arg("using")))
        if q.arg("pairs"):
            parts.append("pairs " + " ".join(_render_pair(p) for p in q.arg("pairs")))
    text = " ".join(parts)
    return f"{q.label}: {text}" if q.label else text


def render_statement(st):
    if isinstance(st, FieldDecl):
        return f"field {st.name}"
    if isinstance(st, Binding):
        return f"{st.name} = {render_ctor(st.ctor)}"
    return render_query(st)


def render(script):
    """Canonical text; ``parse(render(s)) == s`` for any parsed script."""
    return "".join(render_statement(st) + "\n" for st in script.statements)


# --------------------------------------------------------------------------
# evaluation

@dataclass
class ResultRecord:
    name: str
    kind: str
    payload: dict
    summary: str
    line: int

    def as_dict(self):
        return {"name": self.name, "kind": self.kind, "payload": self.payload,
                "summary": self.summary, "line": self.line}


@dataclass
class RunResult:
    field: str
    results: list
    diagnostics: list
    bindings: dict = dc_field(default_factory=dict, repr=False)

    @property
    def ok(self):
        return not self.diagnostics

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    def record(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self):
        return {
            "version": SCHEMA_VERSION,
            "field": self.field,
            "results": [r.as_dict() for r in self.results],
            "diagnostics": [d.as_dict() for d in self.diagnostics],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self):
        lines = [f"{r.name}: {r.summary}" for r in self.results]
        lines += [f"error: {d}" for d in self.diagnostics]
        return "\n".join(lines) + ("\n" if lines else "")


_ERRORS = (AlgebraError, DifferentialsError, TorsionError, HochschildError,
           LinalgError, E.ExprError, ZeroDivisionError)

_DEFAULT_GEN_NAMES = ["x", "y", "z", "w", "u", "v"]


def _json_scalar(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return "inf" if math.isinf(v) else str(v)
    if isinstance(v, dict):
        return {str(k): _json_scalar(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_scalar(x) for x in v]
    return str(v)


class Evaluator:
    """Evaluates the statements of one script; no state shared between scripts."""

    def __init__(self, script, max_dim=None):
        self.script = script
        self.field = script.field
        self.max_dim = max_dim
        self.env = {}
        self.inclusions = {}
        self.projections = {}
        self.surjections = {}
        self.results = []
        self.diagnostics = []

    # -- helpers ---------------------------------------------------------
    def get(self, name, *types):
        if name not in self.env:
            raise AlgebraError(f"{name!r} is undefined (its definition failed)")
        v = self.env[name]
        if types and not isinstance(v, types):
            want = " or ".join(t.__name__.lower() for t in types)
            raise AlgebraError(f"{name!r} is not a {want}")
        return v

    def elem(self, a, node):
        if isinstance(node, str):
            node = E.parse(node)
        return E.evaluate(node, ElementBackend(a))

    def ideal_of(self, a, name):
        v = self.get(name, Ideal, Algebra)
        if isinstance(v, Algebra):
            raise AlgebraError(f"{name!r} is an algebra, expected an ideal")
        if v.algebra is not a:
            raise AlgebraError(f"ideal {name!r} lives in a different algebra")
        return v

    def forms(self, a, space):
        w = kaehler(a)
        return [w.format(v) for v in space.basis]

    # -- statements ------------------------------------------------------
    def run(self):
        for st in self.script.statements:
            if isinstance(st, FieldDecl):
                continue
            try:
                if isinstance(st, Binding):
                    self.bind(st)
                else:
                    self.results.append(self.query(st))
            except _ERRORS as exc:
                self.diagnostics.append(Diagnostic(st.line, st.column, str(exc)))
        return RunResult(self.field.name, self.results, self.diagnostics, dict(self.env))

    def bind(self, st):
        c = st.ctor
        s = c.sections
        F = self.field
        if c.name == "trunc":
            var, n = s[0][0].value, s[0][1].value
            val = truncated_poly(F, n, var=var)
        elif c.name == "product":
            facs = [self.get(i.value, Algebra) for i in s[0]]
            P, *projs = product(*facs)
            self.projections[st.name] = projs
            val = P
        elif c.name == "present":
            names = [i.value for i in s[0]]
            polys = [E.evaluate(i.value, E.PolyBackend(names)) for i in s[2]]
            val = quotient_presentation(F, names, s[1][0].value, polys)
        elif c.name == "subalg":
            b = self.get(s[0][0].value, Algebra)
            items = s[1]
            if any(i.key for i in items) and not all(i.key for i in items):
                raise AlgebraError("name either all generators or none")
            if all(i.key for i in items):
                names = [i.key for i in items]
            elif len(items) <= len(_DEFAULT_GEN_NAMES):
                names = _DEFAULT_GEN_NAMES[:len(items)]
            else:
                names = [f"g{k + 1}" for k in range(len(items))]
            if len(set(names)) != len(names):
                raise AlgebraError("repeated generator name")
            gens = [self.elem(b, i.value) for i in items]
            val, inc = subalgebra_generated(b, gens, names)
            self.inclusions[st.name] = (b, inc)
        elif c.name == "quot":
            a = self.get(s[0][0].value, Algebra)
            q, surj, _ = quotient_by_ideal(a, [self.elem(a, i.value) for i in s[1]])
            self.surjections[st.name] = surj
            val = q
        elif c.name == "hom":
            a = self.get(s[0][0].value, Algebra)
            b = self.get(s[0][1].value, Algebra)
            images = {}
            for it in s[1]:
                if it.key in images:
                    raise AlgebraError(f"generator {it.key!r} given twice")
                images[it.key] = self.elem(b, it.value)
            val = make_hom(a, b, images)
        elif c.name == "include":
            an, bn = s[0][0].value, s[0][1].value
            b = self.get(bn, Algebra)
            self.get(an, Algebra)
            if an not in self.inclusions or self.inclusions[an][0] is not b:
                raise AlgebraError(f"{an!r} was not built as subalg({bn}; ...)")
            val = self.inclusions[an][1]
        elif c.name == "proj":
            pn, i = s[0][0].value, s[0][1].value
            self.get(pn, Algebra)
            projs = self.projections.get(pn)
            if projs is None:
                raise AlgebraError(f"{pn!r} was not built with product(...)")
            if not 1 <= i <= len(projs):
                raise AlgebraError(f"{pn!r} has {len(projs)} factors; no factor {i}")
            val = projs[i - 1]
        elif c.name == "surj":
            qn = s[0][0].value
            self.get(qn, Algebra)
            if qn not in self.surjections:
                raise AlgebraError(f"{qn!r} was not built with quot(...)")
            val = self.surjections[qn]
        elif c.name == "compose":
            g = self.get(s[0][0].value, Hom)
            f = self.get(s[0][1].value, Hom)
            val = g.compose(f)
        elif c.name == "id":
            val = identity_hom(self.get(s[0][0].value, Algebra))
        elif c.name == "ideal":
            a = self.get(s[0][0].value, Algebra)
            val = ideal_generated(a, [self.elem(a, i.value) for i in s[1]])
        elif c.name == "maxideal":
            val = self.get(s[0][0].value, Algebra).maximal_ideal()
        elif c.name == "radical":
            val = radical(self.get(s[0][0].value, Algebra))
        elif c.name == "socle":
            val = socle(self.get(s[0][0].value, Algebra))
        else:  # pragma: no cover - the parser rejects unknown constructors
            raise AlgebraError(f"unknown constructor {c.name!r}")
        self.env[st.name] = val

    def query(self, q):
        name = q.label or render_query(q)
        kind, payload, summary = self.dispatch(q)
        return ResultRecord(name, kind, _json_scalar(payload), summary, q.line)

    def dispatch(self, q):
        k = q.kind
        a1 = q.args[0][1] if q.args else None
        pos = [v for _, v in q.args]
        if k == "omega":
            w = kaehler(self.get(a1, Algebra))
            return "dimension", {"dim": w.kdim, "basis": list(w.labels)}, \
                f"dim {w.kdim}: {', '.join(w.labels) or '0'}"
        if k == "dim":
            v = self.get(a1, Algebra, Ideal)
            if isinstance(v, Algebra):
                basis = list(v.labels)
            else:
                basis = [v.algebra.format(b) for b in v.basis]
            return "basis", {"dim": len(basis), "basis": basis}, \
                f"dim {len(basis)}: {', '.join(basis) or '0'}"
        if k == "kernel":
            f = self.get(a1, Hom)
            ker = induced_map(f).kernel()
            basis = self.forms(f.source, ker)
            return "dimension", {"dim": ker.dim, "basis": basis, "injective": ker.dim == 0}, \
                f"kernel dim {ker.dim}" + (f": {', '.join(basis)}" if basis else "")
        if k == "hc1":
            d = hc1(self.get(a1, Algebra)).dim
            return "dimension", {"dim": d}, f"HC1 dim {d}"
        if k == "h0dr":
            a = self.get(a1, Algebra)
            sp = h0_dr(a)
            basis = [a.format(v) for v in sp.basis]
            return "subspace", {"dim": sp.dim, "basis": basis}, f"dim {sp.dim}: {', '.join(basis)}"
        if k == "relomega":
            f = self.get(a1, Hom)
            ro = relative_omega(f)
            d = ro.dim
            basis = [ro.format_class(i) for i in range(d)]
            return "dimension", {"dim": d, "basis": basis}, f"dim {d}: {', '.join(basis) or '0'}"
        if k == "pia":
            ok, lengths = is_pia(self.get(a1, Algebra))
            return "verdict", {"pia": ok, "lengths": lengths}, \
                ("principal ideal algebra" if ok else "not a principal ideal algebra")
        if k == "tame":
            ok = is_tame_pia(self.get(a1, Algebra))
            return "verdict", {"tame": ok}, "tame" if ok else "not tame"
        if k == "embdim":
            m = embedding_dim(self.get(a1, Algebra))
            return "dimension", {"dim": m}, f"embedding dimension {m}"
        if k == "decompose":
            parts = local_decomposition(self.get(a1, Algebra))
            dims = [fa.dim for fa, _ in parts]
            return "report", {"count": len(dims), "dims": dims}, \
                f"{len(dims)} local factor(s) of dims {dims}"
        if k == "vsocle":
            a = self.get(a1, Algebra)
            sp = tau_lower_socle(a)
            basis = self.forms(a, sp)
            return "subspace", {"dim": sp.dim, "basis": basis}, f"dim {sp.dim}"
        if k == "witness":
            a = self.get(a1, Algebra)
            w = nonembeddable_witness(a)
            if w is None:
                return "verdict", {"found": False}, "no witness found"
            x, y = (a.format(v) for v in w)
            return "verdict", {"found": True, "x": x, "y": y}, \
                f"x = {x}, y = {y}: x^2 = y^2 = 0, xy != 0"
        if k == "guettes":
            r = guettes_check(self.get(a1, Hom))
            return "report", r, (f"e = {r['e']}, m = {r['m']}, predicted {r['prediction']}, "
                                 f"kernel dim {r['observed_kernel_dim']}")
        if k == "m3":
            a = self.get(a1, Algebra)
            w = m3_witness(a)
            form = kaehler(a).format(w.form)
            return "report", {"form": form, "case": w.case, "status": w.status}, \
                f"{form} ({w.status})"
        if k == "valprofile":
            prof = valuation_profile(self.get(a1, Hom))
            return "report", {"valuations": prof}, \
                ", ".join(f"{lab}: {v}" for lab, v in prof.items())
        if k == "valuation":
            f = self.get(a1, Hom)
            v = valuation(f, self.elem(f.source, pos[1]))
            return "report", {"value": v}, f"valuation {_json_scalar(v)}"
        if k in ("push", "inker"):
            f = self.get(a1, Hom)
            w = kaehler(f.source)
            form = self.form(w, pos[1])
            img = induced_map(f).apply(form)
            text = kaehler(f.target).format(img)
            if k == "push":
                return "report", {"value": text}, text
            return "verdict", {"in_kernel": not any(img)}, \
                f"{w.format(form)} {'lies' if not any(img) else 'does not lie'} in the kernel"
        if k == "print":
            return self.do_print(self.get(a1, Algebra), pos[1])
        if k == "hh":
            r = hh(self.get(a1, Algebra), pos[1], self.max_dim)
            return "dimension", {"dim": r.dim}, f"HH_{pos[1]} dim {r.dim}"
        if k == "hh_rel":
            a = self.get(a1, Algebra)
            I = self.ideal_of(a, pos[1])
            r = hh_relative(a, I, pos[2], self.max_dim)
            return "dimension", {"dim": r.dim}, f"HH_{pos[2]}(R, I) dim {r.dim}"
        if k == "hh1_pres":
            a = self.get(a1, Algebra)
            d = hh1_relative_by_presentation(a, self.ideal_of(a, pos[1]))
            return "dimension", {"dim": d}, f"HH_1(R, I) dim {d} (presentation)"
        if k == "hh0_double":
            f = self.get(a1, Hom)
            r = double_relative_hh0(f, self.ideal_of(f.target, pos[1]), self.max_dim)
            return "report", r, f"cone dim {r['cone_dim']}, tensor dim {r['tensor_dim']}"
        if k == "eta":
            return self.do_eta(pos[0], pos[1])
        if k == "hh2gen":
            r = hh2_generator_check(pos[0], self.field, self.max_dim)
            return "report", r, f"HH_2 dim {r['dim']}, generated: {r['generates']}"
        if k == "seminormal":
            ns = pos[0]
            r = seminormal_kernel(len(ns), ns, self.field)
            return "report", r, f"kernel dim {r['kernel_dim']} (expected {r['expected']})"
        if k.startswith("tau_"):
            return self.do_tau(q)
        if k == "euler":
            return self.do_euler(q)
        if k.startswith("check "):
            return self.do_check(k[6:], pos)
        raise AlgebraError(f"unhandled query {k!r}")  # pragma: no cover

    def form(self, w, node):
        kind, v = E.evaluate(node, OmegaBackend(w))
        if kind != "w":
            if any(v):
                raise DifferentialsError("expected a differential form")
            return w.zero
        return v

    def do_print(self, a, node):
        names = _names_in(node)
        if _has_call(node) or not names <= set(a.var_names):
            w = kaehler(a)
            kind, v = E.evaluate(node, OmegaBackend(w))
            text = w.format(v) if kind == "w" else a.format(v)
        else:
            text = a.format(self.elem(a, node))
        return "report", {"value": text}, text

    def do_eta(self, n, m):
        r = eta_element(n, m, self.field)
        F = self.field
        labels = [f"s^{i}" if i > 1 else ("s" if i == 1 else "1") for i in range(n)]
        terms = []
        for idx in sorted(r["boundary"]):
            i, j = _digits(idx, n, 1)
            terms.append((F(r["boundary"][idx]), f"({labels[i]} ⊗ {labels[j]})"))
        boundary = _format_terms(F, terms)
        payload = {"boundary": boundary, "boundary_ok": r["boundary_ok"],
                   "formal_ok": r["formal_ok"], "is_cycle": r["is_cycle"]}
        return "report", payload, f"b(s^{m} eta) = {boundary}"

    def do_tau(self, q):
        a = self.get(q.arg("algebra"), Algebra)
        maps = [self.get(nm, Hom) for nm in q.arg("using", ())]
        pairs = [(self.elem(a, x), self.elem(a, y)) for x, y in q.arg("pairs", ())]
        if q.kind == "tau_lower":
            low, _ = tau_lower_pairs(a, pairs)
            low = low + tau_lower_socle(a)
            basis = self.forms(a, low)
            return "subspace", {"dim": low.dim, "basis": basis}, f"dim {low.dim}"
        if q.kind == "tau_upper":
            up = tau_upper(a, maps)
            basis = self.forms(a, up)
            return "subspace", {"dim": up.dim, "basis": basis}, f"dim {up.dim}"
        br = tau_bracket(a, maps, pairs)
        d = br.describe()
        verdict = "certified" if br.certified_equal else "open"
        summary = f"{d['lower_dim']} <= dim tau <= {d['upper_dim']} ({verdict})"
        if br.certified_equal:
            summary += ": " + (", ".join(d["upper"]) or "0")
        payload = {"lower_dim": d["lower_dim"], "upper_dim": d["upper_dim"],
                   "certified": br.certified_equal, "lower": d["lower"], "upper": d["upper"]}
        return "subspace", payload, summary

    def do_euler(self, q):
        a = self.get(q.arg("algebra"), Algebra)
        x, y = q.arg("at")
        form = euler_differential(a, dict(q.arg("grading")), self.elem(a, x), self.elem(a, y))
        payload = {"form": kaehler(a).format(form), "in_kernel": None}
        if q.arg("check"):
            f = self.get(q.arg("check"), Hom)
            if f.source is not a:
                raise AlgebraError("the check map must start at the graded algebra")
            payload["in_kernel"] = not any(induced_map(f).apply(form))
        return "report", payload, payload["form"]

    def do_check(self, sub, pos):
        if sub == "mv":
            f = self.get(pos[0], Hom)
            r = mayer_vietoris_check(f, self.ideal_of(f.target, pos[1]))
            r = {k: v for k, v in r.items() if k != "kernel_alpha"}
            return "report", r, f"dims {list(r['dims'])}, exact {r['exact']}"
        if sub == "hc1seq":
            r = hc1_integration_check(self.get(pos[0], Hom))
            return "report", r, f"dims {list(r['dims'])}, exact {r['exact']}"
        if sub == "presentation":
            a = self.get(pos[0], Algebra)
            r = hh1_rel_presentation_check(a, self.ideal_of(a, pos[1]), self.ideal_of(a, pos[2]))
            return "report", r, f"HH_1(R, I) dim {r['hh1_dim']}, exact {r['all_exact']}"
        if sub == "les":
            a = self.get(pos[0], Algebra)
            r = les_check(a, self.ideal_of(a, pos[1]), self.max_dim)
            return "report", r, f"exact {r['all_exact']}"
        if sub == "surj":
            f = self.get(pos[0], Hom)
            r = surjectivity_check(f, self.ideal_of(f.target, pos[1]), self.max_dim)
            return "report", r, f"onto {r['onto']}, cokernel dim {r['cokernel_dim']}"
        if sub == "hh1iso":
            r = hh1_omega_check(self.get(pos[0], Algebra), self.max_dim)
            return "report", r, f"HH_1 dim {r['hh1_dim']}, Omega dim {r['omega_dim']}"
        raise AlgebraError(f"unknown check {sub!r}")  # pragma: no cover


def _children(node):
    for f in fields(node):
        v = getattr(node, f.name)
        for x in (v if isinstance(v, tuple) else (v,)):
            if is_dataclass(x):
                yield x


def _names_in(node):
    if isinstance(node, E.Var):
        return {node.name}
    out = set()
    for c in _children(node):
        out |= _names_in(c)
    return out


def _has_call(node):
    return isinstance(node, E.Call) or any(_has_call(c) for c in _children(node))


def _format_terms(F, terms):
    out = ""
    for c, lab in terms:
        c = F.norm(c)
        if not c:
            continue
        neg = not F.p and c < 0
        mag = -c if neg else c
        coef = "" if mag == 1 else f"{F.format(mag)}*"
        if not out:
            out = ("-" if neg else "") + coef + lab
        else:
            out += (" - " if neg else " + ") + coef + lab
    return out or "0"


def run(text, max_dim=None):
    """Parse and evaluate; parse errors come back as diagnostics."""
    try:
        script = parse(text)
    except ScriptError as exc:
        fld = _sniff_field(text)
        return RunResult(fld, [], exc.diagnostics)
    return Evaluator(script, max_dim).run()


def _sniff_field(text):
    for raw in text.splitlines():
        body = _strip_comment(raw).strip()
        if body.startswith("field "):
            try:
                return _parse_field(body[6:], 1).name
            except _Fail:
                break
    return "Q"
