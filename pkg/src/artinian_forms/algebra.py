"""Finite-dimensional commutative algebras given by structure constants.

An ``Algebra`` is a multiplication table ``table[i][j] = {l: c}`` on an
ordered basis whose element 0 is the unit.  Every algebra also carries a
set of named generators together with, for each basis element, the monomial
in those generators that it equals; that is what lets a homomorphism be
specified by generator images and extended multiplicatively.

Elements are tuples of field scalars in basis coordinates.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from . import expr
from .linalg import (
    Coordinates,
    Echelon,
    Field,
    LinalgError,
    Matrix,
    Subspace,
    intersect,
    kernel_basis,
    quotient as linalg_quotient,
    unit_vector,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vector,
)


class AlgebraError(ValueError):
    pass


class NotSplit(AlgebraError):
    """The semisimple quotient has a residue field bigger than k."""


def _is_ident(s):
    return s.isidentifier()


class Algebra:
    def __init__(self, field, table, var_names=None, var_elements=None,
                 monomials=None, local_info=None, nilradical=None,
                 labels=None, validate=True):
        self.field = field
        self.table = [[dict(c) for c in row] for row in table]
        n = self.dim = len(self.table)
        if n < 1:
            raise AlgebraError("an algebra needs dimension at least 1")
        if any(len(row) != n for row in self.table):
            raise AlgebraError("structure table is not square")
        if var_names is None:
            if labels is not None and all(_is_ident(l) for l in labels[1:]):
                var_names = list(labels[1:])
            else:
                var_names = [f"e{i}" for i in range(1, n)]
            var_elements = [unit_vector(field, n, i) for i in range(1, n)]
            monomials = [tuple(int(i == j + 1) for j in range(n - 1)) for i in range(n)]
        self.var_names = list(var_names)
        self.var_elements = [tuple(v) for v in var_elements]
        self.monomials = [tuple(m) for m in monomials]
        self.labels = list(labels) if labels is not None else [
            expr.monomial_label(self.var_names, m) for m in self.monomials]
        if local_info is None and nilradical is not None and nilradical.dim == n - 1:
            local_info = nilradical
        self.local_info = local_info
        self.nilradical = nilradical if nilradical is not None else local_info
        if validate:
            self._validate()

    # -- basics ---------------------------------------------------------
    def __repr__(self):
        return f"Algebra<{self.field}>(dim {self.dim}: {', '.join(self.labels)})"

    @property
    def unit(self):
        return unit_vector(self.field, self.dim, 0)

    @property
    def zero(self):
        return zero_vector(self.field, self.dim)

    def basis(self, i):
        return unit_vector(self.field, self.dim, i)

    def structure_constants(self):
        F, n = self.field, self.dim
        return [[[self.table[i][j].get(l, F.zero) for l in range(n)]
                 for j in range(n)] for i in range(n)]

    def mul(self, x, y):
        p = self.field.p
        out = {}
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in ys:
                ab = a * b
                for l, c in row[j].items():
                    out[l] = out.get(l, 0) + ab * c
        v = [self.field.zero] * self.dim
        for l, c in out.items():
            v[l] = c % p if p else c
        return tuple(v)

    def add(self, x, y):
        return vec_add(self.field, x, y)

    def sub(self, x, y):
        return vec_sub(self.field, x, y)

    def scale(self, c, x):
        return vec_scale(self.field, self.field(c), x)

    def power(self, x, k):
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def mul_matrix(self, x):
        """Matrix of multiplication by x."""
        cols = [self.mul(x, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def is_nilpotent(self, x):
        return not any(self.power(x, self.dim))

    def element(self, text):
        """Parse an element written in the generator names."""
        if not isinstance(text, str):
            return tuple(self.field(c) for c in text)
        return expr.evaluate(expr.parse(text), ElementBackend(self))

    def format(self, x):
        return format_combination(self.field, x, self.labels)

    def var(self, name):
        return self.var_elements[self.var_names.index(name)]

    # -- validation -----------------------------------------------------
    def _validate(self):
        F, n, t = self.field, self.dim, self.table
        for row in t:
            for c in row:
                for l, v in list(c.items()):
                    v = F(v) if not isinstance(v, (int, Fraction)) or F.p else Fraction(v)
                    v = F.norm(v)
                    if v:
                        c[l] = v
                    else:
                        del c[l]
        for j in range(n):
            if t[0][j] != {j: F.one} or t[j][0] != {j: F.one}:
                raise AlgebraError("basis element 0 is not the unit")
        for i in range(n):
            for j in range(i + 1, n):
                if t[i][j] != t[j][i]:
                    raise AlgebraError(f"not commutative at ({self.labels[i]}, {self.labels[j]})")
        for i in range(1, n):
            for j in range(i, n):
                for l in range(1, n):
                    if self._triple(i, j, l) != self._triple_right(i, j, l):
                        raise AlgebraError(
                            f"not associative at ({self.labels[i]}, {self.labels[j]}, {self.labels[l]})")
        if len(self.var_names) != len(self.var_elements):
            raise AlgebraError("generator names and elements differ in length")
        if len(self.monomials) != n or any(len(m) != len(self.var_names) for m in self.monomials):
            raise AlgebraError("monomial data has the wrong shape")
        for i, m in enumerate(self.monomials):
            if self._monomial_value(m) != self.basis(i):
                raise AlgebraError(f"basis element {i} is not the monomial {m}")
        if self.local_info is not None:
            M = self.local_info
            if M.dim != n - 1 or M.contains(self.unit):
                raise AlgebraError("local_info is not of codimension 1")
            if not Ideal(self, M).is_ideal():
                raise AlgebraError("local_info is not an ideal")
            if ideal_power(Ideal(self, M, check=False), n).space.dim:
                raise AlgebraError("local_info is not nilpotent")

    def _triple(self, i, j, l):
        p = self.field.p
        out = {}
        for a, c in self.table[i][j].items():
            for b, d in self.table[a][l].items():
                out[b] = out.get(b, 0) + c * d
        return {k: (v % p if p else v) for k, v in out.items() if (v % p if p else v)}

    def _triple_right(self, i, j, l):
        p = self.field.p
        out = {}
        for a, c in self.table[j][l].items():
            for b, d in self.table[i][a].items():
                out[b] = out.get(b, 0) + c * d
        return {k: (v % p if p else v) for k, v in out.items() if (v % p if p else v)}

    def _monomial_value(self, exps):
        out = self.unit
        for v, e in zip(self.var_elements, exps):
            for _ in range(e):
                out = self.mul(out, v)
        return out

    # -- convenience ----------------------------------------------------
    @property
    def is_local(self):
        return self.local_info is not None

    def with_local_info(self, M):
        return Algebra(self.field, self.table, self.var_names, self.var_elements,
                       self.monomials, local_info=M, labels=self.labels)

    def maximal_ideal(self):
        if self.local_info is None:
            raise AlgebraError("algebra has no tracked maximal ideal")
        return Ideal(self, self.local_info, check=False)


class ElementBackend:
    def __init__(self, algebra):
        self.a = algebra

    def const(self, c):
        return self.a.scale(c, self.a.unit)

    def var(self, name):
        if name not in self.a.var_names:
            raise expr.ExprError(f"unknown generator {name!r}")
        return self.a.var(name)

    def add(self, x, y):
        return self.a.add(x, y)

    def neg(self, x):
        return self.a.scale(-1, x)

    def mul(self, x, y):
        return self.a.mul(x, y)

    def power(self, x, k):
        return self.a.power(x, k)

    def call(self, name, args):
        raise expr.ExprError(f"unknown function {name!r}")


def format_combination(field, coeffs, labels):
    """``2*x - 3/2*y^2``, terms in basis order; ``0`` for the zero vector."""
    terms = []
    for c, lab in zip(coeffs, labels):
        if not c:
            continue
        if field.p:
            s = field.format(c)
            body = lab if s == "1" else (s if lab == "1" else f"{s}*{lab}")
            terms.append(("+", body))
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        s = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        body = lab if a == 1 and lab != "1" else (s if lab == "1" else f"{s}*{lab}")
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# --------------------------------------------------------------------------
# ideals and homomorphisms

class Ideal:
    def __init__(self, algebra, space, check=True):
        self.algebra = algebra
        self.space = space
        if check and not self.is_ideal():
            raise AlgebraError("subspace is not an ideal")

    def is_ideal(self):
        a = self.algebra
        for v in self.space.basis:
            for i in range(1, a.dim):
                if not self.space.contains(a.mul(a.basis(i), v)):
                    return False
        return True

    @property
    def dim(self):
        return self.space.dim

    def contains(self, x):
        return self.space.contains(x)

    def __contains__(self, x):
        return self.contains(x)

    @property
    def basis(self):
        return self.space.basis

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.algebra is other.algebra and self.space == other.space

    def __repr__(self):
        return f"Ideal(dim {self.dim} in {self.algebra!r})"


def ideal_generated(a, gens):
    vecs = [a.mul(a.basis(i), g) for g in gens for i in range(a.dim)]
    return Ideal(a, Subspace.span(a.field, a.dim, vecs), check=False)


def ideal_product(I, J):
    a = I.algebra
    vecs = [a.mul(x, y) for x in I.basis for y in J.basis]
    return Ideal(a, Subspace.span(a.field, a.dim, vecs), check=False)


def ideal_power(I, k):
    a = I.algebra
    if k == 0:
        return Ideal(a, Subspace.full(a.field, a.dim), check=False)
    out = I
    for _ in range(k - 1):
        if not out.dim:
            break
        out = ideal_product(out, I)
    return out


class Hom:
    """k-algebra map; ``matrix`` has the image of source basis i as column i."""

    def __init__(self, source, target, matrix, validate=True):
        if source.field != target.field:
            raise AlgebraError("homomorphism between algebras over different fields")
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.rows != target.dim or matrix.cols != source.dim:
            raise AlgebraError("hom matrix has the wrong shape")
        if validate:
            self._validate()

    def _validate(self):
        s, t = self.source, self.target
        imgs = self.matrix.columns()
        if imgs[0] != t.unit:
            raise AlgebraError("hom does not preserve the unit")
        for i in range(1, s.dim):
            for j in range(i, s.dim):
                lhs = t.mul(imgs[i], imgs[j])
                rhs = self.apply(s.mul(s.basis(i), s.basis(j)))
                if lhs != rhs:
                    raise AlgebraError(
                        f"hom is not multiplicative on ({s.labels[i]}, {s.labels[j]})")

    def apply(self, x):
        return self.matrix.apply(x)

    def __call__(self, x):
        return self.apply(x)

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            raise AlgebraError("maps are not composable")
        return Hom(other.source, self.target, self.matrix @ other.matrix, validate=False)

    def kernel(self):
        return kernel_basis(self.matrix)

    def image(self):
        return Subspace.span(self.source.field, self.target.dim, self.matrix.columns())

    def is_injective(self):
        return self.kernel().dim == 0

    def is_surjective(self):
        return self.image().dim == self.target.dim

    def preimage(self, space):
        """{x : f(x) in space}."""
        proj, qdim, _ = linalg_quotient(self.target.dim, space)
        if not qdim:
            return Subspace.full(self.source.field, self.source.dim)
        return kernel_basis(proj @ self.matrix)

    def __repr__(self):
        return f"Hom({self.source!r} -> {self.target!r})"


def identity_hom(a):
    return Hom(a, a, Matrix.identity(a.field, a.dim), validate=False)


def make_hom(a, b, images):
    """Build and validate a hom.

    ``images`` is either a dict generator-name -> element of b (vector or
    expression string), extended multiplicatively through the monomial data
    of a, or a list with the image of every basis element of a.
    """
    if isinstance(images, dict):
        gen_imgs = []
        for name in a.var_names:
            if name not in images:
                raise AlgebraError(f"no image given for generator {name!r}")
            gen_imgs.append(b.element(images[name]))
        extra = set(images) - set(a.var_names)
        if extra:
            raise AlgebraError(f"unknown generators {sorted(extra)}")
        cols = []
        for m in a.monomials:
            v = b.unit
            for g, e in zip(gen_imgs, m):
                for _ in range(e):
                    v = b.mul(v, g)
            cols.append(v)
    else:
        cols = [b.element(x) for x in images]
        if len(cols) != a.dim:
            raise AlgebraError("need one image per basis element")
    return Hom(a, b, Matrix.from_columns(a.field, cols, b.dim))


# --------------------------------------------------------------------------
# constructors

def truncated_poly(field, n, var="s"):
    """k[var]/(var^n) on the basis 1, s, ..., s^(n-1)."""
    if n < 1:
        raise AlgebraError("truncated polynomial ring needs n >= 1")
    table = [[({i + j: field.one} if i + j < n else {}) for j in range(n)] for i in range(n)]
    var_elements = [unit_vector(field, n, 1)] if n > 1 else [zero_vector(field, n)]
    M = Subspace.span(field, n, [unit_vector(field, n, i) for i in range(1, n)])
    alg = Algebra(field, table, [var], var_elements, [(i,) for i in range(n)],
                  local_info=M, validate=False)
    alg.trunc = (var, n)
    return alg


def _from_family(field, ambient_mul, family, ambient_dim):
    """Structure table of the span of ``family`` (closed under ambient_mul)."""
    coords = Coordinates(field, ambient_dim, family)
    table = []
    for u in family:
        row = []
        for v in family:
            c = coords(ambient_mul(u, v))
            row.append({l: x for l, x in enumerate(c) if x})
        table.append(row)
    return table, coords


def _fresh(name, taken):
    if name not in taken:
        return name
    k = 2
    while f"{name}_{k}" in taken:
        k += 1
    return f"{name}_{k}"


def product(*factors):
    """Direct product; returns ``(P, proj_1, ..., proj_r)``.

    Basis of P: the unit, the idempotents e1..e(r-1) of the first r-1
    factors, then the non-unit basis of each factor in turn.
    """
    if not factors:
        raise AlgebraError("empty product")
    field = factors[0].field
    if any(f.field != field for f in factors):
        raise AlgebraError("product of algebras over different fields")
    r = len(factors)
    offs = []
    total = 0
    for f in factors:
        offs.append(total)
        total += f.dim

    def embed(k, x):
        v = [field.zero] * total
        v[offs[k]:offs[k] + factors[k].dim] = x
        return tuple(v)

    def block_mul(x, y):
        out = []
        for k, f in enumerate(factors):
            out.extend(f.mul(x[offs[k]:offs[k] + f.dim], y[offs[k]:offs[k] + f.dim]))
        return tuple(out)

    unit = tuple(c for f in factors for c in f.unit)
    family = [unit] + [embed(k, factors[k].unit) for k in range(r - 1)]
    for k, f in enumerate(factors):
        family += [embed(k, f.basis(j)) for j in range(1, f.dim)]
    table, coords = _from_family(field, block_mul, family, total)

    taken = set()
    idem_names = []
    for k in range(r - 1):
        nm = _fresh(f"e{k + 1}", taken | {v for f in factors for v in f.var_names})
        idem_names.append(nm)
        taken.add(nm)
    var_names = list(idem_names)
    var_elements = [coords(family[1 + k]) for k in range(r - 1)]
    slot = []
    for k, f in enumerate(factors):
        start = len(var_names)
        for nm, v in zip(f.var_names, f.var_elements):
            new = _fresh(nm, taken)
            taken.add(new)
            var_names.append(new)
            var_elements.append(coords(embed(k, v)))
        slot.append(start)
    nv = len(var_names)
    monomials = [(0,) * nv]
    for k in range(r - 1):
        m = [0] * nv
        m[k] = 1
        monomials.append(tuple(m))
    for k, f in enumerate(factors):
        for j in range(1, f.dim):
            m = [0] * nv
            m[slot[k]:slot[k] + len(f.var_names)] = f.monomials[j]
            monomials.append(tuple(m))

    nil = None
    if all(f.nilradical is not None for f in factors):
        vecs = [coords(embed(k, v)) for k, f in enumerate(factors) for v in f.nilradical.basis]
        nil = Subspace.span(field, total, vecs)
    local = None
    if r == 1:
        local = factors[0].local_info
    P = Algebra(field, table, var_names, var_elements, monomials,
                local_info=local, nilradical=nil)
    projections = []
    for k, f in enumerate(factors):
        cols = [f.unit]
        cols += [f.unit if j == k else f.zero for j in range(r - 1)]
        for m, g in enumerate(factors):
            cols += [f.basis(j) if m == k else f.zero for j in range(1, g.dim)]
        projections.append(Hom(P, f, Matrix.from_columns(field, cols, f.dim), validate=False))
    return (P, *projections)


def _monomials_below(m, N):
    """Exponent tuples of total degree < N; degree first, then lex descending."""
    out = []
    for d in range(N):
        layer = [e for e in iproduct(range(d + 1), repeat=m) if sum(e) == d]
        out.extend(sorted(layer, reverse=True))
    return out


def quotient_presentation(field, var_names, N, polys):
    """k[x_1..x_m] / ((x)^N + (polys)), polys given as strings or dicts.

    ``var_names`` may be an int m, meaning x, y, z (or x1..xm when m > 3).
    """
    if isinstance(var_names, int):
        var_names = ["x", "y", "z"][:var_names] if var_names <= 3 else \
            [f"x{i + 1}" for i in range(var_names)]
    var_names = list(var_names)
    m = len(var_names)
    if N < 1:
        raise AlgebraError("truncation degree N must be >= 1")
    mons = _monomials_below(m, N)
    index = {e: i for i, e in enumerate(mons)}
    T = len(mons)
    gens = []
    for g in polys:
        if isinstance(g, str):
            g = expr.parse_poly(g, var_names)
        g = {tuple(e): field(c) for e, c in g.items()}
        g = {e: c for e, c in g.items() if c}
        if g.get((0,) * m):
            raise AlgebraError("presentation relation has a nonzero constant term")
        gens.append(g)
    vecs = []
    for g in gens:
        for e in mons:
            v = [field.zero] * T
            for ge, c in g.items():
                k = tuple(a + b for a, b in zip(e, ge))
                if sum(k) < N:
                    v[index[k]] = field.norm(v[index[k]] + c)
            vecs.append(tuple(v))
    J = Subspace.span(field, T, vecs)
    proj, qdim, keep = linalg_quotient(T, J, column_order=range(T - 1, -1, -1))

    def tvec(e):
        if sum(e) >= N:
            return zero_vector(field, T)
        return unit_vector(field, T, index[e])

    table = []
    for i in keep:
        row = []
        for j in keep:
            e = tuple(a + b for a, b in zip(mons[i], mons[j]))
            img = proj.apply(tvec(e))
            row.append({l: x for l, x in enumerate(img) if x})
        table.append(row)
    var_elements = []
    for k in range(m):
        e = tuple(int(j == k) for j in range(m))
        var_elements.append(proj.apply(tvec(e)))
    monomials = [mons[i] for i in keep]
    M = Subspace.span(field, qdim, [unit_vector(field, qdim, i) for i in range(1, qdim)])
    return Algebra(field, table, var_names, var_elements, monomials, local_info=M)


def subalgebra_generated(b, gens, names=None):
    """Subalgebra of b generated by ``gens``; returns ``(A, inclusion)``.

    Basis: monomials in the generators, found by closing under
    multiplication degree by degree and keeping the independent ones.
    """
    field = b.field
    gens = [b.element(g) for g in gens]
    k = len(gens)
    if names is None:
        names = [f"g{i + 1}" for i in range(k)]
    if len(names) != k:
        raise AlgebraError("need one name per generator")
    ech = Echelon(field, b.dim)
    ech.add(b.unit)
    kept = [((0,) * k, b.unit)]
    layer = [((0,) * k, b.unit)]
    seen = {(0,) * k}
    while layer:
        cands = []
        for e, v in layer:
            for i, g in enumerate(gens):
                ne = tuple(x + (j == i) for j, x in enumerate(e))
                if ne in seen:
                    continue
                seen.add(ne)
                cands.append((ne, b.mul(v, g)))
        cands.sort(key=lambda t: tuple(-x for x in t[0]))
        layer = []
        for e, v in cands:
            if ech.add(v):
                kept.append((e, v))
                layer.append((e, v))
    family = [v for _, v in kept]
    table, coords = _from_family(field, b.mul, family, b.dim)
    var_elements = [coords(g) for g in gens]
    incl_m = Matrix.from_columns(field, family, b.dim)
    A = Algebra(field, table, names, var_elements, [e for e, _ in kept], validate=True)
    incl = Hom(A, b, incl_m)
    if b.nilradical is not None:
        nil = incl.preimage(b.nilradical)
        A = Algebra(field, table, names, var_elements, [e for e, _ in kept], nilradical=nil)
        incl = Hom(A, b, incl_m, validate=False)
    return A, incl


def quotient_by_ideal(a, gens):
    """a / I for I generated by ``gens`` (elements or an Ideal).

    Returns ``(Q, surjection, I)``; Q keeps the lowest-index basis elements
    of a not eliminated by I.
    """
    I = gens if isinstance(gens, Ideal) else ideal_generated(a, [a.element(g) for g in gens])
    if I.contains(a.unit):
        raise AlgebraError("the ideal is the whole algebra")
    field = a.field
    proj, qdim, keep = linalg_quotient(a.dim, I.space, column_order=range(a.dim - 1, -1, -1))
    table = []
    for i in keep:
        row = []
        for j in keep:
            img = proj.apply(a.mul(a.basis(i), a.basis(j)))
            row.append({l: x for l, x in enumerate(img) if x})
        table.append(row)
    var_elements = [proj.apply(v) for v in a.var_elements]
    monomials = [a.monomials[i] for i in keep]
    M = a.local_info.image(proj) if a.local_info is not None else None
    nil = a.nilradical.image(proj) if a.nilradical is not None else None
    Q = Algebra(field, table, a.var_names, var_elements, monomials,
                local_info=M, nilradical=nil)
    return Q, Hom(a, Q, proj, validate=False), I


# --------------------------------------------------------------------------
# structure

def radical(a):
    """The nilradical as an Ideal.

    Tracked data is used when present; otherwise the trace-form kernel in
    characteristic 0 and the kernel of a Frobenius power in characteristic p.
    """
    field, n = a.field, a.dim
    if a.nilradical is not None:
        return Ideal(a, a.nilradical, check=False)
    if not field.p:
        traces = [sum(a.table[l][m].get(m, 0) for m in range(n)) for l in range(n)]
        rows = []
        for i in range(n):
            rows.append(tuple(sum(c * traces[l] for l, c in a.table[i][j].items())
                              for j in range(n)))
        return Ideal(a, kernel_basis(Matrix(field, n, n, tuple(rows))), check=False)
    q = field.p
    while q < n:
        q *= field.p
    cols = [a.power(a.basis(j), q) for j in range(n)]
    return Ideal(a, kernel_basis(Matrix.from_columns(field, cols, n)), check=False)


def _minimal_polynomial(a, x, unit):
    """Monic minimal polynomial of x in the algebra with unit ``unit``."""
    field = a.field
    powers = [unit]
    while True:
        nxt = a.mul(powers[-1], x)
        try:
            c = Coordinates(field, a.dim, powers)(nxt)
            return [field.norm(-ci) for ci in c] + [field.one]
        except LinalgError:
            powers.append(nxt)


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.update((d, n // d))
        d += 1
    return sorted(out)


def _poly_eval(coeffs, x):
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def polynomial_roots(field, coeffs):
    """Roots in k of a polynomial given low-degree-first."""
    if field.p:
        return [x for x in range(field.p) if _poly_eval(coeffs, x) % field.p == 0]
    coeffs = [Fraction(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    while ints and ints[0] == 0:
        if 0 not in roots:
            roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    for num in _divisors(ints[0]):
        for d in _divisors(ints[-1]):
            for r in (Fraction(num, d), Fraction(-num, d)):
                if r not in roots and _poly_eval(ints, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _split_idempotents(S):
    """Primitive idempotents of a split semisimple algebra S."""
    field = S.field
    idems = [S.unit]
    for i in range(1, S.dim):
        b = S.basis(i)
        refined = []
        for e in idems:
            eb = S.mul(e, b)
            mp = _minimal_polynomial(S, eb, e)
            roots = polynomial_roots(field, mp)
            if len(roots) != len(mp) - 1:
                raise NotSplit(f"minimal polynomial of {S.format(eb)} does not split into distinct linear factors over {field}")
            for lam in roots:
                f = e
                for mu in roots:
                    if mu == lam:
                        continue
                    factor = S.scale(field.inv(field.norm(lam - mu)),
                                     S.sub(eb, S.scale(mu, e)))
                    f = S.mul(f, factor)
                refined.append(f)
        idems = refined
    return idems


def _factor_algebra(a, e, nil):
    field = a.field
    ech = Echelon(field, a.dim)
    chosen = []
    for i in range(a.dim):
        v = a.mul(e, a.basis(i))
        if ech.add(v):
            chosen.append(i)
    family = [a.mul(e, a.basis(i)) for i in chosen]
    table, coords = _from_family(field, a.mul, family, a.dim)
    var_elements = [coords(a.mul(e, v)) for v in a.var_elements]
    monomials = [a.monomials[i] for i in chosen]
    proj_cols = [coords(a.mul(e, a.basis(i))) for i in range(a.dim)]
    proj_m = Matrix.from_columns(field, proj_cols, len(family))
    M = Subspace.span(field, len(family), [proj_m.apply(v) for v in nil.basis])
    F = Algebra(field, table, a.var_names, var_elements, monomials, local_info=M)
    return F, Hom(a, F, proj_m, validate=False)


def local_decomposition(a):
    """Split a into local factors: list of ``(factor, projection)``."""
    N = radical(a)
    if N.dim == a.dim - 1:
        loc = a if a.local_info is not None else a.with_local_info(N.space)
        return [(loc, identity_hom(loc) if loc is a else Hom(a, loc, Matrix.identity(a.field, a.dim), validate=False))]
    S, surj, _ = quotient_by_ideal(a, N)
    # lift: S basis element k is the image of a's basis element surj_keep[k]
    lift_idx = []
    for k in range(S.dim):
        target = S.basis(k)
        lift_idx.append(next(i for i in range(a.dim) if surj.matrix.column(i) == target))
    out = []
    for eS in _split_idempotents(S):
        e = a.zero
        for k, c in enumerate(eS):
            if c:
                e = a.add(e, a.scale(c, a.basis(lift_idx[k])))
        while True:
            e2 = a.mul(e, e)
            if e2 == e:
                break
            e = a.sub(a.scale(3, e2), a.scale(2, a.mul(e2, e)))
        out.append(_factor_algebra(a, e, N.space))
    return out


def nilpotency_index(I):
    """Least k with I^k = 0."""
    k = 1
    J = I
    while J.dim:
        J = ideal_product(J, I)
        k += 1
    return k


def embedding_dim(a):
    M = a.maximal_ideal()
    return M.dim - ideal_product(M, M).dim


def is_pia(a):
    """``(is principal ideal algebra, sorted nilpotency indices of the local factors)``."""
    ok = True
    ns = []
    for F, _ in local_decomposition(a):
        if embedding_dim(F) > 1:
            ok = False
        ns.append(nilpotency_index(F.maximal_ideal()))
    return ok, sorted(ns)


def is_tame_pia(a):
    ok, ns = is_pia(a)
    if not ok:
        return False
    p = a.field.p
    return not p or all(n % p for n in ns)


def socle(a):
    """ann(M) for the tracked maximal ideal M; zero for a field."""
    M = a.maximal_ideal()
    if not M.dim:
        return Ideal(a, Subspace.zero(a.field, a.dim), check=False)
    S = Subspace.full(a.field, a.dim)
    for m in M.basis:
        S = intersect(S, kernel_basis(a.mul_matrix(m)))
    return Ideal(a, S, check=False)


def is_truncated_standard(b):
    """n if b is literally k[s]/(s^n) on the basis 1, s, ..., else None."""
    n = b.dim
    F = b.field
    for i in range(n):
        for j in range(n):
            want = {i + j: F.one} if i + j < n else {}
            if b.table[i][j] != want:
                return None
    return n
