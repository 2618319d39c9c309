"""Exact scalars and dense linear algebra over Q and F_p.

Everything here is exact: rationals are ``fractions.Fraction`` and elements
of F_p are plain ints in ``range(p)``.  Vectors are tuples, matrices are
immutable row tuples.  Elimination internally works on sparse dict rows,
which is what keeps the bar-complex ranks cheap.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class LinalgError(ValueError):
    pass


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The base field: ``Field.Q()`` or ``Field.Fp(p)``."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise LinalgError(f"{self.p} is not prime")

    @classmethod
    def Q(cls):
        return cls(0)

    @classmethod
    def Fp(cls, p):
        return cls(p)

    @classmethod
    def parse(cls, name):
        name = name.strip()
        if name in ("Q", "QQ"):
            return cls.Q()
        if name.startswith("F") and name[1:].isdigit():
            return cls.Fp(int(name[1:]))
        raise LinalgError(f"unknown field {name!r}")

    @property
    def char(self):
        return self.p

    @property
    def name(self):
        return f"F{self.p}" if self.p else "Q"

    def __repr__(self):
        return self.name

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} is not defined mod {self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def elements(self):
        if not self.p:
            raise LinalgError("Q is infinite")
        return range(self.p)

    def format(self, x):
        """Canonical string: ``-3/2`` over Q, ``0..p-1`` over F_p."""
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def zero_vector(field, n):
    return (field.zero,) * n


def unit_vector(field, n, i):
    v = [field.zero] * n
    v[i] = field.one
    return tuple(v)


def vec_add(field, u, v):
    if field.p:
        p = field.p
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(field, u, v):
    if field.p:
        p = field.p
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(field, c, v):
    if field.p:
        p = field.p
        return tuple(c * a % p for a in v)
    return tuple(c * a for a in v)


def is_zero(v):
    return not any(v)


# --------------------------------------------------------------------------
# sparse elimination engine

def _to_sparse(row):
    return {j: x for j, x in enumerate(row) if x}


def _to_dense(field, row, n):
    v = [field.zero] * n
    for j, x in row.items():
        v[j] = x
    return tuple(v)


class Echelon:
    """Incremental echelon basis of sparse rows (dict col -> value).

    Rows are kept with leading coefficient 1.  ``add`` reduces a new row
    against the current pivots and keeps it if independent.  ``rref`` does
    the back substitution.
    """

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row, full=False):
        """Reduce ``row`` (a dict, modified in place) against the pivots.

        With ``full=False`` only the leading entries are cleared, which is
        enough for membership and rank; ``full=True`` clears every pivot
        column.
        """
        p = self.field.p
        pivots = self.pivots
        if full:
            done = -1
            while True:
                cands = [c for c in row if c > done and c in pivots]
                if not cands:
                    return row
                c = min(cands)
                _axpy(row, -row[c], pivots[c], p)
                done = c
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            _axpy(row, -row[c], prow, p)
        return row

    def add(self, row):
        """Insert a row; return True if it was independent."""
        if not isinstance(row, dict):
            row = _to_sparse(row)
        else:
            row = dict(row)
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = self.field.inv(row[c])
        p = self.field.p
        if p:
            row = {j: x * inv % p for j, x in row.items()}
        else:
            row = {j: x * inv for j, x in row.items()}
        self.pivots[c] = row
        return True

    def contains(self, row):
        if not isinstance(row, dict):
            row = _to_sparse(row)
        return not self.reduce(dict(row))

    def rref_rows(self):
        """Fully reduced rows sorted by pivot column."""
        p = self.field.p
        cols = sorted(self.pivots)
        done = {}
        for c in reversed(cols):
            row = dict(self.pivots[c])
            for c2 in sorted(k for k in row if k != c and k in done):
                f = row.get(c2)
                if f:
                    _axpy(row, -f, done[c2], p)
            done[c] = row
        return [done[c] for c in cols]


def _axpy(row, f, other, p):
    """row += f * other, in place, dropping zeros."""
    if p:
        for j, x in other.items():
            y = (row.get(j, 0) + f * x) % p
            if y:
                row[j] = y
            else:
                row.pop(j, None)
    else:
        for j, x in other.items():
            y = row.get(j, 0) + f * x
            if y:
                row[j] = y
            else:
                row.pop(j, None)


# --------------------------------------------------------------------------
# Matrix

@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise LinalgError("matrix shape mismatch")

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        data = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field, columns, nrows):
        columns = list(columns)
        data = tuple(tuple(columns[j][i] for j in range(len(columns))) for i in range(nrows))
        return cls(field, nrows, len(columns), data)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, tuple((field.zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, tuple(unit_vector(field, n, i) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self):
        return Matrix(self.field, self.cols, self.rows,
                      tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def apply(self, v):
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise LinalgError("vector length mismatch")
        p = self.field.p
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.data:
            s = sum(r[j] * x for j, x in nz)
            out.append(s % p if p else s)
        return tuple(out) if nz else zero_vector(self.field, self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise LinalgError("shape mismatch in product")
        cols = [self.apply(c) for c in other.columns()]
        return Matrix.from_columns(self.field, cols, self.rows)

    def __add__(self, other):
        return Matrix(self.field, self.rows, self.cols,
                      tuple(vec_add(self.field, a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other):
        return Matrix(self.field, self.rows, self.cols,
                      tuple(vec_sub(self.field, a, b) for a, b in zip(self.data, other.data)))

    def is_zero(self):
        return all(is_zero(r) for r in self.data)

    @property
    def rank(self):
        return rref(self)[2]

    def tolist(self):
        return [list(r) for r in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix<{self.field}>({self.rows}x{self.cols})[{body}]"


def rref(m):
    """Reduced row echelon form: ``(matrix, pivot columns, rank)``.

    The result has the shape of ``m``; zero rows sit at the bottom.
    """
    ech = Echelon(m.field, m.cols)
    for r in m.data:
        ech.add(r)
    rows = ech.rref_rows()
    pivots = [min(r) for r in rows]
    dense = [_to_dense(m.field, r, m.cols) for r in rows]
    dense += [zero_vector(m.field, m.cols)] * (m.rows - len(dense))
    return Matrix(m.field, m.rows, m.cols, tuple(dense)), pivots, len(rows)


def rank_of_vectors(field, ncols, vectors):
    ech = Echelon(field, ncols)
    for v in vectors:
        ech.add(v)
    return ech.rank


# --------------------------------------------------------------------------
# Subspace

@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` stored by its RREF basis."""

    field: Field
    ambient_dim: int
    basis: tuple

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if not isinstance(v, dict) and len(v) != ambient_dim:
                raise LinalgError("vector length mismatch")
            ech.add(v)
        return cls._from_echelon(ech)

    @classmethod
    def _from_echelon(cls, ech):
        rows = tuple(_to_dense(ech.field, r, ech.ncols) for r in ech.rref_rows())
        return cls(ech.field, ech.ncols, rows)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, ())

    @classmethod
    def full(cls, field, n):
        return cls(field, n, tuple(unit_vector(field, n, i) for i in range(n)))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def _echelon(self):
        ech = Echelon(self.field, self.ambient_dim)
        for r in self.basis:
            ech.pivots[next(j for j, x in enumerate(r) if x)] = _to_sparse(r)
        return ech

    def contains(self, v):
        if isinstance(v, Subspace):
            return self._same(v) and all(self.contains(r) for r in v.basis)
        return self._echelon().contains(v)

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other):
        return other.contains(self)

    def _same(self, other):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise LinalgError("subspaces live in different spaces")
        return True

    def __add__(self, other):
        self._same(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    def reduce(self, v):
        """Normal form of v modulo the subspace (zero on pivot columns)."""
        row = self._echelon().reduce(_to_sparse(v), full=True)
        return _to_dense(self.field, row, self.ambient_dim)

    def coordinates(self, v):
        """Coefficients of v on the RREF basis; raises if v is not inside."""
        coords = tuple(v[c] for c in self.pivots)
        check = [self.field.zero] * self.ambient_dim
        for c, r in zip(coords, self.basis):
            if c:
                check = vec_add(self.field, check, vec_scale(self.field, c, r))
        if tuple(check) != tuple(v):
            raise LinalgError("vector not in subspace")
        return coords

    def image(self, m):
        """Image of the subspace under the matrix m."""
        return Subspace.span(self.field, m.rows, [m.apply(r) for r in self.basis])

    def as_matrix(self):
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def __repr__(self):
        return f"Subspace<{self.field}>(dim {self.dim} in {self.ambient_dim})"


def kernel_basis(m):
    """Null space {v : m v = 0} as a Subspace of field^cols."""
    red, pivots, rank = rref(m)
    field = m.field
    free = [j for j in range(m.cols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [field.zero] * m.cols
        v[f] = field.one
        for i, c in enumerate(pivots):
            x = red.data[i][f]
            if x:
                v[c] = field.norm(-x)
        vecs.append(tuple(v))
    return Subspace.span(field, m.cols, vecs)


def kernel_of_map(field, ncols, nrows, columns):
    """Kernel of a linear map given by sparse columns (dict row -> value).

    Avoids building the dense matrix; used for big bar-complex maps.
    """
    # eliminate on the transpose-free side: track combinations of columns
    ech = {}
    combos = {}
    p = field.p
    kernel = []
    for j, col in enumerate(columns):
        row = dict(col)
        comb = {j: field.one}
        while row:
            c = min(row)
            if c not in ech:
                break
            f = -row[c]
            _axpy(row, f, ech[c], p)
            _axpy(comb, f, combos[c], p)
        if row:
            c = min(row)
            inv = field.inv(row[c])
            ech[c] = {k: field.norm(x * inv) for k, x in row.items()}
            combos[c] = {k: field.norm(x * inv) for k, x in comb.items()}
        else:
            kernel.append(comb)
    return Subspace.span(field, ncols, kernel)


def intersect(u, v):
    u._same(v)
    field, n = u.field, u.ambient_dim
    if not u.dim or not v.dim:
        return Subspace.zero(field, n)
    # find (a, b) with a.U = b.V
    stacked = list(u.basis) + [vec_scale(field, field.norm(-1), r) for r in v.basis]
    cols = [_to_sparse(r) for r in stacked]
    rel = kernel_of_map(field, len(stacked), n, cols)
    out = []
    for coeffs in rel.basis:
        w = zero_vector(field, n)
        for a, r in zip(coeffs[:u.dim], u.basis):
            if a:
                w = vec_add(field, w, vec_scale(field, a, r))
        out.append(w)
    return Subspace.span(field, n, out)


def quotient(ambient_dim, s, column_order=None):
    """Projection onto a complement of s: ``(projection, quotient_dim)``.

    The complement coordinates are the non-pivot columns of s.  With
    ``column_order`` the pivots are chosen scanning columns in that order,
    so later columns are preferred as survivors.
    """
    if s.ambient_dim != ambient_dim:
        raise LinalgError("ambient dimension mismatch")
    field = s.field
    order = list(column_order) if column_order is not None else list(range(ambient_dim))
    pos = {c: i for i, c in enumerate(order)}
    ech = Echelon(field, ambient_dim)
    for r in s.basis:
        ech.add({pos[j]: x for j, x in enumerate(r) if x})
    piv = {order[c] for c in ech.pivots}
    keep = [j for j in range(ambient_dim) if j not in piv]
    cols = []
    for j in range(ambient_dim):
        red = ech.reduce({pos[j]: field.one}, full=True)
        cols.append(tuple(red.get(pos[k], field.zero) for k in keep))
    return Matrix.from_columns(field, cols, len(keep)), len(keep), keep


def solve(m, rhs):
    """One solution x of m x = rhs, or None."""
    field = m.field
    aug = Matrix(field, m.rows, m.cols + 1,
                 tuple(r + (b,) for r, b in zip(m.data, rhs)))
    red, pivots, rank = rref(aug)
    if m.cols in pivots:
        return None
    x = [field.zero] * m.cols
    for i, c in enumerate(pivots):
        x[c] = red.data[i][m.cols]
    return tuple(x)


class Coordinates:
    """Solve for coefficients of vectors on a fixed independent family."""

    def __init__(self, field, ambient_dim, vectors):
        self.field = field
        self.n = ambient_dim
        self.k = len(vectors)
        self._ech = Echelon(field, ambient_dim + self.k)
        # rows [v_i | e_i]; after elimination we read coefficients back
        for i, v in enumerate(vectors):
            row = _to_sparse(v)
            row[ambient_dim + i] = field.one
            self._ech.add(row)
        lead = [c for c in self._ech.pivots if c < ambient_dim]
        if len(lead) != self.k:
            raise LinalgError("vectors are not independent")

    def __call__(self, v):
        row = self._ech.reduce(_to_sparse(v), full=True)
        if any(c < self.n for c in row):
            raise LinalgError("vector not in span")
        out = [self.field.zero] * self.k
        for c, x in row.items():
            out[c - self.n] = self.field.norm(-x)
        return tuple(out)
