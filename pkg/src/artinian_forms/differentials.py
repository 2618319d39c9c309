"""Kähler differentials of a finite algebra and the maps between them.

``kaehler(a)`` presents Omega_A as the free module on de_1..de_(n-1) modulo
the A-span of d applied to the quadratic relations
``e_i e_j - sum_l c_ij^l e_l``.  Free coordinates are pairs ``(a, i)``
meaning ``e_a de_i``; the quotient keeps the lowest such pairs, so printed
bases read like ``dx, x*dx, y*dx, dy``.
"""

from dataclasses import dataclass

from . import expr
from .algebra import AlgebraError, Hom, Ideal, format_combination, quotient_by_ideal
from .linalg import (
    Field,
    Matrix,
    Subspace,
    kernel_basis,
    quotient as linalg_quotient,
    solve,
    unit_vector,
    vec_add,
    vec_scale,
    zero_vector,
)


class DifferentialsError(ValueError):
    pass


def _combine(field, mats, coeffs, v):
    """(sum_b coeffs[b] * mats[b]) applied to v."""
    out = zero_vector(field, len(v))
    for c, m in zip(coeffs, mats):
        if c:
            out = vec_add(field, out, vec_scale(field, c, m.apply(v)))
    return out


class OmegaModule:
    def __init__(self, algebra):
        a = self.algebra = algebra
        F = self.field = a.field
        n = a.dim
        self.free_dim = N = n * (n - 1)

        def idx(b, i):
            return (i - 1) * n + b

        self._idx = idx
        rels = []
        for i in range(1, n):
            for j in range(i, n):
                base = {}
                # e_i de_j + e_j de_i - sum_l c_ij^l de_l
                for (u, w) in ((i, j), (j, i)):
                    k = idx(u, w)
                    base[k] = F.norm(base.get(k, 0) + 1)
                for l, c in a.table[i][j].items():
                    if l:
                        k = idx(0, l)
                        base[k] = F.norm(base.get(k, 0) - c)
                base = {k: v for k, v in base.items() if v}
                for b in range(n):
                    row = {}
                    for k, v in base.items():
                        w, u = divmod(k, n)
                        for l, c in a.table[b][u].items():
                            kk = w * n + l
                            row[kk] = F.norm(row.get(kk, 0) + v * c)
                    row = {k: v for k, v in row.items() if v}
                    if row:
                        rels.append(row)
        self.relations = Subspace.span(F, N, rels)
        order = sorted(range(N), key=lambda k: (-(k // n), -(k % n)))
        self.projection, self.kdim, keep = linalg_quotient(N, self.relations, order)
        self.coords = [(k % n, k // n + 1) for k in keep]
        self.labels = [self._label(b, i) for b, i in self.coords]
        P = self.projection
        self.gen_images = [zero_vector(F, self.kdim)] + [P.column(idx(0, i)) for i in range(1, n)]
        self.d_matrix = Matrix.from_columns(F, self.gen_images, self.kdim)
        self.action = []
        for b in range(n):
            cols = []
            for (u, i) in self.coords:
                v = zero_vector(F, self.kdim)
                for l, c in a.table[b][u].items():
                    v = vec_add(F, v, vec_scale(F, c, P.column(idx(l, i))))
                cols.append(v)
            self.action.append(Matrix.from_columns(F, cols, self.kdim))
        self._check_leibniz()

    def _label(self, b, i):
        a = self.algebra
        li = a.labels[i]
        dpart = f"d{li}" if li in a.var_names else f"d({li})"
        return dpart if b == 0 else f"{a.labels[b]}*{dpart}"

    def _check_leibniz(self):
        a = self.algebra
        for i in range(1, a.dim):
            for j in range(i, a.dim):
                lhs = self.d(a.mul(a.basis(i), a.basis(j)))
                rhs = vec_add(self.field, self.action[i].apply(self.gen_images[j]),
                              self.action[j].apply(self.gen_images[i]))
                if lhs != rhs:
                    raise DifferentialsError("Leibniz rule fails; the module is inconsistent")

    def __repr__(self):
        return f"Omega({self.algebra!r}; dim {self.kdim}: {', '.join(self.labels)})"

    @property
    def zero(self):
        return zero_vector(self.field, self.kdim)

    def d(self, x):
        return self.d_matrix.apply(x)

    def act(self, x, w):
        """x . w for x in the algebra, w in Omega."""
        return _combine(self.field, self.action, x, w)

    def action_matrix(self, x):
        m = Matrix.zeros(self.field, self.kdim, self.kdim)
        cols = [self.act(x, unit_vector(self.field, self.kdim, k)) for k in range(self.kdim)]
        return Matrix.from_columns(self.field, cols, self.kdim) if self.kdim else m

    def basis(self, k):
        return unit_vector(self.field, self.kdim, k)

    def format(self, w):
        return format_combination(self.field, w, self.labels)

    def element(self, text):
        """Parse a form such as ``y*dx - 2*x^2*d(y)``."""
        if not isinstance(text, str):
            return tuple(self.field(c) for c in text)
        kind, v = expr.evaluate(expr.parse(text), OmegaBackend(self))
        if kind == "a":
            if any(v):
                raise expr.ExprError("expected a differential form, got a function")
            return self.zero
        return v

    def submodule(self, vectors):
        """A-submodule of Omega generated by ``vectors``."""
        vecs = [self.action[b].apply(v) for v in vectors for b in range(self.algebra.dim)]
        return Subspace.span(self.field, self.kdim, vecs)


class OmegaBackend:
    """Values are ("a", algebra element) or ("w", form)."""

    def __init__(self, omega):
        self.w = omega
        self.a = omega.algebra

    def const(self, c):
        return ("a", self.a.scale(c, self.a.unit))

    def var(self, name):
        a = self.a
        if name in a.var_names:
            return ("a", a.var(name))
        if name.startswith("d") and name[1:] in a.var_names:
            return ("w", self.w.d(a.var(name[1:])))
        raise expr.ExprError(f"unknown name {name!r}")

    def add(self, x, y):
        if x[0] != y[0]:
            if x[0] == "a" and not any(x[1]):
                return y
            if y[0] == "a" and not any(y[1]):
                return x
            raise expr.ExprError("cannot add a function and a differential form")
        if x[0] == "a":
            return ("a", self.a.add(x[1], y[1]))
        return ("w", vec_add(self.w.field, x[1], y[1]))

    def neg(self, x):
        return (x[0], vec_scale(self.w.field, self.w.field(-1), x[1]))

    def mul(self, x, y):
        if x[0] == "w" and y[0] == "w":
            raise expr.ExprError("product of two differential forms")
        if x[0] == "a" and y[0] == "a":
            return ("a", self.a.mul(x[1], y[1]))
        if x[0] == "w":
            x, y = y, x
        return ("w", self.w.act(x[1], y[1]))

    def power(self, x, k):
        if x[0] == "w":
            if k == 1:
                return x
            raise expr.ExprError("power of a differential form")
        return ("a", self.a.power(x[1], k))

    def call(self, name, args):
        if name != "d" or len(args) != 1:
            raise expr.ExprError(f"unknown function {name!r}")
        kind, v = args[0]
        if kind != "a":
            raise expr.ExprError("d of a differential form")
        return ("w", self.w.d(v))


_CACHE = {}


def kaehler(a):
    """Omega_{A/k}; cached per algebra object."""
    key = id(a)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is a:
        return hit[1]
    om = OmegaModule(a)
    _CACHE[key] = (a, om)
    return om


@dataclass(frozen=True)
class OmegaMap:
    source: OmegaModule
    target: OmegaModule
    matrix: Matrix

    def apply(self, w):
        return self.matrix.apply(w)

    def kernel(self):
        return kernel_basis(self.matrix)

    def image(self):
        return Subspace.span(self.source.field, self.target.kdim, self.matrix.columns())

    @property
    def rank(self):
        return self.matrix.rank


def induced_map(f):
    """f_* : Omega_A -> Omega_B, e_a de_i -> f(e_a) d f(e_i)."""
    wa, wb = kaehler(f.source), kaehler(f.target)
    cols = []
    for (b, i) in wa.coords:
        cols.append(wb.act(f.matrix.column(b), wb.d(f.matrix.column(i))))
    m = Matrix.from_columns(wa.field, cols, wb.kdim)
    fm = OmegaMap(wa, wb, m)
    if wa.kdim and (m @ wa.d_matrix) != (wb.d_matrix @ f.matrix):
        raise DifferentialsError("naturality square does not commute")
    return fm


@dataclass(frozen=True)
class RelativeOmega:
    """Omega_S modulo the S-submodule generated by d(f(R))."""

    omega: OmegaModule
    submodule: Subspace
    projection: Matrix
    dim: int
    keep: tuple

    def format_class(self, k):
        return self.omega.labels[self.keep[k]]


def relative_omega(f):
    ws = kaehler(f.target)
    sub = ws.submodule([ws.d(c) for c in f.matrix.columns()])
    proj, dim, keep = linalg_quotient(ws.kdim, sub)
    return RelativeOmega(ws, sub, proj, dim, tuple(keep))


@dataclass(frozen=True)
class HC1:
    """Omega_A / dA."""

    omega: OmegaModule
    exact: Subspace
    projection: Matrix
    dim: int
    keep: tuple


def hc1(a):
    w = kaehler(a)
    exact = Subspace.span(w.field, w.kdim, w.d_matrix.columns())
    proj, dim, keep = linalg_quotient(w.kdim, exact)
    return HC1(w, exact, proj, dim, tuple(keep))


def h0_dr(a):
    return kernel_basis(kaehler(a).d_matrix)


# --------------------------------------------------------------------------
# exactness checks

def _stack_rows(field, top, bottom, cols):
    return Matrix(field, top.rows + bottom.rows, cols, top.data + bottom.data)


def _hstack(field, left, right):
    return Matrix(field, left.rows, left.cols + right.cols,
                  tuple(a + b for a, b in zip(left.data, right.data)))


def _induced_quotient_hom(f, qr, sr, s_surj, r_keep):
    """R/I -> S/I from f and the quotient data."""
    cols = [s_surj.apply(f.matrix.column(i)) for i in r_keep]
    return Hom(qr, sr, Matrix.from_columns(f.source.field, cols, sr.dim))


def _as_ideal(algebra, I):
    if isinstance(I, Ideal):
        if I.algebra is not algebra:
            raise AlgebraError("ideal belongs to a different algebra")
        return I
    from .algebra import ideal_generated
    return ideal_generated(algebra, [algebra.element(g) for g in I])


def mayer_vietoris_check(f, I):
    """Ranks and exactness of Omega_R -> Omega_S + Omega_{R/I} -> Omega_{S/I} -> 0.

    ``f`` is an inclusion R -> S; ``I`` an ideal of S (or generators in S)
    lying inside f(R).
    """
    R, S = f.source, f.target
    F = R.field
    I_S = _as_ideal(S, I)
    if not f.is_injective():
        raise AlgebraError("map R -> S is not injective")
    if not f.image().contains(I_S.space):
        raise AlgebraError("ideal is not contained in the image of R")
    I_R = Ideal(R, f.preimage(I_S.space))
    Sq, s_surj, _ = quotient_by_ideal(S, I_S)
    Rq, r_surj, _ = quotient_by_ideal(R, I_R)
    r_keep = [next(j for j in range(R.dim) if r_surj.matrix.column(j) == Rq.basis(k))
              for k in range(Rq.dim)]
    fbar = _induced_quotient_hom(f, Rq, Sq, s_surj, r_keep)
    f_s = induced_map(f)
    pi_r = induced_map(r_surj)
    pi_s = induced_map(s_surj)
    fbar_s = induced_map(fbar)
    wR, wS, wRq, wSq = f_s.source, f_s.target, pi_r.target, pi_s.target
    alpha = _stack_rows(F, f_s.matrix, pi_r.matrix, wR.kdim)
    neg = Matrix(F, fbar_s.matrix.rows, fbar_s.matrix.cols,
                 tuple(vec_scale(F, F(-1), r) for r in fbar_s.matrix.data))
    beta = _hstack(F, pi_s.matrix, neg)
    rank_a, rank_b = alpha.rank, beta.rank
    composite_zero = (beta @ alpha).is_zero() if wR.kdim else True
    ker_b = wS.kdim + wRq.kdim - rank_b
    return {
        "dims": (wR.kdim, wS.kdim + wRq.kdim, wSq.kdim),
        "ranks": (rank_a, rank_b),
        "composite_zero": composite_zero,
        "exact_middle": composite_zero and ker_b == rank_a,
        "onto": rank_b == wSq.kdim,
        "exact": composite_zero and ker_b == rank_a and rank_b == wSq.kdim,
        "kernel_alpha": wR.kdim - rank_a,
    }


def hc1_integration_check(f):
    """0 -> ker f_* -> HC1(A) -> B/(A + H0(B)) -> Omega_B/f_*Omega_A -> 0.

    Requires char 0, B a principal ideal algebra and f injective.  The middle
    map integrates: a form w goes to any b with d_B b = f_* w.
    """
    from .algebra import is_pia

    A, B = f.source, f.target
    F = A.field
    if F.p:
        raise AlgebraError("integration needs characteristic 0")
    if not f.is_injective():
        raise AlgebraError("A -> B is not injective")
    if not is_pia(B)[0]:
        raise AlgebraError("B is not a principal ideal algebra")
    fs = induced_map(f)
    wA, wB = fs.source, fs.target
    H = hc1(A)
    h_dim = H.dim
    ker_f = fs.kernel()
    # B / (A + H0(B))
    sub = f.image() + h0_dr(B)
    qproj, q_dim, _ = linalg_quotient(B.dim, sub)
    integ_cols = []
    for k in range(wA.kdim):
        target = fs.apply(wA.basis(k))
        b = solve(wB.d_matrix, target)
        if b is None:
            raise AlgebraError("f_* w is not exact in B")
        integ_cols.append(qproj.apply(b))
    integ = Matrix.from_columns(F, integ_cols, q_dim)
    kills_exact = all(not any(integ.apply(wA.d(A.basis(i)))) for i in range(A.dim))
    img_im = fs.image()
    cproj, c_dim, _ = linalg_quotient(wB.kdim, img_im)
    # delta: B/(A+H0) -> Omega_B / f_* Omega_A, via a section of qproj
    _, _, qkeep = linalg_quotient(B.dim, sub)
    delta_cols = [cproj.apply(wB.d(B.basis(j))) for j in qkeep]
    delta = Matrix.from_columns(F, delta_cols, c_dim)
    # exactness
    ker_in_hc1 = ker_f.image(H.projection)
    injective = ker_in_hc1.dim == ker_f.dim
    ker_integ = kernel_basis(integ).image(H.projection)
    exact_hc1 = ker_in_hc1 == ker_integ
    im_integ = Subspace.span(F, q_dim, integ.columns())
    exact_quot = im_integ == kernel_basis(delta)
    onto = delta.rank == c_dim
    dims = (ker_f.dim, h_dim, q_dim, c_dim)
    return {
        "dims": dims,
        "alternating_sum": dims[0] - dims[1] + dims[2] - dims[3],
        "integration_well_defined": kills_exact,
        "exact": injective and exact_hc1 and exact_quot and onto and kills_exact,
        "positions": {"kernel": injective, "hc1": exact_hc1, "quotient": exact_quot, "onto": onto},
    }
