"""Bounds and witnesses for the torsion submodule tau(A) of Omega_A.

tau(A) is the smallest kernel of Omega_A -> Omega_B over maps A -> B into
tame principal ideal algebras.  It is not computable directly, so this
module brackets it: annihilator pairs (xy = 0 gives x dy in tau) produce a
lower bound, and kernels of explicit maps an upper bound.  When the two
meet the value is certified.
"""

import math
from dataclasses import dataclass, field
from itertools import product as iproduct

from .algebra import (
    AlgebraError,
    embedding_dim,
    ideal_power,
    ideal_product,
    is_tame_pia,
    is_truncated_standard,
    product,
    socle,
    subalgebra_generated,
    truncated_poly,
)
from .differentials import induced_map, kaehler
from .linalg import Field, Subspace, intersect, kernel_basis, vec_add, vec_scale, zero_vector


class TorsionError(ValueError):
    pass


EXHAUSTIVE_PAIRS_LIMIT = 10 ** 4
EXHAUSTIVE_WITNESS_LIMIT = 512


def _span(field, n, vecs):
    return Subspace.span(field, n, list(vecs))


def _combo(field, n, coeffs, vecs):
    out = zero_vector(field, n)
    for c, v in zip(coeffs, vecs):
        if c:
            out = vec_add(field, out, vec_scale(field, c, v))
    return out


def _projective_points(field, vecs):
    """One representative of each line in span(vecs) (leading coeff 1)."""
    n = len(vecs[0]) if vecs else 0
    k = len(vecs)
    for lead in range(k):
        for tail in iproduct(field.elements(), repeat=k - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            yield _combo(field, n, coeffs, vecs)


def tau_lower_socle(a):
    """V_A: the span of s*dm for s in the socle and m in M."""
    M = a.maximal_ideal()
    w = kaehler(a)
    soc = socle(a)
    vecs = [w.act(s, w.d(m)) for s in soc.basis for m in M.basis]
    return _span(a.field, w.kdim, vecs)


def tau_lower_pairs(a, pairs=()):
    """A-submodule generated by x dy over annihilating pairs.

    Pairs: for each basis element y of M every x in ker(L_y) cap M, the
    user's ``pairs`` (checked), the socle pairs, and over small F_p every
    y in M up to scaling.  Returns ``(subspace, witnesses)``.
    """
    M = a.maximal_ideal()
    F = a.field
    w = kaehler(a)
    witnesses = []
    vecs = []

    def add(kind, x, y):
        v = w.act(x, w.d(y))
        vecs.append(v)
        if any(v):
            witnesses.append((kind, (x, y)))

    for x, y in pairs:
        x, y = a.element(x), a.element(y)
        if any(a.mul(x, y)):
            raise TorsionError(f"pair ({a.format(x)}, {a.format(y)}) does not multiply to 0")
        add("pair", x, y)
    ys = list(M.basis)
    if F.p and M.dim and F.p ** M.dim <= EXHAUSTIVE_PAIRS_LIMIT:
        ys = list(_projective_points(F, list(M.basis)))
    for y in ys:
        ann = intersect(kernel_basis(a.mul_matrix(y)), M.space)
        for x in ann.basis:
            add("annihilator", x, y)
    for s in socle(a).basis:
        for m in M.basis:
            add("socle", s, m)
    lower = w.submodule(vecs) if vecs else Subspace.zero(F, w.kdim)
    return lower, witnesses


def tau_upper(a, maps):
    """Intersection of ker f_* over maps into tame principal ideal algebras."""
    w = kaehler(a)
    up = Subspace.full(a.field, w.kdim)
    for f in maps:
        if f.source is not a:
            raise TorsionError("map does not start at this algebra")
        if not is_tame_pia(f.target):
            raise TorsionError(f"target {f.target!r} is not a tame principal ideal algebra")
        up = intersect(up, induced_map(f).kernel())
    return up


@dataclass
class TauBracket:
    algebra: object
    lower: Subspace
    upper: Subspace
    certified_equal: bool
    witnesses: list = field(default_factory=list)
    upper_maps: list = field(default_factory=list)

    def describe(self):
        w = kaehler(self.algebra)
        return {
            "lower_dim": self.lower.dim,
            "upper_dim": self.upper.dim,
            "certified_equal": self.certified_equal,
            "lower": [w.format(v) for v in self.lower.basis],
            "upper": [w.format(v) for v in self.upper.basis],
        }


def tau_bracket(a, maps=(), pairs=()):
    maps = list(maps)
    lower, witnesses = tau_lower_pairs(a, pairs)
    lower = lower + tau_lower_socle(a)
    upper = tau_upper(a, maps)
    if not upper.contains(lower):
        raise TorsionError("lower bound escapes the upper bound")
    return TauBracket(a, lower, upper, lower == upper, witnesses, maps)


def seminormal_kernel(m, exponents, field=None):
    """Kernel of Omega_A -> Omega_B for A = k[s_1..s_m] inside prod k[s_i]/(s_i^n_i).

    Checks that the s_i ds_j with i < j form a basis of the kernel.
    """
    field = field or Field.Q()
    exponents = list(exponents)
    if len(exponents) != m:
        raise TorsionError("need one exponent per factor")
    factors = [truncated_poly(field, n, var=f"s{i + 1}") for i, n in enumerate(exponents)]
    B = product(*factors)[0]
    gens = [B.var(f"s{i + 1}") for i in range(m)]
    A, inc = subalgebra_generated(B, gens, [f"s{i + 1}" for i in range(m)])
    fs = induced_map(inc)
    ker = fs.kernel()
    w = kaehler(A)
    claimed = [w.act(A.var_elements[i], w.d(A.var_elements[j]))
               for i in range(m) for j in range(i + 1, m)]
    span = _span(field, w.kdim, claimed)
    return {
        "kernel_dim": ker.dim,
        "expected": math.comb(m, 2),
        "basis_matches": span == ker and span.dim == len(claimed),
        "kernel": [w.format(v) for v in ker.basis],
    }


def nonembeddable_witness(a):
    """``(x, y)`` with x^2 = y^2 = 0 and xy != 0, or None."""
    F = a.field
    base = list(a.local_info.basis) if a.local_info is not None else [a.basis(i) for i in range(1, a.dim)]
    pool = list(base)
    for i in range(len(base)):
        for j in range(i + 1, len(base)):
            pool.append(vec_add(F, base[i], base[j]))
            pool.append(vec_add(F, base[i], vec_scale(F, F(-1), base[j])))
    if F.p and base and F.p ** len(base) <= EXHAUSTIVE_WITNESS_LIMIT:
        pool += list(_projective_points(F, base))
    sq0 = []
    seen = set()
    for x in pool:
        if any(x) and x not in seen and not any(a.mul(x, x)):
            seen.add(x)
            sq0.append(x)
    for i, x in enumerate(sq0):
        for y in sq0[i + 1:]:
            if any(a.mul(x, y)):
                return x, y
    return None


def _degrees(a, grading):
    degs = []
    for m in a.monomials:
        degs.append(sum(e * grading[v] for v, e in zip(a.var_names, m)))
    return degs


def element_degree(a, grading, x):
    degs = _degrees(a, grading)
    found = {degs[i] for i, c in enumerate(x) if c}
    if len(found) > 1:
        raise TorsionError(f"{a.format(x)} is not homogeneous")
    return found.pop() if found else None


def euler_differential(a, grading, x, y):
    """The Euler form e*x*dy - f*y*dx for homogeneous x, y of degrees e, f."""
    grading = dict(grading)
    missing = set(a.var_names) - set(grading)
    if missing:
        raise TorsionError(f"no degree for {sorted(missing)}")
    degs = _degrees(a, grading)
    for i in range(a.dim):
        for j in range(a.dim):
            for l in a.table[i][j]:
                if degs[l] != degs[i] + degs[j]:
                    raise TorsionError("the grading is not compatible with the multiplication")
    x, y = a.element(x), a.element(y)
    e = element_degree(a, grading, x) or 0
    f = element_degree(a, grading, y) or 0
    w = kaehler(a)
    F = a.field
    form = vec_add(F, vec_scale(F, F(e), w.act(x, w.d(y))),
                   vec_scale(F, F(-f), w.act(y, w.d(x))))
    return form


def valuation(pi, x):
    """Order of vanishing of pi(x) in k[s]/(s^n); ``math.inf`` for 0."""
    if is_truncated_standard(pi.target) is None:
        raise TorsionError("valuation needs a target of the form k[s]/(s^n)")
    v = pi.apply(pi.source.element(x))
    for e, c in enumerate(v):
        if c:
            return e
    return math.inf


def valuation_profile(pi):
    """Valuation of every basis element of the source."""
    return {lab: valuation(pi, pi.source.basis(i)) for i, lab in enumerate(pi.source.labels)}


def guettes_check(inc):
    """Filtration bound: kernel is nonzero whenever e < C(m, 2)."""
    A = inc.source
    if not inc.is_injective():
        raise TorsionError("inclusion is not injective")
    M = A.maximal_ideal()
    vals = [valuation(inc, v) for v in M.basis]
    e = min(vals) if vals else math.inf
    m = embedding_dim(A)
    prediction = e < math.comb(m, 2)
    observed = induced_map(inc).kernel().dim
    if prediction and not observed:
        raise TorsionError("kernel vanishes although the filtration bound predicts torsion")
    return {"e": e, "m": m, "bound": math.comb(m, 2), "prediction": prediction,
            "observed_kernel_dim": observed}


@dataclass(frozen=True)
class M3Witness:
    form: tuple
    case: str
    status: str
    pair: tuple


def m3_witness(a):
    """A nonzero element of tau(A) when M^3 = 0 and M is not principal."""
    M = a.maximal_ideal()
    if ideal_power(M, 3).dim:
        raise TorsionError("M^3 is not zero")
    if embedding_dim(a) <= 1:
        raise TorsionError("M is principal; no torsion to witness")
    w = kaehler(a)
    soc = socle(a)
    for m in M.basis:
        for s in soc.basis:
            v = w.act(s, w.d(m))
            if any(v):
                return M3Witness(v, "annihilator", "certified", (s, m))
    _, wits = tau_lower_pairs(a)
    if wits:
        kind, (x, y) = wits[0]
        return M3Witness(w.act(x, w.d(y)), "annihilator", "certified", (x, y))
    M2 = ideal_product(M, M)
    gens = [v for v in M.basis if not M2.contains(v)]
    x, y = gens[0], gens[1]
    F = a.field
    form = vec_add(F, w.act(x, w.d(y)), vec_scale(F, F(-1), w.act(y, w.d(x))))
    return M3Witness(form, "antisymmetric", "conditional", (x, y))
