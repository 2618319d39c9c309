"""Acceptance suite: fifteen criteria, exact arithmetic, one PASS/FAIL line each."""

import time
from math import comb

import pytest

from artinian_forms.algebra import (
    Algebra,
    ideal_generated,
    is_pia,
    make_hom,
    product,
    quotient_presentation,
    subalgebra_generated,
    truncated_poly,
)
from artinian_forms.corpus import load_cases, run_case, run_corpus
from artinian_forms.differentials import hc1, hc1_integration_check, induced_map, kaehler
from artinian_forms.hochschild import (
    double_relative_hh0,
    hh,
    hh2_generator_check,
    hh_relative,
    les_check,
    surjectivity_check,
)
from artinian_forms.linalg import Field, Subspace, intersect
from artinian_forms.randomized import binomial_identity, run_properties
from artinian_forms.torsion import guettes_check, seminormal_kernel, tau_bracket, tau_lower_socle

Q, F2, F3, F5 = Field.Q(), Field.Fp(2), Field.Fp(3), Field.Fp(5)


@pytest.fixture
def verdict(capsys):
    def report(number, title, checks):
        failed = [name for name, ok in checks if not ok]
        line = f"{'PASS' if not failed else 'FAIL'} criterion {number!s:>2}: {title}"
        if failed:
            line += " [failed: " + "; ".join(failed) + "]"
        with capsys.disabled():
            print("\n" + line)
        assert not failed, line
    return report


def _forms(a, texts):
    w = kaehler(a)
    return Subspace.span(a.field, w.kdim, [w.element(t) for t in texts])


@pytest.fixture(scope="module")
def corpus_algebras():
    out = []
    for case in load_cases():
        res = run_case(case).result
        out += [(case.id, k, v) for k, v in res.bindings.items() if isinstance(v, Algebra)]
    return out


def test_c01_wild_semigroup_truncation(verdict):
    checks = []
    for field in (F5, Q):
        B = truncated_poly(field, 5)
        A = quotient_presentation(field, ["x", "y"], 4, ["x^3", "x*y", "y^2"])
        ker = induced_map(make_hom(A, B, {"x": "s^2", "y": "s^3"})).kernel()
        if field.p:
            checks += [("F5 dim Omega_A = 4", kaehler(A).kdim == 4),
                       ("F5 kernel is zero", ker.dim == 0)]
        else:
            checks += [("Q kernel is span(y dx)", ker == _forms(A, ["y*dx"]))]
    verdict(1, "wild truncation k[s^2, s^3] in k[s]/(s^5): Omega_A injects over F5, not over Q",
            checks)


def test_c02_wild_square_zero_char_two(verdict):
    B, *_ = product(*[truncated_poly(F2, 2, f"s{i}") for i in (1, 2, 3)])
    A = quotient_presentation(F2, ["x", "y"], 2, [])
    f = make_hom(A, B, {"x": "s1 + s3", "y": "s2 + s3"})
    fs = induced_map(f)
    verdict(2, "k[x,y]/(x,y)^2 over F2 into three square-zero lines", [
        ("dim Omega_A = 5", kaehler(A).kdim == 5),
        ("dim Omega_B = 6", kaehler(B).kdim == 6),
        ("induced map injective", fs.kernel().dim == 0),
    ])


def test_c03_wild_truncations_have_top_form_torsion(verdict):
    checks = []
    for p, image, n in ((2, "s^3", 5), (5, "s^6", 29)):
        field = Field.Fp(p)
        A = truncated_poly(field, p, "x")
        f = make_hom(A, truncated_poly(field, n), {"x": image})
        br = tau_bracket(A, [f])
        top = _forms(A, [f"x^{p - 1}*dx"])
        checks += [(f"F{p} bracket certified", br.certified_equal),
                   (f"F{p} tau = span(x^{p - 1} dx)", br.upper == top and br.upper.dim == 1)]
    verdict(3, "F_p[x]/(x^p) for p = 2, 5: tau is the top form", checks)


def test_c04_seminormal_kernels(verdict):
    checks = []
    for exps in ((2, 3), (2, 3, 2)):
        m = len(exps)
        r = seminormal_kernel(m, exps)
        checks += [(f"m={m} kernel dim C(m,2)", r["kernel_dim"] == comb(m, 2)),
                   (f"m={m} basis s_i ds_j", r["basis_matches"])]
    verdict(4, "seminormal products: kernel of dimension C(m,2) on the s_i ds_j", checks)


def test_c05_square_zero_bracket_with_stated_maps(verdict):
    checks = []
    for m in (2, 3, 4):
        A = quotient_presentation(Q, m, 2, [])
        B, *_ = product(*[truncated_poly(Q, 2, f"s{i + 1}") for i in range(m)])
        f = make_hom(A, B, {v: f"s{i + 1}" for i, v in enumerate(A.var_names)})
        br = tau_bracket(A, [f])
        checks.append((f"Q m={m}: certified dim {comb(m, 2)}",
                       br.certified_equal and br.upper.dim == comb(m, 2)))
    for m in (2, 3, 4):
        A = quotient_presentation(F2, m, 2, [])
        B, *_ = product(*[truncated_poly(F2, 3, f"s{i + 1}") for i in range(m)])
        f = make_hom(A, B, {v: f"s{i + 1}^2" for i, v in enumerate(A.var_names)})
        br = tau_bracket(A, [f])
        checks.append((f"F2 m={m}: certified dim {comb(m + 1, 2)} with x_i -> s_i^2 in cubes "
                       f"(got {br.lower.dim} <= tau <= {br.upper.dim})",
                       br.certified_equal and br.upper.dim == comb(m + 1, 2)))
    verdict(5, "square-zero algebras: tau has dim C(m,2) over Q, C(m+1,2) over F2", checks)


def test_c05b_square_zero_char_two_with_odd_powers(verdict):
    checks = []
    for m in (2, 3, 4):
        A = quotient_presentation(F2, m, 2, [])
        B, *_ = product(*[truncated_poly(F2, 5, f"s{i + 1}") for i in range(m)])
        g = make_hom(A, B, {v: f"s{i + 1}^3" for i, v in enumerate(A.var_names)})
        br = tau_bracket(A, [g])
        checks.append((f"m={m}", br.certified_equal and br.upper.dim == comb(m + 1, 2)))
    verdict("5b", "F2 square-zero: x_i -> s_i^3 in k[s_i]/(s_i^5) certifies C(m+1,2)", checks)


def test_c06_cube_truncation_socle_forms(verdict):
    checks = []
    for m, v in ((2, 2), (3, 8)):
        A = quotient_presentation(Q, m, 3, [])
        d = tau_lower_socle(A).dim
        checks.append((f"m={m}: dim V_A = {v}", d == v == 2 * comb(m + 1, 3)))
    for m in range(1, 7):
        a, b, c = binomial_identity(m)
        checks.append((f"binomial identity m={m}", a == b == c))
    verdict(6, "k[x_1..x_m]/M^3: dim V_A = 2 C(m+1,3) and the three counts agree", checks)


def test_c07_two_embeddings_of_a3(verdict):
    A = quotient_presentation(Q, ["x", "y"], 4, ["x^3", "x^2*y", "y^2"])
    f1 = make_hom(A, truncated_poly(Q, 6), {"x": "s^2", "y": "s^3"})
    f2 = make_hom(A, truncated_poly(Q, 9, "t"), {"x": "t^3", "y": "t^5"})
    k1, k2 = induced_map(f1).kernel(), induced_map(f2).kernel()
    br = tau_bracket(A, [f1, f2])
    xy = _forms(A, ["x*y*dx"])
    verdict(7, "A_3 = k[x,y]/(x^3, x^2 y, y^2) and its two embeddings", [
        ("dim Omega = 6", kaehler(A).kdim == 6),
        ("first kernel", k1 == _forms(A, ["2*x*dy - 3*y*dx", "x*y*dx"])),
        ("second kernel", k2 == _forms(A, ["3*x*dy - 5*y*dx", "x*y*dx"])),
        ("intersection span(xy dx)", intersect(k1, k2) == xy),
        ("bracket certified at span(xy dx)", br.certified_equal and br.upper == xy),
    ])


def test_c08_multiplicity_bound(verdict):
    B = truncated_poly(Q, 12)
    A, inc = subalgebra_generated(B, ["s^4", "s^5", "s^6", "s^7"])
    r = guettes_check(inc)
    verdict(8, "k[s^4..s^7] in k[s]/(s^12): e = m = 4 < C(4,2) and the kernel is nonzero", [
        ("e = 4", r["e"] == 4), ("m = 4", r["m"] == 4),
        ("bound predicts torsion", r["prediction"]),
        ("kernel nonzero", induced_map(inc).kernel().dim > 0),
    ])


def test_c09_hc1_detects_principal_ideal_algebras(verdict, corpus_algebras):
    rational = [(c, k, a) for c, k, a in corpus_algebras if a.field.p == 0]
    wrong = [f"{c}:{k}" for c, k, a in rational if is_pia(a)[0] == (hc1(a).dim != 0)]
    A, inc = subalgebra_generated(truncated_poly(Q, 6), ["s^2", "s^3"])
    seq = hc1_integration_check(inc)
    verdict(9, f"HC_1 vanishes exactly on the PIAs ({len(rational)} corpus algebras over Q)", [
        ("HC_1 = 0 iff PIA" + (f" (wrong: {', '.join(wrong)})" if wrong else ""), not wrong),
        ("both kinds present", any(is_pia(a)[0] for *_, a in rational)
         and any(not is_pia(a)[0] for *_, a in rational)),
        ("integration sequence dims (2,2,1,1)", tuple(seq["dims"]) == (2, 2, 1, 1)),
        ("integration sequence exact", seq["exact"]),
    ])


def test_c10_hh2_of_truncated_polynomials(verdict):
    checks = []
    for field, ns in ((Q, (2, 3, 4)), (F2, (2, 4)), (F3, (3,))):
        for n in ns:
            want = n if field.p else n - 1
            r = hh2_generator_check(n, field)
            checks += [(f"{field.name} n={n}: dim {want}", hh(truncated_poly(field, n), 2).dim == want),
                       (f"{field.name} n={n}: eta classes are cycles", r["generators_are_cycles"]),
                       (f"{field.name} n={n}: eta classes generate", r["generates"])]
    verdict(10, "HH_2(k[s]/(s^n)) and its eta generators", checks)


def test_c11_relative_hh1(verdict):
    checks = []
    for field, want in ((Q, 1), (F2, 2)):
        R = truncated_poly(field, 2, "t")
        I = ideal_generated(R, [R.var("t")])
        checks += [(f"{field.name} HH_1(R, I) = {want}", hh_relative(R, I, 1).dim == want),
                   (f"{field.name} long exact sequence", les_check(R, I)["all_exact"])]
    rep = run_corpus("rel-*")
    checks.append((f"relative corpus cases ({len(rep.cases)})", rep.ok and len(rep.cases) >= 6))
    verdict(11, "relative HH_1 of k[t]/(t^2) at (t) and the presentation sequences", checks)


def test_c12_double_relative_and_surjectivity(verdict):
    S = truncated_poly(Q, 9)
    _, inc = subalgebra_generated(S, ["s^3", "s^5"])
    I = ideal_generated(S, [S.element("s^8")])
    d = double_relative_hh0(inc, I)
    s = surjectivity_check(inc, I)
    S3 = truncated_poly(F3, 4)
    _, inc3 = subalgebra_generated(S3, ["s^2", "s^3"])
    p = surjectivity_check(inc3, ideal_generated(S3, [S3.element("s^2")]))
    verdict(12, "conductor example k[s^3, s^5]: cone HH_0, ontoness, and the char 3 count", [
        ("cone HH_0 = tensor formula = 1",
         d["cone_dim"] == d["tensor_dim"] == 1 and d["agree"] and d["phi_iso"]),
        ("composite onto in char 0", s["onto"]),
        ("F3[s]/(s^2) cokernel matches the count",
         p["quotient_target_cokernel"] == p["porism_prediction"] == 1),
    ])


def test_c13_omega_is_hh1_on_the_corpus(verdict, corpus_algebras):
    small = [(c, k, a) for c, k, a in corpus_algebras if a.dim <= 6]
    bad = [f"{c}:{k}" for c, k, a in small if kaehler(a).kdim != hh(a, 1).dim]
    chars = {a.field.p for *_, a in small}
    verdict(13, f"dim Omega = dim HH_1 on {len(small)} corpus algebras of dim <= 6", [
        ("at least ten algebras", len(small) >= 10),
        ("both characteristics", 0 in chars and any(chars - {0})),
        ("dimensions agree" + (f" (wrong: {', '.join(bad)})" if bad else ""), not bad),
    ])


def test_c14_property_suites(verdict):
    rep = run_properties(seed=0, count=100)
    verdict(14, "seeded property suites, 100 instances each", [
        (f"{name}: {len(r['failures'])} failures of {r['runs']}",
         r["runs"] >= 100 and not r["failures"])
        for name, r in rep.items()
    ])


def test_c15_full_corpus(verdict):
    t0 = time.perf_counter()
    rep = run_corpus()
    secs = time.perf_counter() - t0
    verdict(15, f"full corpus: {len(rep.cases)} cases in {secs:.1f} s", [
        ("zero mismatches", rep.mismatches == 0),
        ("within 60 seconds", secs <= 60),
    ])
