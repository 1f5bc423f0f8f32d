"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its runtime, whatever
the outcome, and then asserts.
"""

import random
import time
from fractions import Fraction


from conftest import (
    fixture_extension,
    kz2,
    kz2_over_k,
    kz4,
    kz4_homogeneous,
    kz4_over_kz2,
    one,
    s3_functions,
    trivial_coaction,
)
from hopfgalois.coring import (
    check_coring,
    sweedler_coring,
    takeuchi_coring,
    takeuchi_report,
    takeuchi_round_trip,
    verify_coring_grouplike,
)
from hopfgalois.entwine import (
    bialgebra_entwining,
    build_entwining,
    check_bowtie,
    check_entwined_module,
    convolution_unit as ent_unit,
    regular_doi_koppinen,
    trivial_entwining,
    twisted_convolution,
    yetter_drinfeld_entwining,
)
from hopfgalois.galois import (
    antipode_translation,
    canonical_entwining,
    equivariant_projectivity_witness,
    find_cointegral,
    galois_report,
    is_cointegral,
    sequence_is_exact,
    translation_lemma_suite,
)
from hopfgalois.geometry import (
    KINDS,
    Connection,
    associated_module,
    associated_module_report,
    check_lifting,
    check_strong,
    cointegral_report,
    cointegral_strong_lifting,
    convert,
    find_strong_connection,
    gauge_report,
    homogeneous_lifting,
    round_trip,
    sample_gauges,
    strong_connection_exists,
    universal_calculus,
)
from hopfgalois.linalg import LinMap
from hopfgalois.qsl2 import SLq2, idempotent_check, podles_report
from hopfgalois.structures import (
    Comodule,
    builtin,
    check_axioms,
    classical_space,
    cyclic_group,
    dual_numbers,
    function_algebra,
    matrix_algebra,
    matrix_dual_coalgebra,
    regular_comodule,
    regular_module,
    sweedler_h4,
    symmetric_group_3,
)


class Criterion:
    """Collects named sub-results and prints one summary line."""

    def __init__(self, number, title, budget=None):
        self.number = number
        self.title = title
        self.budget = budget
        self.failed = []
        self.start = time.perf_counter()

    def check(self, label, ok):
        if not ok:
            self.failed.append(label)

    def finish(self, capsys):
        elapsed = time.perf_counter() - self.start
        if self.budget is not None and elapsed >= self.budget:
            self.failed.append(f"over budget ({elapsed:.2f}s >= {self.budget}s)")
        status = "PASS" if not self.failed else "FAIL"
        line = f"{status} criterion {self.number:>2}: {self.title} ({elapsed:.2f}s)"
        if self.failed:
            line += " -- failed: " + "; ".join(self.failed)
        with capsys.disabled():
            print("\n" + line)
        assert not self.failed, line


def test_criterion_01_axiom_suites(capsys):
    cr = Criterion(1, "builtin structures pass their axioms, each under 1 s")
    builders = {
        "classical_space": lambda: classical_space(["a", "b", "c"]),
        "dual_numbers": dual_numbers,
        "dual_numbers_algebra": lambda: builtin("dual_numbers_algebra"),
        "matrix_algebra(2)": lambda: matrix_algebra(2),
        "matrix_dual(2)": lambda: matrix_dual_coalgebra(2),
        "kZ2": kz2,
        "kZ4": kz4,
        "kS3": lambda: builtin("group_algebra", "S3"),
        "k^Z4": lambda: function_algebra(cyclic_group(4)),
        "k^S3": lambda: function_algebra(symmetric_group_3()),
        "H4": sweedler_h4,
    }
    for name, build in builders.items():
        x = build()
        t = time.perf_counter()
        ok = check_axioms(x).passed
        cr.check(name, ok and time.perf_counter() - t < 1.0)
    # C₂ on the basis 1*, x*, y*, (xy)*; index a*4 + b stands for a⊗b
    C = matrix_dual_coalgebra(2)
    want = {
        0: {0: 1, 5: 1, 10: 1, 15: -1},
        1: {4: 1, 1: 1, 14: 1, 11: -1},
        2: {8: 1, 2: 1, 13: -1, 7: 1},
        3: {12: 1, 6: 1, 9: -1, 3: 1},
    }
    cr.check("C2 comultiplication", all(C.comult.apply(one(b)) == want[b] for b in range(4)))
    cr.check("C2 counit", [C.counit.apply(one(b)) for b in range(4)] == [one(0), {}, {}, {}])
    cr.finish(capsys)


def _random_map(rng, dom, cod):
    cols = []
    for _ in range(dom):
        col = {}
        for _ in range(rng.randint(0, 3)):
            col[rng.randrange(cod)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        cols.append(col)
    return LinMap(dom, cod, cols)


def test_criterion_02_bowtie(capsys):
    cr = Criterion(2, "bow-tie relations and twisted convolution", budget=5.0)
    H2, H4, S = kz2(), kz4(), sweedler_h4()
    entwinings = {
        "trivial": trivial_entwining(matrix_algebra(2), dual_numbers()),
        "bialgebra(kZ2)": bialgebra_entwining(H2),
        "bialgebra(kZ4)": bialgebra_entwining(H4),
        "bialgebra(H4)": bialgebra_entwining(S),
        "doi-koppinen(H4)": build_entwining("doi_koppinen", *regular_doi_koppinen(S)),
        "yetter-drinfeld(H4)": yetter_drinfeld_entwining(S),
    }
    rng = random.Random(11)
    for name, E in entwinings.items():
        cr.check(f"bowtie {name}", check_bowtie(E).passed)
        u = ent_unit(E)
        c, a = E.C.dim, E.A.dim
        for _ in range(3):
            f, g, h = (_random_map(rng, c, a) for _ in range(3))
            unital = twisted_convolution(E, f, u) == f == twisted_convolution(E, u, f)
            lhs = twisted_convolution(E, twisted_convolution(E, f, g), h)
            assoc = lhs == twisted_convolution(E, f, twisted_convolution(E, g, h))
            cr.check(f"convolution {name}", unital and assoc)
    cr.finish(capsys)


def test_criterion_03_galois(capsys):
    cr = Criterion(3, "Galois certification, translation map, exact sequence", budget=10.0)
    for d in (kz2_over_k(), kz4_over_kz2()):
        cr.check(f"{d.name} Galois", galois_report(d).passed and d.is_galois())
    cr.check("antipode formula", antipode_translation(kz4_homogeneous()) == kz4_over_kz2().tau)
    for d in (kz2_over_k(), kz4_over_kz2()):
        rep = translation_lemma_suite(d)
        seven = [c for c in rep.checks if c.name.startswith("(")]
        cr.check(f"translation lemma {d.name}", rep.passed and len(seven) == 7)
    fixtures = [kz2_over_k(), kz4_over_kz2(), s3_functions(), trivial_coaction(),
                fixture_extension("non_galois", "trivial"), fixture_extension("strict_containment"),
                fixture_extension("dual_numbers_self")]
    cr.check("a non-Galois negative is present", any(not d.is_galois() for d in fixtures))
    for d in fixtures:
        cr.check(f"exactness on {d.name}", sequence_is_exact(d) == d.is_galois())
    cr.finish(capsys)


def test_criterion_04_canonical_entwining(capsys):
    cr = Criterion(4, "canonical entwining equals the bialgebra entwining")
    H = kz2()
    E = canonical_entwining(kz2_over_k())
    cr.check("ψ matrix", E.psi == bialgebra_entwining(H).psi)
    cr.check("P entwined module",
             check_entwined_module(E, regular_module(H.algebra), regular_comodule(H.coalgebra)).passed)
    cr.finish(capsys)


def test_criterion_05_corings(capsys):
    cr = Criterion(5, "Sweedler and Takeuchi corings, round trip, group-like")
    cr.check("Sweedler kZ2/k", check_coring(sweedler_coring(kz2().algebra, [one(0)])).passed)
    cr.check("Sweedler kZ4/kZ2", check_coring(sweedler_coring(kz4().algebra, [one(0), one(2)])).passed)
    for H in (kz2(), kz4()):
        E = bialgebra_entwining(H)
        cr.check("Takeuchi", check_coring(takeuchi_coring(E)).passed and takeuchi_report(E).passed)
        cr.check("round trip", takeuchi_round_trip(E).passed)
    for d in (kz2_over_k(), kz4_over_kz2()):
        rep = verify_coring_grouplike(d)
        cr.check(f"group-like {d.name}", rep.passed)
        cr.check(f"re-derived B {d.name}", rep.get("{b | b·g = g·b} equals B").ok)
    cr.finish(capsys)


def test_criterion_06_strong_connections(capsys):
    cr = Criterion(6, "strong connections, cointegrals, existence", budget=30.0)
    cases = [
        (kz2_over_k(), Connection("ell", LinMap(2, 4, [one(0), one(3)]))),
        (kz4_over_kz2(), Connection("ell", homogeneous_lifting(kz4_homogeneous()))),
        (kz4_over_kz2(), find_strong_connection(kz4_over_kz2())),
    ]
    for d, x in cases:
        U = universal_calculus(d)
        for kind in KINDS:
            y = convert(U, x, kind)
            cr.check(f"round trip {d.name} from {kind}", round_trip(U, y) == y)
        rep = check_strong(U, x)
        cr.check(f"criteria agree {d.name}", rep.passed and rep.get("criteria agree").ok)
    d = kz2_over_k()
    delta = LinMap(4, 1, [one(0), {}, {}, one(0)])
    ell = cointegral_strong_lifting(d, delta)
    cr.check("Kronecker cointegral", is_cointegral(d.C, delta) and cointegral_report(d, delta).passed)
    cr.check("Kronecker lifting", check_lifting(universal_calculus(d), ell).passed)
    C2 = matrix_dual_coalgebra(2)
    solved = find_cointegral(C2)
    cr.check("solved cointegral on C2", solved is not None and is_cointegral(C2, solved))
    cr.check("solved cointegral lifting on k^S3", cointegral_report(s3_functions()).passed)
    for d in (kz2_over_k(), kz4_over_kz2(), s3_functions(), fixture_extension("dual_numbers_self")):
        witness = equivariant_projectivity_witness(d) is not None
        cr.check(f"existence {d.name}", witness == strong_connection_exists(d))
    cr.finish(capsys)


def test_criterion_07_gauge(capsys):
    cr = Criterion(7, "gauge group laws and action", budget=10.0)
    d = kz4_over_kz2()
    rep = gauge_report(d, sample_gauges(d), Connection("ell", homogeneous_lifting(kz4_homogeneous())))
    cr.check("gauge report", rep.passed)
    names = " ".join(c.name for c in rep.checks)
    for piece in ("is a gauge transformation", "f_(F_f) = f", "F_(f_F) = F",
                  "preserves strongness", "commutes with ell -> s"):
        cr.check(f"covers {piece}", piece in names)
    cr.finish(capsys)


def test_criterion_08_associated_modules(capsys):
    cr = Criterion(8, "associated modules, Leibniz rule, splitting")
    d = kz2_over_k()
    V = Comodule(d.C, ("v",), LinMap(1, 2, [one(1)]), "right")
    M = associated_module(d, V)
    cr.check("dim E = 1", M.dim == 1)
    rep = associated_module_report(M, LinMap(2, 4, [one(0), one(3)]), universal_calculus(d))
    cr.check("report", rep.passed)
    cr.check("Leibniz", rep.get("Leibniz ∇(bf) = d(b)f + b∇f").ok)
    cr.check("splitting", rep.get("m∘(s⊗id) = id on E").ok and rep.get("(s⊗id)(E) ⊆ B⊗E").ok)
    d4 = kz4_over_kz2()
    M4 = associated_module(d4, Comodule(d4.C, ("v",), LinMap(1, 2, [one(1)]), "right"))
    ell4 = homogeneous_lifting(kz4_homogeneous())
    cr.check("rank-2 report", associated_module_report(M4, ell4, universal_calculus(d4)).passed)
    cr.finish(capsys)


def test_criterion_09_podles(capsys):
    cr = Criterion(9, "quantum sphere at symbolic (q, s)", budget=300.0)
    E = SLq2.symbolic()
    xi, eta, zeta = E.podles_generators()
    cr.check("counits", (E.counit(xi), E.counit(eta), E.counit(zeta)) == (E.s, -E.s, 0))
    s = E.s
    den = 1 + s * s
    shown = E.poly([(1 / den, (0,)), (s / den, (1,)), (s / den, (2,)), (s * s / den, (3,))])
    cr.check("i(g_1)", E.splitting(1) == shown)
    rep = podles_report(["relations", "coideal", "quotient", "monopole", "splitting"], n_max=2, d=6)
    cr.check("suite", rep.passed)
    cr.check("200 random words", any("200 random words" in c.name for c in rep.checks))
    cr.finish(capsys)


def test_criterion_10_idempotent(capsys):
    cr = Criterion(10, "idempotent p² = p, standard run passes, discrepancy noted", budget=120.0)
    rep = idempotent_check()
    names = [c.name for c in rep.checks]
    cr.check("standard symbolic", any("Q(q,s)" in n for n in names))
    cr.check("specialization pre-check", any("q=2, s=1" in n for n in names))
    cr.check("standard passes", rep.passed)
    cr.check("verbatim outcome shown", any("[verbatim]" in n for n in rep.notes))
    cr.finish(capsys)
