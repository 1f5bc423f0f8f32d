import time
from fractions import Fraction

import pytest

from conftest import (
    fixture_extension,
    kz2,
    kz2_over_k,
    kz4_homogeneous,
    kz4_over_kz2,
    one,
    s3_functions,
    trivial_coaction,
)
from hopfgalois.galois import (
    NoCointegral,
    NotGalois,
    equivariant_projectivity_witness,
    find_cointegral,
    is_cointegral,
)
from hopfgalois.geometry import (
    KINDS,
    Connection,
    NotInvertibleInConvolution,
    SourceInvalid,
    all_kinds,
    associated_module,
    associated_module_report,
    automorphism_of,
    check_automorphism,
    check_connection,
    check_connection_form,
    check_gauge,
    check_lifting,
    check_strong,
    cointegral_data,
    cointegral_report,
    cointegral_strong_lifting,
    connection_form_directions,
    convert,
    convolution,
    convolution_inverse,
    convolution_unit,
    describe_nabla,
    find_strong_connection,
    gauge,
    gauge_act,
    gauge_directions,
    gauge_report,
    homogeneous_lifting,
    is_strong,
    nabla,
    round_trip,
    round_trip_report,
    sample_gauges,
    splitting_report,
    strong_connection_exists,
    transformation_of,
    universal_calculus,
)
from hopfgalois.linalg import LinMap, vtensor
from hopfgalois.structures import Comodule, matrix_dual_coalgebra, scan_basis_group_likes


def U2():
    return universal_calculus(kz2_over_k())


def U4():
    return universal_calculus(kz4_over_kz2())


def kz2_lifting():
    # ℓ(1) = 1⊗1, ℓ(g) = g⊗g
    return Connection("ell", LinMap(2, 4, [one(0), one(3)]))


def kz4_lifting():
    return Connection("ell", homogeneous_lifting(kz4_homogeneous()))


def test_universal_calculus():
    U = U2()
    assert U.omega1.dim == 2
    assert U.d.apply(one(0)) == {}
    assert U.report().passed
    U = U4()
    assert U.omega1.dim == 12
    assert U.report().passed


def test_universal_calculus_needs_galois():
    with pytest.raises(NotGalois):
        universal_calculus(trivial_coaction())


def test_grassmann_connection_form():
    U = U2()
    # ω(1) = 0, ω(g) = g·dg = g⊗g − 1⊗1
    omega = LinMap(2, 4, [{}, {0: -1, 3: 1}])
    assert check_connection_form(U, omega).passed
    assert convert(U, kz2_lifting(), "omega").map == omega


def test_zero_form_fails_second_condition():
    rep = check_connection_form(U2(), LinMap.zero(2, 4))
    bad = rep.failures()
    assert [c.name[:4] for c in bad] == ["(ii)"]
    assert bad[0].witness == ("g",)


def test_identity_projection_is_not_a_connection():
    U = U4()
    rep = check_connection(U, U.omega1.inclusion())
    assert not rep.get("ker Π = P(Ω¹B)P").ok
    assert any("not asserted" in n for n in rep.notes)


def test_lifting_to_splitting():
    s = convert(U2(), kz2_lifting(), "s")
    # s(1) = 1⊗1, s(g) = 1⊗g
    assert s.map == LinMap(2, 4, [one(0), one(1)])
    assert convert(U2(), kz2_lifting(), "D").map.is_zero()


@pytest.mark.parametrize("which", ["kz2", "kz4", "kz4-searched", "s3"])
def test_five_way_round_trip(which):
    if which == "kz2":
        U, x = U2(), kz2_lifting()
    elif which == "kz4":
        U, x = U4(), kz4_lifting()
    elif which == "kz4-searched":
        U, x = U4(), find_strong_connection(kz4_over_kz2())
    else:
        U = universal_calculus(s3_functions())
        x = Connection("ell", cointegral_strong_lifting(s3_functions()))
    t = time.perf_counter()
    for kind in KINDS:
        y = convert(U, x, kind)
        assert round_trip(U, y) == y
        assert round_trip_report(U, y).passed
    assert time.perf_counter() - t < 30


def test_round_trip_from_each_kind_recovers_all():
    U = U4()
    kinds = all_kinds(U, kz4_lifting())
    for k, y in kinds.items():
        assert all_kinds(U, y) == kinds, k


def test_invalid_source_is_rejected():
    U = U2()
    with pytest.raises(SourceInvalid):
        convert(U, Connection("omega", LinMap.zero(2, 4)), "ell")


def test_differential_agrees_with_d_on_base():
    U = U4()
    D = convert(U, kz4_lifting(), "D").map
    for b in kz4_over_kz2().B.basis:
        assert D.apply(b) == U.d.apply(b)


def test_strongness_criteria():
    for U, x in ((U2(), kz2_lifting()), (U4(), kz4_lifting())):
        rep = check_strong(U, x)
        assert rep.passed, rep.to_text()
        assert rep.get("criteria agree").ok


def test_tampered_unit_fails_unitality():
    U = U2()
    # ℓ(e) = 1⊗1 + (g⊗g − 1⊗1)
    bad = Connection("ell", LinMap(2, 4, [one(3), one(3)]))
    rep = check_lifting(U, bad.map)
    assert not rep.passed
    assert not is_strong(U, bad)


def test_non_strong_direction_is_consistent():
    U = U4()
    all_dirs = connection_form_directions(U)
    strong_dirs = connection_form_directions(U, strong=True)
    assert (len(all_dirs), len(strong_dirs)) == (4, 2)
    base = convert(U, kz4_lifting(), "omega").map
    weak = [w for w in all_dirs if not is_strong(U, Connection("omega", base + w))]
    assert weak
    x = Connection("omega", base + weak[0])
    assert check_connection_form(U, x.map).passed
    rep = check_strong(U, x)
    assert rep.get("criteria agree").ok
    assert not rep.passed


def test_kronecker_cointegral_lifting():
    d = kz2_over_k()
    delta = LinMap(4, 1, [one(0), {}, {}, one(0)])
    assert is_cointegral(d.C, delta)
    assert find_cointegral(d.C) == delta
    assert cointegral_strong_lifting(d, delta) == kz2_lifting().map
    assert cointegral_report(d, delta).passed


def test_matrix_dual_cointegral():
    C = matrix_dual_coalgebra(2)
    delta = find_cointegral(C)
    assert delta is not None and is_cointegral(C, delta)
    # C₂ carries no group-like basis element, so it cannot coaugment an extension
    assert scan_basis_group_likes(C) == []
    quarter = Fraction(1, 4)
    assert [col.get(0, 0) for col in delta.cols if col] == [quarter, quarter, quarter, -quarter]


def test_solved_cointegral_on_s3():
    rep = cointegral_report(s3_functions())
    assert rep.passed, rep.to_text()


def test_rejected_cointegral():
    d = kz2_over_k()
    with pytest.raises(NoCointegral):
        cointegral_data(d, LinMap(4, 1, [one(0), {}, {}, {}]))


def test_homogeneous_splitting():
    hd = kz4_homogeneous()
    assert splitting_report(hd, hd.pi.lift).passed
    assert is_strong(U4(), kz4_lifting())


def test_existence_equivalence_on_galois_fixtures():
    cases = [kz2_over_k(), kz4_over_kz2(), s3_functions()]
    for d in cases:
        assert strong_connection_exists(d)
        assert equivariant_projectivity_witness(d) is not None
    dual = fixture_extension("dual_numbers_self")
    assert not strong_connection_exists(dual)
    assert equivariant_projectivity_witness(dual) is None


def test_trivial_coaction_has_witness_without_connection():
    # the splitting criterion needs the Galois hypothesis
    d = trivial_coaction()
    assert equivariant_projectivity_witness(d) is not None
    assert not strong_connection_exists(d)


def test_gauge_unit_is_identity():
    d = kz4_over_kz2()
    u = convolution_unit(d)
    assert automorphism_of(d, u) == LinMap.identity(4)
    U = U4()
    x = kz4_lifting()
    g = gauge(d, u)
    for kind in KINDS:
        y = convert(U, x, kind)
        assert gauge_act(d, g, y, U) == y


def test_kz2_gauge_group():
    d = kz2_over_k()
    assert [f.cols for f in gauge_directions(d)] == [[{}, one(0)]]
    for x in (Fraction(3), Fraction(-1, 2)):
        f = LinMap(2, 2, [one(0), {0: x}])
        assert check_gauge(d, f).passed
        F = automorphism_of(d, f)
        assert F.apply(one(1)) == {1: x}
        assert check_automorphism(d, F).passed
        assert transformation_of(d, F) == f
        g = gauge(d, f)
        assert g.f_inv == LinMap(2, 2, [one(0), {0: 1 / x}])
        # scalars commute, so the Grassmann lifting is fixed
        assert gauge_act(d, g, kz2_lifting()) == kz2_lifting()


def test_singular_gauge_candidate():
    with pytest.raises(NotInvertibleInConvolution):
        gauge(kz2_over_k(), LinMap(2, 2, [one(0), {}]))


def test_gauge_laws_on_kz4():
    d = kz4_over_kz2()
    U = U4()
    gs = sample_gauges(d)
    assert len(gs) >= 2
    for g in gs:
        assert convolution(d, g.f, g.f_inv) == convolution_unit(d)
        assert convolution(d, g.f_inv, g.f) == convolution_unit(d)
        assert convolution_inverse(d, g.f) == g.f_inv
    rep = gauge_report(d, gs, kz4_lifting())
    assert rep.passed, rep.to_text()
    # conversion commutes with the action
    g = gs[-1]
    x = kz4_lifting()
    acted = gauge_act(d, g, x, U)
    for kind in KINDS:
        assert convert(U, acted, kind) == gauge_act(d, g, convert(U, x, kind), U)
    assert is_strong(U, acted)


def test_associated_module_of_trivial_comodule():
    d = kz4_over_kz2()
    V = Comodule(d.C, ("v",), LinMap(1, 2, [one(0)]), "right")
    M = associated_module(d, V)
    assert M.dim == d.B.dim


def test_rank_one_associated_module():
    d = kz2_over_k()
    U = U2()
    V = Comodule(d.C, ("v",), LinMap(1, 2, [one(1)]), "right")
    M = associated_module(d, V)
    # E = k·g
    assert M.dim == 1
    f = M.as_map(M.E.basis[0])
    assert f.apply(one(0)).keys() == {1}
    omega = convert(U, kz2_lifting(), "omega").map
    # ∇(g) = d(g) − g·ω(g) = 0
    assert nabla(U, M, omega, M.E.basis[0]).is_zero()
    assert describe_nabla(U, M, omega, M.E.basis[0]) == "v ↦ 0"
    rep = associated_module_report(M, kz2_lifting().map, U)
    assert rep.passed, rep.to_text()


def test_rank_two_associated_module():
    d = kz4_over_kz2()
    V = Comodule(d.C, ("v",), LinMap(1, 2, [one(1)]), "right")
    M = associated_module(d, V)
    rep = associated_module_report(M, kz4_lifting().map, U4())
    assert rep.passed, rep.to_text()
    assert rep.get("Leibniz ∇(bf) = d(b)f + b∇f").ok


def test_vtensor_layout():
    assert vtensor(one(1), one(1), kz2().dim) == one(3)
