import time

import pytest

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
from hopfgalois.entwine import bialgebra_entwining, check_entwined_module, trivial_entwining
from hopfgalois.galois import (
    GaloisData,
    NotGalois,
    NotSubalgebra,
    antipode_translation,
    canonical_entwining,
    canonical_entwining_report,
    coaction_invariants,
    corrupt_tau_sign,
    e_coaction_invariants,
    equivariant_projectivity_witness,
    exact_sequence_check,
    galois_report,
    homogeneous,
    homogeneous_report,
    lemma_coinvariants_containment,
    principality_report,
    sequence_is_exact,
    translation_lemma_suite,
    translation_map,
    verify_splitting,
)
from hopfgalois.linalg import LinMap, Subspace, subspace_equal, vtensor
from hopfgalois.structures import Algebra, classical_space, regular_comodule, regular_module


def balanced_vec(data, x, y):
    return data.balanced.project_vec(vtensor(one(x), one(y), data.n))


def test_coaction_invariants():
    d = kz2_over_k()
    assert subspace_equal(d.B, Subspace(2, [one(0)]))
    g = kz4_over_kz2()
    assert subspace_equal(g.B, Subspace(4, [one(0), one(2)]))
    H = kz2()
    const = LinMap(2, 4, [one(0), one(2)])
    assert coaction_invariants(H.algebra, H.coalgebra, const).dim == 2


def test_invariant_containment():
    for data in (kz2_over_k(), kz4_over_kz2()):
        rep = lemma_coinvariants_containment(data)
        assert rep.passed
        assert subspace_equal(data.B, e_coaction_invariants(data.P, data.C, data.coaction, data.e))


def test_strict_containment_is_flagged():
    data = fixture_extension("strict_containment")
    B = data.B
    Be = e_coaction_invariants(data.P, data.C, data.coaction, data.e)
    assert B.issubset(Be)
    assert (B.dim, Be.dim) == (1, 2)
    rep = lemma_coinvariants_containment(data)
    assert rep.passed
    assert "equal=False" in rep.get("equality when Galois").detail
    assert not data.is_galois()


def test_kz2_canonical_map_is_permutation():
    d = kz2_over_k()
    can = d.can
    # 1⊗1↦1⊗1, 1⊗g↦g⊗g, g⊗1↦g⊗1, g⊗g↦1⊗g
    images = {(0, 0): (0, 0), (0, 1): (1, 1), (1, 0): (1, 0), (1, 1): (0, 1)}
    for (x, y), (u, v) in images.items():
        assert can.apply(balanced_vec(d, x, y)) == vtensor(one(u), one(v), 2)
    assert d.is_galois()


def test_kz4_over_kz2_is_galois():
    d = kz4_over_kz2()
    assert d.balanced.dim == 8
    assert d.n * d.c == 8
    assert d.is_galois()


def test_trivial_coaction_is_not_galois():
    d = trivial_coaction()
    assert not d.is_galois()
    rep = galois_report(d)
    assert rep.get("canonical map bijective").witness == ("rank 2",)
    with pytest.raises(NotGalois):
        translation_map(d)


def test_translation_maps():
    d = kz2_over_k()
    assert d.tau.apply(one(1)) == balanced_vec(d, 1, 1)
    h = kz4_over_kz2()
    # τ([g]) = g³⊗_B g
    assert h.tau.apply(one(1)) == balanced_vec(h, 3, 1)
    assert h.describe_tau()["[g]"] == "g⊗g3"
    for data in (d, h):
        assert data.tau.apply(data.e) == balanced_vec(data, 0, 0)


def test_antipode_formula_on_homogeneous():
    hd = kz4_homogeneous()
    assert antipode_translation(hd) == hd.galois.tau
    assert homogeneous_report(hd).passed


@pytest.mark.parametrize("build", [kz2_over_k, kz4_over_kz2, s3_functions])
def test_translation_lemma_suite(build):
    t = time.perf_counter()
    rep = translation_lemma_suite(build())
    assert rep.passed, rep.to_text()
    assert [c.name[:4] for c in rep.checks if c.name.startswith("(")] == [
        "(i) ", "(ii)", "(iii", "(iv)", "(v) ", "(vi)", "(vii"]
    assert time.perf_counter() - t < 10


def test_corrupted_translation_map():
    bad = corrupt_tau_sign(kz2_over_k(), 1)
    rep = translation_lemma_suite(bad)
    chk = rep.get("(i) c^[1] c^[2]_(0) ⊗ c^[2]_(1) = 1⊗c")
    assert not chk.ok
    assert chk.witness == ("g",)


def test_canonical_entwining():
    d = kz2_over_k()
    E = canonical_entwining(d)
    assert E.psi == bialgebra_entwining(kz2()).psi
    H = kz2()
    assert check_entwined_module(E, regular_module(H.algebra), regular_comodule(H.coalgebra)).passed
    assert canonical_entwining_report(kz4_over_kz2()).passed


def test_canonical_entwining_on_quotient():
    # ψ([h]⊗p) = p_(1)⊗[h p_(2)]
    hd = kz4_homogeneous()
    d = hd.galois
    psi = canonical_entwining(d).psi
    for h in range(2):
        for p in range(4):
            want = vtensor(one(p), hd.pi.project_vec(one((hd.pi.reps[h] + p) % 4)), 2)
            assert psi.apply(vtensor(one(h), one(p), 4)) == want


def test_one_dimensional_entwining_is_flip():
    from hopfgalois.structures import Coalgebra

    k = Algebra(("1",), LinMap(1, 1, [one(0)]), one(0))
    kc = Coalgebra(("1",), LinMap(1, 1, [one(0)]), LinMap(1, 1, [one(0)]))
    d = GaloisData(k, kc, LinMap(1, 1, [one(0)]), one(0))
    assert canonical_entwining(d).psi == trivial_entwining(k, kc).psi


def test_exact_sequence():
    rep = exact_sequence_check(kz2_over_k())
    assert rep.passed
    assert "dim P(Ω¹B)P = 0, dim Ω¹P = 2" in rep.checks[0].detail
    rep = exact_sequence_check(kz4_over_kz2())
    assert rep.passed
    assert "dim P(Ω¹B)P = 8, dim Ω¹P = 12" in rep.checks[0].detail
    assert "dim P⊗C⁺ = 4" in rep.checks[1].detail
    bad = exact_sequence_check(trivial_coaction())
    assert not bad.get("exact at P⊗C⁺").ok
    assert bad.get("exactness agrees with the Galois test").ok


def test_exactness_agrees_with_galois_everywhere():
    cases = [kz2_over_k(), kz4_over_kz2(), s3_functions(), trivial_coaction(),
             fixture_extension("strict_containment"), fixture_extension("dual_numbers_self"),
             fixture_extension("non_galois", "trivial")]
    for d in cases:
        assert sequence_is_exact(d) == d.is_galois(), d.name


def test_homogeneous_ideal():
    hd = kz4_homogeneous()
    assert subspace_equal(hd.I, Subspace(4, [{2: 1, 0: -1}, {3: 1, 1: -1}]))
    assert hd.C.dim == 2


def test_homogeneous_over_trivial_subalgebra():
    H = kz4()
    hd = homogeneous(H, [one(0)])
    assert hd.I.dim == 0
    assert hd.C.dim == 4
    assert hd.galois.is_galois()


def test_homogeneous_requires_subalgebra():
    with pytest.raises(NotSubalgebra):
        homogeneous(kz4(), [one(0), one(1)])


def test_equivariant_projectivity_witnesses():
    d = kz4_over_kz2()
    s = equivariant_projectivity_witness(d)
    assert s is not None
    assert verify_splitting(d, s).passed
    # a hand-written witness: s(1)=1⊗1, s(g)=1⊗g, s(g²)=g²⊗1, s(g³)=g²⊗g
    hand = LinMap(4, 16, [one(0), one(1), one(8), one(9)])
    assert verify_splitting(d, hand).passed
    k = kz2_over_k()
    assert equivariant_projectivity_witness(k) == LinMap(2, 4, [one(0), one(1)])


def test_dual_numbers_has_no_witness():
    assert equivariant_projectivity_witness(fixture_extension("dual_numbers_self")) is None


def test_principality():
    rep = principality_report(kz4_over_kz2())
    assert rep.passed
    assert rep.get("j_R colinear with j_R(e) = 1").detail == "[1] ↦ 1; [g] ↦ 0"
    rep = principality_report(kz2_over_k())
    assert rep.passed
    assert rep.get("j_R colinear with j_R(e) = 1").detail == "1 ↦ 1; g ↦ 0"
    bad = principality_report(trivial_coaction())
    assert bad.failures()[0].name == "Galois"


def test_k_squared_with_constant_coaction():
    # both idempotents sent to ⊗a: invariants are all of P
    P = Algebra(("e1", "e2"), LinMap(4, 2, [one(0), {}, {}, one(1)]), {0: 1, 1: 1})
    C = classical_space(["a", "b"])
    d = GaloisData(P, C, LinMap(2, 4, [one(0), one(2)]), one(0))
    assert d.B.dim == 2
    assert not d.is_galois()
