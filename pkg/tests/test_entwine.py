import random
import time
from fractions import Fraction

import pytest

from conftest import kz2, kz4, one
from hopfgalois.entwine import (
    Entwining,
    bialgebra_entwining,
    build_entwining,
    check_bowtie,
    check_doi_koppinen,
    check_entwined_module,
    check_factorisation,
    convolution_unit,
    entwining_from_factorisation,
    factorisation_from_entwining,
    induced_action,
    induced_coaction,
    invert_entwining,
    left_coaction,
    regular_doi_koppinen,
    trivial_entwining,
    twisted_convolution,
    yetter_drinfeld_entwining,
)
from hopfgalois.linalg import LinMap, NotInvertible, vtensor
from hopfgalois.structures import (
    Comodule,
    dual_numbers,
    matrix_algebra,
    regular_comodule,
    regular_module,
    sweedler_h4,
)


def all_entwinings():
    H2, H4, S = kz2(), kz4(), sweedler_h4()
    return {
        "trivial(M2, dual numbers)": trivial_entwining(matrix_algebra(2), dual_numbers()),
        "bialgebra(kZ2)": bialgebra_entwining(H2),
        "bialgebra(kZ4)": bialgebra_entwining(H4),
        "bialgebra(H4)": bialgebra_entwining(S),
        "doi-koppinen(kZ4)": build_entwining("doi_koppinen", *regular_doi_koppinen(H4)),
        "doi-koppinen(H4)": build_entwining("doi_koppinen", *regular_doi_koppinen(S)),
        "yetter-drinfeld(kZ4)": yetter_drinfeld_entwining(H4),
        "yetter-drinfeld(H4)": yetter_drinfeld_entwining(S),
    }


@pytest.mark.parametrize("name", sorted(all_entwinings()))
def test_bowtie_relations(name):
    rep = check_bowtie(all_entwinings()[name])
    assert [c.name for c in rep.checks][:4] == [
        "left pentagon", "left triangle", "right pentagon", "right triangle"]
    assert rep.passed, rep.to_text()


def test_corrupted_flip_fails_left_pentagon():
    H = kz2()
    psi = LinMap.swap(2, 2)
    cols = list(psi.cols)
    cols[2] = {1: Fraction(-1)}
    bad = Entwining(H.algebra, H.coalgebra, LinMap(4, 4, cols))
    rep = check_bowtie(bad)
    first = rep.failures()[0]
    assert first.name == "left pentagon"
    assert first.witness == ("g", "1", "1")


def test_bialgebra_values():
    E = bialgebra_entwining(kz2())
    # ψ(g⊗g) = g⊗1
    assert E(one(1), one(1)) == vtensor(one(1), one(0), 2)


def test_yetter_drinfeld_on_commutative_group_algebra_is_flip():
    assert yetter_drinfeld_entwining(kz4()).psi == LinMap.swap(4, 4)


def test_regular_doi_koppinen_is_bialgebra_entwining():
    H = kz2()
    assert check_doi_koppinen(*regular_doi_koppinen(H)).passed
    assert build_entwining("doi_koppinen", *regular_doi_koppinen(H)).psi == bialgebra_entwining(H).psi


def _random_map(rng, c, a):
    cols = []
    for _ in range(c):
        col = {i: Fraction(rng.randint(1, 3) * rng.choice((1, -1))) for i in range(a) if rng.random() < 0.7}
        cols.append(col)
    return LinMap(c, a, cols)


def test_twisted_convolution_is_associative_and_unital():
    rng = random.Random(7)
    start = time.perf_counter()
    for E in all_entwinings().values():
        c, a = E.C.dim, E.A.dim
        u = convolution_unit(E)
        for _ in range(3):
            f, g, h = (_random_map(rng, c, a) for _ in range(3))
            assert twisted_convolution(E, f, u) == f
            assert twisted_convolution(E, u, f) == f
            lhs = twisted_convolution(E, twisted_convolution(E, f, g), h)
            rhs = twisted_convolution(E, f, twisted_convolution(E, g, h))
            assert lhs == rhs
    assert time.perf_counter() - start < 5.0


def test_induced_coaction():
    H = kz2()
    assert induced_coaction(bialgebra_entwining(H), one(0)).coaction == H.comult
    T = trivial_entwining(H.algebra, H.coalgebra)
    # constant coaction a ↦ a⊗e
    assert induced_coaction(T, one(1)).coaction.apply(one(0)) == vtensor(one(0), one(1), 2)


def test_induced_action_with_counit():
    # brute force: c·a = a_α ε(c^α) with ψ(c⊗a) = a_(1)⊗c a_(2); group-likes give c·a = ca
    H = kz2()
    M = induced_action(bialgebra_entwining(H), H.counit)
    for c in range(2):
        for a in range(2):
            assert M.act(one(c), one(a)) == one((c + a) % 2)


def test_entwined_modules():
    H = kz2()
    E = bialgebra_entwining(H)
    assert check_entwined_module(E, regular_module(H.algebra), regular_comodule(H.coalgebra)).passed
    T = trivial_entwining(H.algebra, H.coalgebra)
    const = Comodule(H.coalgebra, H.labels, LinMap(2, 4, [one(0), one(2)]), "right")
    assert check_entwined_module(T, regular_module(H.algebra), const).passed


def test_entwined_module_with_twisted_coaction_fails():
    # kZ4 with ρ(gⁱ) = gⁱ⊗g⁻ⁱ, the coaction composed with inversion
    G = kz4()
    E = bialgebra_entwining(G)
    rho = LinMap(4, 16, [one(4 * i + (-i) % 4) for i in range(4)])
    V = Comodule(G.coalgebra, G.labels, rho, "right")
    rep = check_entwined_module(E, regular_module(G.algebra), V)
    assert not rep.passed
    assert rep.failures()[0].witness == ("1", "g")
    # the pair (g, g) fails too: ρ(g²) = g²⊗g² but g_(0)g⊗g_(1)^α gives g²⊗1
    lhs = rho.apply(one(2))
    rhs = vtensor(one(2), one(0), 4)
    assert lhs != rhs


def test_inverse_and_left_coaction():
    H = kz2()
    E = invert_entwining(bialgebra_entwining(H))
    assert E.psi_inv @ E.psi == LinMap.identity(4)
    assert left_coaction(E, one(0)).coaction.apply(one(1)) == vtensor(one(1), one(1), 2)
    T = invert_entwining(trivial_entwining(H.algebra, H.coalgebra))
    assert T.psi_inv == LinMap.swap(2, 2)
    assert left_coaction(T, one(1)).coaction.apply(one(0)) == vtensor(one(1), one(0), 2)


def test_rank_deficient_entwining_is_not_invertible():
    H = kz2()
    E = Entwining(H.algebra, H.coalgebra, LinMap(4, 4, [one(0), {}, {}, one(3)]))
    with pytest.raises(NotInvertible):
        invert_entwining(E)


def test_factorisations():
    H = kz2()
    T = trivial_entwining(H.algebra, H.coalgebra)
    assert factorisation_from_entwining(T).Psi == LinMap.swap(2, 2)
    E = bialgebra_entwining(H)
    F = factorisation_from_entwining(E)
    assert check_factorisation(F).passed
    assert entwining_from_factorisation(F).psi == E.psi
