import time
from fractions import Fraction

import pytest

from conftest import kz2, kz4, one
from hopfgalois.linalg import LinMap, vtensor
from hopfgalois.structures import (
    Algebra,
    Comodule,
    InvalidParams,
    builtin,
    check_axioms,
    check_comodule,
    check_module,
    classical_space,
    cyclic_group,
    dual_numbers,
    dualize,
    function_algebra,
    matrix_algebra,
    matrix_dual_coalgebra,
    regular_comodule,
    regular_module,
    scan_basis_group_likes,
    sweedler_h4,
    symmetric_group_3,
    verify_group_like,
)

ALL_BUILTINS = {
    "classical_space(a,b,c)": lambda: classical_space(["a", "b", "c"]),
    "dual_numbers": dual_numbers,
    "dual_numbers_algebra": lambda: builtin("dual_numbers_algebra"),
    "matrix_algebra(2)": lambda: matrix_algebra(2),
    "matrix_dual(2)": lambda: matrix_dual_coalgebra(2),
    "group_algebra(Z2)": kz2,
    "group_algebra(Z4)": kz4,
    "group_algebra(S3)": lambda: builtin("group_algebra", "S3"),
    "function_algebra(Z4)": lambda: function_algebra(cyclic_group(4)),
    "function_algebra(S3)": lambda: function_algebra(symmetric_group_3()),
    "sweedler_h4": sweedler_h4,
}


@pytest.mark.parametrize("name", sorted(ALL_BUILTINS))
def test_builtin_axioms(name):
    x = ALL_BUILTINS[name]()
    t = time.perf_counter()
    rep = check_axioms(x)
    assert rep.passed, rep.to_text()
    assert time.perf_counter() - t < 1.0


def test_bad_unit_gives_witness():
    A = Algebra(("e1", "e2"), LinMap(4, 2, [one(1), {}, {}, {}]), one(0))
    rep = check_axioms(A)
    assert not rep.passed
    assert rep.get("left unit").witness == ("e1",)
    assert rep.get("associativity").ok


def test_dual_numbers_coalgebra():
    C = dual_numbers()
    assert C.labels == ("1*", "θ*")
    # Δθ* = 1*⊗θ* + θ*⊗1*
    assert C.delta(one(1)) == {1: 1, 2: 1}
    assert C.eps(one(1)) == 0
    assert check_axioms(C).passed


def test_matrix_dual_comultiplication():
    C = dualize(matrix_algebra(2))
    assert C.labels == ("1*", "x*", "y*", "xy*")
    # Δ(1*) = 1*⊗1* + x*⊗x* + y*⊗y* − (xy)*⊗(xy)*
    assert C.delta(one(0)) == {0: 1, 5: 1, 10: 1, 15: -1}
    C2 = matrix_dual_coalgebra(2)
    assert (C.comult, C.counit) == (C2.comult, C2.counit)
    assert check_axioms(C).passed


def test_double_dual_of_group_algebra():
    H = kz2()
    D = dualize(H)
    assert D.comult == function_algebra(cyclic_group(2)).comult
    DD = dualize(D)
    assert (DD.mult, DD.comult, DD.antipode, DD.unit) == (H.mult, H.comult, H.antipode, H.unit)


def test_group_like_scans():
    C = classical_space(["a", "b"])
    assert C.dim == 2
    assert scan_basis_group_likes(C) == [0, 1]
    assert not verify_group_like(dual_numbers(), one(1))
    assert not verify_group_like(C, {})


def test_z4_antipode():
    assert kz4().antipode.apply(one(1)) == one(3)


def test_unknown_builtin():
    with pytest.raises(InvalidParams):
        builtin("octonions")


def test_comodules():
    H = kz2()
    assert check_comodule(regular_comodule(H.coalgebra)).passed
    V = Comodule(H.coalgebra, ("v",), LinMap(1, 2, [one(1)]), "right")
    assert check_comodule(V).passed
    G = kz4()
    W = Comodule(G.coalgebra, ("v",), LinMap(1, 4, [{1: 1, 2: 1}]), "right")
    rep = check_comodule(W)
    assert not rep.get("coaction counitality").ok
    assert rep.get("coaction counitality").witness == ("v",)
    # (id⊗ε)ρ(v) = 2v
    assert (LinMap.identity(1).kron(G.counit) @ W.coaction).apply(one(0)) == {0: Fraction(2)}


def test_regular_modules():
    assert check_module(regular_module(kz4().algebra)).passed
    assert check_module(regular_module(sweedler_h4().algebra, "left")).passed


def test_coaction_shape_is_checked():
    H = kz2()
    with pytest.raises(Exception):
        Comodule(H.coalgebra, ("v",), LinMap(1, 3, [one(1)]), "right")
    assert vtensor(one(1), one(1), 2) == one(3)
