from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import kz2_over_k, kz4_over_kz2
from hopfgalois.linalg import (
    LinMap,
    NoSolution,
    NotInvertible,
    ShapeError,
    Subspace,
    invert,
    kron,
    nullspace,
    quotient,
    solve_linear,
    subspace_equal,
    subspace_intersect,
    subspace_sum,
)


def test_nullspace_of_all_ones():
    N = nullspace(LinMap.from_rows([[1, 1], [1, 1]]))
    assert subspace_equal(N, Subspace(2, [{0: 1, 1: -1}]))


def test_solve_identity_and_inconsistent():
    b = {0: Fraction(3), 2: Fraction(-1, 2)}
    assert solve_linear(LinMap.identity(3), b) == b
    with pytest.raises(NoSolution):
        solve_linear(LinMap.from_rows([[1], [1]]), {0: 1, 1: 2})


def test_invert():
    P = LinMap.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert invert(P) == P.transpose()
    with pytest.raises(NotInvertible) as info:
        invert(LinMap.from_rows([[1, 1], [1, 1]]))
    assert info.value.rank == 1
    with pytest.raises(ShapeError):
        invert(LinMap.from_rows([[1, 1]]))


def test_canonical_map_of_kz2_is_invertible():
    can = kz2_over_k().can
    assert (can.dom, can.cod) == (4, 4)
    assert can.rank() == 4
    assert invert(can) @ can == LinMap.identity(4)


def test_quotients():
    Q = quotient(2, Subspace(2, [{0: 1, 1: 1}]))
    assert Q.dim == 1
    Z = quotient(3, Subspace(3, []))
    assert Z.project == LinMap.identity(3)
    assert kz4_over_kz2().balanced.dim == 8


def test_tensor_and_subspaces():
    assert kron(LinMap.identity(2), LinMap.identity(3)) == LinMap.identity(6)
    e1, e2 = Subspace(2, [{0: 1}]), Subspace(2, [{1: 1}])
    assert subspace_intersect(e1, e2).dim == 0
    assert subspace_equal(subspace_sum(e1, Subspace(2, [{0: 1, 1: 1}])), Subspace.full(2))


def test_kron_is_row_major():
    f = LinMap.from_rows([[1, 2], [3, 4]])
    g = LinMap.from_rows([[0, 1], [1, 0]])
    # (f⊗g)(e_i⊗e_j) sits in column i*2+j
    M = kron(f, g).to_dense()
    want = sympy.kronecker_product(sympy.Matrix([[1, 2], [3, 4]]), sympy.Matrix([[0, 1], [1, 0]]))
    assert sympy.Matrix(M) == want


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_rank_and_nullspace_match_sympy(rows):
    A = LinMap.from_rows(rows)
    M = sympy.Matrix(rows)
    assert A.rank() == M.rank()
    N = nullspace(A)
    assert N.dim == len(M.nullspace())
    for v in N.basis:
        assert A.apply(v) == {}


@settings(max_examples=60, deadline=None)
@given(matrices, st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_solve_matches_sympy(rows, rhs):
    A = LinMap.from_rows(rows)
    b = {i: Fraction(x) for i, x in enumerate(rhs[: len(rows)]) if x}
    M = sympy.Matrix(rows)
    B = sympy.Matrix([rhs[i] for i in range(len(rows))])
    consistent = M.rank() == M.row_join(B).rank()
    if not consistent:
        with pytest.raises(NoSolution):
            solve_linear(A, b)
        return
    x = solve_linear(A, b)
    assert A.apply(x) == b
