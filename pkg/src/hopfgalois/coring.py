"""Corings over a finite-dimensional algebra ``A``.

Tensor products over ``A`` are explicit quotients.  Relations are imposed only
for a generating set of ``A``, which spans the same subspace, and triple
products are built in two stages as ``(M⊗_A M)⊗_A M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .entwine import Entwining, check_bowtie
from .galois import GaloisData, NotGalois, NotSubalgebra, balanced_relations, is_subalgebra, point, tensor_labels
from .linalg import LinMap, LowQuotient, ShapeError, Subspace, Vec, kron, nullspace
from .report import Report
from .structures import Algebra, Coalgebra, InvalidParams, ModuleAction, compare

ONE = Fraction(1)


def _id(n: int) -> LinMap:
    return LinMap.identity(n)


def algebra_generators(A: Algebra, within: Subspace | None = None) -> list[Vec]:
    """Greedy generating set of ``A`` (or of a subalgebra) taken from its basis."""
    basis = within.basis if within is not None else [{i: ONE} for i in range(A.dim)]
    gens: list[Vec] = []
    span = Subspace(A.dim, [A.unit])
    for b in basis:
        if span.contains(b):
            continue
        gens.append(b)
        span = _closure(A, span.basis + [b])
    return gens


def _closure(A: Algebra, vectors: list[Vec]) -> Subspace:
    S = Subspace(A.dim, vectors)
    while True:
        grown = Subspace(A.dim, S.basis + [A.mul(x, y) for x in S.basis for y in S.basis])
        if grown.dim == S.dim:
            return S
        S = grown


def balanced_tensor(dim_left: int, dim_right: int, pairs: Sequence[tuple[LinMap, LinMap]]) -> LowQuotient:
    """``X⊗_A Y`` from pairs ``(x ↦ x·a, y ↦ a·y)`` over generators ``a``."""
    rels: list[Vec] = []
    for R, L in pairs:
        diff = kron(R, _id(dim_right)) - kron(_id(dim_left), L)
        rels.extend(c for c in diff.cols if c)
    return LowQuotient(dim_left * dim_right, Subspace(dim_left * dim_right, rels))


@dataclass(eq=False)
class Coring:
    """``A``-bimodule ``M`` with ``Δ: M -> M⊗M`` (read in ``M⊗_A M``) and ``ε: M -> A``."""

    A: Algebra
    labels: tuple[str, ...]
    left: LinMap
    right: LinMap
    comult: LinMap
    counit: LinMap
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        m, a = len(self.labels), self.A.dim
        shapes = {
            "left": (self.left, a * m, m),
            "right": (self.right, m * a, m),
            "comult": (self.comult, m, m * m),
            "counit": (self.counit, m, a),
        }
        for name, (f, dom, cod) in shapes.items():
            if (f.dom, f.cod) != (dom, cod):
                raise ShapeError(f"{name} must be {cod}x{dom}, got {f.cod}x{f.dom}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def gens(self) -> list[Vec]:
        return algebra_generators(self.A)

    def act_right(self, a: Vec) -> LinMap:
        return self.right @ kron(_id(self.dim), point(a, self.A.dim))

    def act_left(self, a: Vec) -> LinMap:
        return self.left @ kron(point(a, self.A.dim), _id(self.dim))

    @cached_property
    def tensor2(self) -> LowQuotient:
        m = self.dim
        return balanced_tensor(m, m, [(self.act_right(a), self.act_left(a)) for a in self.gens])

    @cached_property
    def tensor3(self) -> tuple[LinMap, LowQuotient]:
        """``(M⊗M⊗M -> M⊗_A M⊗_A M, quotient)``."""
        m, T2 = self.dim, self.tensor2
        pairs = [(T2.project @ kron(_id(m), self.act_right(a)) @ T2.lift, self.act_left(a)) for a in self.gens]
        T3 = balanced_tensor(T2.dim, m, pairs)
        return T3.project @ kron(T2.project, _id(m)), T3


def check_coring(K: Coring) -> Report:
    rep = Report("coring")
    A, m, a = K.A, K.dim, K.A.dim
    Im, Ia = _id(m), _id(a)
    LM, LA = K.labels, A.labels
    P2 = K.tensor2.project
    P3, _ = K.tensor3

    compare(rep, "left action associative", K.left @ kron(A.mult, Im), K.left @ kron(Ia, K.left), [LA, LA, LM])
    compare(rep, "left action unital", K.left @ kron(A.unit_map, Im), Im, [LM])
    compare(rep, "right action associative", K.right @ kron(Im, A.mult), K.right @ kron(K.right, Ia), [LM, LA, LA])
    compare(rep, "right action unital", K.right @ kron(Im, A.unit_map), Im, [LM])
    compare(rep, "actions commute", K.right @ kron(K.left, Ia), K.left @ kron(Ia, K.right), [LA, LM, LA])
    compare(rep, "Δ left A-linear", P2 @ K.comult @ K.left, P2 @ kron(K.left, Im) @ kron(Ia, K.comult), [LA, LM])
    compare(rep, "Δ right A-linear", P2 @ K.comult @ K.right, P2 @ kron(Im, K.right) @ kron(K.comult, Ia), [LM, LA])
    compare(rep, "ε left A-linear", K.counit @ K.left, A.mult @ kron(Ia, K.counit), [LA, LM])
    compare(rep, "ε right A-linear", K.counit @ K.right, A.mult @ kron(K.counit, Ia), [LM, LA])
    compare(rep, "coassociativity over A", P3 @ kron(K.comult, Im) @ K.comult, P3 @ kron(Im, K.comult) @ K.comult, [LM])
    compare(rep, "left counit law", K.left @ kron(K.counit, Im) @ K.comult, Im, [LM])
    compare(rep, "right counit law", K.right @ kron(Im, K.counit) @ K.comult, Im, [LM])
    return rep


# ---------------------------------------------------------------------------
# constructions


def trivial_coring(A: Algebra) -> Coring:
    """``A`` over itself: ``Δ(a) = a⊗_A 1``, ``ε = id``."""
    n = A.dim
    return Coring(A, A.labels, A.mult, A.mult, kron(_id(n), A.unit_map), _id(n), "trivial")


def sweedler_coring(A: Algebra, B: Subspace | Sequence[Vec]) -> Coring:
    """``A⊗_B A`` with ``Δ(a⊗a') = a⊗1⊗1⊗a'`` and ``ε(a⊗a') = aa'``."""
    n = A.dim
    if not isinstance(B, Subspace):
        B = Subspace(n, [dict(v) for v in B])
    if not is_subalgebra(A, B):
        raise NotSubalgebra("B is not a unital subalgebra of A")
    Q = LowQuotient(n * n, balanced_relations(A, B))
    In = _id(n)
    flat = tensor_labels(A.labels, A.labels)
    labels = tuple(flat[r] for r in Q.reps)
    left = Q.project @ kron(A.mult, In) @ kron(In, Q.lift)
    right = Q.project @ kron(In, A.mult) @ kron(Q.lift, In)
    one = A.unit_map
    comult = kron(Q.project, Q.project) @ kron(In, one, one, In) @ Q.lift
    counit = A.mult @ Q.lift
    return Coring(A, labels, left, right, comult, counit, "sweedler", {"B": B, "quotient": Q})


def takeuchi_coring(E: Entwining) -> Coring:
    """``A⊗C`` with ``a·(a'⊗c)·a'' = aa'ψ(c⊗a'')``, ``Δ(a⊗c) = (a⊗c_(1))⊗_A(1⊗c_(2))``."""
    A, C = E.A, E.C
    a, c = A.dim, C.dim
    Ia, Ic = _id(a), _id(c)
    labels = tuple(tensor_labels(A.labels, C.labels))
    left = kron(A.mult, Ic)
    right = kron(A.mult, Ic) @ kron(Ia, E.psi)
    comult = kron(Ia, Ic, A.unit_map, Ic) @ kron(Ia, C.comult)
    counit = kron(Ia, C.counit)
    return Coring(A, labels, left, right, comult, counit, "takeuchi", {"C": C})


def entwining_from_coring(K: Coring, C: Coalgebra) -> Entwining:
    """``ψ(c⊗a) = (1⊗c)·a`` for a coring on ``A⊗C`` with the free left action."""
    A = K.A
    a, c = A.dim, C.dim
    if K.dim != a * c:
        raise InvalidParams(f"carrier has dimension {K.dim}, expected {a}·{c}")
    if K.left != kron(A.mult, _id(c)):
        raise InvalidParams("left action is not a·(a'⊗c) = aa'⊗c")
    psi = K.right @ kron(A.unit_map, _id(c), _id(a))
    return Entwining(A, C, psi, name=f"from {K.name or 'coring'}")


def same_coring(K1: Coring, K2: Coring) -> Report:
    rep = Report("coring-equality")
    for part in ("left", "right", "comult", "counit"):
        f, g = getattr(K1, part), getattr(K2, part)
        if part == "comult":
            f, g = K1.tensor2.project @ f, K1.tensor2.project @ g
        compare(rep, f"{part} agrees", f, g, [K1.labels] if part in ("comult", "counit") else [
            K1.labels if part == "right" else K1.A.labels,
            K1.A.labels if part == "right" else K1.labels,
        ])
    return rep


def takeuchi_round_trip(E: Entwining) -> Report:
    rep = Report("takeuchi-round-trip")
    K = takeuchi_coring(E)
    back = entwining_from_coring(K, E.C)
    diff = back.psi.first_difference(E.psi)
    rep.add("ψ -> coring -> ψ is the identity", diff is None, () if diff is None else (f"column {diff[0]}",))
    rep.extend(same_coring(takeuchi_coring(back), K), "coring -> ψ -> coring: ")
    return rep


def takeuchi_report(E: Entwining) -> Report:
    rep = Report("takeuchi")
    rep.extend(check_bowtie(E), "bow-tie: ")
    rep.extend(check_coring(takeuchi_coring(E)), "Takeuchi coring: ")
    rep.extend(takeuchi_round_trip(E))
    return rep


# ---------------------------------------------------------------------------
# group-likes in the Takeuchi coring of a Galois extension


def verify_coring_grouplike(data: GaloisData, g: Vec | None = None) -> Report:
    """``g = Δ_P(1)`` is group-like in ``P⊗C``; ``B = {b | b·g = g·b}``."""
    if not data.is_galois():
        raise NotGalois("the canonical entwining needs a Galois extension")
    rep = Report("coring-grouplike")
    K = takeuchi_coring(data.entwining)
    if g is None:
        g = data.coaction.apply(data.P.unit)
    T2 = K.tensor2
    lhs = T2.project_vec(K.comult.apply(g))
    rhs = T2.project_vec({i * K.dim + j: x * y for i, x in g.items() for j, y in g.items()})
    labels = tensor_labels(data.P.labels, data.C.labels)
    rep.add("Δ_C(g) = g⊗_P g", lhs == rhs, () if lhs == rhs else (_fmt(g, labels),))
    eps = K.counit.apply(g)
    rep.add("ε_C(g) = 1", eps == data.P.unit, () if eps == data.P.unit else (_fmt(g, labels),))
    n = data.n
    left_g = LinMap.from_function(n, K.dim, lambda i: K.left.apply({i * K.dim + k: x for k, x in g.items()}))
    right_g = LinMap.from_function(n, K.dim, lambda i: K.right.apply({k * n + i: x for k, x in g.items()}))
    B = nullspace(left_g - right_g)
    rep.add("{b | b·g = g·b} equals B", B == data.B, detail=f"dim {B.dim}")
    return rep


def _fmt(v: Vec, labels: Sequence[str]) -> str:
    return " + ".join(f"{x}*{labels[i]}" if x != 1 else labels[i] for i, x in sorted(v.items())) or "0"


def sweedler_takeuchi_iso(data: GaloisData) -> Report:
    """``can`` intertwines the Sweedler coring of ``B ⊆ P`` and the Takeuchi
    coring of the canonical entwining."""
    rep = Report("sweedler-takeuchi")
    if not data.is_galois():
        rep.add("can bijective", False, (f"rank {data.can_rank}",))
        return rep
    Ks = sweedler_coring(data.P, data.B)
    Kt = takeuchi_coring(data.entwining)
    can = data.can
    Ia = _id(data.n)
    LA, LS = data.P.labels, Ks.labels
    compare(rep, "can is left P-linear", can @ Ks.left, Kt.left @ kron(Ia, can), [LA, LS])
    compare(rep, "can is right P-linear", can @ Ks.right, Kt.right @ kron(can, Ia), [LS, LA])
    P2 = Kt.tensor2.project
    compare(rep, "can intertwines coproducts", P2 @ kron(can, can) @ Ks.comult, P2 @ Kt.comult @ can, [LS])
    compare(rep, "can intertwines counits", Kt.counit @ can, Ks.counit, [LS])
    return rep


# ---------------------------------------------------------------------------
# descent data


@dataclass(eq=False)
class DescentDatum:
    """Right ``A``-module ``M`` with ``f: M -> M⊗_B A`` (coset coordinates)."""

    A: Algebra
    B: Subspace
    M: ModuleAction
    f: LinMap

    @cached_property
    def tensor(self) -> LowQuotient:
        """``M⊗_B A``."""
        return descent_tensor(self.A, self.B, self.M)

    @cached_property
    def tensor3(self) -> tuple[LinMap, LowQuotient]:
        """``M⊗A⊗A -> M⊗_B A⊗_B A``."""
        m, a = self.M.dim, self.A.dim
        T = self.tensor
        gens = algebra_generators(self.A, self.B)
        pairs = [(T.project @ kron(_id(m), self.A.right_mult(b)) @ T.lift, self.A.left_mult(b)) for b in gens]
        T3 = balanced_tensor(T.dim, a, pairs)
        return T3.project @ kron(T.project, _id(a)), T3


def _right_by(M: ModuleAction, a: Vec) -> LinMap:
    return M.action @ kron(_id(M.dim), point(a, M.algebra.dim))


def descent_tensor(A: Algebra, B: Subspace, M: ModuleAction) -> LowQuotient:
    pairs = [(_right_by(M, b), A.left_mult(b)) for b in algebra_generators(A, B)]
    return balanced_tensor(M.dim, A.dim, pairs)


def descent_datum(A: Algebra, B: Subspace, M: ModuleAction, f_lift: LinMap) -> DescentDatum:
    """Build from ``f`` given as a map ``M -> M⊗A`` (any lift)."""
    return DescentDatum(A, B, M, descent_tensor(A, B, M).project @ f_lift)


def trivial_descent_datum(A: Algebra, B: Subspace) -> DescentDatum:
    """``M = A``, ``f(a) = 1⊗_B a``."""
    M = ModuleAction(A, A.labels, A.mult, "right")
    return descent_datum(A, B, M, kron(A.unit_map, _id(A.dim)))


def sweedler_descent_datum(A: Algebra, B: Subspace) -> DescentDatum:
    """``M = A⊗_B A`` with ``f(a⊗a') = (a⊗1)⊗_B a'``, read off the Sweedler coproduct."""
    K = sweedler_coring(A, B)
    Q = K.meta["quotient"]
    n = A.dim
    M = ModuleAction(A, K.labels, K.right, "right")
    f_lift = kron(Q.project, _id(n)) @ kron(_id(n), A.unit_map, _id(n)) @ Q.lift
    return descent_datum(A, B, M, f_lift)


def check_descent_datum(D: DescentDatum) -> Report:
    rep = Report("descent")
    A, M = D.A, D.M
    m, a = M.dim, A.dim
    T = D.tensor
    f_lift = T.lift @ D.f
    LM, LA = M.labels, A.labels
    # right A-linearity: f(m·a) = f(m)·a
    lhs = D.f @ M.action
    rhs = T.project @ kron(_id(m), A.mult) @ kron(f_lift, _id(a))
    compare(rep, "f right A-linear", lhs, rhs, [LM, LA])
    P3, _ = D.tensor3
    lhs = P3 @ kron(f_lift, _id(a)) @ f_lift
    rhs = P3 @ kron(_id(m), A.unit_map, _id(a)) @ f_lift
    compare(rep, "(i) (f⊗_B id)∘f = (id⊗1⊗id)∘f", lhs, rhs, [LM])
    compare(rep, "(ii) m_i·a_i = m", M.action @ f_lift, _id(m), [LM])
    return rep


def comodule_of_sweedler(D: DescentDatum) -> Report:
    """The coaction ``M -> M⊗_A (A⊗_B A)`` induced by ``f`` checked as a comodule
    over the Sweedler coring."""
    rep = Report("sweedler-comodule")
    A, M = D.A, D.M
    m, a = M.dim, A.dim
    K = sweedler_coring(A, D.B)
    k = K.dim
    Q = K.meta["quotient"]
    gens = algebra_generators(A)
    T = balanced_tensor(m, k, [(_right_by(M, g), K.act_left(g)) for g in gens])
    pairs3 = [(T.project @ kron(_id(m), K.act_right(g)) @ T.lift, K.act_left(g)) for g in gens]
    T3 = balanced_tensor(T.dim, k, pairs3)
    P3 = T3.project @ kron(T.project, _id(k))
    # ρ(m) = m_i ⊗ (1⊗_B a_i)
    f_lift = D.tensor.lift @ D.f
    rho = kron(_id(m), Q.project @ kron(A.unit_map, _id(a))) @ f_lift
    LM, LA = M.labels, A.labels
    compare(rep, "ρ right A-linear", T.project @ rho @ M.action,
            T.project @ kron(_id(m), K.right) @ kron(rho, _id(a)), [LM, LA])
    compare(rep, "ρ coassociative over A", P3 @ kron(rho, _id(k)) @ rho, P3 @ kron(_id(m), K.comult) @ rho, [LM])
    compare(rep, "ρ counital", M.action @ kron(_id(m), K.counit) @ rho, _id(m), [LM])
    return rep
