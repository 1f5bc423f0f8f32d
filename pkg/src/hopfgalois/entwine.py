"""Entwining structures ``ψ: C⊗A -> A⊗C`` and factorisations ``Ψ: P⊗A -> A⊗P``.

Leg order is fixed everywhere: the flat index of ``x⊗y`` is ``x * dim(Y) + y``.
In the usual index notation ``ψ(c⊗a) = a_α ⊗ c^α``, an entry ``ψ[(a', c'), (c, a)]``
is the coefficient of ``a'⊗c'`` in ``ψ(c⊗a)``; every α-contraction in this
module is a composite of such matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from .linalg import LinMap, Vec, invert, kron, vec
from .report import Report
from .structures import (
    Algebra,
    Bialgebra,
    Coalgebra,
    Comodule,
    HopfAlgebra,
    InvalidParams,
    ModuleAction,
    NotGroupLike,
    check_axioms,
    compare,
    dualize,
    verify_group_like,
)

ONE = Fraction(1)


class CompatibilityError(ValueError):
    pass


class NotCharacter(ValueError):
    pass


def _id(n: int) -> LinMap:
    return LinMap.identity(n)


def _point(v: Vec, n: int) -> LinMap:
    """The map ``k -> V`` picking out ``v``."""
    return LinMap(1, n, [vec(v)])


@dataclass(frozen=True, eq=False)
class Entwining:
    A: Algebra
    C: Coalgebra
    psi: LinMap
    psi_inv: LinMap | None = None
    name: str = ""

    def __post_init__(self):
        a, c = self.A.dim, self.C.dim
        if (self.psi.dom, self.psi.cod) != (c * a, a * c):
            raise InvalidParams(f"ψ must map C⊗A ({c * a}) to A⊗C ({a * c})")

    def __call__(self, c: Vec, a: Vec) -> Vec:
        from .linalg import vtensor

        return self.psi.apply(vtensor(c, a, self.A.dim))


@dataclass(frozen=True, eq=False)
class Factorisation:
    P: Algebra
    A: Algebra
    Psi: LinMap


# ---------------------------------------------------------------------------
# bow-tie


def check_bowtie(E: Entwining) -> Report:
    """The four explicit relations in a fixed order: left pentagon, left triangle,
    right pentagon, right triangle."""
    rep = Report("bowtie")
    A, C, psi = E.A, E.C, E.psi
    a, c = A.dim, C.dim
    Ia, Ic = _id(a), _id(c)
    LA, LC = A.labels, C.labels
    compare(rep, "left pentagon", psi @ kron(Ic, A.mult),
            kron(A.mult, Ic) @ kron(Ia, psi) @ kron(psi, Ia), [LC, LA, LA],
            "(aa')_α⊗c^α = a_α a'_β⊗c^{αβ}")
    compare(rep, "left triangle", psi @ kron(Ic, A.unit_map), kron(A.unit_map, Ic), [LC],
            "1_α⊗c^α = 1⊗c")
    compare(rep, "right pentagon", kron(Ia, C.comult) @ psi,
            kron(psi, Ic) @ kron(Ic, psi) @ kron(C.comult, Ia), [LC, LA],
            "a_α⊗c^α_(1)⊗c^α_(2) = a_{αβ}⊗c_(1)^β⊗c_(2)^α")
    compare(rep, "right triangle", kron(Ia, C.counit) @ psi, kron(C.counit, Ia), [LC, LA],
            "a_α ε(c^α) = a ε(c)")
    if E.psi_inv is not None:
        compare(rep, "ψ∘ψ⁻¹ = id", psi @ E.psi_inv, _id(a * c), [LA, LC])
        compare(rep, "ψ⁻¹∘ψ = id", E.psi_inv @ psi, _id(a * c), [LC, LA])
    return rep


# ---------------------------------------------------------------------------
# constructors


def trivial_entwining(A: Algebra, C: Coalgebra) -> Entwining:
    """``ψ(c⊗a) = a⊗c``."""
    return Entwining(A, C, LinMap.swap(C.dim, A.dim), name="trivial")


def bialgebra_entwining(H: Bialgebra) -> Entwining:
    """``ψ(h⊗g) = g_(1) ⊗ h g_(2)``."""
    n = H.dim
    I = _id(n)
    # h⊗g -> h⊗g1⊗g2 -> g1⊗h⊗g2 -> g1⊗hg2
    psi = kron(I, H.mult) @ kron(LinMap.swap(n, n), I) @ kron(I, H.comult)
    return Entwining(H.algebra, H.coalgebra, psi, name="bialgebra")


def check_doi_koppinen(
    H: Bialgebra, C: Coalgebra, action: ModuleAction, A: Algebra, coaction: Comodule
) -> Report:
    """Module-coalgebra and comodule-algebra compatibility of a Doi-Koppinen datum."""
    rep = Report("doi-koppinen")
    if action.side != "right" or coaction.side != "right":
        raise CompatibilityError("Doi-Koppinen data use a right action and a right coaction")
    n, c, a = H.dim, C.dim, A.dim
    for r in (check_axioms(action), check_axioms(coaction)):
        rep.extend(r)
    mu, rho = action.action, coaction.coaction
    Ic, Ia, Ih = _id(c), _id(a), _id(n)
    # Δ_C(c·h) = c1·h1 ⊗ c2·h2
    mid = kron(Ic, LinMap.swap(c, n), Ih)
    compare(rep, "module coalgebra: comultiplication", C.comult @ mu,
            kron(mu, mu) @ mid @ kron(C.comult, H.comult), [C.labels, H.labels],
            "Δ(c·h) = c_(1)·h_(1) ⊗ c_(2)·h_(2)")
    compare(rep, "module coalgebra: counit", C.counit @ mu, kron(C.counit, H.counit),
            [C.labels, H.labels], "ε(c·h) = ε(c)ε(h)")
    mid = kron(Ia, LinMap.swap(n, a), Ih)
    compare(rep, "comodule algebra: multiplicative", rho @ A.mult,
            kron(A.mult, H.mult) @ mid @ kron(rho, rho), [A.labels, A.labels],
            "ρ(aa') = a_(0)a'_(0) ⊗ a_(1)a'_(1)")
    compare(rep, "comodule algebra: unital", rho @ A.unit_map,
            kron(A.unit_map, H.algebra.unit_map), [("1",)], "ρ(1) = 1⊗1")
    return rep


def doi_koppinen_entwining(
    H: Bialgebra, C: Coalgebra, action: ModuleAction, A: Algebra, coaction: Comodule
) -> Entwining:
    """``ψ(c⊗a) = a_(0) ⊗ c·a_(1)``, after checking the datum."""
    rep = check_doi_koppinen(H, C, action, A, coaction)
    if not rep.passed:
        bad = rep.failures()[0]
        raise CompatibilityError(f"{bad.name} fails at {bad.witness}")
    c, a = C.dim, A.dim
    psi = kron(_id(a), action.action) @ kron(LinMap.swap(c, a), _id(H.dim)) @ kron(_id(c), coaction.coaction)
    return Entwining(A, C, psi, name="doi-koppinen")


def yetter_drinfeld_entwining(H: HopfAlgebra) -> Entwining:
    """``ψ(h'⊗h) = h_(2) ⊗ S(h_(1)) h' h_(3)``."""
    n = H.dim
    I = _id(n)
    cop3 = kron(H.comult, I) @ H.comult  # h -> h1⊗h2⊗h3
    cols = []
    for j in range(n * n):
        hp, h = divmod(j, n)
        out: dict = {}
        for flat, x in cop3.cols[h].items():
            h1, rest = divmod(flat, n * n)
            h2, h3 = divmod(rest, n)
            left = H.mul(H.mul(H.S({h1: ONE}), {hp: ONE}), {h3: ONE})
            for k, y in left.items():
                key = h2 * n + k
                v = out.get(key, 0) + x * y
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        cols.append(out)
    return Entwining(H.algebra, H.coalgebra, LinMap(n * n, n * n, cols), name="yetter-drinfeld")


def build_entwining(kind: str, *args, **kwargs) -> Entwining:
    makers = {
        "trivial": trivial_entwining,
        "bialgebra": bialgebra_entwining,
        "doi_koppinen": doi_koppinen_entwining,
        "yetter_drinfeld": yetter_drinfeld_entwining,
    }
    try:
        return makers[kind](*args, **kwargs)
    except KeyError:
        raise InvalidParams(f"unknown entwining kind {kind!r}") from None


def regular_doi_koppinen(H: Bialgebra) -> tuple:
    """The datum ``(H, H, H)``: ``H`` acts on itself by multiplication and coacts by ``Δ``."""
    action = ModuleAction(H.algebra, H.labels, H.mult, "right")
    coaction = Comodule(H.coalgebra, H.labels, H.comult, "right")
    return H, H.coalgebra, action, H.algebra, coaction


# ---------------------------------------------------------------------------
# convolution and induced structures


def twisted_convolution(E: Entwining, f: LinMap, g: LinMap) -> LinMap:
    """``(f *_ψ g)(c) = f(c_(2))_α g(c_(1)^α)``."""
    a, c = E.A.dim, E.C.dim
    return E.A.mult @ kron(_id(a), g) @ E.psi @ kron(_id(c), f) @ E.C.comult


def convolution_unit(E: Entwining) -> LinMap:
    return E.A.unit_map @ E.C.counit


def induced_coaction(E: Entwining, e: Vec) -> Comodule:
    """``a ↦ ψ(e⊗a)`` for a group-like ``e``."""
    if not verify_group_like(E.C, e):
        raise NotGroupLike("e is not group-like")
    a, c = E.A.dim, E.C.dim
    rho = E.psi @ kron(_point(e, c), _id(a))
    return Comodule(E.C, E.A.labels, rho, "right")


def is_character(A: Algebra, kappa: LinMap) -> bool:
    return kappa @ A.mult == kron(kappa, kappa) and kappa.apply(A.unit) == {0: ONE}


def induced_action(E: Entwining, kappa: LinMap | Mapping[int, object]) -> ModuleAction:
    """Right ``A``-action on ``C``: ``c·a = c^α κ(a_α)``."""
    a, c = E.A.dim, E.C.dim
    if not isinstance(kappa, LinMap):
        kappa = LinMap(a, 1, [{0: kappa[i]} if kappa.get(i) else {} for i in range(a)])
    if not is_character(E.A, kappa):
        raise NotCharacter("κ is not an algebra map A -> k")
    return ModuleAction(E.A, E.C.labels, kron(kappa, _id(c)) @ E.psi, "right")


def check_entwined_module(E: Entwining, M: ModuleAction, V: Comodule) -> Report:
    """``ρ(m·a) = m_(0)·a_α ⊗ m_(1)^α``."""
    rep = Report("entwined-module")
    if M.side != "right" or V.side != "right" or M.dim != V.dim:
        from .linalg import ShapeError

        raise ShapeError("need a right module and a right comodule on the same space")
    m, a, c = M.dim, E.A.dim, E.C.dim
    lhs = V.coaction @ M.action
    rhs = kron(M.action, _id(c)) @ kron(_id(m), E.psi) @ kron(V.coaction, _id(a))
    compare(rep, "entwined module compatibility", lhs, rhs, [M.labels, E.A.labels],
            "ρ(m·a) = m_(0)·a_α ⊗ m_(1)^α")
    return rep


# ---------------------------------------------------------------------------
# inverses


def invert_entwining(E: Entwining) -> Entwining:
    """Attach ``ψ⁻¹``; raises :class:`NotInvertible` with the rank otherwise."""
    if E.psi_inv is not None:
        return E
    return replace(E, psi_inv=invert(E.psi))


def left_coaction(E: Entwining, e: Vec) -> Comodule:
    """``p ↦ ψ⁻¹(p⊗e)``."""
    if not verify_group_like(E.C, e):
        raise NotGroupLike("e is not group-like")
    E = invert_entwining(E)
    a, c = E.A.dim, E.C.dim
    return Comodule(E.C, E.A.labels, E.psi_inv @ kron(_id(a), _point(e, c)), "left")


# ---------------------------------------------------------------------------
# factorisations


def check_factorisation(F: Factorisation) -> Report:
    rep = Report("factorisation")
    P, A, Psi = F.P, F.A, F.Psi
    p, a = P.dim, A.dim
    Ip, Ia = _id(p), _id(a)
    compare(rep, "P-multiplicativity", Psi @ kron(P.mult, Ia),
            kron(Ia, P.mult) @ kron(Psi, Ip) @ kron(Ip, Psi), [P.labels, P.labels, A.labels],
            "Ψ(μ_P⊗id) = (id⊗μ_P)(Ψ⊗id)(id⊗Ψ)")
    compare(rep, "P-unit", Psi @ kron(P.unit_map, Ia), kron(Ia, P.unit_map), [A.labels],
            "Ψ(1⊗a) = a⊗1")
    compare(rep, "A-multiplicativity", Psi @ kron(Ip, A.mult),
            kron(A.mult, Ip) @ kron(Ia, Psi) @ kron(Psi, Ia), [P.labels, A.labels, A.labels],
            "Ψ(id⊗μ_A) = (μ_A⊗id)(id⊗Ψ)(Ψ⊗id)")
    compare(rep, "A-unit", Psi @ kron(Ip, A.unit_map), kron(A.unit_map, Ip), [P.labels],
            "Ψ(p⊗1) = 1⊗p")
    return rep


def factorisation_from_entwining(E: Entwining) -> Factorisation:
    """``Ψ(p⊗a) = Σ a_i⊗p^i`` with ``Σ a_i(c) p^i = p_α a(c^α)``, ``A = (C*)^op``."""
    P, C = E.A, E.C
    p, c = P.dim, C.dim
    Adual = dualize(C, opposite=True)
    # Ψ[(k, r), (p, j)] = ψ[(r, j), (k, p)]
    cols = []
    for col in range(p * c):
        pi, j = divmod(col, c)
        out: dict = {}
        for k in range(c):
            for r, x in _psi_column(E, k, pi).items():
                rr, jj = divmod(r, c)
                if jj == j:
                    out[k * p + rr] = x
        cols.append(out)
    return Factorisation(P, Adual, LinMap(p * c, c * p, cols))


def _psi_column(E: Entwining, k: int, pi: int) -> Vec:
    return E.psi.cols[k * E.A.dim + pi]


def entwining_from_factorisation(F: Factorisation) -> Entwining:
    """Inverse of :func:`factorisation_from_entwining`, with ``C = A*``."""
    P, A = F.P, F.A
    p, c = P.dim, A.dim
    C = dualize(A, opposite=True)
    cols = []
    for col in range(c * p):
        k, pi = divmod(col, p)
        out: dict = {}
        for j in range(c):
            for row, x in F.Psi.cols[pi * c + j].items():
                kk, rr = divmod(row, p)
                if kk == k:
                    out[rr * c + j] = x
        cols.append(out)
    return Entwining(P, C, LinMap(c * p, p * c, cols), name="from-factorisation")
