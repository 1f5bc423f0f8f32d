"""Connections on coalgebra-Galois extensions with the universal calculus.

Every connection datum is a matrix into the ambient ``P⊗P`` (``Ω¹P`` is the
kernel of the multiplication there), except ``Π``, which is stored on the
coordinates of the RREF basis of ``Ω¹P``.  The five kinds are

    s: P -> B⊗P      D: P -> Ω¹P      Π: Ω¹P -> Ω¹P      ω: C -> Ω¹P      ℓ: C -> P⊗P

and ``convert`` walks the cycle ``s -> D -> Π -> ω -> ℓ -> s``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .galois import (
    GaloisData,
    HomogeneousData,
    NotGalois,
    find_cointegral,
    is_cointegral,
    label_vec,
    NoCointegral,
    point,
    tensor_labels,
)
from .linalg import LinMap, NotInvertible, Subspace, Vec, kron, nullspace, solve_for_map, vtensor
from .report import Report
from .structures import Comodule, check_comodule, compare

ONE = Fraction(1)
KINDS = ("s", "D", "Pi", "omega", "ell")
_NEXT = {"s": "D", "D": "Pi", "Pi": "omega", "omega": "ell", "ell": "s"}


class SourceInvalid(ValueError):
    pass


class PsiNotInvertible(ArithmeticError):
    pass


class CanonicalNotSurjective(ArithmeticError):
    pass


class NotInvertibleInConvolution(ArithmeticError):
    pass


def _id(n: int) -> LinMap:
    return LinMap.identity(n)


@dataclass(frozen=True, eq=False)
class Connection:
    kind: str
    map: LinMap

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown connection kind {self.kind!r}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Connection):
            return NotImplemented
        return self.kind == other.kind and self.map == other.map

    __hash__ = None  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# universal calculus


class UnivCalc:
    """``Ω¹P``, ``d`` and the diagonal coaction for a Galois extension."""

    def __init__(self, data: GaloisData):
        if not data.is_galois():
            raise NotGalois("connections are built over a Galois extension")
        self.data = data
        self.P, self.C = data.P, data.C
        self.n, self.c = data.n, data.c

    @cached_property
    def omega1(self) -> Subspace:
        return nullspace(self.P.mult)

    @cached_property
    def d(self) -> LinMap:
        """``p ↦ 1⊗p - p⊗1``."""
        n = self.n
        return kron(self.P.unit_map, _id(n)) - kron(_id(n), self.P.unit_map)

    @cached_property
    def diag(self) -> LinMap:
        """``p⊗p' ↦ p_(0)⊗ψ(p_(1)⊗p')`` on ``P⊗P``."""
        n = self.n
        return kron(_id(n), self.data.entwining.psi) @ kron(self.data.coaction, _id(n))

    @cached_property
    def one_one(self) -> Vec:
        return vtensor(self.P.unit, self.P.unit, self.n)

    @cached_property
    def base_forms(self) -> Subspace:
        """``(Ω¹B)P``, spanned by ``b⊗b'p - bb'⊗p``."""
        P, n = self.P, self.n
        Bb = self.data.B.basis
        vecs = []
        for b, b2 in itertools.product(Bb, Bb):
            bb2 = P.mul(b, b2)
            for j in range(n):
                v = vtensor(b, P.mul(b2, {j: ONE}), n)
                for k, x in vtensor(bb2, {j: ONE}, n).items():
                    v[k] = v.get(k, 0) - x
                vecs.append({k: x for k, x in v.items() if x})
        return Subspace(n * n, vecs)

    @cached_property
    def B_tensor_P(self) -> Subspace:
        n = self.n
        return Subspace(n * n, [vtensor(b, {j: ONE}, n) for b in self.data.B.basis for j in range(n)])

    def coords(self, w: Vec) -> Vec:
        return self.omega1.coord_vec(w)

    # P⊗P helpers
    def left_fold(self, f: LinMap) -> LinMap:
        """``p⊗p' ↦ p·f(p')`` for ``f: P -> P⊗P``."""
        return kron(self.P.mult, _id(self.n)) @ kron(_id(self.n), f)

    def report(self) -> Report:
        rep = Report("universal-calculus")
        n, c = self.n, self.c
        O = self.omega1
        rep.add("m vanishes on Ω¹P", all(not self.P.mult.apply(w) for w in O.basis), detail=f"dim Ω¹P = {O.dim}")
        ok = all(not (self.P.mult @ self.d).cols[j] for j in range(n))
        rep.add("d lands in Ω¹P", ok)
        lhs = self.d @ self.P.mult
        rhs = self.right_mult_leg(self.d) + self.left_fold(self.d)
        compare(rep, "Leibniz d(pq) = d(p)q + p d(q)", lhs, rhs, [self.P.labels, self.P.labels])
        target = Subspace(n * n * c, [vtensor(w, {k: ONE}, c) for w in O.basis for k in range(c)])
        rep.add("diagonal coaction restricts to Ω¹P", all(target.contains(self.diag.apply(w)) for w in O.basis))
        sub = Comodule(self.C, tuple(f"ω{i}" for i in range(O.dim)), self._diag_on_omega1(), "right")
        rep.extend(check_comodule(sub), "Ω¹P: ")
        if self.data.e is not None:
            compare(rep, "d is colinear", self.diag @ self.d, kron(self.d, _id(c)) @ self.data.coaction,
                    [self.P.labels])
        return rep

    def right_mult_leg(self, f: LinMap) -> LinMap:
        """``p⊗q ↦ f(p)·q`` (right multiplication on the second leg)."""
        n = self.n
        return kron(_id(n), self.P.mult) @ kron(f, _id(n))

    def _diag_on_omega1(self) -> LinMap:
        O, c = self.omega1, self.c
        k = O.dim
        cols = []
        for w in O.basis:
            img = self.diag.apply(w)
            out: Vec = {}
            # regroup P⊗P⊗C as (Ω¹ coords)⊗C
            for kk in range(c):
                part = {}
                for flat, x in img.items():
                    pp, cc = divmod(flat, c)
                    if cc == kk:
                        part[pp] = x
                if part:
                    for i, x in O.coord_vec(part).items():
                        out[i * c + kk] = x
            cols.append(out)
        return LinMap(k, k * c, cols)


def universal_calculus(data: GaloisData) -> UnivCalc:
    return UnivCalc(data)


# ---------------------------------------------------------------------------
# conversions


def _s_to_D(U: UnivCalc, s: LinMap) -> LinMap:
    return kron(U.P.unit_map, _id(U.n)) - s


def _D_to_Pi(U: UnivCalc, D: LinMap) -> LinMap:
    lam = U.left_fold(D)
    return (_id(U.n * U.n) - lam).restrict(U.omega1.basis)


def _Pi_d(U: UnivCalc, Pi: LinMap) -> LinMap:
    return LinMap.from_function(U.n, U.n * U.n, lambda j: Pi.apply(U.coords(U.d.cols[j])))


def _Pi_to_omega(U: UnivCalc, Pi: LinMap) -> LinMap:
    return U.left_fold(_Pi_d(U, Pi)) @ U.data.tau_lift


def _omega_to_ell(U: UnivCalc, omega: LinMap) -> LinMap:
    return omega + point(U.one_one, U.n * U.n) @ U.C.counit


def _ell_to_s(U: UnivCalc, ell: LinMap) -> LinMap:
    return kron(U.P.mult, _id(U.n)) @ kron(_id(U.n), ell) @ U.data.coaction


_STEP = {"s": _s_to_D, "D": _D_to_Pi, "Pi": _Pi_to_omega, "omega": _omega_to_ell, "ell": _ell_to_s}


def pi_from_omega(U: UnivCalc, omega: LinMap) -> LinMap:
    """``Π(p dp') = p p'_(0) ω(p'_(1))``."""
    w = kron(U.P.mult, _id(U.n)) @ kron(_id(U.n), omega) @ U.data.coaction
    return U.left_fold(w).restrict(U.omega1.basis)


def omega_from_ell(U: UnivCalc, ell: LinMap) -> LinMap:
    return ell - point(U.one_one, U.n * U.n) @ U.C.counit


def validate(U: UnivCalc, x: Connection) -> Report:
    if x.kind == "Pi":
        return check_connection(U, x.map)
    if x.kind == "omega":
        return check_connection_form(U, x.map)
    if x.kind == "ell":
        return check_lifting(U, x.map)
    if x.kind == "s":
        return strong_splitting_report(U, x.map)
    return strong_differential_report(U, x.map)


def convert(U: UnivCalc, x: Connection, target: str, check: bool = True) -> Connection:
    if target not in KINDS:
        raise ValueError(f"unknown connection kind {target!r}")
    if check:
        rep = validate(U, x)
        if not rep.passed:
            raise SourceInvalid(f"{x.kind} fails: {rep.failures()[0].name}")
    cur = x
    while cur.kind != target:
        cur = Connection(_NEXT[cur.kind], _STEP[cur.kind](U, cur.map))
    return cur


def round_trip(U: UnivCalc, x: Connection) -> Connection:
    cur = x
    for _ in KINDS:
        cur = Connection(_NEXT[cur.kind], _STEP[cur.kind](U, cur.map))
    return cur


def all_kinds(U: UnivCalc, x: Connection) -> dict[str, Connection]:
    out = {x.kind: x}
    cur = x
    for _ in range(len(KINDS) - 1):
        cur = Connection(_NEXT[cur.kind], _STEP[cur.kind](U, cur.map))
        out[cur.kind] = cur
    return out


def round_trip_report(U: UnivCalc, x: Connection) -> Report:
    rep = Report("round-trip")
    kinds = all_kinds(U, x)
    for kind in KINDS:
        back = round_trip(U, kinds[kind])
        diff = back.map.first_difference(kinds[kind].map)
        rep.add(f"cycle from {kind} is the identity", diff is None,
                () if diff is None else (f"column {diff[0]}",))
    diff = pi_from_omega(U, kinds["omega"].map).first_difference(kinds["Pi"].map)
    rep.add("Π from ω by p dp' ↦ p p'_(0) ω(p'_(1)) matches", diff is None)
    return rep


# ---------------------------------------------------------------------------
# checks on single kinds


def check_connection(U: UnivCalc, Pi: LinMap) -> Report:
    rep = Report("connection")
    P, n, c = U.P, U.n, U.c
    O = U.omega1
    k = O.dim
    if (Pi.dom, Pi.cod) != (k, n * n):
        raise SourceInvalid(f"Π must be a {n * n}x{k} map on Ω¹P coordinates")
    labels = [f"ω{i}" for i in range(k)]
    rep.add("Π lands in Ω¹P", all(O.contains(col) for col in Pi.cols))
    sq = LinMap.from_function(k, n * n, lambda j: Pi.apply(U.coords(Pi.cols[j])) if O.contains(Pi.cols[j]) else {})
    compare(rep, "Π∘Π = Π", sq, Pi, [labels])
    bad = None
    for i, j in itertools.product(range(n), range(k)):
        w = kron(P.left_mult({i: ONE}), _id(n)).apply(O.basis[j])
        if Pi.apply(U.coords(w)) != kron(P.left_mult({i: ONE}), _id(n)).apply(Pi.cols[j]):
            bad = (P.labels[i], labels[j])
            break
    rep.add("Π left P-linear", bad is None, bad or ())
    ker = Subspace(n * n, [O.from_coords(v) for v in nullspace(Pi).basis])
    rep.add("ker Π = P(Ω¹B)P", ker == U.data.relations, detail=f"dim ker = {ker.dim}")
    Pd = _Pi_d(U, Pi)
    compare(rep, "Π∘d colinear", U.diag @ Pd, kron(Pd, _id(c)) @ U.data.coaction, [P.labels])
    rep.note("colinearity of Π on all of Ω¹P is not asserted")
    return rep


def _form_equations(U: UnivCalc, X: LinMap) -> dict[str, LinMap]:
    """Left-hand sides of the connection-form conditions (homogeneous parts)."""
    P, C, n, c = U.P, U.C, U.n, U.c
    psi = U.data.entwining.psi
    d1 = point(U.data.coaction.apply(P.unit), n * c)
    return {
        "ω lands in Ω¹P": P.mult @ X,
        "(i) 1_(0) ω(1_(1)) = 0": kron(P.mult, _id(n)) @ kron(_id(n), X) @ d1,
        "(ii) can∘ω(c) = 1⊗c - Δ_P(1)ε(c)": U.data.can_lift @ X,
        "(iii) (id⊗ψ)(ψ⊗id)(id⊗ω)Δ = (ω⊗id)Δ":
            kron(_id(n), psi) @ kron(psi, _id(n)) @ kron(_id(c), X) @ C.comult - kron(X, _id(c)) @ C.comult,
    }


def _form_rhs(U: UnivCalc) -> dict[str, LinMap]:
    P, C, n, c = U.P, U.C, U.n, U.c
    d1 = U.data.coaction.apply(P.unit)
    return {
        "ω lands in Ω¹P": LinMap.zero(c, n),
        "(i) 1_(0) ω(1_(1)) = 0": LinMap.zero(1, n * n),
        "(ii) can∘ω(c) = 1⊗c - Δ_P(1)ε(c)": kron(P.unit_map, _id(c)) - point(d1, n * c) @ C.counit,
        "(iii) (id⊗ψ)(ψ⊗id)(id⊗ω)Δ = (ω⊗id)Δ": LinMap.zero(c, n * n * c),
    }


def _strong_form_lhs(U: UnivCalc, X: LinMap) -> LinMap:
    return kron(_id(U.n), U.data.coaction) @ X - kron(X, _id(U.c)) @ U.C.comult


def _strong_form_rhs(U: UnivCalc) -> LinMap:
    n, c = U.n, U.c
    e = U.data.e
    one_c = kron(point(U.one_one, n * n), _id(c))
    return one_c - point(vtensor(U.one_one, e, c), n * n * c) @ U.C.counit


def check_connection_form(U: UnivCalc, omega: LinMap) -> Report:
    rep = Report("connection-form")
    LC = [U.C.labels]
    rhs = _form_rhs(U)
    for name, lhs in _form_equations(U, omega).items():
        compare(rep, name, lhs, rhs[name], [["1"]] if lhs.dom == 1 else LC)
    return rep


def check_lifting(U: UnivCalc, ell: LinMap) -> Report:
    """Connection-lifting conditions."""
    rep = Report("lifting")
    P, C, n, c = U.P, U.C, U.n, U.c
    psi = U.data.entwining.psi
    d1 = point(U.data.coaction.apply(P.unit), n * c)
    LC = [C.labels]
    compare(rep, "1_(0) ℓ(1_(1)) = 1⊗1", kron(P.mult, _id(n)) @ kron(_id(n), ell) @ d1,
            point(U.one_one, n * n), [["1"]])
    compare(rep, "can∘ℓ = 1⊗id", U.data.can_lift @ ell, kron(P.unit_map, _id(c)), LC)
    compare(rep, "(id⊗ψ)(ψ⊗id)(id⊗ℓ)Δ = (ℓ⊗id)Δ",
            kron(_id(n), psi) @ kron(psi, _id(n)) @ kron(_id(c), ell) @ C.comult,
            kron(ell, _id(c)) @ C.comult, LC)
    return rep


# ---------------------------------------------------------------------------
# strongness criteria


def strong_splitting_report(U: UnivCalc, s: LinMap) -> Report:
    rep = Report("strong-s")
    P, n, c = U.P, U.n, U.c
    rep.add("s(1) = 1⊗1", s.apply(P.unit) == U.one_one)
    rep.add("m∘s = id", P.mult @ s == _id(n))
    rep.add("s lands in B⊗P", all(U.B_tensor_P.contains(col) for col in s.cols))
    rep.add("s left B-linear",
            all(s @ P.left_mult(b) == kron(P.left_mult(b), _id(n)) @ s for b in U.data.B.basis))
    compare(rep, "s right colinear", kron(_id(n), U.data.coaction) @ s, kron(s, _id(c)) @ U.data.coaction,
            [P.labels])
    return rep


def strong_differential_report(U: UnivCalc, D: LinMap) -> Report:
    rep = Report("strong-D")
    P, n, c = U.P, U.n, U.c
    rep.add("D(1) = 0", not D.apply(P.unit))
    rep.add("D lands in (Ω¹B)P", all(U.base_forms.contains(col) for col in D.cols))
    ok = True
    for b in U.data.B.basis:
        lhs = D @ P.left_mult(b)
        db = U.d.apply(b)
        # d(b)·p + b·D(p)
        rhs = LinMap.from_function(n, n * n, lambda j: _add(
            kron(_id(n), P.right_mult({j: ONE})).apply(db),
            kron(P.left_mult(b), _id(n)).apply(D.cols[j])))
        if lhs != rhs:
            ok = False
            break
    rep.add("Leibniz D(bp) = d(b)p + bD(p)", ok)
    rep.add("D(b) = d(b) on B", all(D.apply(b) == U.d.apply(b) for b in U.data.B.basis))
    compare(rep, "D colinear", kron(_id(n), U.data.coaction) @ D, kron(D, _id(c)) @ U.data.coaction, [P.labels])
    return rep


def _add(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def strong_projection_report(U: UnivCalc, Pi: LinMap) -> Report:
    rep = Report("strong-Pi")
    Pd = _Pi_d(U, Pi)
    rest = U.d - Pd
    bad = [U.P.labels[j] for j in range(U.n) if not U.base_forms.contains(rest.cols[j])]
    rep.add("(d - Π∘d)(P) ⊆ (Ω¹B)P", not bad, bad[:1])
    return rep


def strong_form_report(U: UnivCalc, omega: LinMap) -> Report:
    rep = Report("strong-omega")
    if U.data.e is None:
        rep.add("(id⊗Δ_P)ω(c) = 1⊗1⊗c - ε(c)1⊗1⊗e + ω(c_(1))⊗c_(2)", "not-certified", detail="needs e")
        return rep
    compare(rep, "(id⊗Δ_P)ω(c) = 1⊗1⊗c - ε(c)1⊗1⊗e + ω(c_(1))⊗c_(2)",
            _strong_form_lhs(U, omega), _strong_form_rhs(U), [U.C.labels])
    return rep


def strong_lifting_report(U: UnivCalc, ell: LinMap) -> Report:
    rep = Report("strong-ell")
    data = U.data
    if data.e is None:
        raise PsiNotInvertible("the strong-lifting criterion needs a group-like e")
    try:
        left = data.left_coaction
    except NotInvertible as exc:
        raise PsiNotInvertible(f"canonical entwining has rank {exc.rank}") from None
    n, c = U.n, U.c
    LC = [U.C.labels]
    rep.add("ℓ(e) = 1⊗1", ell.apply(data.e) == U.one_one)
    compare(rep, "π_B∘ℓ = τ", data.balanced.project @ ell, data.tau, LC)
    compare(rep, "(_PΔ⊗id)ℓ = (id⊗ℓ)Δ", kron(left, _id(n)) @ ell, kron(_id(c), ell) @ U.C.comult, LC)
    compare(rep, "(id⊗Δ_P)ℓ = (ℓ⊗id)Δ", kron(_id(n), data.coaction) @ ell, kron(ell, _id(c)) @ U.C.comult, LC)
    return rep


_CRITERIA = {
    "s": strong_splitting_report,
    "D": strong_differential_report,
    "Pi": strong_projection_report,
    "omega": strong_form_report,
    "ell": strong_lifting_report,
}


def check_strong(U: UnivCalc, x: Connection) -> Report:
    """Evaluate every strongness criterion on the converted data; they must agree."""
    rep = Report("strong")
    kinds = all_kinds(U, x)
    verdicts = {}
    for kind in KINDS:
        sub = _CRITERIA[kind](U, kinds[kind].map)
        rep.extend(sub, f"[{kind}] ")
        verdicts[kind] = sub.passed
    agree = len(set(verdicts.values())) == 1
    rep.add("criteria agree", agree, () if agree else tuple(k for k, v in verdicts.items() if not v))
    return rep


def is_strong(U: UnivCalc, x: Connection) -> bool:
    return check_strong(U, x).passed


# ---------------------------------------------------------------------------
# searching connections


def find_connection_form(U: UnivCalc, strong: bool = False) -> LinMap | None:
    """Least solution of the connection-form equations, optionally with strongness."""
    names = list(_form_rhs(U))
    rhs = _form_rhs(U)
    n, c = U.n, U.c

    def constraints(X: LinMap) -> list[LinMap]:
        eqs = _form_equations(U, X)
        out = [eqs[k] for k in names]
        if strong:
            out.append(_strong_form_lhs(U, X))
        return out

    targets = [rhs[k] for k in names]
    if strong:
        targets.append(_strong_form_rhs(U))
    return solve_for_map(c, n * n, constraints, targets)


def connection_form_directions(U: UnivCalc, strong: bool = False) -> list[LinMap]:
    """Basis of the homogeneous solutions (differences of two connection forms)."""
    n, c = U.n, U.c
    names = list(_form_rhs(U))
    cols = []
    for u in range(c * n * n):
        j, i = divmod(u, n * n)
        E = LinMap(c, n * n, [{i: ONE} if k == j else {} for k in range(c)])
        eqs = _form_equations(U, E)
        parts = [eqs[k] for k in names] + ([_strong_form_lhs(U, E)] if strong else [])
        flat: Vec = {}
        off = 0
        for m in parts:
            for jj, col in enumerate(m.cols):
                for ii, x in col.items():
                    flat[off + jj * m.cod + ii] = x
            off += m.dom * m.cod
        cols.append(flat)
    total = off
    kern = nullspace(LinMap(c * n * n, total, cols))
    out = []
    for v in kern.basis:
        m_cols: list[Vec] = [{} for _ in range(c)]
        for u, x in v.items():
            j, i = divmod(u, n * n)
            m_cols[j][i] = x
        out.append(LinMap(c, n * n, m_cols))
    return out


def find_strong_connection(data: GaloisData) -> Connection | None:
    U = UnivCalc(data)
    omega = find_connection_form(U, strong=True)
    return None if omega is None else Connection("omega", omega)


def strong_connection_exists(data: GaloisData) -> bool:
    """Existence of a strong connection form.  Without a bijective canonical map
    the lifted-canonical equation is already infeasible, so the answer is ``False``."""
    if not data.is_galois() or data.e is None:
        return _strong_system_without_psi(data)
    return find_strong_connection(data) is not None


def _strong_system_without_psi(data: GaloisData) -> bool:
    """Conditions (i), (ii) and strongness only; these do not need an entwining."""
    if data.e is None:
        return False
    P, C, n, c = data.P, data.C, data.n, data.c
    d1 = point(data.coaction.apply(P.unit), n * c)
    one_one = vtensor(P.unit, P.unit, n)

    def constraints(X: LinMap) -> list[LinMap]:
        return [
            P.mult @ X,
            kron(P.mult, _id(n)) @ kron(_id(n), X) @ d1,
            data.can_lift @ X,
            kron(_id(n), data.coaction) @ X - kron(X, _id(c)) @ C.comult,
        ]

    rhs = [
        LinMap.zero(c, n),
        LinMap.zero(1, n * n),
        kron(P.unit_map, _id(c)) - d1 @ C.counit,
        kron(point(one_one, n * n), _id(c)) - point(vtensor(one_one, data.e, c), n * n * c) @ C.counit,
    ]
    return solve_for_map(c, n * n, constraints, rhs) is not None


# ---------------------------------------------------------------------------
# cointegral construction


@dataclass(eq=False)
class CointegralData:
    delta: LinMap
    gamma_fold: LinMap
    alpha_fold: LinMap
    sigma: LinMap


def cointegral_data(data: GaloisData, delta: LinMap | None = None) -> CointegralData:
    C, n, c = data.C, data.n, data.c
    if delta is None:
        delta = find_cointegral(C)
        if delta is None:
            raise NoCointegral("C admits no cointegral")
    elif not is_cointegral(C, delta):
        raise NoCointegral("supplied map fails the cointegral equations")
    if data.can_lift.rank() != n * c:
        raise CanonicalNotSurjective("the lifted canonical map is not surjective")
    if data.e is None:
        raise PsiNotInvertible("the construction needs a group-like e")
    try:
        left = data.left_coaction
    except NotInvertible as exc:
        raise PsiNotInvertible(f"canonical entwining has rank {exc.rank}") from None
    gamma = kron(delta, _id(n)) @ kron(_id(c), left)
    alpha = kron(_id(n), delta) @ kron(data.coaction, _id(c))
    one_c = kron(data.P.unit_map, _id(c))
    sigma = solve_for_map(c, n * n, lambda X: [data.can_lift @ X], [one_c])
    if sigma is None:  # pragma: no cover - excluded by the rank test above
        raise CanonicalNotSurjective("no section of the lifted canonical map")
    one_one = vtensor(data.P.unit, data.P.unit, n)
    sigma = sigma + point(one_one, n * n) @ C.counit - point(sigma.apply(data.e), n * n) @ C.counit
    return CointegralData(delta, gamma, alpha, sigma)


def cointegral_strong_lifting(data: GaloisData, delta: LinMap | None = None) -> LinMap:
    """``ℓ = (γ⊗α)∘(id⊗σ⊗id)∘(Δ⊗id)∘Δ``."""
    cd = cointegral_data(data, delta)
    c = data.c
    C = data.C
    return (kron(cd.gamma_fold, cd.alpha_fold) @ kron(_id(c), cd.sigma, _id(c))
            @ kron(C.comult, _id(c)) @ C.comult)


def homogeneous_lifting(hd: HomogeneousData, i: LinMap | None = None) -> LinMap:
    """``ℓ = (S⊗id)∘Δ∘i`` for a splitting ``i: C -> H`` of the quotient map
    (default: the coset representatives)."""
    H = hd.H
    i = hd.pi.lift if i is None else i
    return kron(H.antipode, _id(H.dim)) @ H.comult @ i


def splitting_report(hd: HomogeneousData, i: LinMap) -> Report:
    """``π∘i = id``, ``i(π(1)) = 1``, ``ε∘i = ε`` and bicolinearity of ``i``."""
    rep = Report("splitting")
    H, C, pi = hd.H, hd.C, hd.pi.project
    LC = [C.labels]
    compare(rep, "π∘i = id", pi @ i, _id(C.dim), LC)
    rep.add("i(π(1)) = 1", i.apply(pi.apply(H.unit)) == H.unit)
    compare(rep, "ε∘i = ε", H.counit @ i, C.counit, LC)
    compare(rep, "(π⊗id)Δ∘i = (id⊗i)Δ", kron(pi, _id(H.dim)) @ H.comult @ i, kron(_id(C.dim), i) @ C.comult, LC)
    compare(rep, "(id⊗π)Δ∘i = (i⊗id)Δ", kron(_id(H.dim), pi) @ H.comult @ i, kron(i, _id(C.dim)) @ C.comult, LC)
    return rep


def cointegral_report(data: GaloisData, delta: LinMap | None = None) -> Report:
    rep = Report("cointegral")
    C = data.C
    if delta is None:
        delta = find_cointegral(C)
    if delta is None:
        rep.add("cointegral exists", False, detail="linear system infeasible")
        return rep
    rep.add("δ∘Δ = ε and c_(1)δ(c_(2)⊗c') = δ(c⊗c'_(1))c'_(2)", is_cointegral(C, delta),
            detail="δ: " + describe_delta(C, delta))
    cd = cointegral_data(data, delta)
    one_c = kron(data.P.unit_map, _id(data.c))
    compare(rep, "can∘σ = 1⊗id", data.can_lift @ cd.sigma, one_c, [C.labels])
    rep.add("σ(e) = 1⊗1", cd.sigma.apply(data.e) == vtensor(data.P.unit, data.P.unit, data.n))
    ell = cointegral_strong_lifting(data, delta)
    U = UnivCalc(data)
    rep.extend(check_lifting(U, ell), "lifting: ")
    rep.extend(check_strong(U, Connection("ell", ell)), "strong: ")
    return rep


def describe_delta(C, delta: LinMap) -> str:
    names = tensor_labels(C.labels, C.labels)
    parts = [f"{names[k]}:{col[0]}" for k, col in enumerate(delta.cols) if col]
    return ", ".join(parts) or "0"


# ---------------------------------------------------------------------------
# gauge transformations


def convolution(data: GaloisData, f: LinMap, g: LinMap) -> LinMap:
    """``(f*g)(c) = f(c_(1))g(c_(2))``."""
    return data.P.mult @ kron(f, g) @ data.C.comult


def convolution_unit(data: GaloisData) -> LinMap:
    return data.P.unit_map @ data.C.counit


def convolution_inverse(data: GaloisData, f: LinMap) -> LinMap:
    unit = convolution_unit(data)
    x = solve_for_map(data.c, data.n, lambda X: [convolution(data, f, X)], [unit])
    if x is None or convolution(data, x, f) != unit:
        raise NotInvertibleInConvolution("no two-sided convolution inverse")
    return x


@dataclass(eq=False)
class GaugeTransformation:
    f: LinMap
    f_inv: LinMap


def _gauge_equations(data: GaloisData, f: LinMap) -> tuple[LinMap, LinMap]:
    P, C, n, c = data.P, data.C, data.n, data.c
    d1 = point(data.coaction.apply(P.unit), n * c)
    a = P.mult @ kron(_id(n), f) @ d1
    b = data.entwining.psi @ kron(_id(c), f) @ C.comult - kron(f, _id(c)) @ C.comult
    return a, b


def check_gauge(data: GaloisData, f: LinMap) -> Report:
    rep = Report("gauge")
    a, b = _gauge_equations(data, f)
    rep.add("(a) 1_(0) f(1_(1)) = 1", a == point(data.P.unit, data.n))
    compare(rep, "(b) ψ(c_(1)⊗f(c_(2))) = f(c_(1))⊗c_(2)", b, LinMap.zero(data.c, data.n * data.c),
            [data.C.labels])
    try:
        convolution_inverse(data, f)
        rep.add("convolution invertible", True)
    except NotInvertibleInConvolution:
        rep.add("convolution invertible", False)
    return rep


def gauge(data: GaloisData, f: LinMap) -> GaugeTransformation:
    rep = check_gauge(data, f)
    if rep.status("convolution invertible") != "pass":
        raise NotInvertibleInConvolution("f has no convolution inverse")
    if not rep.passed:
        raise SourceInvalid(f"not a gauge transformation: {rep.failures()[0].name}")
    return GaugeTransformation(f, convolution_inverse(data, f))


def gauge_directions(data: GaloisData) -> list[LinMap]:
    """Basis of ``h`` with ``η∘ε + h`` satisfying (a) and (b)."""
    n, c = data.n, data.c
    cols = []
    for u in range(c * n):
        j, i = divmod(u, n)
        E = LinMap(c, n, [{i: ONE} if k == j else {} for k in range(c)])
        a, b = _gauge_equations(data, E)
        flat: Vec = {}
        off = 0
        for m in (a, b):
            for jj, col in enumerate(m.cols):
                for ii, x in col.items():
                    flat[off + jj * m.cod + ii] = x
            off += m.dom * m.cod
        cols.append(flat)
    kern = nullspace(LinMap(c * n, off, cols))
    out = []
    for v in kern.basis:
        m_cols: list[Vec] = [{} for _ in range(c)]
        for u, x in v.items():
            j, i = divmod(u, n)
            m_cols[j][i] = x
        out.append(LinMap(c, n, m_cols))
    return out


def sample_gauges(data: GaloisData, coefficients: Sequence[Sequence[int]] = ((1,), (2,), (-1,))) -> list[GaugeTransformation]:
    """Invertible ``η∘ε + Σ t_k h_k`` for the given coefficient tuples."""
    dirs = gauge_directions(data)
    unit = convolution_unit(data)
    out = []
    for coeffs in coefficients:
        f = unit
        for t, h in zip(coeffs, dirs):
            f = f + h.scale(Fraction(t))
        try:
            out.append(gauge(data, f))
        except (NotInvertibleInConvolution, SourceInvalid):
            continue
    return out


def automorphism_of(data: GaloisData, f: LinMap) -> LinMap:
    """``F_f(p) = p_(0) f(p_(1))``."""
    return data.P.mult @ kron(_id(data.n), f) @ data.coaction


def transformation_of(data: GaloisData, F: LinMap) -> LinMap:
    """``f_F(c) = c^[1] F(c^[2])``."""
    return data.P.mult @ kron(_id(data.n), F) @ data.tau_lift


def check_automorphism(data: GaloisData, F: LinMap) -> Report:
    rep = Report("gauge-automorphism")
    P, n = data.P, data.n
    rep.add("F(1) = 1", F.apply(P.unit) == P.unit)
    rep.add("F left B-linear", all(F @ P.left_mult(b) == P.left_mult(b) @ F for b in data.B.basis))
    rep.add("F colinear", data.coaction @ F == kron(F, _id(data.c)) @ data.coaction)
    rep.add("F bijective", F.rank() == n)
    return rep


def _triple(data: GaloisData) -> LinMap:
    return kron(data.C.comult, _id(data.c)) @ data.C.comult


def gauge_act(data: GaloisData, g: GaugeTransformation, x: Connection, U: UnivCalc | None = None) -> Connection:
    U = U or UnivCalc(data)
    P, n, c = data.P, data.n, data.c
    f, fi = g.f, g.f_inv
    In = _id(n)
    mult_left = kron(P.mult, In)  # P⊗(P⊗P) -> P⊗P
    mult_right = kron(In, P.mult)  # (P⊗P)⊗P -> P⊗P
    if x.kind == "ell":
        new = mult_right @ kron(mult_left @ kron(f, x.map), fi) @ _triple(data)
        return Connection("ell", new)
    if x.kind == "omega":
        first = mult_right @ kron(mult_left @ kron(f, x.map), fi) @ _triple(data)
        second = mult_left @ kron(f, U.d @ fi) @ data.C.comult
        return Connection("omega", first + second)
    # p ↦ p_(0) f(p_(1)) ⊗ f⁻¹(p_(2)) as P -> P⊗P
    twice = kron(data.coaction, _id(c)) @ data.coaction
    split = kron(P.mult @ kron(In, f), fi) @ twice
    if x.kind in ("s", "D"):
        return Connection(x.kind, mult_right @ kron(x.map, In) @ split)
    # Π(r dp) = rΠ(d(p_(0)f(p_(1))))f⁻¹(p_(2)) + r p_(0)f(p_(1)) d f⁻¹(p_(2))
    Pd = _Pi_d(U, x.map)
    phi = mult_right @ kron(Pd, In) @ split + mult_left @ kron(In, U.d) @ split
    return Connection("Pi", U.left_fold(phi).restrict(U.omega1.basis))


def gauge_report(data: GaloisData, gauges: Sequence[GaugeTransformation], x: Connection) -> Report:
    """Group laws, the ``f <-> F`` correspondence and the action on connections."""
    rep = Report("gauge")
    U = UnivCalc(data)
    unit = convolution_unit(data)
    LC = [data.C.labels]
    ident = gauge(data, unit)
    rep.extend(check_gauge(data, unit), "η∘ε: ")
    compare(rep, "F for η∘ε is the identity", automorphism_of(data, unit), _id(data.n), [data.P.labels])
    kinds = all_kinds(U, x)
    for kind in KINDS:
        y = gauge_act(data, ident, kinds[kind], U)
        rep.add(f"η∘ε acts trivially on {kind}", y == kinds[kind])
    for i, g in enumerate(gauges):
        tag = f"f{i + 1}"
        rep.extend(check_gauge(data, g.f), f"{tag}: ")
        compare(rep, f"{tag}: f*f⁻¹ = η∘ε", convolution(data, g.f, g.f_inv), unit, LC)
        compare(rep, f"{tag}: f⁻¹*f = η∘ε", convolution(data, g.f_inv, g.f), unit, LC)
        rep.extend(check_gauge(data, g.f_inv), f"{tag}⁻¹: ")
        F = automorphism_of(data, g.f)
        rep.extend(check_automorphism(data, F), f"{tag}: ")
        compare(rep, f"{tag}: f_(F_f) = f", transformation_of(data, F), g.f, LC)
        compare(rep, f"{tag}: F_(f_F) = F", automorphism_of(data, transformation_of(data, F)), F, [data.P.labels])
        acted = {kind: gauge_act(data, g, kinds[kind], U) for kind in KINDS}
        strong = check_strong(U, acted["ell"])
        rep.add(f"{tag}: action preserves strongness", strong.passed,
                tuple(ch.name for ch in strong.failures())[:1])
        for kind in KINDS:
            nxt = _NEXT[kind]
            via = Connection(nxt, _STEP[kind](U, acted[kind].map))
            rep.add(f"{tag}: action commutes with {kind} -> {nxt}", via == acted[nxt])
        for j, h in enumerate(gauges):
            prod = GaugeTransformation(convolution(data, g.f, h.f), convolution(data, h.f_inv, g.f_inv))
            rep.add(f"{tag}*f{j + 1} is a gauge transformation", check_gauge(data, prod.f).passed)
            lhs = gauge_act(data, g, gauge_act(data, h, kinds["ell"], U), U)
            rhs = gauge_act(data, prod, kinds["ell"], U)
            rep.add(f"{tag}▷(f{j + 1}▷ℓ) = ({tag}*f{j + 1})▷ℓ", lhs == rhs)
    return rep


# ---------------------------------------------------------------------------
# associated modules


@dataclass(eq=False)
class AssociatedModule:
    """``E = Hom^C(V, P)`` flattened as ``f ↦ Σ_j f(v_j)⊗v_j*`` in ``P⊗V*``."""

    data: GaloisData
    V: Comodule
    E: Subspace

    @property
    def dim(self) -> int:
        return self.E.dim

    def as_map(self, x: Vec) -> LinMap:
        n, v = self.data.n, self.V.dim
        cols: list[Vec] = [{} for _ in range(v)]
        for flat, a in x.items():
            p, j = divmod(flat, v)
            cols[j][p] = a
        return LinMap(v, n, cols)

    def from_map(self, f: LinMap) -> Vec:
        v = self.V.dim
        return {p * v + j: a for j, col in enumerate(f.cols) for p, a in col.items()}


def associated_module(data: GaloisData, V: Comodule) -> AssociatedModule:
    if V.side != "right" or V.coalgebra.dim != data.c:
        raise ValueError("V must be a right C-comodule")
    n, c, v = data.n, data.c, V.dim

    def residual(u: int) -> Vec:
        p, j = divmod(u, v)
        f = LinMap(v, n, [{p: ONE} if k == j else {} for k in range(v)])
        diff = data.coaction @ f - kron(f, _id(c)) @ V.coaction
        return {jj * n * c + r: x for jj, col in enumerate(diff.cols) for r, x in col.items()}

    A = LinMap(n * v, v * n * c, [residual(u) for u in range(n * v)])
    return AssociatedModule(data, V, nullspace(A))


def associated_module_report(M: AssociatedModule, ell: LinMap | None = None, U: UnivCalc | None = None) -> Report:
    rep = Report("associated-module")
    data, V = M.data, M.V
    P, n, c, v = data.P, data.n, data.c, V.dim
    rep.add("E computed", True, detail=f"dim E = {M.dim}")
    ok = all(
        M.E.contains(M.from_map(P.left_mult(b) @ M.as_map(x))) for b in data.B.basis for x in M.E.basis
    )
    rep.add("E is a left B-module", ok)
    if ell is None:
        return rep
    U = U or UnivCalc(data)
    omega = omega_from_ell(U, ell)
    s = _ell_to_s(U, ell)
    # ∇f(v) = d f(v) - f(v_(0)) ω(v_(1))
    bad_land, bad_col, bad_leib = [], [], []
    for k, x in enumerate(M.E.basis):
        nab = nabla(U, M, omega, x)
        if not all(U.base_forms.contains(col) for col in nab.cols):
            bad_land.append(f"f{k}")
        if kron(_id(n), data.coaction) @ nab != kron(nab, _id(c)) @ V.coaction:
            bad_col.append(f"f{k}")
        for bi, b in enumerate(data.B.basis):
            bf = M.from_map(P.left_mult(b) @ M.as_map(x))
            lhs = nabla(U, M, omega, bf)
            f = M.as_map(x)
            db = U.d.apply(b)
            rhs = LinMap.from_function(v, n * n, lambda j: _add(
                kron(_id(n), P.right_mult(f.cols[j])).apply(db),
                kron(P.left_mult(b), _id(n)).apply(nab.cols[j])))
            if lhs != rhs:
                bad_leib.append(f"b{bi}, f{k}")
    rep.add("∇ lands in (Ω¹B)P", not bad_land, bad_land[:1])
    rep.add("∇f is colinear", not bad_col, bad_col[:1])
    rep.add("Leibniz ∇(bf) = d(b)f + b∇f", not bad_leib, bad_leib[:1])
    # (s⊗id): E -> B⊗E splits the multiplication
    sv = kron(s, _id(v))
    BE = Subspace(n * n * v, [vtensor(b, x, n * v) for b in data.B.basis for x in M.E.basis])
    rep.add("(s⊗id)(E) ⊆ B⊗E", all(BE.contains(sv.apply(x)) for x in M.E.basis))
    rep.add("m∘(s⊗id) = id on E", all(kron(P.mult, _id(v)).apply(sv.apply(x)) == x for x in M.E.basis))
    return rep


def nabla(U: UnivCalc, M: AssociatedModule, omega: LinMap, x: Vec) -> LinMap:
    """``∇f: V -> P⊗P`` for ``f`` given by its flattened coordinates ``x``."""
    data, V = M.data, M.V
    n = data.n
    f = M.as_map(x)
    first = U.d @ f
    second = kron(data.P.mult, _id(n)) @ kron(f, omega) @ V.coaction
    return first - second


def describe_nabla(U: UnivCalc, M: AssociatedModule, omega: LinMap, x: Vec) -> str:
    nab = nabla(U, M, omega, x)
    names = tensor_labels(M.data.P.labels, M.data.P.labels)
    return "; ".join(f"{M.V.labels[j]} ↦ {label_vec(nab.cols[j], names)}" for j in range(nab.dom))
