"""Finite-dimensional algebras, coalgebras, Hopf algebras and their (co)modules.

Every structure is given by structure constants stored as :class:`LinMap`
values: a multiplication ``A⊗A -> A``, a unit ``k -> A``, a comultiplication
``C -> C⊗C`` and a counit ``C -> k``.  Axioms are matrix identities, and a
failing identity reports the first basis tuple on which the two sides differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .linalg import LinMap, ShapeError, Vec, axpy, kron, tsplit, vec, vtensor
from .report import Report
from .scalars import QQ, Field


class InvalidParams(ValueError):
    pass


class NotGroupLike(ValueError):
    pass


ONE = Fraction(1)


def _id(n: int) -> LinMap:
    return LinMap.identity(n)


def witness_labels(legs: Sequence[Sequence[str]], flat: int) -> tuple[str, ...]:
    idx = tsplit([len(l) for l in legs], flat)
    return tuple(legs[k][i] for k, i in enumerate(idx))


def compare(
    report: Report,
    name: str,
    lhs: LinMap,
    rhs: LinMap,
    legs: Sequence[Sequence[str]],
    ref: str = "",
) -> bool:
    """Record whether two maps agree; on failure the witness is a domain basis tuple."""
    diff = lhs.first_difference(rhs)
    if diff is None:
        report.add(name, True, ref=ref)
        return True
    report.add(name, False, witness_labels(legs, diff[0]), ref=ref)
    return False


# ---------------------------------------------------------------------------
# algebras and coalgebras


@dataclass(frozen=True, eq=False)
class Algebra:
    labels: tuple[str, ...]
    mult: LinMap
    unit: Vec
    field: Field = QQ

    def __post_init__(self):
        n = len(self.labels)
        if (self.mult.dom, self.mult.cod) != (n * n, n):
            raise ShapeError(f"multiplication must be {n}x{n * n}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def unit_map(self) -> LinMap:
        return LinMap(1, self.dim, [self.unit])

    def one(self) -> Vec:
        return dict(self.unit)

    def mul(self, x: Vec, y: Vec) -> Vec:
        n = self.dim
        out: Vec = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.mult.cols[i * n + j])
        return out

    def basis_mul(self, i: int, j: int) -> Vec:
        return self.mult.cols[i * self.dim + j]

    def left_mult(self, x: Vec) -> LinMap:
        return LinMap.from_function(self.dim, self.dim, lambda j: self.mul(x, {j: ONE}))

    def right_mult(self, x: Vec) -> LinMap:
        return LinMap.from_function(self.dim, self.dim, lambda j: self.mul({j: ONE}, x))

    @classmethod
    def from_table(
        cls,
        labels: Sequence[str],
        product: Callable[[int, int], Mapping[int, object]],
        unit: Mapping[int, object],
        field: Field = QQ,
    ) -> Algebra:
        n = len(labels)
        mult = LinMap.from_function(n * n, n, lambda k: product(*divmod(k, n)))
        return cls(tuple(labels), mult, vec(unit), field)


@dataclass(frozen=True, eq=False)
class Coalgebra:
    labels: tuple[str, ...]
    comult: LinMap
    counit: LinMap
    field: Field = QQ

    def __post_init__(self):
        n = len(self.labels)
        if (self.comult.dom, self.comult.cod) != (n, n * n):
            raise ShapeError(f"comultiplication must be {n * n}x{n}")
        if (self.counit.dom, self.counit.cod) != (n, 1):
            raise ShapeError(f"counit must be 1x{n}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def delta(self, x: Vec) -> Vec:
        return self.comult.apply(x)

    def eps(self, x: Vec):
        return self.counit.apply(x).get(0, Fraction(0))

    def eps_basis(self, i: int):
        return self.counit.cols[i].get(0, Fraction(0))

    @classmethod
    def from_table(
        cls,
        labels: Sequence[str],
        coproduct: Callable[[int], Mapping[int, object]],
        counit: Callable[[int], object],
        field: Field = QQ,
    ) -> Coalgebra:
        n = len(labels)
        comult = LinMap.from_function(n, n * n, coproduct)
        eps = LinMap.from_function(n, 1, lambda i: {0: counit(i)})
        return cls(tuple(labels), comult, eps, field)


@dataclass(frozen=True, eq=False)
class Bialgebra:
    algebra: Algebra
    coalgebra: Coalgebra

    def __post_init__(self):
        if self.algebra.labels != self.coalgebra.labels:
            raise InvalidParams("algebra and coalgebra must share a basis")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.algebra.labels

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def mult(self) -> LinMap:
        return self.algebra.mult

    @property
    def comult(self) -> LinMap:
        return self.coalgebra.comult

    @property
    def counit(self) -> LinMap:
        return self.coalgebra.counit

    @property
    def unit(self) -> Vec:
        return self.algebra.unit

    def mul(self, x: Vec, y: Vec) -> Vec:
        return self.algebra.mul(x, y)

    def delta(self, x: Vec) -> Vec:
        return self.coalgebra.delta(x)

    def eps(self, x: Vec):
        return self.coalgebra.eps(x)


@dataclass(frozen=True, eq=False)
class HopfAlgebra(Bialgebra):
    antipode: LinMap = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        super().__post_init__()
        if self.antipode is None:
            raise InvalidParams("a Hopf algebra needs an antipode")

    def S(self, x: Vec) -> Vec:
        return self.antipode.apply(x)


@dataclass(frozen=True, eq=False)
class Comodule:
    """Comodule over ``coalgebra``: ``V -> V⊗C`` (right) or ``V -> C⊗V`` (left)."""

    coalgebra: Coalgebra
    labels: tuple[str, ...]
    coaction: LinMap
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InvalidParams(f"side must be left or right, got {self.side!r}")
        n, c = len(self.labels), self.coalgebra.dim
        if (self.coaction.dom, self.coaction.cod) != (n, n * c):
            raise ShapeError(f"coaction must be {n * c}x{n}")

    @property
    def dim(self) -> int:
        return len(self.labels)


@dataclass(frozen=True, eq=False)
class ModuleAction:
    """Module over ``algebra``: ``V⊗A -> V`` (right) or ``A⊗V -> V`` (left)."""

    algebra: Algebra
    labels: tuple[str, ...]
    action: LinMap
    side: str = "right"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise InvalidParams(f"side must be left or right, got {self.side!r}")
        n, a = len(self.labels), self.algebra.dim
        if (self.action.dom, self.action.cod) != (n * a, n):
            raise ShapeError(f"action must be {n}x{n * a}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def act(self, m: Vec, a: Vec) -> Vec:
        """``m·a`` for a right module, ``a·m`` for a left one."""
        n, d = self.dim, self.algebra.dim
        if self.side == "right":
            return self.action.apply(vtensor(m, a, d))
        return self.action.apply(vtensor(a, m, n))


# ---------------------------------------------------------------------------
# axiom checks


def check_algebra(A: Algebra, report: Report | None = None) -> Report:
    report = report or Report("axioms")
    n, L = A.dim, A.labels
    I = _id(n)
    compare(report, "associativity", A.mult @ kron(A.mult, I), A.mult @ kron(I, A.mult), [L, L, L],
            "m(m⊗id) = m(id⊗m)")
    compare(report, "left unit", A.mult @ kron(A.unit_map, I), I, [L], "m(1⊗x) = x")
    compare(report, "right unit", A.mult @ kron(I, A.unit_map), I, [L], "m(x⊗1) = x")
    return report


def check_coalgebra(C: Coalgebra, report: Report | None = None) -> Report:
    report = report or Report("axioms")
    n, L = C.dim, C.labels
    I = _id(n)
    compare(report, "coassociativity", kron(C.comult, I) @ C.comult, kron(I, C.comult) @ C.comult, [L],
            "(Δ⊗id)Δ = (id⊗Δ)Δ")
    compare(report, "left counit", kron(C.counit, I) @ C.comult, I, [L], "(ε⊗id)Δ = id")
    compare(report, "right counit", kron(I, C.counit) @ C.comult, I, [L], "(id⊗ε)Δ = id")
    return report


def check_bialgebra(H: Bialgebra, report: Report | None = None) -> Report:
    report = report or Report("axioms")
    check_algebra(H.algebra, report)
    check_coalgebra(H.coalgebra, report)
    n, L = H.dim, H.labels
    I = _id(n)
    mid = kron(I, LinMap.swap(n, n), I)
    compare(report, "comultiplication multiplicative", H.comult @ H.mult,
            kron(H.mult, H.mult) @ mid @ kron(H.comult, H.comult), [L, L], "Δ(xy) = Δ(x)Δ(y)")
    compare(report, "comultiplication unital", H.comult @ H.algebra.unit_map,
            kron(H.algebra.unit_map, H.algebra.unit_map), [("1",)], "Δ(1) = 1⊗1")
    compare(report, "counit multiplicative", H.counit @ H.mult, kron(H.counit, H.counit), [L, L],
            "ε(xy) = ε(x)ε(y)")
    compare(report, "counit unital", H.counit @ H.algebra.unit_map, LinMap.identity(1), [("1",)], "ε(1) = 1")
    return report


def check_hopf(H: HopfAlgebra, report: Report | None = None) -> Report:
    report = report or Report("axioms")
    check_bialgebra(H, report)
    n, L = H.dim, H.labels
    I = _id(n)
    eta_eps = H.algebra.unit_map @ H.counit
    compare(report, "left antipode", H.mult @ kron(H.antipode, I) @ H.comult, eta_eps, [L],
            "m(S⊗id)Δ = ηε")
    compare(report, "right antipode", H.mult @ kron(I, H.antipode) @ H.comult, eta_eps, [L],
            "m(id⊗S)Δ = ηε")
    return report


def check_comodule(V: Comodule, report: Report | None = None) -> Report:
    report = report or Report("comodule")
    C = V.coalgebra
    Iv, Ic = _id(V.dim), _id(C.dim)
    L = [V.labels]
    rho = V.coaction
    if V.side == "right":
        compare(report, "coaction coassociativity", kron(rho, Ic) @ rho, kron(Iv, C.comult) @ rho, L,
                "(ρ⊗id)ρ = (id⊗Δ)ρ")
        compare(report, "coaction counitality", kron(Iv, C.counit) @ rho, Iv, L, "(id⊗ε)ρ = id")
    else:
        compare(report, "coaction coassociativity", kron(Ic, rho) @ rho, kron(C.comult, Iv) @ rho, L,
                "(id⊗ρ)ρ = (Δ⊗id)ρ")
        compare(report, "coaction counitality", kron(C.counit, Iv) @ rho, Iv, L, "(ε⊗id)ρ = id")
    return report


def check_module(M: ModuleAction, report: Report | None = None) -> Report:
    report = report or Report("module")
    A = M.algebra
    Im, Ia = _id(M.dim), _id(A.dim)
    mu = M.action
    if M.side == "right":
        compare(report, "action associativity", mu @ kron(mu, Ia), mu @ kron(Im, A.mult),
                [M.labels, A.labels, A.labels], "(m·a)·b = m·(ab)")
        compare(report, "action unitality", mu @ kron(Im, A.unit_map), Im, [M.labels], "m·1 = m")
    else:
        compare(report, "action associativity", mu @ kron(Ia, mu), mu @ kron(A.mult, Im),
                [A.labels, A.labels, M.labels], "a·(b·m) = (ab)·m")
        compare(report, "action unitality", mu @ kron(A.unit_map, Im), Im, [M.labels], "1·m = m")
    return report


Structure = Union[Algebra, Coalgebra, Bialgebra, HopfAlgebra, Comodule, ModuleAction]


def check_axioms(x: Structure) -> Report:
    if isinstance(x, HopfAlgebra):
        return check_hopf(x)
    if isinstance(x, Bialgebra):
        return check_bialgebra(x)
    if isinstance(x, Algebra):
        return check_algebra(x)
    if isinstance(x, Coalgebra):
        return check_coalgebra(x)
    if isinstance(x, Comodule):
        return check_comodule(x)
    if isinstance(x, ModuleAction):
        return check_module(x)
    raise TypeError(f"no axioms for {type(x).__name__}")


# ---------------------------------------------------------------------------
# group-likes


def verify_group_like(C: Coalgebra, g: Vec) -> bool:
    g = vec(g)
    return C.delta(g) == vtensor(g, g, C.dim) and C.eps(g) == 1


def scan_basis_group_likes(C: Coalgebra) -> list[int]:
    return [i for i in range(C.dim) if verify_group_like(C, {i: ONE})]


# ---------------------------------------------------------------------------
# regular structures and duals


def regular_comodule(C: Coalgebra, side: str = "right") -> Comodule:
    return Comodule(C, C.labels, C.comult, side)


def regular_module(A: Algebra, side: str = "right") -> ModuleAction:
    return ModuleAction(A, A.labels, A.mult, side)


def _dual_label(s: str) -> str:
    return s[:-1] if s.endswith("*") else s + "*"


def dualize(x, opposite: bool = False):
    """Linear dual of a finite-dimensional structure.

    ``Coalgebra -> Algebra`` uses convolution ``(ff')(c) = f(c1) f'(c2)``, or
    ``f(c2) f'(c1)`` when ``opposite`` is set.  ``Algebra -> Coalgebra``
    transposes the multiplication (legs swapped when ``opposite``).  Bialgebras
    and Hopf algebras dualize both halves.
    """
    if isinstance(x, Bialgebra):
        alg = dualize(x.coalgebra, opposite)
        coalg = dualize(x.algebra, opposite)
        if isinstance(x, HopfAlgebra):
            return HopfAlgebra(alg, coalg, x.antipode.transpose())
        return Bialgebra(alg, coalg)
    n = x.dim
    labels = tuple(_dual_label(s) for s in x.labels)
    if isinstance(x, Coalgebra):
        mult = x.comult.transpose()
        if opposite:
            mult = mult @ LinMap.swap(n, n)
        unit = {i: x.eps_basis(i) for i in range(n) if x.eps_basis(i)}
        return Algebra(labels, mult, unit, x.field)
    if isinstance(x, Algebra):
        comult = x.mult.transpose()
        if opposite:
            comult = LinMap.swap(n, n) @ comult
        counit = LinMap(n, 1, [{0: x.unit[i]} if i in x.unit else {} for i in range(n)])
        return Coalgebra(labels, comult, counit, x.field)
    raise TypeError(f"cannot dualize {type(x).__name__}")


# ---------------------------------------------------------------------------
# builtins


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise InvalidParams("multiplication table must be square")
        if any(not 0 <= v < n for r in self.table for v in r):
            raise InvalidParams("table entry out of range")
        e = self.identity
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise InvalidParams("table is not associative")
            if not any(self.table[a][b] == e for b in range(n)):
                raise InvalidParams(f"{self.labels[a]} has no inverse")

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> int:
        for e in range(len(self.labels)):
            if all(self.table[e][a] == a == self.table[a][e] for a in range(len(self.labels))):
                return e
        raise InvalidParams("table has no identity")

    def inverse(self, a: int) -> int:
        e = self.identity
        return next(b for b in range(self.order) if self.table[a][b] == e)


def cyclic_group(n: int, name: str = "g") -> FiniteGroup:
    if n < 1:
        raise InvalidParams("cyclic group order must be positive")
    labels = tuple("1" if k == 0 else (name if k == 1 else f"{name}{k}") for k in range(n))
    return FiniteGroup(labels, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group_3() -> FiniteGroup:
    from itertools import permutations

    perms = sorted(permutations(range(3)))
    names = {(0, 1, 2): "e", (1, 0, 2): "s1", (0, 2, 1): "s2", (1, 2, 0): "r", (2, 0, 1): "r2", (2, 1, 0): "t"}
    table = tuple(
        tuple(perms.index(tuple(a[b[i]] for i in range(3))) for b in perms) for a in perms
    )
    return FiniteGroup(tuple(names[p] for p in perms), table)


def _as_group(G) -> FiniteGroup:
    if isinstance(G, FiniteGroup):
        return G
    if isinstance(G, int):
        return cyclic_group(G)
    if isinstance(G, str):
        if G.upper().startswith("Z") and G[1:].isdigit():
            return cyclic_group(int(G[1:]))
        if G.upper() == "S3":
            return symmetric_group_3()
    raise InvalidParams(f"unknown group {G!r}")


def group_algebra(G, field: Field = QQ) -> HopfAlgebra:
    """``kG`` with ``Δg = g⊗g``, ``ε(g) = 1`` and ``S(g) = g^{-1}``."""
    G = _as_group(G)
    n = G.order
    alg = Algebra.from_table(G.labels, lambda a, b: {G.table[a][b]: ONE}, {G.identity: ONE}, field)
    coalg = Coalgebra.from_table(G.labels, lambda a: {a * n + a: ONE}, lambda a: ONE, field)
    S = LinMap.from_function(n, n, lambda a: {G.inverse(a): ONE})
    return HopfAlgebra(alg, coalg, S)


def function_algebra(G, field: Field = QQ) -> HopfAlgebra:
    """``k^G`` on the delta functions ``δ_g``, the dual Hopf algebra of ``kG``."""
    G = _as_group(G)
    n = G.order
    labels = tuple(f"d{l}" for l in G.labels)
    alg = Algebra.from_table(labels, lambda a, b: {a: ONE} if a == b else {}, {a: ONE for a in range(n)}, field)

    def cop(g: int) -> Vec:
        return {a * n + b: ONE for a in range(n) for b in range(n) if G.table[a][b] == g}

    coalg = Coalgebra.from_table(labels, cop, lambda g: ONE if g == G.identity else 0, field)
    S = LinMap.from_function(n, n, lambda a: {G.inverse(a): ONE})
    return HopfAlgebra(alg, coalg, S)


def classical_space(points: Sequence[str], field: Field = QQ) -> Coalgebra:
    """Coalgebra of a finite set: every point is group-like."""
    points = tuple(points)
    if len(set(points)) != len(points) or not points:
        raise InvalidParams("points must be distinct and nonempty")
    n = len(points)
    return Coalgebra.from_table(points, lambda x: {x * n + x: ONE}, lambda x: ONE, field)


def dual_numbers_algebra(field: Field = QQ) -> Algebra:
    return Algebra.from_table(("1", "θ"), lambda a, b: {a + b: ONE} if a + b < 2 else {}, {0: ONE}, field)


def dual_numbers(field: Field = QQ) -> Coalgebra:
    """Dual of ``k[θ]/θ²``: ``Δθ* = 1*⊗θ* + θ*⊗1*`` and ``ε(θ*) = 0``."""
    return dualize(dual_numbers_algebra(field))


def _m2_product(a: int, b: int) -> Vec:
    # basis x^k y^l at index k + 2l; x² = y² = 1, yx = -xy
    l1, k1 = divmod(a, 2)
    l2, k2 = divmod(b, 2)
    sign = -1 if (l1 and k2) else 1
    return {(k1 + k2) % 2 + 2 * ((l1 + l2) % 2): Fraction(sign)}


def matrix_algebra(n: int = 2, field: Field = QQ) -> Algebra:
    """The algebra on ``x^k y^l`` with ``x^n = y^n = 1``, ``yx = ζ xy``; here ``n = 2``, ``ζ = -1``."""
    if n != 2:
        raise InvalidParams("only n = 2 is available over Q (needs a primitive n-th root of unity)")
    return Algebra.from_table(("1", "x", "y", "xy"), _m2_product, {0: ONE}, field)


def matrix_dual_coalgebra(n: int = 2, field: Field = QQ) -> Coalgebra:
    """Dual coalgebra of :func:`matrix_algebra`, a 2x2 matrix coalgebra."""
    return dualize(matrix_algebra(n, field))


def sweedler_h4(field: Field = QQ) -> HopfAlgebra:
    """Sweedler's four-dimensional Hopf algebra on ``1, g, x, gx``.

    ``g² = 1``, ``x² = 0``, ``xg = -gx``, ``Δg = g⊗g``, ``Δx = x⊗1 + g⊗x``.
    """
    labels = ("1", "g", "x", "gx")

    def product(a: int, b: int) -> Vec:
        # index = 2 * (x power) + (g power)
        x1, g1 = divmod(a, 2)
        x2, g2 = divmod(b, 2)
        if x1 + x2 > 1:
            return {}
        sign = -1 if (x1 and g2) else 1
        return {2 * (x1 + x2) + (g1 + g2) % 2: Fraction(sign)}

    alg = Algebra.from_table(labels, product, {0: ONE}, field)
    n = 4

    def tmul(u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            for j, b in v.items():
                x1, y1 = divmod(i, n)
                x2, y2 = divmod(j, n)
                axpy(out, a * b, vtensor(alg.basis_mul(x1, x2), alg.basis_mul(y1, y2), n))
        return out

    dg = {1 * n + 1: ONE}
    dx = {2 * n + 0: ONE, 1 * n + 2: ONE}
    cop = {0: {0: ONE}, 1: dg, 2: dx, 3: tmul(dg, dx)}
    coalg = Coalgebra.from_table(labels, lambda i: cop[i], lambda i: ONE if i < 2 else 0, field)
    s_g = {1: ONE}
    s_x = alg.mul({1: Fraction(-1)}, {2: ONE})
    anti = {0: {0: ONE}, 1: s_g, 2: s_x, 3: alg.mul(s_x, s_g)}
    S = LinMap.from_function(4, 4, lambda i: anti[i])
    return HopfAlgebra(alg, coalg, S)


BUILTINS: dict[str, Callable[..., object]] = {
    "classical_space": classical_space,
    "dual_numbers": dual_numbers,
    "dual_numbers_algebra": dual_numbers_algebra,
    "matrix_algebra": matrix_algebra,
    "matrix_dual": matrix_dual_coalgebra,
    "group_algebra": group_algebra,
    "function_algebra": function_algebra,
    "sweedler_h4": sweedler_h4,
}


def builtin(name: str, *params, **kwargs):
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise InvalidParams(f"unknown builtin {name!r}") from None
    return factory(*params, **kwargs)
