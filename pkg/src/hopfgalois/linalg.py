"""Exact linear algebra over any field whose elements support ``+ - * /``.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros.  A :class:`LinMap`
keeps one sparse vector per domain basis element (its columns).  Tensor legs
are paired row-major: ``(i, j) -> i * dim_j + j``, left leg heaviest.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

Vec = dict


class ShapeError(ValueError):
    pass


class NoSolution(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"map is not invertible (rank {rank} of {size})")
        self.rank = rank
        self.size = size


def _norm(x):
    return Fraction(x) if isinstance(x, int) else x


def _inv(x):
    return 1 / (Fraction(x) if isinstance(x, int) else x)


def _weight(x) -> int:
    w = getattr(x, "weight", None)
    return w() if w is not None else 0


# ---------------------------------------------------------------------------
# sparse vectors


def vec(entries: Mapping[int, object] | Iterable[tuple[int, object]]) -> Vec:
    items = entries.items() if isinstance(entries, Mapping) else entries
    out: Vec = {}
    for k, v in items:
        if v:
            w = out.get(k)
            v = _norm(v) if w is None else w + v
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def dense_to_vec(values: Sequence) -> Vec:
    return {i: _norm(v) for i, v in enumerate(values) if v}


def vec_to_dense(v: Vec, n: int, zero=Fraction(0)) -> list:
    return [v.get(i, zero) for i in range(n)]


def axpy(acc: Vec, c, v: Vec) -> None:
    """In place ``acc += c * v``."""
    if not c:
        return
    for k, x in v.items():
        w = acc.get(k)
        t = c * x
        if w is None:
            if t:
                acc[k] = t
        else:
            w = w + t
            if w:
                acc[k] = w
            else:
                del acc[k]


def vadd(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    axpy(out, Fraction(1), b)
    return out


def vsub(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    axpy(out, Fraction(-1), b)
    return out


def vscale(c, v: Vec) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vtensor(a: Vec, b: Vec, dim_b: int) -> Vec:
    return {i * dim_b + j: x * y for i, x in a.items() for j, y in b.items()}


def vlinear(terms: Iterable[tuple[object, Vec]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        axpy(out, c, v)
    return out


def unit(i: int) -> Vec:
    return {i: Fraction(1)}


# ---------------------------------------------------------------------------
# tensor index helpers


def tindex(dims: Sequence[int], idx: Sequence[int]) -> int:
    out = 0
    for d, i in zip(dims, idx):
        out = out * d + i
    return out


def tsplit(dims: Sequence[int], flat: int) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        flat, r = divmod(flat, d)
        out.append(r)
    return tuple(reversed(out))


def tproduct(dims: Sequence[int]) -> int:
    n = 1
    for d in dims:
        n *= d
    return n


# ---------------------------------------------------------------------------
# linear maps


class LinMap:
    """Linear map ``F^dom -> F^cod`` stored as sparse columns."""

    __slots__ = ("dom", "cod", "cols")

    def __init__(self, dom: int, cod: int, cols: Sequence[Vec]):
        if len(cols) != dom:
            raise ShapeError(f"expected {dom} columns, got {len(cols)}")
        for c in cols:
            for k in c:
                if not 0 <= k < cod:
                    raise ShapeError(f"row index {k} out of range for codomain {cod}")
        self.dom = dom
        self.cod = cod
        self.cols = [dict(c) for c in cols]

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, dom: int, cod: int, cols: list[Vec]) -> LinMap:
        m = cls.__new__(cls)
        m.dom, m.cod, m.cols = dom, cod, cols
        return m

    @classmethod
    def from_function(cls, dom: int, cod: int, f: Callable[[int], Vec]) -> LinMap:
        return cls(dom, cod, [vec(f(j)) for j in range(dom)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], dom: int | None = None) -> LinMap:
        cod = len(rows)
        if dom is None:
            dom = len(rows[0]) if rows else 0
        cols: list[Vec] = [{} for _ in range(dom)]
        for i, row in enumerate(rows):
            if len(row) != dom:
                raise ShapeError("ragged matrix")
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = _norm(x)
        return cls._raw(dom, cod, cols)

    @classmethod
    def identity(cls, n: int) -> LinMap:
        return cls._raw(n, n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def zero(cls, dom: int, cod: int) -> LinMap:
        return cls._raw(dom, cod, [{} for _ in range(dom)])

    @classmethod
    def from_vectors(cls, cod: int, vectors: Sequence[Vec]) -> LinMap:
        """Map ``F^len(vectors) -> F^cod`` sending ``e_j`` to ``vectors[j]``."""
        return cls(len(vectors), cod, [dict(v) for v in vectors])

    @classmethod
    def swap(cls, m: int, n: int) -> LinMap:
        """Flip ``V_m ⊗ V_n -> V_n ⊗ V_m``."""
        return cls._raw(m * n, m * n, [{j * m + i: Fraction(1)} for i in range(m) for j in range(n)])

    @classmethod
    def permute_legs(cls, dims: Sequence[int], perm: Sequence[int]) -> LinMap:
        """Reorder tensor legs: output leg ``k`` is input leg ``perm[k]``."""
        out_dims = [dims[p] for p in perm]
        n = tproduct(dims)
        cols = []
        for flat in range(n):
            idx = tsplit(dims, flat)
            cols.append({tindex(out_dims, [idx[p] for p in perm]): Fraction(1)})
        return cls._raw(n, n, cols)

    # access --------------------------------------------------------------
    def column(self, j: int) -> Vec:
        return self.cols[j]

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, Fraction(0))

    def rows(self) -> list[Vec]:
        out: list[Vec] = [{} for _ in range(self.cod)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                out[i][j] = x
        return out

    def to_dense(self, zero=Fraction(0)) -> list[list]:
        return [[self.cols[j].get(i, zero) for j in range(self.dom)] for i in range(self.cod)]

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    # algebra ---------------------------------------------------------------
    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for j, x in v.items():
            axpy(out, x, self.cols[j])
        return out

    __call__ = apply

    def __matmul__(self, other: LinMap) -> LinMap:
        if other.cod != self.dom:
            raise ShapeError(f"cannot compose {self.cod}x{self.dom} with {other.cod}x{other.dom}")
        return LinMap._raw(other.dom, self.cod, [self.apply(c) for c in other.cols])

    def __add__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap._raw(self.dom, self.cod, [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: LinMap) -> LinMap:
        self._same_shape(other)
        return LinMap._raw(self.dom, self.cod, [vsub(a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self) -> LinMap:
        return LinMap._raw(self.dom, self.cod, [vscale(Fraction(-1), c) for c in self.cols])

    def scale(self, c) -> LinMap:
        return LinMap._raw(self.dom, self.cod, [vscale(c, col) for col in self.cols])

    def transpose(self) -> LinMap:
        return LinMap._raw(self.cod, self.dom, self.rows())

    def kron(self, other: LinMap) -> LinMap:
        """``self ⊗ other`` with row-major leg pairing."""
        cols = []
        for a in self.cols:
            for b in other.cols:
                cols.append(vtensor(a, b, other.cod))
        return LinMap._raw(self.dom * other.dom, self.cod * other.cod, cols)

    def restrict(self, basis: Sequence[Vec]) -> LinMap:
        """Precompose with the inclusion of the span of ``basis``."""
        return LinMap._raw(len(basis), self.cod, [self.apply(v) for v in basis])

    def _same_shape(self, other: LinMap) -> None:
        if (self.dom, self.cod) != (other.dom, other.cod):
            raise ShapeError(
                f"shape mismatch {self.cod}x{self.dom} vs {other.cod}x{other.dom}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.dom, self.cod) == (other.dom, other.cod) and self.cols == other.cols

    __hash__ = None  # type: ignore[assignment]

    def first_difference(self, other: LinMap) -> tuple[int, int] | None:
        """First ``(column, row)`` where the two maps differ, or ``None``."""
        self._same_shape(other)
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                d = vsub(a, b)
                return j, min(d)
        return None

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rank(self) -> int:
        return len(rref(self.rows(), self.dom)[1])

    def __repr__(self) -> str:
        return f"LinMap({self.cod}x{self.dom}, nnz={self.nnz()})"


def kron(*maps: LinMap) -> LinMap:
    out = maps[0]
    for m in maps[1:]:
        out = out.kron(m)
    return out


def compose(*maps: LinMap) -> LinMap:
    """``compose(f, g, h) = f ∘ g ∘ h``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = m @ out
    return out


# ---------------------------------------------------------------------------
# elimination


def rref(vectors: Iterable[Vec], ncols: int | None = None) -> tuple[list[Vec], list[int]]:
    """Reduced row-echelon form of the span of ``vectors``.

    Returns ``(rows, pivots)`` with rows sorted by pivot column and each pivot
    equal to one.  The result depends only on the span, so pivot rows may be
    chosen for cheap arithmetic.
    """
    pending = [dict(v) for v in vectors if v]
    done: list[tuple[int, Vec]] = []
    while pending:
        col = min(min(r) for r in pending)
        best = None
        for i, r in enumerate(pending):
            if col in r:
                w = _weight(r[col]) * 4 + len(r)
                if best is None or w < best[0]:
                    best = (w, i)
        assert best is not None
        piv = pending.pop(best[1])
        inv = _inv(piv[col])
        if inv != 1:
            piv = {k: x * inv for k, x in piv.items()}
        rest = []
        for r in pending:
            c = r.get(col)
            if c is not None:
                axpy(r, -c, piv)
            if r:
                rest.append(r)
        pending = rest
        done.append((col, piv))
    # back substitution, last pivot first
    for a in range(len(done) - 1, -1, -1):
        col, piv = done[a]
        for b in range(a):
            r = done[b][1]
            c = r.get(col)
            if c is not None:
                axpy(r, -c, piv)
    return [r for _, r in done], [c for c, _ in done]


def nullspace(A: LinMap) -> Subspace:
    rows, pivots = rref(A.rows(), A.dom)
    pivset = set(pivots)
    basis = []
    for f in range(A.dom):
        if f in pivset:
            continue
        v: Vec = {f: Fraction(1)}
        for r, p in zip(rows, pivots):
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return Subspace(A.dom, basis)


def solve_many(A: LinMap, B: LinMap) -> LinMap:
    """A particular ``X`` with ``A X = B``; free variables are set to zero."""
    if A.cod != B.cod:
        raise ShapeError(f"rhs has {B.cod} rows, matrix has {A.cod}")
    n = A.dom
    rows = A.rows()
    for j, col in enumerate(B.cols):
        for i, x in col.items():
            rows[i][n + j] = x
    red, pivots = rref(rows, n + B.dom)
    cols: list[Vec] = [{} for _ in range(B.dom)]
    for r, p in zip(red, pivots):
        if p >= n:
            raise NoSolution("inconsistent linear system")
        for k, x in r.items():
            if k >= n:
                cols[k - n][p] = x
    return LinMap._raw(B.dom, n, cols)


def solve_linear(A: LinMap, b: Vec) -> Vec:
    """A particular solution of ``A x = b`` (free variables zero)."""
    for k in b:
        if not 0 <= k < A.cod:
            raise ShapeError("rhs index out of range")
    return solve_many(A, LinMap._raw(1, A.cod, [dict(b)])).cols[0]


def invert(A: LinMap) -> LinMap:
    if A.dom != A.cod:
        raise ShapeError(f"cannot invert a {A.cod}x{A.dom} map")
    n = A.dom
    rows = A.rows()
    for i in range(n):
        rows[i][n + i] = Fraction(1)
    red, pivots = rref(rows, 2 * n)
    rank = sum(1 for p in pivots if p < n)
    if rank < n:
        raise NotInvertible(rank, n)
    cols: list[Vec] = [{} for _ in range(n)]
    for r, p in zip(red, pivots):
        for k, x in r.items():
            if k >= n:
                cols[k - n][p] = x
    return LinMap._raw(n, n, cols)


# ---------------------------------------------------------------------------
# subspaces and quotients


class Subspace:
    """Subspace of ``F^ambient`` stored by its reduced row-echelon basis."""

    __slots__ = ("ambient", "basis", "pivots", "_pos")

    def __init__(self, ambient: int, vectors: Iterable[Vec] = ()):
        vectors = list(vectors)
        for v in vectors:
            for k in v:
                if not 0 <= k < ambient:
                    raise ShapeError(f"index {k} outside ambient dimension {ambient}")
        self.ambient = ambient
        self.basis, self.pivots = rref(vectors, ambient)
        self._pos = {p: i for i, p in enumerate(self.pivots)}

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [{i: Fraction(1)} for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        """Residual of ``v`` modulo the subspace (supported off the pivots)."""
        out = dict(v)
        for p, r in zip(self.pivots, self.basis):
            c = out.get(p)
            if c is not None:
                axpy(out, -c, r)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    __contains__ = contains

    def coordinates(self, v: Vec) -> list:
        """Coordinates of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        if self.reduce(v):
            raise NoSolution("vector not in subspace")
        return [v.get(p, Fraction(0)) for p in self.pivots]

    def coord_vec(self, v: Vec) -> Vec:
        if self.reduce(v):
            raise NoSolution("vector not in subspace")
        return {self._pos[p]: x for p, x in v.items() if p in self._pos}

    def from_coords(self, c: Vec) -> Vec:
        return vlinear((x, self.basis[i]) for i, x in c.items())

    def inclusion(self) -> LinMap:
        return LinMap._raw(self.dim, self.ambient, [dict(b) for b in self.basis])

    def issubset(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: Subspace) -> bool:
        return self.issubset(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.pivots == other.pivots and self.basis == other.basis

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersect(self, other)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    if U.ambient != W.ambient:
        raise ShapeError("different ambient spaces")
    return Subspace(U.ambient, U.basis + W.basis)


def subspace_intersect(U: Subspace, W: Subspace) -> Subspace:
    if U.ambient != W.ambient:
        raise ShapeError("different ambient spaces")
    if not U.dim or not W.dim:
        return Subspace(U.ambient)
    M = LinMap._raw(U.dim, U.ambient, [W.reduce(b) for b in U.basis])
    ker = nullspace(M)
    return Subspace(U.ambient, [vlinear((x, U.basis[i]) for i, x in k.items()) for k in ker.basis])


def subspace_equal(U: Subspace, W: Subspace) -> bool:
    return U.ambient == W.ambient and U.issubset(W) and W.issubset(U)


def image(A: LinMap) -> Subspace:
    return Subspace(A.cod, A.cols)


class QuotientSpace:
    """``F^ambient / relations`` with the non-pivot standard vectors as coset reps."""

    __slots__ = ("ambient", "relations", "reps", "_index")

    def __init__(self, ambient: int, relations: Subspace):
        if relations.ambient != ambient:
            raise ShapeError("relations live in a different space")
        self.ambient = ambient
        self.relations = relations
        piv = set(relations.pivots)
        self.reps = [i for i in range(ambient) if i not in piv]
        self._index = {r: i for i, r in enumerate(self.reps)}

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project_vec(self, v: Vec) -> Vec:
        res = self.relations.reduce(v)
        return {self._index[k]: x for k, x in res.items()}

    def lift_vec(self, c: Vec) -> Vec:
        return {self.reps[i]: x for i, x in c.items()}

    def coset_reps(self) -> list[Vec]:
        return [{r: Fraction(1)} for r in self.reps]

    @property
    def project(self) -> LinMap:
        return LinMap._raw(self.ambient, self.dim, [self.project_vec({i: Fraction(1)}) for i in range(self.ambient)])

    @property
    def lift(self) -> LinMap:
        return LinMap._raw(self.dim, self.ambient, [{r: Fraction(1)} for r in self.reps])

    def project_map(self, f: LinMap) -> LinMap:
        """``project ∘ f`` computed column by column."""
        return LinMap._raw(f.dom, self.dim, [self.project_vec(c) for c in f.cols])

    def __repr__(self) -> str:
        return f"QuotientSpace(dim={self.dim}, ambient={self.ambient})"


class LowQuotient(QuotientSpace):
    """Quotient whose coset representatives are the lowest possible indices."""

    __slots__ = ("_inner",)

    def __init__(self, ambient: int, relations: Subspace):
        if relations.ambient != ambient:
            raise ShapeError("relations live in a different space")
        flip = ambient - 1
        inner = QuotientSpace(ambient, Subspace(ambient, [{flip - k: x for k, x in v.items()} for v in relations.basis]))
        self._inner = inner
        self.ambient = ambient
        self.relations = relations
        self.reps = sorted(flip - r for r in inner.reps)
        self._index = {r: i for i, r in enumerate(self.reps)}

    def project_vec(self, v: Vec) -> Vec:
        flip = self.ambient - 1
        res = self._inner.relations.reduce({flip - k: x for k, x in v.items()})
        return {self._index[flip - k]: x for k, x in res.items()}


def quotient(ambient: int, relations: Subspace) -> QuotientSpace:
    return QuotientSpace(ambient, relations)


def iter_basis(dims: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return product(*(range(d) for d in dims))


def solve_for_map(
    dom: int,
    cod: int,
    constraints: Callable[[LinMap], Sequence[LinMap]],
    rhs: Sequence[LinMap],
) -> LinMap | None:
    """Solve ``L_k(X) = R_k`` for an unknown ``X: F^dom -> F^cod``.

    ``constraints`` must be linear in ``X``; it is evaluated on the elementary
    maps to assemble the system.  Returns the solution with free variables set
    to zero, or ``None`` when the system is inconsistent.
    """

    def flatten(maps: Sequence[LinMap]) -> Vec:
        out: Vec = {}
        offset = 0
        for m in maps:
            for j, col in enumerate(m.cols):
                base = offset + j * m.cod
                for i, x in col.items():
                    out[base + i] = x
            offset += m.dom * m.cod
        return out

    size = sum(m.dom * m.cod for m in rhs)
    columns = []
    for u in range(dom * cod):
        j, i = divmod(u, cod)
        E = LinMap._raw(dom, cod, [{i: Fraction(1)} if k == j else {} for k in range(dom)])
        columns.append(flatten(constraints(E)))
    A = LinMap._raw(dom * cod, size, columns)
    try:
        x = solve_linear(A, flatten(rhs))
    except NoSolution:
        return None
    cols: list[Vec] = [{} for _ in range(dom)]
    for u, v in x.items():
        j, i = divmod(u, cod)
        cols[j][i] = v
    return LinMap._raw(dom, cod, cols)
