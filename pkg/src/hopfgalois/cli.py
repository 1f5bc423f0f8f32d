"""Structure files, check suites and the command-line entry point.

A structure file is JSON::

    {"field": "Q",                      # or {"ratfunc": ["q", "s"]}
     "structures": [
        {"name": "H", "kind": "hopf", "basis": ["1", "g"],
         "mult": [[i, j, k, "coeff"], ...],      # b_i b_j ∋ coeff b_k
         "unit": [[k, "coeff"], ...],
         "comult": [[i, j, k, "coeff"], ...],    # Δ(b_i) ∋ coeff b_j⊗b_k
         "counit": [[i, "coeff"], ...],
         "antipode": [[i, k, "coeff"], ...]},    # S(b_i) ∋ coeff b_k
        {"name": "ext", "kind": "extension", "P": "H", "C": "H", "coaction": "comult", "e": [[0, "1"]]},
        ...]}

Structures are checked as they are loaded; any failure is an input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .coring import check_coring, sweedler_coring, sweedler_takeuchi_iso, takeuchi_report, verify_coring_grouplike
from .entwine import (
    Entwining,
    bialgebra_entwining,
    check_bowtie,
    trivial_entwining,
    yetter_drinfeld_entwining,
)
from .galois import (
    GaloisData,
    HomogeneousData,
    NoCointegral,
    describe_map,
    equivariant_projectivity_witness,
    find_cointegral,
    galois_report,
    homogeneous,
    homogeneous_report,
    lemma_coinvariants_containment,
    principality_report,
    sequence_is_exact,
    tensor_labels,
    translation_lemma_suite,
)
from .geometry import (
    Connection,
    UnivCalc,
    associated_module,
    associated_module_report,
    check_connection,
    check_connection_form,
    check_lifting,
    check_strong,
    cointegral_report,
    find_connection_form,
    find_strong_connection,
    gauge_report,
    homogeneous_lifting,
    round_trip_report,
    sample_gauges,
    strong_connection_exists,
    all_kinds,
)
from .linalg import LinMap, Vec
from .qsl2 import podles_report
from .report import Report
from .scalars import Field, ParseError, UnknownSymbol
from .structures import (
    Algebra,
    Bialgebra,
    Coalgebra,
    Comodule,
    HopfAlgebra,
    InvalidParams,
    ModuleAction,
    builtin,
    check_axioms,
)

SUITES = (
    "axioms", "bowtie", "galois", "translation", "coring", "connection",
    "strong", "gauge", "principal", "podles", "cointegral",
)
PODLES_CHECKS = ("relations", "coideal", "quotient", "monopole", "idempotent", "splitting")
DEGREE_ENV = "HOPFGALOIS_DEGREE"
DEFAULT_DEGREE = 6

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, where: str = ""):
        super().__init__(message)
        self.where = where

    def __str__(self) -> str:
        base = super().__str__()
        return f"{self.where}: {base}" if self.where else base


# ---------------------------------------------------------------------------
# loading


@dataclass
class Workspace:
    path: str
    field: Field
    objects: dict[str, Any] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)

    def of_kind(self, *kinds: str) -> list[tuple[str, Any]]:
        return [(n, o) for n, o in self.objects.items() if self.kinds[n] in kinds]

    def extensions(self) -> list[tuple[str, GaloisData]]:
        out = []
        for name, obj in self.objects.items():
            if isinstance(obj, GaloisData):
                out.append((name, obj))
            elif isinstance(obj, HomogeneousData):
                out.append((name, obj.galois))
        return out


class _Reader:
    def __init__(self, field_: Field, where: str):
        self.field = field_
        self.where = where

    def err(self, msg: str, *path) -> InputError:
        loc = self.where + "".join(f"[{p!r}]" if isinstance(p, str) else f"[{p}]" for p in path)
        return InputError(msg, loc)

    def coeff(self, raw, *path):
        if isinstance(raw, bool) or not isinstance(raw, (int, str)):
            raise self.err("coefficient must be a string or an integer", *path)
        try:
            return self.field(raw)
        except ParseError as exc:
            raise self.err(f"{exc} (offset {exc.offset} in {raw!r})", *path) from None
        except UnknownSymbol as exc:
            raise self.err(f"unknown symbol {exc} in {raw!r}", *path) from None
        except (ValueError, ZeroDivisionError) as exc:
            raise self.err(f"bad coefficient {raw!r}: {exc}", *path) from None

    def index(self, raw, bound: int, *path) -> int:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise self.err("index must be an integer", *path)
        if not 0 <= raw < bound:
            raise self.err(f"index {raw} out of range 0..{bound - 1}", *path)
        return raw

    def table(self, spec: dict, key: str, dims: list[int], out_dim: int, optional: bool = False) -> list[Vec]:
        """Entries ``[i, j, ..., k, coeff]``: input multi-index, then output index."""
        if key not in spec:
            if optional:
                return [{} for _ in range(_prod(dims))]
            raise self.err(f"missing {key!r}")
        rows = spec[key]
        if not isinstance(rows, list):
            raise self.err("expected a list of entries", key)
        cols: list[Vec] = [{} for _ in range(_prod(dims))]
        width = len(dims) + 2
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != width:
                raise self.err(f"entry must have {width} items", key, r)
            flat = 0
            for a, d in enumerate(dims):
                flat = flat * d + self.index(row[a], d, key, r, a)
            k = self.index(row[-2], out_dim, key, r, width - 2)
            x = self.coeff(row[-1], key, r, width - 1)
            s = cols[flat].get(k, 0) + x
            if s:
                cols[flat][k] = s
            else:
                cols[flat].pop(k, None)
        return cols

    def vector(self, raw, dim: int, *path) -> Vec:
        if not isinstance(raw, list):
            raise self.err("expected a list of [index, coeff] pairs", *path)
        v: Vec = {}
        for r, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise self.err("expected [index, coeff]", *path, r)
            k = self.index(pair[0], dim, *path, r, 0)
            x = self.coeff(pair[1], *path, r, 1)
            s = v.get(k, 0) + x
            if s:
                v[k] = s
            else:
                v.pop(k, None)
        return v


def _prod(dims: list[int]) -> int:
    out = 1
    for d in dims:
        out *= d
    return out


def _labels(rd: _Reader, spec: dict) -> tuple[str, ...]:
    basis = spec.get("basis")
    if not isinstance(basis, list) or not basis or not all(isinstance(b, str) for b in basis):
        raise rd.err("basis must be a non-empty list of strings", "basis")
    if len(set(basis)) != len(basis):
        raise rd.err("duplicate basis labels", "basis")
    return tuple(basis)


def _algebra(rd: _Reader, spec: dict) -> Algebra:
    labels = _labels(rd, spec)
    n = len(labels)
    mult = LinMap(n * n, n, rd.table(spec, "mult", [n, n], n))
    unit = rd.vector(spec.get("unit"), n, "unit")
    return Algebra(labels, mult, unit, rd.field)


def _coalgebra(rd: _Reader, spec: dict) -> Coalgebra:
    labels = _labels(rd, spec)
    n = len(labels)
    comult = LinMap(n, n * n, _comult_cols(rd, spec, n))
    counit = LinMap(n, 1, [{0: x} if x else {} for x in _counit_vals(rd, spec, n)])
    return Coalgebra(labels, comult, counit, rd.field)


def _comult_cols(rd: _Reader, spec: dict, n: int) -> list[Vec]:
    # entries [i, j, k, c]: Δ(b_i) ∋ c b_j⊗b_k
    if "comult" not in spec:
        raise rd.err("missing 'comult'")
    cols: list[Vec] = [{} for _ in range(n)]
    for r, row in enumerate(spec["comult"]):
        if not isinstance(row, list) or len(row) != 4:
            raise rd.err("entry must have 4 items", "comult", r)
        i = rd.index(row[0], n, "comult", r, 0)
        j = rd.index(row[1], n, "comult", r, 1)
        k = rd.index(row[2], n, "comult", r, 2)
        x = rd.coeff(row[3], "comult", r, 3)
        cols[i][j * n + k] = cols[i].get(j * n + k, 0) + x
    return [{k: x for k, x in c.items() if x} for c in cols]


def _counit_vals(rd: _Reader, spec: dict, n: int) -> list:
    v = rd.vector(spec.get("counit"), n, "counit")
    return [v.get(i, 0) for i in range(n)]


def _resolve(ws: Workspace, rd: _Reader, spec: dict, key: str, want: str):
    name = spec.get(key)
    if not isinstance(name, str) or name not in ws.objects:
        raise rd.err(f"unknown structure {name!r}", key)
    obj = ws.objects[name]
    if want == "algebra":
        if isinstance(obj, Bialgebra):
            return obj.algebra
        if isinstance(obj, Algebra):
            return obj
    elif want == "coalgebra":
        if isinstance(obj, Bialgebra):
            return obj.coalgebra
        if isinstance(obj, Coalgebra):
            return obj
    elif want == "hopf" and isinstance(obj, HopfAlgebra):
        return obj
    elif want == "bialgebra" and isinstance(obj, Bialgebra):
        return obj
    raise rd.err(f"{name!r} is not a {want}", key)


def _build(ws: Workspace, rd: _Reader, spec: dict) -> tuple[str, Any]:
    kind = spec.get("kind")
    if kind == "builtin":
        params = spec.get("params", [])
        if not isinstance(params, list):
            raise rd.err("params must be a list", "params")
        try:
            obj = builtin(spec.get("builtin", ""), *params, field=rd.field)
        except (InvalidParams, TypeError) as exc:
            raise rd.err(str(exc), "builtin") from None
        kind = {HopfAlgebra: "hopf", Bialgebra: "bialgebra", Algebra: "algebra", Coalgebra: "coalgebra"}[type(obj)]
        return kind, obj
    if kind == "algebra":
        return kind, _algebra(rd, spec)
    if kind == "coalgebra":
        return kind, _coalgebra(rd, spec)
    if kind in ("bialgebra", "hopf"):
        A, C = _algebra(rd, spec), _coalgebra(rd, spec)
        if kind == "bialgebra":
            return kind, Bialgebra(A, C)
        n = A.dim
        cols: list[Vec] = [{} for _ in range(n)]
        for r, row in enumerate(spec.get("antipode", [])):
            if not isinstance(row, list) or len(row) != 3:
                raise rd.err("entry must have 3 items", "antipode", r)
            i = rd.index(row[0], n, "antipode", r, 0)
            k = rd.index(row[1], n, "antipode", r, 1)
            cols[i][k] = cols[i].get(k, 0) + rd.coeff(row[2], "antipode", r, 2)
        return kind, HopfAlgebra(A, C, LinMap(n, n, cols))
    if kind == "comodule":
        C = _resolve(ws, rd, spec, "coalgebra", "coalgebra")
        labels = _labels(rd, spec)
        side = spec.get("side", "right")
        v, c = len(labels), C.dim
        cols = [{} for _ in range(v)]
        for r, row in enumerate(spec.get("coaction", [])):
            if not isinstance(row, list) or len(row) != 4:
                raise rd.err("entry must have 4 items", "coaction", r)
            i = rd.index(row[0], v, "coaction", r, 0)
            w = rd.index(row[1], v, "coaction", r, 1)
            k = rd.index(row[2], c, "coaction", r, 2)
            flat = w * c + k if side == "right" else k * v + w
            cols[i][flat] = cols[i].get(flat, 0) + rd.coeff(row[3], "coaction", r, 3)
        return kind, Comodule(C, labels, LinMap(v, v * c, cols), side)
    if kind == "module":
        A = _resolve(ws, rd, spec, "algebra", "algebra")
        labels = _labels(rd, spec)
        side = spec.get("side", "right")
        v, a = len(labels), A.dim
        cols = [{} for _ in range(v * a)]
        for r, row in enumerate(spec.get("action", [])):
            if not isinstance(row, list) or len(row) != 4:
                raise rd.err("entry must have 4 items", "action", r)
            ai = rd.index(row[0], a, "action", r, 0)
            w = rd.index(row[1], v, "action", r, 1)
            k = rd.index(row[2], v, "action", r, 2)
            flat = w * a + ai if side == "right" else ai * v + w
            cols[flat][k] = cols[flat].get(k, 0) + rd.coeff(row[3], "action", r, 3)
        return kind, ModuleAction(A, labels, LinMap(v * a, v, cols), side)
    if kind == "entwining":
        construct = spec.get("from")
        if construct in ("bialgebra", "yetter_drinfeld"):
            H = _resolve(ws, rd, spec, "hopf", "bialgebra" if construct == "bialgebra" else "hopf")
            return kind, bialgebra_entwining(H) if construct == "bialgebra" else yetter_drinfeld_entwining(H)
        A = _resolve(ws, rd, spec, "algebra", "algebra")
        C = _resolve(ws, rd, spec, "coalgebra", "coalgebra")
        if construct == "trivial":
            return kind, trivial_entwining(A, C)
        if construct is not None:
            raise rd.err(f"unknown entwining construction {construct!r}", "from")
        a, c = A.dim, C.dim
        cols = [{} for _ in range(c * a)]
        for r, row in enumerate(spec.get("psi", [])):
            # c⊗a ∋ coeff a'⊗c'
            if not isinstance(row, list) or len(row) != 5:
                raise rd.err("entry must have 5 items", "psi", r)
            ci = rd.index(row[0], c, "psi", r, 0)
            ai = rd.index(row[1], a, "psi", r, 1)
            ao = rd.index(row[2], a, "psi", r, 2)
            co = rd.index(row[3], c, "psi", r, 3)
            flat = ci * a + ai
            cols[flat][ao * c + co] = cols[flat].get(ao * c + co, 0) + rd.coeff(row[4], "psi", r, 4)
        return kind, Entwining(A, C, LinMap(c * a, a * c, cols), name=spec.get("name", ""))
    if kind == "extension":
        P = _resolve(ws, rd, spec, "P", "algebra")
        C = _resolve(ws, rd, spec, "C", "coalgebra")
        n, c = P.dim, C.dim
        raw = spec.get("coaction")
        if raw == "comult":
            H = ws.objects.get(spec["P"])
            if not isinstance(H, Bialgebra) or spec.get("C") != spec.get("P"):
                raise rd.err("'comult' needs P = C naming one bialgebra", "coaction")
            co = H.comult
        else:
            cols = [{} for _ in range(n)]
            for r, row in enumerate(raw if isinstance(raw, list) else []):
                if not isinstance(row, list) or len(row) != 4:
                    raise rd.err("entry must have 4 items", "coaction", r)
                i = rd.index(row[0], n, "coaction", r, 0)
                p = rd.index(row[1], n, "coaction", r, 1)
                k = rd.index(row[2], c, "coaction", r, 2)
                cols[i][p * c + k] = cols[i].get(p * c + k, 0) + rd.coeff(row[3], "coaction", r, 3)
            if not isinstance(raw, list):
                raise rd.err("coaction must be a list of entries or 'comult'", "coaction")
            co = LinMap(n, n * c, cols)
        raw_e = spec.get("e")
        if raw_e == "unit":
            H = ws.objects.get(spec["C"])
            if not isinstance(H, Bialgebra):
                raise rd.err("'unit' needs C to name a bialgebra", "e")
            e = dict(H.algebra.unit)
        else:
            e = None if raw_e is None else rd.vector(raw_e, c, "e")
        try:
            return kind, GaloisData(P, C, co, e, spec.get("name", ""))
        except InvalidParams as exc:
            raise rd.err(str(exc), "e") from None
    if kind == "homogeneous":
        H = _resolve(ws, rd, spec, "hopf", "hopf")
        raw = spec.get("subalgebra")
        if not isinstance(raw, list):
            raise rd.err("subalgebra must be a list of vectors", "subalgebra")
        vecs = [rd.vector(v, H.dim, "subalgebra", i) for i, v in enumerate(raw)]
        try:
            return kind, homogeneous(H, vecs, spec.get("name", ""))
        except (InvalidParams, ValueError) as exc:
            raise rd.err(str(exc), "subalgebra") from None
    raise rd.err(f"unknown kind {kind!r}", "kind")


def validate_object(obj) -> Report:
    if isinstance(obj, Entwining):
        return check_bowtie(obj)
    if isinstance(obj, GaloisData):
        return check_axioms(obj.comodule)
    if isinstance(obj, HomogeneousData):
        return check_axioms(obj.galois.comodule)
    return check_axioms(obj)


def load(path: str | os.PathLike) -> Workspace:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", str(p)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{exc.msg} (offset {exc.pos})", f"{p}:{exc.lineno}:{exc.colno}") from None
    if not isinstance(doc, dict):
        raise InputError("top level must be an object", str(p))
    fspec = doc.get("field", "Q")
    if fspec == "Q":
        field_ = Field()
    elif isinstance(fspec, dict) and isinstance(fspec.get("ratfunc"), list) and all(
            isinstance(v, str) for v in fspec["ratfunc"]):
        try:
            field_ = Field(fspec["ratfunc"])
        except ValueError as exc:
            raise InputError(str(exc), f"{p}$['field']") from None
    else:
        raise InputError("field must be \"Q\" or {\"ratfunc\": [names]}", f"{p}$['field']")
    ws = Workspace(str(p), field_)
    items = doc.get("structures")
    if not isinstance(items, list):
        raise InputError("'structures' must be a list", f"{p}$")
    for idx, spec in enumerate(items):
        where = f"{p}$['structures'][{idx}]"
        rd = _Reader(field_, where)
        if not isinstance(spec, dict):
            raise rd.err("structure must be an object")
        name = spec.get("name")
        if not isinstance(name, str) or not name:
            raise rd.err("missing name", "name")
        if name in ws.objects:
            raise rd.err(f"duplicate name {name!r}", "name")
        try:
            kind, obj = _build(ws, rd, spec)
        except InputError:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise rd.err(str(exc)) from None
        rep = validate_object(obj)
        if not rep.passed:
            bad = rep.failures()[0]
            wit = f" at {', '.join(bad.witness)}" if bad.witness else ""
            raise rd.err(f"{name}: {bad.name} fails{wit}")
        ws.objects[name] = obj
        ws.kinds[name] = kind
    return ws


# ---------------------------------------------------------------------------
# suites


def _need(items: list, what: str) -> list:
    if not items:
        raise InputError(f"suite needs at least one {what}")
    return items


def suite_axioms(ws: Workspace, args) -> Report:
    rep = Report("axioms")
    for name, obj in ws.objects.items():
        rep.extend(validate_object(obj), f"{name}: ")
    return rep


def suite_bowtie(ws: Workspace, args) -> Report:
    rep = Report("bowtie")
    items = ws.of_kind("entwining")
    items += [(f"{n} (canonical)", d.entwining) for n, d in ws.extensions() if d.is_galois()]
    for name, E in _need(items, "entwining or Galois extension"):
        rep.extend(check_bowtie(E), f"{name}: ")
    return rep


def suite_galois(ws: Workspace, args) -> Report:
    rep = Report("galois")
    for name, data in _need(ws.extensions(), "extension"):
        rep.extend(galois_report(data), f"{name}: ")
        exact = sequence_is_exact(data)
        rep.add(f"{name}: exact-sequence criterion agrees with the canonical map", exact == data.is_galois(),
                detail=f"exact={exact}")
        if data.e is not None:
            rep.extend(lemma_coinvariants_containment(data), f"{name}: ")
        if data.is_galois():
            tau = data.describe_tau()
            rep.note(f"{name}: τ: " + "; ".join(f"{c} ↦ {v}" for c, v in tau.items()))
    for name, hd in ws.of_kind("homogeneous"):
        rep.extend(homogeneous_report(hd), f"{name}: ")
    return rep


def _galois_only(rep: Report, name: str, data: GaloisData) -> bool:
    if data.is_galois():
        return True
    rep.add(f"{name}: Galois", False, (f"rank {data.can_rank}",))
    return False


def suite_translation(ws: Workspace, args) -> Report:
    rep = Report("translation")
    for name, data in _need(ws.extensions(), "extension"):
        if _galois_only(rep, name, data):
            rep.extend(translation_lemma_suite(data), f"{name}: ")
    return rep


def suite_coring(ws: Workspace, args) -> Report:
    rep = Report("coring")
    found = False
    for name, E in ws.of_kind("entwining"):
        found = True
        rep.extend(takeuchi_report(E), f"{name}: ")
    for name, data in ws.extensions():
        found = True
        rep.extend(check_coring(sweedler_coring(data.P, data.B)), f"{name} Sweedler: ")
        if _galois_only(rep, name, data):
            rep.extend(takeuchi_report(data.entwining), f"{name}: ")
            rep.extend(verify_coring_grouplike(data), f"{name}: ")
            rep.extend(sweedler_takeuchi_iso(data), f"{name}: ")
    if not found:
        raise InputError("suite needs at least one entwining or extension")
    return rep


def suite_connection(ws: Workspace, args) -> Report:
    rep = Report("connection")
    for name, data in _need(ws.extensions(), "extension"):
        if not _galois_only(rep, name, data):
            continue
        U = UnivCalc(data)
        rep.extend(U.report(), f"{name}: ")
        omega = find_connection_form(U)
        rep.add(f"{name}: connection form exists", omega is not None)
        if omega is None:
            continue
        kinds = all_kinds(U, Connection("omega", omega))
        rep.extend(check_connection_form(U, omega), f"{name}: ")
        rep.extend(check_connection(U, kinds["Pi"].map), f"{name}: ")
        rep.extend(check_lifting(U, kinds["ell"].map), f"{name}: ")
        rep.extend(round_trip_report(U, kinds["ell"]), f"{name}: ")
    return rep


def suite_strong(ws: Workspace, args) -> Report:
    rep = Report("strong")
    for name, data in _need(ws.extensions(), "extension"):
        if not _galois_only(rep, name, data):
            continue
        if data.e is None:
            rep.add(f"{name}: group-like e supplied", False)
            continue
        exists = strong_connection_exists(data)
        witness = equivariant_projectivity_witness(data) is not None
        rep.add(f"{name}: strong connection exists iff projectivity witness exists", exists == witness,
                detail=f"strong={exists}, witness={witness}")
        if not exists:
            continue
        U = UnivCalc(data)
        x = find_strong_connection(data)
        rep.extend(check_strong(U, x), f"{name}: ")
        rep.extend(round_trip_report(U, x), f"{name}: ")
        rep.note(f"{name}: ℓ: " + describe_map(all_kinds(U, x)["ell"].map, data.C.labels,
                                                 tensor_labels(data.P.labels, data.P.labels)))
        for cname, V in ws.of_kind("comodule"):
            if V.coalgebra is data.C and V.side == "right":
                M = associated_module(data, V)
                rep.extend(associated_module_report(M, all_kinds(U, x)["ell"].map, U), f"{name} with {cname}: ")
    for name, hd in ws.of_kind("homogeneous"):
        if hd.galois.is_galois():
            U = UnivCalc(hd.galois)
            rep.extend(check_strong(U, Connection("ell", homogeneous_lifting(hd))), f"{name} (S⊗id)Δ∘i: ")
    return rep


def suite_gauge(ws: Workspace, args) -> Report:
    rep = Report("gauge")
    for name, data in _need(ws.extensions(), "extension"):
        if not _galois_only(rep, name, data):
            continue
        x = find_strong_connection(data)
        if x is None:
            rep.add(f"{name}: strong connection exists", False)
            continue
        gauges = sample_gauges(data, [(1,), (0, 1), (1, 1), (2, -1, 1)])
        rep.note(f"{name}: {len(gauges)} sampled gauge transformations")
        rep.extend(gauge_report(data, gauges, x), f"{name}: ")
    return rep


def suite_principal(ws: Workspace, args) -> Report:
    rep = Report("principal")
    for name, data in _need(ws.extensions(), "extension"):
        if data.e is None:
            rep.add(f"{name}: group-like e supplied", False)
            continue
        rep.extend(principality_report(data), f"{name}: ")
    return rep


def suite_cointegral(ws: Workspace, args) -> Report:
    rep = Report("cointegral")
    found = False
    for name, obj in ws.objects.items():
        C = obj.coalgebra if isinstance(obj, Bialgebra) else obj if isinstance(obj, Coalgebra) else None
        if C is None:
            continue
        found = True
        delta = find_cointegral(C)
        rep.add(f"{name}: cointegral exists", delta is not None,
                detail="" if delta is None else "δ: " + describe_map(delta, tensor_labels(C.labels, C.labels), ["1"]))
    for name, data in ws.extensions():
        found = True
        if not _galois_only(rep, name, data):
            continue
        try:
            rep.extend(cointegral_report(data), f"{name}: ")
        except NoCointegral as exc:
            rep.add(f"{name}: cointegral exists", False, detail=str(exc))
    if not found:
        raise InputError("suite needs a coalgebra or extension")
    return rep


def suite_podles(ws: Workspace | None, args) -> Report:
    checks = getattr(args, "check", None) or list(PODLES_CHECKS)
    return podles_report(checks, getattr(args, "n", 2), args.degree, getattr(args, "s", None))


RUNNERS: dict[str, Callable[[Workspace, Any], Report]] = {
    "axioms": suite_axioms,
    "bowtie": suite_bowtie,
    "galois": suite_galois,
    "translation": suite_translation,
    "coring": suite_coring,
    "connection": suite_connection,
    "strong": suite_strong,
    "gauge": suite_gauge,
    "principal": suite_principal,
    "podles": suite_podles,
    "cointegral": suite_cointegral,
}


def run_suite(name: str, ws: Workspace | None, args=None) -> Report:
    if name not in RUNNERS:
        raise InputError(f"unknown suite {name!r}")
    args = args or argparse.Namespace(degree=default_degree(), n=2, s=None, check=None)
    start = time.perf_counter()
    rep = RUNNERS[name](ws, args)
    if rep.timing is None:
        rep.timing = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# entry point


def default_degree() -> int:
    raw = os.environ.get(DEGREE_ENV)
    if raw is None:
        return DEFAULT_DEGREE
    try:
        d = int(raw)
    except ValueError:
        raise InputError(f"{DEGREE_ENV} must be an integer, got {raw!r}") from None
    if d < 1:
        raise InputError(f"{DEGREE_ENV} must be positive")
    return d


def _emit(rep: Report, fmt: str, timing: bool) -> None:
    text = rep.to_machine(timing) if fmt == "machine" else rep.to_text(timing)
    sys.stdout.write(text.rstrip("\n") + "\n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfgalois", description="Exact checks for Hopf-Galois structures.")
    sub = ap.add_subparsers(dest="command", required=True)
    chk = sub.add_parser("check", help="run check suites on a structure file")
    chk.add_argument("file")
    chk.add_argument("--suite", action="append", choices=SUITES, required=True)
    chk.add_argument("--format", choices=("text", "machine"), default="text")
    chk.add_argument("--degree", type=int, default=None)
    chk.add_argument("--timing", action="store_true", help="append wall-clock timings")
    pod = sub.add_parser("podles", help="quantum Hopf fibration over the Podleś spheres")
    pod.add_argument("--n", type=int, default=2, help="largest |n| for the group-likes g_n")
    pod.add_argument("--degree", type=int, default=None)
    pod.add_argument("--s", default=None, help="fix s to an expression in q (default: symbolic)")
    pod.add_argument("--check", action="append", choices=PODLES_CHECKS)
    pod.add_argument("--format", choices=("text", "machine"), default="text")
    pod.add_argument("--timing", action="store_true")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        if args.degree is None:
            args.degree = default_degree()
        elif args.degree < 1:
            raise InputError("--degree must be positive")
        if args.command == "podles":
            if args.n < 0:
                raise InputError("--n must be non-negative")
            reports = [suite_podles(None, args)]
        else:
            ws = load(args.file)
            ns = argparse.Namespace(degree=args.degree, n=2, s=None, check=None)
            reports = [run_suite(s, ws, ns) for s in args.suite]
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    for rep in reports:
        _emit(rep, args.format, args.timing)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
