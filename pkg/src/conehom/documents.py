"""JSON documents for groups, complexes, maps, towers, systems and reports.

Integers stay JSON integers and rationals are written "p/q".  Coordinates of
elements in Q/Z summands are written "p/q mod 1", reduced into [0, 1).
Matrices are nested arrays of rows; their shape always comes from the groups
around them.
"""
from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

from gmpy2 import mpq

from .complexes import CochainComplex, CochainMap, TowerOfComplexes
from .errors import ConehomError
from .lattice import FgAbGroup, FgMorphism, Matrix
from .limits import TowerOfGroups
from .qz import QZKIND, MixedSpan, QZGroup, QZMorphism
from .simplicial import SimplicialComplex


class DocumentError(ConehomError):
    """Malformed input document; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


# --- scalars -------------------------------------------------------------------------------------


def encode_scalar(x, kind: int = 0):
    """One coordinate of an element of a group coordinate with the given kind."""
    x = mpq(x)
    if kind == QZKIND:
        x = x - (x.numerator // x.denominator)
        return f"{x.numerator}/{x.denominator} mod 1"
    if x.denominator == 1:
        return int(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def decode_scalar(value, where: str = "$"):
    if isinstance(value, bool):
        raise DocumentError(where, "expected a number, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        mod_one = text.endswith("mod 1")
        if mod_one:
            text = text[: -len("mod 1")].strip()
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(where, f"cannot read {value!r} as a rational") from None
        if q.denominator == 1 and not mod_one:
            return int(q)
        return mpq(q.numerator, q.denominator)
    raise DocumentError(where, f"expected an integer or a 'p/q' string, got {type(value).__name__}")


# --- helpers ---------------------------------------------------------------------------------------


def _field(doc: dict, key: str, where: str, kind=None):
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object")
    if key not in doc:
        raise DocumentError(where, f"missing field '{key}'")
    value = doc[key]
    if kind is None:
        return value
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise DocumentError(f"{where}.{key}", f"expected {kind.__name__}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise DocumentError(where, "expected a list of integers")
    return value


def _check_kind(doc, expected: str, where: str):
    kind = _field(doc, "kind", where, str)
    if kind != expected:
        raise DocumentError(f"{where}.kind", f"expected '{expected}', got '{kind}'")


def encode_matrix(M: Matrix) -> list:
    """Entries are multipliers, never reduced mod 1, even in rows of Q/Z coordinates."""
    return [[encode_scalar(x) for x in row] for row in M.rows]


def decode_matrix(value, nrows: int, ncols: int, where: str) -> Matrix:
    if not isinstance(value, list) or len(value) != nrows:
        raise DocumentError(where, f"expected {nrows} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != ncols:
            raise DocumentError(f"{where}[{i}]", f"expected {ncols} entries")
        rows.append([decode_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(rows, ncols)


def _guard(where: str, build):
    try:
        return build()
    except DocumentError:
        raise
    except (ConehomError, ValueError) as exc:
        raise DocumentError(where, str(exc)) from None


# --- groups and morphisms ---------------------------------------------------------------------------


def encode_group(G) -> dict:
    out = {"kind": "group", "free": G.free_rank, "torsion": list(G.torsion)}
    if isinstance(G, QZGroup):
        out["category"] = "qz"
        if G.q_rank:
            out["q"] = G.q_rank
        if G.qz_rank:
            out["qz"] = G.qz_rank
    return out


def _category(doc, where: str) -> str:
    category = doc.get("category", "fg")
    if category not in ("fg", "qz"):
        raise DocumentError(f"{where}.category", "expected 'fg' or 'qz'")
    return category


def decode_group(doc, where: str = "$"):
    """A QZGroup when the document says category "qz" or has divisible summands, else an FgAbGroup."""
    _check_kind(doc, "group", where)
    free = _field(doc, "free", where, int)
    torsion = _int_list(_field(doc, "torsion", where), f"{where}.torsion")
    q, qz = doc.get("q", 0), doc.get("qz", 0)
    for name, v in (("q", q), ("qz", qz), ("free", free)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"{where}.{name}", "expected a nonnegative integer")
    unknown = set(doc) - {"kind", "free", "torsion", "q", "qz", "category"}
    if unknown:
        raise DocumentError(where, f"unknown fields {sorted(unknown)}")
    if q or qz or _category(doc, where) == "qz":
        return _guard(where, lambda: QZGroup(q, qz, torsion, free))
    return _guard(where, lambda: FgAbGroup(free, torsion))


def _kinds(G) -> tuple:
    return G.kinds if isinstance(G, QZGroup) else G.orders


def encode_morphism(f) -> dict:
    out = {
        "kind": "morphism",
        "source": encode_group(f.source),
        "target": encode_group(f.target),
        "matrix": encode_matrix(f.matrix),
    }
    if isinstance(f, QZMorphism):
        out["category"] = "qz"
    return out


def decode_morphism(doc, where: str = "$"):
    _check_kind(doc, "morphism", where)
    A = decode_group(_field(doc, "source", where), f"{where}.source")
    B = decode_group(_field(doc, "target", where), f"{where}.target")
    M = decode_matrix(_field(doc, "matrix", where), B.ngens, A.ngens, f"{where}.matrix")
    if _category(doc, where) == "fg":
        if not (isinstance(A, FgAbGroup) and isinstance(B, FgAbGroup)):
            raise DocumentError(where, "a morphism with divisible groups needs category 'qz'")
        return _guard(where, lambda: FgMorphism(A, B, M))
    qa = A if isinstance(A, QZGroup) else QZGroup.from_fg(A)
    qb = B if isinstance(B, QZGroup) else QZGroup.from_fg(B)
    return _guard(where, lambda: QZMorphism(qa, qb, M))


def encode_element(G, vec) -> list:
    return [encode_scalar(x, k) for x, k in zip(vec, _kinds(G))]


def decode_element(G, value, where: str = "$") -> tuple:
    if not isinstance(value, list) or len(value) != G.ngens:
        raise DocumentError(where, f"expected {G.ngens} coordinates")
    vec = [decode_scalar(x, f"{where}[{i}]") for i, x in enumerate(value)]
    return _guard(where, lambda: G.normalize(vec))


# --- complexes, maps, towers, systems -------------------------------------------------------------------


def encode_complex(C: CochainComplex) -> dict:
    return {
        "kind": "complex",
        "lo": C.lo,
        "groups": [encode_group(g) for g in C.groups],
        "deltas": [encode_matrix(d.matrix) for d in C.deltas],
    }


def decode_complex(doc, where: str = "$") -> CochainComplex:
    _check_kind(doc, "complex", where)
    lo = _field(doc, "lo", where, int)
    groups_doc = _field(doc, "groups", where, list)
    groups = [decode_group(g, f"{where}.groups[{i}]") for i, g in enumerate(groups_doc)]
    for i, g in enumerate(groups):
        if not isinstance(g, FgAbGroup):
            raise DocumentError(f"{where}.groups[{i}]", "cochain groups must be finitely generated")
    deltas_doc = _field(doc, "deltas", where, list)
    if len(deltas_doc) != max(len(groups) - 1, 0):
        raise DocumentError(f"{where}.deltas", f"expected {max(len(groups) - 1, 0)} differentials")
    mats = [
        decode_matrix(d, groups[i + 1].ngens, groups[i].ngens, f"{where}.deltas[{i}]") for i, d in enumerate(deltas_doc)
    ]
    return _guard(where, lambda: CochainComplex.from_matrices(lo, groups, mats))


def encode_components(f: CochainMap) -> dict:
    return {str(n): encode_matrix(f.component(n).matrix) for n in sorted(set(f.source.degrees) | set(f.target.degrees))}


def _decode_components(source, target, doc, where):
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object keyed by degree")
    comps = {}
    for key, value in doc.items():
        try:
            n = int(key)
        except ValueError:
            raise DocumentError(f"{where}.{key}", "degree keys must be integers") from None
        A, B = source.group(n), target.group(n)
        M = decode_matrix(value, B.ngens, A.ngens, f"{where}.{key}")
        comps[n] = _guard(f"{where}.{key}", lambda A=A, B=B, M=M: FgMorphism(A, B, M))
    return _guard(where, lambda: CochainMap(source, target, comps))


def encode_cochain_map(f: CochainMap) -> dict:
    return {
        "kind": "cochain_map",
        "source": encode_complex(f.source),
        "target": encode_complex(f.target),
        "components": encode_components(f),
    }


def decode_cochain_map(doc, where: str = "$") -> CochainMap:
    _check_kind(doc, "cochain_map", where)
    source = decode_complex(_field(doc, "source", where), f"{where}.source")
    target = decode_complex(_field(doc, "target", where), f"{where}.target")
    return _decode_components(source, target, _field(doc, "components", where), f"{where}.components")


def encode_tower(T: TowerOfGroups) -> dict:
    out = {
        "kind": "tower",
        "prefix": [encode_group(g) for g in T.prefix],
        "bonds": [encode_matrix(f.matrix) for f in T.bonds],
    }
    if T.tail is not None:
        A, m = T.tail
        out["tail"] = {"group": encode_group(A), "map": encode_matrix(m.matrix)}
    return out


def decode_tower(doc, where: str = "$") -> TowerOfGroups:
    _check_kind(doc, "tower", where)
    prefix = [decode_group(g, f"{where}.prefix[{i}]") for i, g in enumerate(_field(doc, "prefix", where, list))]
    prefix = [g if isinstance(g, QZGroup) else QZGroup.from_fg(g) for g in prefix]
    tail = None
    levels = list(prefix)
    if doc.get("tail") is not None:
        tdoc = doc["tail"]
        A = decode_group(_field(tdoc, "group", f"{where}.tail"), f"{where}.tail.group")
        A = A if isinstance(A, QZGroup) else QZGroup.from_fg(A)
        m = decode_matrix(_field(tdoc, "map", f"{where}.tail"), A.ngens, A.ngens, f"{where}.tail.map")
        tail = (A, _guard(f"{where}.tail.map", lambda: QZMorphism(A, A, m)))
        levels.append(A)
    bonds_doc = _field(doc, "bonds", where, list)
    if len(bonds_doc) != max(len(levels) - 1, 0):
        raise DocumentError(f"{where}.bonds", f"expected {max(len(levels) - 1, 0)} bonding maps")
    bonds = []
    for k, b in enumerate(bonds_doc):
        src, tgt = levels[k + 1], levels[k]
        M = decode_matrix(b, tgt.ngens, src.ngens, f"{where}.bonds[{k}]")
        bonds.append(_guard(f"{where}.bonds[{k}]", lambda src=src, tgt=tgt, M=M: QZMorphism(src, tgt, M)))
    return _guard(where, lambda: TowerOfGroups(prefix, bonds, tail))


def encode_system(S: TowerOfComplexes) -> dict:
    out = {
        "kind": "system",
        "prefix": [encode_complex(C) for C in S.prefix],
        "maps": [encode_components(f) for f in S.prefix_maps],
    }
    if S.tail is not None:
        C, s = S.tail
        out["tail"] = {"complex": encode_complex(C), "map": encode_components(s)}
    return out


def decode_system(doc, where: str = "$") -> TowerOfComplexes:
    _check_kind(doc, "system", where)
    prefix = [decode_complex(c, f"{where}.prefix[{i}]") for i, c in enumerate(_field(doc, "prefix", where, list))]
    levels = list(prefix)
    tail = None
    if doc.get("tail") is not None:
        tdoc = doc["tail"]
        C = decode_complex(_field(tdoc, "complex", f"{where}.tail"), f"{where}.tail.complex")
        tail = (C, _decode_components(C, C, _field(tdoc, "map", f"{where}.tail"), f"{where}.tail.map"))
        levels.append(C)
    maps_doc = _field(doc, "maps", where, list)
    if len(maps_doc) != max(len(levels) - 1, 0):
        raise DocumentError(f"{where}.maps", f"expected {max(len(levels) - 1, 0)} bonding maps")
    maps = [_decode_components(levels[k], levels[k + 1], m, f"{where}.maps[{k}]") for k, m in enumerate(maps_doc)]
    return _guard(where, lambda: TowerOfComplexes(prefix, maps, tail))


def encode_facets(K: SimplicialComplex) -> dict:
    return {"kind": "facets", "vertices": K.vertex_count, "facets": [list(f) for f in K.facets]}


def decode_facets(doc, where: str = "$") -> SimplicialComplex:
    _check_kind(doc, "facets", where)
    n = _field(doc, "vertices", where, int)
    facets = _field(doc, "facets", where, list)
    cleaned = [_int_list(f, f"{where}.facets[{i}]") for i, f in enumerate(facets)]
    return _guard(where, lambda: SimplicialComplex(n, cleaned))


def encode_simplicial_map(source: SimplicialComplex, target: SimplicialComplex, vertices) -> dict:
    return {"kind": "simplicial_map", "source": encode_facets(source), "target": encode_facets(target), "vertices": list(vertices)}


# --- generic dispatch and reports ----------------------------------------------------------------------

_DECODERS = {
    "group": decode_group,
    "morphism": decode_morphism,
    "complex": decode_complex,
    "cochain_map": decode_cochain_map,
    "tower": decode_tower,
    "system": decode_system,
    "facets": decode_facets,
}


def encode(value) -> dict:
    if isinstance(value, (FgAbGroup, QZGroup)):
        return encode_group(value)
    if isinstance(value, (FgMorphism, QZMorphism)):
        return encode_morphism(value)
    if isinstance(value, CochainComplex):
        return encode_complex(value)
    if isinstance(value, CochainMap):
        return encode_cochain_map(value)
    if isinstance(value, TowerOfGroups):
        return encode_tower(value)
    if isinstance(value, TowerOfComplexes):
        return encode_system(value)
    if isinstance(value, SimplicialComplex):
        return encode_facets(value)
    raise TypeError(f"no document form for {type(value).__name__}")


def decode(doc, where: str = "$"):
    kind = _field(doc, "kind", where, str)
    if kind not in _DECODERS:
        raise DocumentError(f"{where}.kind", f"unknown document kind '{kind}'")
    return _DECODERS[kind](doc, where)


def dumps(value) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    doc = value if isinstance(value, dict) else encode(value)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, expect: str | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    value = decode(doc)
    if expect is not None and doc.get("kind") != expect:
        raise DocumentError("$.kind", f"expected a '{expect}' document")
    return value


def report_json(obj: Any):
    """Plain JSON data for a report object, with every matrix written out."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {f.name: report_json(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        if hasattr(type(obj), "ok"):
            out["ok"] = bool(obj.ok)
        return out
    if isinstance(obj, (FgAbGroup, QZGroup)):
        return str(obj)
    if isinstance(obj, (FgMorphism, QZMorphism)):
        return encode_morphism(obj)
    if isinstance(obj, Matrix):
        return encode_matrix(obj)
    if isinstance(obj, MixedSpan):
        return {"rational": [[encode_scalar(x) for x in v] for v in obj.rat], "lattice": [[encode_scalar(x) for x in v] for v in obj.lat]}
    if isinstance(obj, dict):
        return {(k if isinstance(k, str) else ":".join(map(str, k)) if isinstance(k, tuple) else str(k)): report_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [report_json(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, type(mpq())):
        return encode_scalar(obj)
    return str(obj)
