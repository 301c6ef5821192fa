"""Finite simplicial complexes and their integral cochain complexes.

Simplices are sorted vertex tuples; the k-th cochain group is free on the
k-simplices in lexicographic order, and the face opposite the vertex in
position i carries the sign (-1)^i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .complexes import CochainComplex, CochainMap
from .errors import InvalidSubcomplex, NotSimplicial
from .lattice import FgAbGroup, FgMorphism, Matrix


@dataclass(frozen=True)
class SimplicialComplex:
    vertex_count: int
    facets: tuple

    def __init__(self, vertex_count: int, facets: Sequence[Sequence[int]]):
        cleaned = tuple(sorted(tuple(sorted(int(v) for v in f)) for f in facets))
        for f in cleaned:
            if not f:
                raise ValueError("empty facet")
            if len(set(f)) != len(f):
                raise ValueError(f"facet {f} repeats a vertex")
            if f[0] < 0 or f[-1] >= vertex_count:
                raise ValueError(f"facet {f} has a vertex outside 0..{vertex_count - 1}")
        if len(set(cleaned)) != len(cleaned):
            raise ValueError("facets are not distinct")
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "facets", cleaned)

    @cached_property
    def _by_dimension(self) -> dict:
        faces: dict[int, set] = {0: {(v,) for v in range(self.vertex_count)}}
        for f in self.facets:
            for k in range(1, len(f)):
                faces.setdefault(k, set()).update(combinations(f, k + 1))
        return {k: sorted(v) for k, v in faces.items()}

    @property
    def dimension(self) -> int:
        return max((k for k, v in self._by_dimension.items() if v), default=-1)

    def simplices(self, k: int) -> list[tuple]:
        return self._by_dimension.get(k, [])

    def contains(self, simplex: Sequence[int]) -> bool:
        s = tuple(sorted(simplex))
        return s in self._index(len(s) - 1)

    def _index(self, k: int) -> dict:
        cache = self.__dict__.setdefault("_indices", {})
        if k not in cache:
            cache[k] = {s: i for i, s in enumerate(self.simplices(k))}
        return cache[k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(self.simplices(k)) for k in range(self.dimension + 1))


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertices: tuple

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertices: Sequence[int]):
        vertices = tuple(int(v) for v in vertices)
        if len(vertices) != source.vertex_count:
            raise NotSimplicial("vertex assignment has the wrong length")
        if any(not 0 <= v < target.vertex_count for v in vertices):
            raise NotSimplicial("a vertex is sent outside the target")
        for f in source.facets:
            image = {vertices[v] for v in f}
            if not target.contains(sorted(image)):
                raise NotSimplicial(f"facet {f} maps onto {sorted(image)}, which is not a simplex")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "vertices", vertices)

    def compose(self, first: SimplicialMap) -> SimplicialMap:
        """self after first."""
        return SimplicialMap(first.source, self.target, [self.vertices[v] for v in first.vertices])


def _complex_from(cells: list[list[tuple]]) -> CochainComplex:
    groups = [FgAbGroup.free(len(c)) for c in cells]
    deltas = []
    for k in range(len(cells) - 1):
        index = {s: i for i, s in enumerate(cells[k])}
        rows = []
        for s in cells[k + 1]:
            row = [0] * len(cells[k])
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face in index:  # relative cochains: faces in the subcomplex are dropped
                    row[index[face]] += (-1) ** i
            rows.append(row)
        deltas.append(Matrix(rows, len(cells[k])))
    C = CochainComplex.from_matrices(0, groups, deltas)
    for k in range(len(deltas) - 1):
        if not (deltas[k + 1] @ deltas[k]).is_zero():
            raise AssertionError("coboundary does not square to zero")
    return C


def cochain_of(K: SimplicialComplex) -> CochainComplex:
    return _complex_from([K.simplices(k) for k in range(max(K.dimension, 0) + 1)])


def cochain_of_pair(K: SimplicialComplex, L: SimplicialComplex) -> CochainComplex:
    """Cochains of K vanishing on L.

    L is the subcomplex generated by its facets: a vertex of K that lies on no
    facet of L is not in L, whatever L.vertex_count says.
    """
    if L.vertex_count > K.vertex_count:
        raise InvalidSubcomplex("the subcomplex has more vertices than the complex")
    for f in L.facets:
        if not K.contains(f):
            raise InvalidSubcomplex(f"simplex {f} of the subcomplex is not in the complex")
    in_L = {face for f in L.facets for k in range(1, len(f) + 1) for face in combinations(f, k)}
    cells = [[s for s in K.simplices(k) if s not in in_L] for k in range(max(K.dimension, 0) + 1)]
    return _complex_from(cells)


def _sign_of_sort(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def cochain_map_of(f: SimplicialMap) -> CochainMap:
    """f^#: C(target) -> C(source); degenerate images contribute 0."""
    K, L = f.source, f.target
    CK, CL = cochain_of(K), cochain_of(L)
    comps = {}
    for k in CK.degrees:
        index = L._index(k)
        rows = []
        for s in K.simplices(k):
            row = [0] * len(L.simplices(k))
            image = [f.vertices[v] for v in s]
            if len(set(image)) == len(image):
                row[index[tuple(sorted(image))]] = _sign_of_sort(image)
            rows.append(row)
        comps[k] = FgMorphism(CL.group(k), CK.group(k), Matrix(rows, CL.group(k).ngens))
    return CochainMap(CL, CK, comps)


# small standard examples

def point() -> SimplicialComplex:
    return SimplicialComplex(1, [(0,)])


def circle(n: int = 3) -> SimplicialComplex:
    return SimplicialComplex(n, [(i, (i + 1) % n) for i in range(n)])


def projective_plane() -> SimplicialComplex:
    """The six-vertex triangulation of RP^2."""
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
             (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]
    return SimplicialComplex(6, faces)
