"""Finitely generated abelian groups in invariant-factor form.

A group Z/d1 + ... + Z/dk + Z^r is stored by its chain d1 | ... | dk (all
di >= 2) and its free rank.  Elements are integer tuples in these generators,
torsion generators first; a normalized element has torsion coordinates
reduced into [0, di).

Morphisms are integer matrices acting on column vectors, shape
(target gens) x (source gens).

    >>> str(hom_group(FgAbGroup.cyclic(6), FgAbGroup.cyclic(4)).group)
    'Z/2'
    >>> str(ext_group(FgAbGroup.cyclic(4), FgAbGroup.cyclic(6)))
    'Z/2'
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from ..errors import IllDefinedMorphism, NoPreimage
from .matrix import Matrix
from .smith import echelon_coords, integer_echelon, integer_solve, snf_lists


class FgAbGroup:
    __slots__ = ("torsion", "free_rank", "_orders")

    def __init__(self, free_rank: int, torsion: Sequence[int] = ()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise ValueError("negative rank")
        for d in torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} must be at least 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {torsion} do not form a divisibility chain")
        self.torsion = torsion
        self.free_rank = free_rank
        self._orders = torsion + (0,) * free_rank

    @classmethod
    def from_orders(cls, free_rank: int, orders: Sequence[int]) -> FgAbGroup:
        """Canonical form of Z^free_rank plus cyclic groups of the given orders (0 means Z)."""
        return diagonal_presentation(list(orders) + [0] * free_rank)[0]

    @classmethod
    def cyclic(cls, n: int) -> FgAbGroup:
        if n == 0:
            return cls(1)
        return cls(0, (n,) if n != 1 else ())

    @classmethod
    def free(cls, r: int) -> FgAbGroup:
        return cls(r)

    @classmethod
    def trivial(cls) -> FgAbGroup:
        return cls(0)

    @property
    def ngens(self) -> int:
        return len(self._orders)

    @property
    def orders(self) -> tuple[int, ...]:
        """Order of each generator, 0 for free ones."""
        return self._orders

    @property
    def is_trivial(self) -> bool:
        return not self._orders

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def exponent(self) -> int:
        return self.torsion[-1] if self.torsion else 1

    def normalize(self, vec: Sequence) -> tuple[int, ...]:
        if len(vec) != self.ngens:
            raise ValueError(f"element of length {len(vec)} in a group with {self.ngens} generators")
        return tuple(int(x) % d if d else int(x) for x, d in zip(vec, self._orders))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def relation_matrix(self) -> Matrix:
        return Matrix.diagonal(list(self._orders))

    def __eq__(self, other) -> bool:
        return isinstance(other, FgAbGroup) and self._orders == other._orders

    def __hash__(self) -> int:
        return hash(self._orders)

    def __repr__(self) -> str:
        return f"FgAbGroup({self.free_rank}, {self.torsion})"

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


class FgMorphism:
    """Homomorphism between canonical groups, checked for well-definedness."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: Matrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise IllDefinedMorphism(f"matrix shape {matrix.shape} for a map {source} -> {target}")
        rows = []
        for e, row in zip(target.orders, matrix.rows):
            rows.append(tuple(int(x) % e for x in row) if e else tuple(int(x) for x in row))
        if check:
            for j, d in enumerate(source.orders):
                if not d:
                    continue
                for e, row in zip(target.orders, rows):
                    if (d * row[j]) % e if e else row[j]:
                        raise IllDefinedMorphism(
                            f"generator {j} has order {d} but its image does not"
                        )
        self.source = source
        self.target = target
        self.matrix = Matrix(rows, source.ngens)

    @classmethod
    def identity(cls, g: FgAbGroup) -> FgMorphism:
        return cls(g, g, Matrix.identity(g.ngens), check=False)

    @classmethod
    def zero(cls, a: FgAbGroup, b: FgAbGroup) -> FgMorphism:
        return cls(a, b, Matrix.zeros(b.ngens, a.ngens), check=False)

    def __call__(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self.target.normalize(self.matrix.apply(vec))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def inverse(self) -> FgMorphism:
        cols = []
        for i in range(self.target.ngens):
            e = [int(i == k) for k in range(self.target.ngens)]
            try:
                cols.append(solve_preimage(self, e))
            except NoPreimage:
                raise ValueError("morphism is not surjective") from None
        inv = FgMorphism(self.target, self.source, Matrix.from_columns(cols, self.source.ngens))
        if not compose(self, inv) == FgMorphism.identity(self.target) or not compose(
            inv, self
        ) == FgMorphism.identity(self.source):
            raise ValueError("morphism is not an isomorphism")
        return inv

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FgMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def __repr__(self) -> str:
        return f"FgMorphism({self.source} -> {self.target}, {self.matrix.tolist()})"


def compose(g: FgMorphism, f: FgMorphism) -> FgMorphism:
    """g after f."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {g} after {f}")
    return FgMorphism(f.source, g.target, g.matrix @ f.matrix, check=False)


# --- presentations and subquotients ----------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """A canonical group together with the change of generators.

    ``coords`` sends ambient vectors (in the presented generators) to canonical
    coordinates; ``lifts`` has one ambient column per canonical generator.
    """

    group: FgAbGroup
    coords: Matrix
    lifts: Matrix


def diagonal_presentation(orders: Sequence[int]) -> tuple[FgAbGroup, Matrix, Matrix]:
    """Canonicalize a direct sum of cyclic groups Z/o_i (o_i = 0 for Z, 1 for trivial).

    Returns (group, coords, lifts) for the ambient Z^len(orders).
    """
    n = len(orders)
    tors_idx = [i for i, o in enumerate(orders) if o != 0]
    free_idx = [i for i, o in enumerate(orders) if o == 0]
    t = len(tors_idx)
    D, U, V, Ui, _, _ = snf_lists(
        [[orders[tors_idx[i]] if i == j else 0 for j in range(t)] for i in range(t)], t, t
    )
    keep = [i for i in range(t) if D[i][i] != 1]
    group = FgAbGroup(len(free_idx), [D[i][i] for i in keep])
    coords_rows = []
    for i in keep:
        row = [0] * n
        for k, a in enumerate(U[i]):
            row[tors_idx[k]] = a
        coords_rows.append(tuple(row))
    for i in free_idx:
        coords_rows.append(tuple(int(i == k) for k in range(n)))
    lift_cols = []
    for i in keep:
        col = [0] * n
        for k in range(t):
            col[tors_idx[k]] = Ui[k][i]
        lift_cols.append(col)
    for i in free_idx:
        lift_cols.append([int(i == k) for k in range(n)])
    coords = Matrix(coords_rows, n)
    lifts = Matrix.from_columns(lift_cols, n)
    return group, coords, lifts


class Subquotient:
    """D / N for integer lattices N <= D <= Z^dim, in canonical form.

    ``coords(x)`` sends x in D to canonical coordinates, ``lifts`` has an
    ambient representative per canonical generator.
    """

    def __init__(self, dim: int, d_gens: Sequence[Sequence[int]], n_gens: Sequence[Sequence[int]]):
        self.dim = dim
        self.basis, self.leads = integer_echelon(d_gens, dim)
        k = len(self.basis)
        cols = []
        for v in n_gens:
            c = echelon_coords(self.basis, self.leads, v)
            if c is None or any(not isinstance(x, int) for x in c):
                raise ValueError("numerator lattice is not contained in the denominator lattice")
            cols.append(c)
        m = len(cols)
        rows = [[cols[j][i] for j in range(m)] for i in range(k)]
        D, U, V, Ui, _, r = snf_lists(rows, k, m)
        keep = [i for i in range(r) if D[i][i] != 1]
        self.group = FgAbGroup(k - r, [D[i][i] for i in keep])
        self._rows = [U[i] for i in keep] + [U[i] for i in range(r, k)]
        lift_cols = []
        for i in keep + list(range(r, k)):
            y = [Ui[a][i] for a in range(k)]
            lift_cols.append([sum(y[a] * self.basis[a][c] for a in range(k)) for c in range(dim)])
        self.lifts = Matrix.from_columns(lift_cols, dim)

    def coords(self, vec: Sequence[int]) -> tuple[int, ...]:
        c = echelon_coords(self.basis, self.leads, vec)
        if c is None or any(not isinstance(x, int) for x in c):
            raise NoPreimage("vector is not in the subgroup")
        return self.group.normalize([sum(u * x for u, x in zip(row, c)) for row in self._rows])

    def contains(self, vec: Sequence[int]) -> bool:
        c = echelon_coords(self.basis, self.leads, vec)
        return c is not None and all(isinstance(x, int) for x in c)


def group_from_presentation(ngens: int, relations: Matrix) -> Presentation:
    """Z^ngens modulo the column span of `relations`."""
    if relations.nrows != ngens:
        raise ValueError("relation matrix must have one row per generator")
    identity = [[int(i == j) for i in range(ngens)] for j in range(ngens)]
    sq = Subquotient(ngens, identity, relations.columns())
    coords = Matrix([sq.coords(e) for e in identity], sq.group.ngens).T if ngens else Matrix.zeros(sq.group.ngens, 0)
    return Presentation(sq.group, coords, sq.lifts)


def _relation_vectors(g: FgAbGroup) -> list[list[int]]:
    return [[d if i == j else 0 for i in range(g.ngens)] for j, d in enumerate(g.orders) if d]


@dataclass(frozen=True)
class KernelData:
    group: FgAbGroup
    inclusion: FgMorphism


@dataclass(frozen=True)
class ImageData:
    group: FgAbGroup
    inclusion: FgMorphism
    corestriction: FgMorphism


@dataclass(frozen=True)
class CokernelData:
    group: FgAbGroup
    projection: FgMorphism
    lifts: Matrix


def preimage_lattice(f: FgMorphism) -> list[list[int]]:
    """Z-generators of {x in Z^(source gens) : f(x) = 0 in the target}."""
    A, B = f.source, f.target
    rel = [j for j, e in enumerate(B.orders) if e]
    big = Matrix(
        [
            tuple(f.matrix.rows[i]) + tuple(-B.orders[i] if i == j else 0 for j in rel)
            for i in range(B.ngens)
        ],
        A.ngens + len(rel),
    )
    from .smith import integer_kernel

    ker = integer_kernel(big)
    return [list(c[: A.ngens]) for c in ker.columns()] if A.ngens else []


def kernel(f: FgMorphism) -> KernelData:
    A = f.source
    gens = preimage_lattice(f) + _relation_vectors(A)
    sq = Subquotient(A.ngens, gens, _relation_vectors(A))
    return KernelData(sq.group, FgMorphism(sq.group, A, sq.lifts, check=False))


def image(f: FgMorphism) -> ImageData:
    B = f.target
    gens = [list(c) for c in f.matrix.columns()] + _relation_vectors(B)
    sq = Subquotient(B.ngens, gens, _relation_vectors(B))
    core = Matrix.from_columns([sq.coords(c) for c in f.matrix.columns()], sq.group.ngens)
    return ImageData(
        sq.group,
        FgMorphism(sq.group, B, sq.lifts, check=False),
        FgMorphism(f.source, sq.group, core, check=False),
    )


def cokernel(f: FgMorphism) -> CokernelData:
    B = f.target
    n = B.ngens
    identity = [[int(i == j) for i in range(n)] for j in range(n)]
    sq = Subquotient(n, identity, [list(c) for c in f.matrix.columns()] + _relation_vectors(B))
    proj = Matrix.from_columns([sq.coords(e) for e in identity], sq.group.ngens)
    return CokernelData(sq.group, FgMorphism(B, sq.group, proj, check=False), sq.lifts)


def solve_preimage(f: FgMorphism, b: Sequence[int]) -> tuple[int, ...]:
    """Some x with f(x) == b; raises NoPreimage when b is not in the image."""
    B = f.target
    rel = [j for j, e in enumerate(B.orders) if e]
    big = Matrix(
        [tuple(f.matrix.rows[i]) + tuple(B.orders[i] if i == j else 0 for j in rel) for i in range(B.ngens)],
        f.source.ngens + len(rel),
    )
    x = integer_solve(big, list(b))
    if x is None:
        raise NoPreimage(f"{tuple(b)} is not in the image")
    return f.source.normalize(x[: f.source.ngens])


# --- direct sums -------------------------------------------------------------------


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple[FgMorphism, ...]
    projections: tuple[FgMorphism, ...]


def direct_sum(*groups: FgAbGroup) -> DirectSum:
    orders = [d for g in groups for d in g.orders]
    group, coords, lifts = diagonal_presentation(orders)
    injections, projections = [], []
    offset = 0
    for g in groups:
        idx = range(offset, offset + g.ngens)
        injections.append(FgMorphism(g, group, coords.submatrix(None, idx), check=False))
        projections.append(FgMorphism(group, g, lifts.submatrix(idx, None), check=False))
        offset += g.ngens
    return DirectSum(group, tuple(injections), tuple(projections))


def is_isomorphic(a: FgAbGroup, b: FgAbGroup) -> bool:
    return a == b


# --- Hom and Ext ---------------------------------------------------------------------


class HomGroup:
    """Hom(A, B) as a canonical group with explicit morphism coordinates."""

    def __init__(self, A: FgAbGroup, B: FgAbGroup):
        self.source, self.target = A, B
        # raw coordinate per matrix entry (i, j): order and the scale that turns
        # a raw value into the matrix entry
        self._slots = []
        orders = []
        for i, e in enumerate(B.orders):
            for j, d in enumerate(A.orders):
                if d == 0:
                    self._slots.append((i, j, 1))
                    orders.append(e)
                elif e == 0:
                    continue
                else:
                    g = gcd(d, e)
                    self._slots.append((i, j, e // g))
                    orders.append(g)
        self.group, self._coords, self._lifts = diagonal_presentation(orders)

    @property
    def basis(self) -> list[FgMorphism]:
        return [self.morphism([int(i == k) for k in range(self.group.ngens)]) for i in range(self.group.ngens)]

    def morphism(self, coords: Sequence[int]) -> FgMorphism:
        raw = self._lifts.apply(list(coords))
        M = [[0] * self.source.ngens for _ in range(self.target.ngens)]
        for (i, j, s), x in zip(self._slots, raw):
            M[i][j] = s * x
        return FgMorphism(self.source, self.target, Matrix(M, self.source.ngens), check=False)

    def coords(self, f: FgMorphism) -> tuple[int, ...]:
        if f.source != self.source or f.target != self.target:
            raise ValueError("morphism has the wrong source or target")
        raw = []
        for i, j, s in self._slots:
            raw.append(f.matrix[i, j] // s)
        return self.group.normalize(self._coords.apply(raw))


def hom_group(A: FgAbGroup, B: FgAbGroup) -> HomGroup:
    return HomGroup(A, B)


def ext_group(A: FgAbGroup, B: FgAbGroup, method: str = "closed") -> FgAbGroup:
    """Ext(A, B).

    ``closed`` sums B/dB over the invariant factors d of A.  ``resolution``
    takes the cokernel of Hom(Z^g, B) -> Hom(Z^k, B) induced by a free
    presentation of A.
    """
    if method == "closed":
        orders = []
        for d in A.torsion:
            orders.extend(gcd(d, e) if e else d for e in B.orders)
        return diagonal_presentation(orders)[0]
    if method == "resolution":
        # A = Z^g / R Z^k with R the diagonal of the torsion part
        k = len(A.torsion)
        R = Matrix([[A.torsion[i] if i == j else 0 for j in range(k)] for i in range(A.ngens)], k)
        hg = hom_group(FgAbGroup.free(A.ngens), B)
        hk = hom_group(FgAbGroup.free(k), B)
        cols = []
        for f in hg.basis:
            cols.append(hk.coords(FgMorphism(FgAbGroup.free(k), B, f.matrix @ R, check=False)))
        restrict = FgMorphism(hg.group, hk.group, Matrix.from_columns(cols, hk.group.ngens), check=False)
        return cokernel(restrict).group
    raise ValueError(f"unknown method {method!r}")
