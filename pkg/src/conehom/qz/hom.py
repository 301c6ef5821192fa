"""Hom(A, T) for finitely generated A and a Q/Z-type target T.

A homomorphism A -> T is stored as its *entry matrix*: a rational matrix of
shape (T coords) x (A gens) whose columns represent the images of the
generators.  ``HomSum`` handles a direct sum of such Hom groups at once, which
is how mapping-cone chain groups are assembled.
"""
from __future__ import annotations

from math import gcd
from typing import Callable, Sequence

from gmpy2 import mpq

from ..errors import LiftFailure, NotDivisibleTarget
from ..lattice.groups import FgAbGroup, FgMorphism
from ..lattice.matrix import Matrix
from ..lattice.smith import snf_lists
from .groups import QKIND, QZKIND, DiagonalCanonicalizer, QZGroup, QZMorphism


def _as_fg(A) -> FgAbGroup:
    if isinstance(A, QZGroup):
        return A.to_fg()
    return A


class HomSum:
    """Hom(A_1, T_1) + ... + Hom(A_k, T_k) in canonical form."""

    def __init__(self, blocks: Sequence[tuple]):
        self.blocks = [(_as_fg(A), T) for A, T in blocks]
        slots = []  # (block, row, col, scale): entry = scale * raw value
        kinds = []
        for b, (A, T) in enumerate(self.blocks):
            for j, tk in enumerate(T.kinds):
                for i, d in enumerate(A.orders):
                    if d == 0:
                        slots.append((b, j, i, 1))
                        kinds.append(tk)
                    elif tk == QZKIND:
                        slots.append((b, j, i, mpq(1, d)))
                        kinds.append(d)
                    elif tk > 0:
                        g = gcd(d, tk)
                        if g > 1:
                            slots.append((b, j, i, tk // g))
                            kinds.append(g)
        self._slots = slots
        self._canon = DiagonalCanonicalizer(kinds)
        self.group = self._canon.group

    def entries(self, can: Sequence) -> list[Matrix]:
        """Entry matrices, one per block, of the element with canonical coordinates `can`."""
        raw = self._canon.from_canonical(can)
        mats = [[[0] * A.ngens for _ in range(T.ngens)] for A, T in self.blocks]
        for (b, j, i, s), x in zip(self._slots, raw):
            mats[b][j][i] = s * x
        return [Matrix(m, A.ngens) for m, (A, T) in zip(mats, self.blocks)]

    def coords(self, mats: Sequence[Matrix]) -> tuple:
        """Canonical coordinates of the element whose blocks have entry matrices `mats`."""
        raw = []
        for b, j, i, s in self._slots:
            x = mats[b][j, i]
            raw.append(mpq(x) / s if s != 1 else x)
        return self.group.normalize(self._canon.to_canonical(raw))

    def basis_entries(self) -> list[list[Matrix]]:
        n = self.group.ngens
        return [self.entries([int(i == k) for k in range(n)]) for i in range(n)]

    def map_to(self, target: HomSum, func: Callable[[list[Matrix]], list[Matrix]]) -> QZMorphism:
        """The morphism induced by a blockwise-linear operation on entry matrices."""
        cols = [target.linear_coords(func(e)) for e in self.basis_entries()]
        return QZMorphism(self.group, target.group, Matrix.from_columns(cols, target.group.ngens))

    def linear_coords(self, mats: Sequence[Matrix]) -> tuple:
        raw = []
        for b, j, i, s in self._slots:
            x = mats[b][j, i]
            raw.append(mpq(x) / s if s != 1 else x)
        return tuple(self._canon.to_canonical(raw))


class HomSpace(HomSum):
    """Hom(A, T) as a canonical Q/Z-type group."""

    def __init__(self, A, T: QZGroup):
        super().__init__([(A, T)])
        self.source, self.target = self.blocks[0]

    def morphism(self, can: Sequence) -> QZMorphism:
        return QZMorphism(QZGroup.from_fg(self.source), self.target, self.entries(can)[0])

    def coords_of(self, f) -> tuple:
        return self.coords([f.matrix])

    def evaluate(self, can: Sequence, a: Sequence[int]) -> tuple:
        """The value at a in A of the homomorphism with coordinates `can`."""
        return self.target.normalize(self.entries(can)[0].apply(a))


def power(T: QZGroup, k: int) -> QZGroup:
    """T^k for a divisible T."""
    if not T.is_divisible:
        raise NotDivisibleTarget(f"{T} is not divisible")
    return QZGroup(T.q_rank * k, T.qz_rank * k)


def hom_into(A, T: QZGroup, k: int = 1) -> HomSpace:
    """Hom(A, T^k) for T in {Q, Q/Z}; ``.group`` is the canonical group and
    ``.evaluate`` is the evaluation pairing."""
    return HomSpace(A, power(T, k))


def precompose(space_to: HomSpace, space_from: HomSpace, u: FgMorphism) -> QZMorphism:
    """Hom(u, T): Hom(B, T) -> Hom(A, T) for u: A -> B."""
    return space_from.map_to(space_to, lambda m: [m[0] @ u.matrix])


def postcompose(space_from: HomSpace, space_to: HomSpace, v: QZMorphism) -> QZMorphism:
    """Hom(A, v): Hom(A, T) -> Hom(A, T') for v: T -> T'."""
    return space_from.map_to(space_to, lambda m: [v.matrix @ m[0]])


def induced(u: FgMorphism, T: QZGroup, k: int = 1) -> QZMorphism:
    """Hom(B, T^k) -> Hom(A, T^k) given by precomposition with u: A -> B."""
    return precompose(hom_into(u.source, T, k), hom_into(u.target, T, k), u)


class Extender:
    """Extends homomorphisms along an injection j: A -> C into divisible targets.

    The extension is the rational-linear operator X with ext(phi) = phi X;
    on the Smith-adapted basis of the lattice generated by j and the relations
    of C each value is divided by the matching invariant factor, and the
    complement is sent to zero.
    """

    def __init__(self, j: Matrix, C: FgAbGroup):
        self.C = C
        N, K = j.nrows, j.ncols
        rel = [[d if r == c else 0 for r in range(N)] for c, d in enumerate(C.orders) if d]
        cols = [list(c) for c in j.columns()] + rel if N else []
        M = [[cols[k][i] for k in range(len(cols))] for i in range(N)]
        D, U, V, _, _, r = snf_lists(M, N, len(cols), want_inverses=False)
        self.X = Matrix(
            [[sum(mpq(V[k][i] * U[i][c], D[i][i]) for i in range(r)) for c in range(N)] for k in range(K)],
            N,
        )

    def extend(self, values: Matrix) -> Matrix:
        """Entry matrix on C's generators, given entry matrix on A's generators."""
        return values @ self.X


def extend_to_divisible(j: FgMorphism, phi: QZMorphism) -> QZMorphism:
    """Some psi: C -> T with psi j = phi, for injective j: A -> C and divisible T."""
    T = phi.target
    if not T.is_divisible:
        raise NotDivisibleTarget(f"{T} is not divisible")
    ext = Extender(j.matrix, j.target)
    psi = QZMorphism(QZGroup.from_fg(j.target), T, ext.extend(phi.matrix))
    check = QZMorphism(phi.source, T, psi.matrix @ j.matrix)
    if check != phi:
        raise LiftFailure("extension does not restrict to the given map; is j injective?")
    return psi


def kind_name(k: int) -> str:
    return {QKIND: "Q", QZKIND: "Q/Z", 0: "Z"}.get(k, f"Z/{k}")
