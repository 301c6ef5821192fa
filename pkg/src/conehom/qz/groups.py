"""Groups of the form Q^a + (Q/Z)^b + Z/d1 + ... + Z/dk + Z^c.

Every coordinate has a kind, stored as an int: ``QKIND`` for Q, ``QZKIND`` for
Q/Z, ``d >= 2`` for Z/d and ``0`` for Z.  Canonical order is Q, Q/Z, torsion
chain, free, so a group with a = b = 0 has the same coordinates as the
corresponding ``FgAbGroup``.

An element is a tuple of rationals.  Normal form: Q coordinates are left
alone, Q/Z coordinates lie in [0, 1), torsion coordinates are residues and free
coordinates are integers.
"""
from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from ..errors import IllDefinedMorphism
from ..lattice.groups import FgAbGroup, FgMorphism, diagonal_presentation
from ..lattice.matrix import Matrix

QKIND = -1
QZKIND = -2


def _int(x) -> int:
    if isinstance(x, int):
        return x
    if x.denominator != 1:
        raise IllDefinedMorphism(f"{x} is not an integer")
    return int(x.numerator)


def is_divisible_kind(kind: int) -> bool:
    return kind < 0


class QZGroup:
    __slots__ = ("q_rank", "qz_rank", "torsion", "free_rank", "kinds")

    def __init__(self, q_rank: int = 0, qz_rank: int = 0, torsion: Sequence[int] = (), free_rank: int = 0):
        torsion = tuple(int(d) for d in torsion)
        FgAbGroup(free_rank, torsion)  # validates the chain
        self.q_rank, self.qz_rank = q_rank, qz_rank
        self.torsion, self.free_rank = torsion, free_rank
        self.kinds = (QKIND,) * q_rank + (QZKIND,) * qz_rank + torsion + (0,) * free_rank

    @classmethod
    def from_fg(cls, g: FgAbGroup) -> QZGroup:
        return cls(0, 0, g.torsion, g.free_rank)

    @classmethod
    def Q(cls, n: int = 1) -> QZGroup:
        return cls(q_rank=n)

    @classmethod
    def QmodZ(cls, n: int = 1) -> QZGroup:
        return cls(qz_rank=n)

    @property
    def ngens(self) -> int:
        return len(self.kinds)

    @property
    def is_finitely_generated(self) -> bool:
        return self.q_rank == 0 and self.qz_rank == 0

    @property
    def is_divisible(self) -> bool:
        return not self.torsion and not self.free_rank

    @property
    def is_trivial(self) -> bool:
        return not self.kinds

    def to_fg(self) -> FgAbGroup:
        if not self.is_finitely_generated:
            from ..errors import NotFinitelyGenerated

            raise NotFinitelyGenerated(f"{self} has a divisible summand")
        return FgAbGroup(self.free_rank, self.torsion)

    def normalize(self, vec: Sequence) -> tuple:
        if len(vec) != len(self.kinds):
            raise ValueError(f"element of length {len(vec)} in a group with {self.ngens} coordinates")
        out = []
        for x, k in zip(vec, self.kinds):
            if k == QKIND:
                out.append(mpq(x))
            elif k == QZKIND:
                out.append(mpq(x) % 1)
            elif k:
                out.append(_int(x) % k)
            else:
                out.append(_int(x))
        return tuple(out)

    def is_element(self, vec: Sequence) -> bool:
        try:
            self.normalize(vec)
        except IllDefinedMorphism:
            return False
        return True

    def is_zero_element(self, vec: Sequence) -> bool:
        return not any(self.normalize(vec))

    def zero(self) -> tuple:
        return self.normalize([0] * self.ngens)

    def __eq__(self, other) -> bool:
        return isinstance(other, QZGroup) and self.kinds == other.kinds

    def __hash__(self) -> int:
        return hash(self.kinds)

    def __repr__(self) -> str:
        return f"QZGroup({self.q_rank}, {self.qz_rank}, {self.torsion}, {self.free_rank})"

    def __str__(self) -> str:
        def power(name, n):
            return [] if not n else [name if n == 1 else f"{name}^{n}"]

        parts = power("Q", self.q_rank) + power("Q/Z", self.qz_rank)
        parts += [f"Z/{d}" for d in self.torsion] + power("Z", self.free_rank)
        return " + ".join(parts) if parts else "0"


def _check_entry(x, tk: int, sk: int):
    """Normalized matrix entry for a map from a coordinate of kind sk to one of kind tk."""
    if tk == QKIND:
        if sk == QZKIND or sk > 0:
            if x:
                raise IllDefinedMorphism("torsion or Q/Z coordinate mapped nontrivially into Q")
            return 0
        return mpq(x)
    if tk == QZKIND:
        if sk == QKIND:
            return mpq(x)
        if sk == QZKIND:
            return _int(x)
        if sk == 0:
            return mpq(x) % 1
        y = mpq(x)
        if (y * sk).denominator != 1:
            raise IllDefinedMorphism(f"Z/{sk} coordinate sent to {y} in Q/Z")
        return y % 1
    # tk is Z (0) or Z/e (tk >= 2)
    if sk < 0:
        if x:
            raise IllDefinedMorphism("divisible coordinate mapped nontrivially into a finitely generated one")
        return 0
    v = _int(x)
    if tk == 0:
        if sk > 0 and v:
            raise IllDefinedMorphism("torsion coordinate mapped nontrivially into Z")
        return v
    v %= tk
    if sk > 0 and (v * sk) % tk:
        raise IllDefinedMorphism(f"Z/{sk} coordinate sent to {v} in Z/{tk}")
    return v


class QZMorphism:
    """Homomorphism given by a rational matrix on coordinates, shape (target) x (source)."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: QZGroup, target: QZGroup, matrix: Matrix):
        if matrix.shape != (target.ngens, source.ngens):
            raise IllDefinedMorphism(f"matrix shape {matrix.shape} for a map {source} -> {target}")
        sk = source.kinds
        rows = [
            tuple(_check_entry(x, tk, s) for x, s in zip(row, sk))
            for row, tk in zip(matrix.rows, target.kinds)
        ]
        self.source, self.target = source, target
        self.matrix = Matrix(rows, source.ngens)

    @classmethod
    def from_fg(cls, f: FgMorphism) -> QZMorphism:
        return cls(QZGroup.from_fg(f.source), QZGroup.from_fg(f.target), f.matrix)

    @classmethod
    def identity(cls, g: QZGroup) -> QZMorphism:
        return cls(g, g, Matrix.identity(g.ngens))

    @classmethod
    def zero(cls, a: QZGroup, b: QZGroup) -> QZMorphism:
        return cls(a, b, Matrix.zeros(b.ngens, a.ngens))

    def to_fg(self) -> FgMorphism:
        return FgMorphism(self.source.to_fg(), self.target.to_fg(), self.matrix.to_int())

    def __call__(self, vec: Sequence) -> tuple:
        self.source.normalize(vec)
        return self.target.normalize(self.matrix.apply(vec))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QZMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def __repr__(self) -> str:
        return f"QZMorphism({self.source} -> {self.target}, {self.matrix.tolist()})"


def compose_qz(g: QZMorphism, f: QZMorphism) -> QZMorphism:
    """g after f."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {g} after {f}")
    return QZMorphism(f.source, g.target, g.matrix @ f.matrix)


def add_qz(f: QZMorphism, g: QZMorphism) -> QZMorphism:
    if (f.source, f.target) != (g.source, g.target):
        raise ValueError("morphisms have different sources or targets")
    return QZMorphism(f.source, f.target, f.matrix + g.matrix)


class DiagonalCanonicalizer:
    """Canonical form of a direct sum of coordinates with arbitrary kinds.

    Raw kinds may include 1 (a trivial coordinate).  ``to_canonical`` and
    ``from_canonical`` are the coordinate changes on representatives.
    """

    def __init__(self, kinds: Sequence[int]):
        self.raw_kinds = tuple(kinds)
        self.q_idx = [i for i, k in enumerate(kinds) if k == QKIND]
        self.qz_idx = [i for i, k in enumerate(kinds) if k == QZKIND]
        self.t_idx = [i for i, k in enumerate(kinds) if k > 0]
        self.z_idx = [i for i, k in enumerate(kinds) if k == 0]
        tg, self._tc, self._tl = diagonal_presentation([kinds[i] for i in self.t_idx])
        self.group = QZGroup(len(self.q_idx), len(self.qz_idx), tg.torsion, len(self.z_idx))
        self._nt = len(tg.torsion)

    def to_canonical(self, raw: Sequence) -> tuple:
        t = self._tc.apply([raw[i] for i in self.t_idx]) if self.t_idx else ()
        return (
            tuple(raw[i] for i in self.q_idx)
            + tuple(raw[i] for i in self.qz_idx)
            + tuple(t)
            + tuple(raw[i] for i in self.z_idx)
        )

    def from_canonical(self, can: Sequence) -> list:
        raw = [0] * len(self.raw_kinds)
        a, b = len(self.q_idx), len(self.qz_idx)
        for k, i in enumerate(self.q_idx):
            raw[i] = can[k]
        for k, i in enumerate(self.qz_idx):
            raw[i] = can[a + k]
        if self.t_idx:
            t = self._tl.apply(list(can[a + b : a + b + self._nt]))
            for k, i in enumerate(self.t_idx):
                raw[i] = t[k]
        off = a + b + self._nt
        for k, i in enumerate(self.z_idx):
            raw[i] = can[off + k]
        return raw


def direct_sum_qz(*groups: QZGroup):
    """Canonical direct sum with injection and projection morphisms."""
    kinds = [k for g in groups for k in g.kinds]
    dc = DiagonalCanonicalizer(kinds)
    G = dc.group
    n = len(kinds)
    inj, proj = [], []
    off = 0
    for g in groups:
        cols = []
        for i in range(g.ngens):
            raw = [0] * n
            raw[off + i] = 1
            cols.append(dc.to_canonical(raw))
        inj.append(QZMorphism(g, G, Matrix.from_columns(cols, G.ngens)))
        pcols = []
        for i in range(G.ngens):
            e = [int(i == k) for k in range(G.ngens)]
            pcols.append(dc.from_canonical(e)[off : off + g.ngens])
        proj.append(QZMorphism(G, g, Matrix.from_columns(pcols, g.ngens)))
        off += g.ngens
    return G, tuple(inj), tuple(proj)
