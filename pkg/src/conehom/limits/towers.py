"""Inverse towers X_0 <- X_1 <- X_2 <- ... and their lim and lim^1.

A tower is a finite prefix, optionally followed by one group A repeated
forever with a fixed endomorphism m as bonding map.  Groups may contain Q and
Q/Z summands; lim is computed exactly when it is representable, and lim^1 is
reported as a certificate (zero, nonzero, or unknown) rather than as a group.

Limits are stored as a subgroup of a single *anchor* level: the last level
of a finite tower, or the first tail level.  Projection to the anchor is
injective in every case handled here, and all other projections factor through it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from sympy import Matrix as SympyMatrix
from sympy import Poly, factor_list, symbols
from sympy.ntheory import factorint

from ..lattice import Matrix
from ..lattice.smith import echelon_coords, integer_echelon, integer_kernel, snf_lists
from ..qz import (
    MixedSpan,
    QZGroup,
    QZMorphism,
    QZSubquotient,
    compose_qz,
    add_qz,
    direct_sum_qz,
    image_span,
    is_isomorphism_qz,
    kernel_qz,
)


def _qz_group(g) -> QZGroup:
    return g if isinstance(g, QZGroup) else QZGroup.from_fg(g)


def _qz_map(f) -> QZMorphism:
    return f if isinstance(f, QZMorphism) else QZMorphism.from_fg(f)


def _identity(g: QZGroup) -> QZMorphism:
    return QZMorphism.identity(g)


class TowerOfGroups:
    """``bonds[k]`` maps level k+1 to level k; with a tail, the last prefix bond lands in the tail group."""

    def __init__(self, prefix: Sequence = (), bonds: Sequence = (), tail: Optional[tuple] = None):
        self.prefix = [_qz_group(g) for g in prefix]
        self.bonds = [_qz_map(f) for f in bonds]
        self.tail = None if tail is None else (_qz_group(tail[0]), _qz_map(tail[1]))
        expected = max(len(self.prefix) - 1, 0) + (1 if self.tail is not None and self.prefix else 0)
        if len(self.bonds) != expected:
            raise ValueError(f"expected {expected} bonding maps, got {len(self.bonds)}")
        if not self.prefix and self.tail is None:
            raise ValueError("empty tower")
        for k, f in enumerate(self.bonds):
            if f.source != self.level(k + 1) or f.target != self.level(k):
                raise ValueError(f"bond {k} does not map level {k + 1} to level {k}")
        if self.tail is not None:
            A, m = self.tail
            if m.source != A or m.target != A:
                raise ValueError("tail map must be an endomorphism of the tail group")
        self._composites: dict = {}

    def __eq__(self, other) -> bool:
        if not isinstance(other, TowerOfGroups):
            return NotImplemented
        return (self.prefix, self.bonds, self.tail) == (other.prefix, other.bonds, other.tail)

    __hash__ = None

    @classmethod
    def constant(cls, A, m=None) -> TowerOfGroups:
        A = _qz_group(A)
        return cls([], [], (A, _qz_map(m) if m is not None else _identity(A)))

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def anchor(self) -> int:
        """The level that carries the limit."""
        return len(self.prefix) - 1 if self.tail is None else len(self.prefix)

    def level(self, k: int) -> QZGroup:
        if k < len(self.prefix):
            return self.prefix[k]
        if self.tail is None:
            raise IndexError(f"finite tower has no level {k}")
        return self.tail[0]

    def bond(self, k: int) -> QZMorphism:
        """Level k+1 -> level k."""
        if k < len(self.bonds):
            return self.bonds[k]
        if self.tail is None:
            raise IndexError(f"finite tower has no bond at {k}")
        return self.tail[1]

    def composite(self, high: int, low: int) -> QZMorphism:
        """Level high -> level low, for high >= low."""
        key = (high, low)
        f = self._composites.get(key)
        if f is None:
            f = _identity(self.level(low)) if high == low else compose_qz(self.composite(high - 1, low), self.bond(high - 1))
            self._composites[key] = f
        return f

    def truncate(self, depth: int) -> TowerOfGroups:
        """Levels 0..depth as a finite tower."""
        return TowerOfGroups([self.level(k) for k in range(depth + 1)], [self.bond(k) for k in range(depth)])


@dataclass
class TowerMorphism:
    """Levelwise maps X_k -> Y_k commuting with the bonds; ``components(k)`` gives the k-th one."""

    source: TowerOfGroups
    target: TowerOfGroups
    prefix: list
    tail: Optional[QZMorphism] = None

    def component(self, k: int) -> QZMorphism:
        if k < len(self.prefix):
            return self.prefix[k]
        if self.tail is None:
            raise IndexError(f"no component at level {k}")
        return self.tail

    def commutes(self, depth: int) -> bool:
        """The squares at levels 0..depth (fewer for a shorter finite tower)."""
        if self.source.tail is None:
            depth = min(depth, len(self.source.prefix) - 1)
        for k in range(depth):
            a = compose_qz(self.target.bond(k), self.component(k + 1))
            b = compose_qz(self.component(k), self.source.bond(k))
            if a != b:
                return False
        return True


# --- the limit ---------------------------------------------------------------------------------


@dataclass
class LimitData:
    """lim as a subgroup of the anchor level; ``exact`` is False when the limit is not representable."""

    tower: TowerOfGroups
    exact: bool
    group: Optional[QZGroup] = None
    inclusion: Optional[QZMorphism] = None
    subquotient: Optional[QZSubquotient] = None
    span: Optional[MixedSpan] = None
    note: str = ""

    def projection(self, k: int) -> QZMorphism:
        """lim -> X_k for k at most the anchor."""
        return compose_qz(self.tower.composite(self.tower.anchor, k), self.inclusion)


def _span_of_subgroup(A: QZGroup, rat, lat) -> MixedSpan:
    rel = MixedSpan.relations(A)
    return MixedSpan(A.ngens, list(rat), list(lat) + rel.lat)


def _image_of_span(m: QZMorphism, span: MixedSpan) -> MixedSpan:
    A = m.target
    return _span_of_subgroup(A, [m.matrix.apply(v) for v in span.rat], [m.matrix.apply(v) for v in span.lat])


def _limit_from_span(T: TowerOfGroups, span: MixedSpan) -> LimitData:
    A = T.level(T.anchor)
    sq = QZSubquotient(span, MixedSpan.relations(A))
    return LimitData(T, True, sq.group, QZMorphism(sq.group, A, sq.lift_matrix()), sq, span)


def _free_block(A: QZGroup, m: QZMorphism) -> Matrix:
    start = A.ngens - A.free_rank
    idx = list(range(start, A.ngens))
    return Matrix([[m.matrix[i, j] for j in idx] for i in idx], len(idx)) if idx else Matrix.zeros(0, 0)


def _charpoly_split(M: Matrix):
    """(unit part, other part) of the characteristic polynomial's factorization.

    Unit factors are the irreducible factors with constant term +-1; the
    factor x (eigenvalue 0) is neither and is reported separately.
    """
    x = symbols("x")
    if M.nrows == 0:
        return [], [], 0
    poly = SympyMatrix(M.tolist()).charpoly(x)
    _, factors = factor_list(poly.as_expr(), x)
    units, others, zero_mult = [], [], 0
    for f, mult in factors:
        p = Poly(f, x)
        c = p.eval(0)
        if p.degree() == 1 and c == 0:
            zero_mult += mult
        elif abs(c) == 1:
            units.append((p, mult))
        else:
            others.append((p, mult))
    return units, others, zero_mult


def _poly_at_matrix(p: Poly, M: Matrix) -> Matrix:
    n = M.nrows
    out = Matrix.zeros(n, n)
    for c in p.all_coeffs():
        out = out @ M + Matrix.identity(n).scale(int(c))
    return out


def unit_core(M: Matrix) -> list[list[int]]:
    """Z-basis of Z^r intersected with the sum of generalized eigenspaces of unit factors."""
    units, _, _ = _charpoly_split(M)
    r = M.nrows
    if not units:
        return []
    f = Matrix.identity(r)
    for p, mult in units:
        for _ in range(mult):
            f = f @ _poly_at_matrix(p, M)
    return [list(c) for c in integer_kernel(f).columns()]


def _stabilize(m: QZMorphism, span: MixedSpan, bound: int) -> tuple[MixedSpan, int, bool]:
    """Iterate span -> m(span) until it repeats; returns (span, steps, stabilized)."""
    for k in range(bound + 1):
        nxt = _image_of_span(m, span)
        if nxt == span:
            return span, k, True
        span = nxt
    return span, bound + 1, False


def stabilization_bound(A: QZGroup) -> int:
    """Upper bound on the steps before images of an endomorphism of A stop shrinking, when they do."""
    omega = sum(sum(factorint(d).values()) for d in A.torsion)
    return A.q_rank + A.qz_rank + A.free_rank + omega


def lim_tower(T: TowerOfGroups) -> LimitData:
    if T.tail is None:
        A = T.level(T.anchor)
        return _limit_from_span(T, MixedSpan.of_group(A))
    A, m = T.tail
    if is_isomorphism_qz(m):
        return _limit_from_span(T, MixedSpan.of_group(A))
    bound = stabilization_bound(A)
    if A.is_finitely_generated:
        # preimage of the unit core of the free part, then its stable image
        M = _free_block(A, m)
        start = A.ngens - A.free_rank
        lat = [[int(i == k) for i in range(A.ngens)] for k in range(start)]
        lat += [[0] * start + v for v in unit_core(M)]
        stable, _, ok = _stabilize(m, _span_of_subgroup(A, [], lat), bound)
        if not ok:
            return LimitData(T, False, note="image chain did not stabilize within the bound")
        return _limit_from_span(T, stable)
    stable, _, ok = _stabilize(m, MixedSpan.of_group(A), bound)
    if ok:
        lim = _limit_from_span(T, stable)
        restricted = compose_qz(m, lim.inclusion)
        if kernel_qz(restricted).group.is_trivial:
            return lim
    return LimitData(T, False, note="limit has no finite description in this category")


def lim_map(F: TowerMorphism, lim_source: LimitData, lim_target: LimitData) -> QZMorphism:
    """The induced map on limits (both towers anchored at the same level)."""
    if F.source.anchor != F.target.anchor:
        raise ValueError("towers have different anchors")
    f = F.component(F.source.anchor)
    cols = [
        lim_target.subquotient.linear_coords(f.matrix.apply(c)) for c in lim_source.inclusion.matrix.columns()
    ] if lim_source.group.ngens else []
    return QZMorphism(lim_source.group, lim_target.group, Matrix.from_columns(cols, lim_target.group.ngens))


# --- lim^1 ---------------------------------------------------------------------------------------


@dataclass
class Lim1Certificate:
    """Verdict on lim^1 with re-checkable evidence.

    Zero: the images of m^k stop shrinking at ``depth``; ``stable_image`` is
    m^depth(A).  Nonzero: the free part of the tail has images of strictly
    growing index, ``indices[k]`` being [m^(r+k) F : m^(r+k+1) F].
    """

    verdict: str
    depth: int = 0
    stable_image: Optional[MixedSpan] = None
    indices: list = field(default_factory=list)
    index_factor: int = 1
    note: str = ""

    def recheck(self, T: TowerOfGroups) -> bool:
        if T.tail is None:
            return self.verdict == "Zero"
        A, m = T.tail
        if self.verdict == "Zero":
            power = MixedSpan.of_group(A)
            for _ in range(self.depth):
                power = _image_of_span(m, power)
            return power == self.stable_image and _image_of_span(m, power) == power
        if self.verdict == "Nonzero":
            return self.indices == free_image_indices(_free_block(A, m), len(self.indices)) and all(
                i > 1 for i in self.indices
            )
        return True


def _lattice_index(outer: list[list[int]], inner: list[list[int]], dim: int) -> int:
    basis, leads = integer_echelon(outer, dim)
    cols = [echelon_coords(basis, leads, v) for v in inner]
    if any(c is None or any(not isinstance(x, int) for x in c) for c in cols):
        raise ValueError("inner lattice is not contained in the outer one")
    k = len(basis)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    D, _, _, _, _, r = snf_lists(rows, k, len(cols), want_inverses=False)
    if r < k:
        return 0
    out = 1
    for i in range(r):
        out *= D[i][i]
    return out


def free_image_indices(M: Matrix, count: int) -> list[int]:
    """[M^(r+k) Z^r : M^(r+k+1) Z^r] for k < count, r the size of M; 0 means infinite index."""
    r = M.nrows
    P = Matrix.identity(r)
    for _ in range(r):
        P = M @ P
    out = []
    for _ in range(count):
        nxt = M @ P
        out.append(_lattice_index([list(c) for c in P.columns()], [list(c) for c in nxt.columns()], r))
        P = nxt
    return out


def lim1_tower(T: TowerOfGroups, evidence_depth: int = 3) -> Lim1Certificate:
    if T.tail is None:
        return Lim1Certificate("Zero", note="finite tower")
    A, m = T.tail
    stable, depth, ok = _stabilize(m, MixedSpan.of_group(A), stabilization_bound(A))
    if ok:
        return Lim1Certificate("Zero", depth=depth, stable_image=stable)
    M = _free_block(A, m)
    _, others, _ = _charpoly_split(M)
    factor = 1
    for p, mult in others:
        factor *= abs(int(p.eval(0))) ** mult
    if factor > 1:
        idx = free_image_indices(M, evidence_depth)
        if all(i == factor for i in idx):
            return Lim1Certificate("Nonzero", indices=idx, index_factor=factor)
    return Lim1Certificate("Unknown", note="images neither stabilized nor showed index growth")


def combine_certificates(*certs: Lim1Certificate) -> str:
    """Verdict for a direct sum."""
    verdicts = {c.verdict for c in certs}
    if "Nonzero" in verdicts:
        return "Nonzero"
    if "Unknown" in verdicts:
        return "Unknown"
    return "Zero"


# --- truncation oracle ------------------------------------------------------------------------------


@dataclass
class Pullback:
    """The iterated pullback of levels 0..depth, as a subgroup of their product."""

    group: QZGroup
    inclusion: QZMorphism
    product: QZGroup
    injections: list
    projections: list

    def projection(self, k: int) -> QZMorphism:
        return compose_qz(self.projections[k], self.inclusion)


def truncated_pullback(T: TowerOfGroups, depth: int) -> Pullback:
    """Kernel of (x_k) -> (x_k - bond(x_{k+1})) on the product of levels 0..depth."""
    levels = [T.level(k) for k in range(depth + 1)]
    prod, inj, proj = direct_sum_qz(*levels)
    if depth == 0:
        return Pullback(prod, QZMorphism.identity(prod), prod, inj, proj)
    lower, inj_lower, _ = direct_sum_qz(*levels[:-1])
    d = QZMorphism.zero(prod, lower)
    for k in range(depth):
        back = compose_qz(T.bond(k), proj[k + 1])
        diff = QZMorphism(prod, levels[k], proj[k].matrix - back.matrix)
        d = add_qz(d, compose_qz(inj_lower[k], diff))
    ker = kernel_qz(d)
    return Pullback(ker.group, ker.inclusion, prod, inj, proj)


def truncation_image(T: TowerOfGroups, depth: int, level: int = 0) -> MixedSpan:
    """Image in `level` of the pullback of levels level..level+depth."""
    f = T.composite(level + depth, level)
    return image_span(f.matrix, f.source, f.target)
