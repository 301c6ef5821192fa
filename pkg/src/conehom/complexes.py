"""Bounded cochain complexes of finitely generated abelian groups.

Degrees ascend: the differential in degree n is delta^n: C^n -> C^{n+1}.
Outside the support [lo, hi] every group is 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import IllDefinedMorphism, NotFinitelyGeneratedColimit
from .lattice import (
    CokernelData,
    FgAbGroup,
    FgMorphism,
    Matrix,
    cokernel,
    compose,
    image,
    kernel,
    solve_preimage,
)

_TRIVIAL = FgAbGroup.trivial()


class CochainComplex:
    """C^lo -> ... -> C^hi.  The constructor checks shapes only; see ``validate``."""

    def __init__(self, lo: int, groups: Sequence[FgAbGroup], deltas: Sequence[FgMorphism]):
        groups = list(groups)
        deltas = list(deltas)
        if len(deltas) != max(len(groups) - 1, 0):
            raise ValueError(f"{len(groups)} groups need {max(len(groups) - 1, 0)} differentials, got {len(deltas)}")
        for k, d in enumerate(deltas):
            if d.source != groups[k] or d.target != groups[k + 1]:
                raise ValueError(f"differential in degree {lo + k} has the wrong source or target")
        self.lo = lo
        self.hi = lo + len(groups) - 1
        self.groups = tuple(groups)
        self.deltas = tuple(deltas)
        self._cohomology: dict[int, CohomologyData] = {}

    @classmethod
    def from_matrices(cls, lo: int, groups: Sequence[FgAbGroup], matrices: Sequence[Matrix]) -> CochainComplex:
        groups = list(groups)
        deltas = [FgMorphism(groups[k], groups[k + 1], m) for k, m in enumerate(matrices)]
        return cls(lo, groups, deltas)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def group(self, n: int) -> FgAbGroup:
        if self.lo <= n <= self.hi:
            return self.groups[n - self.lo]
        return _TRIVIAL

    def delta(self, n: int) -> FgMorphism:
        if self.lo <= n < self.hi:
            return self.deltas[n - self.lo]
        return FgMorphism.zero(self.group(n), self.group(n + 1))

    def shift(self, k: int) -> CochainComplex:
        """The same complex with every degree raised by k (differentials unchanged)."""
        return CochainComplex(self.lo + k, self.groups, self.deltas)

    def is_free(self) -> bool:
        return all(g.is_free for g in self.groups)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.group(n).free_rank for n in self.degrees)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainComplex):
            return NotImplemented
        if not self.groups and not other.groups:
            return True
        return (self.lo, self.groups, self.deltas) == (other.lo, other.groups, other.deltas)

    def __hash__(self) -> int:
        return hash((self.lo, self.groups, self.deltas)) if self.groups else 0

    def __repr__(self) -> str:
        parts = " -> ".join(str(g) for g in self.groups) or "0"
        return f"CochainComplex(lo={self.lo}: {parts})"


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failing_degree: Optional[int] = None


def validate(C: CochainComplex) -> ValidationReport:
    """Checks delta^{n+1} delta^n = 0 everywhere; reports the first offending n."""
    for n in range(C.lo, C.hi - 1):
        if not compose(C.delta(n + 1), C.delta(n)).is_zero():
            return ValidationReport(False, n)
    return ValidationReport(True)


@dataclass(frozen=True)
class CohomologyData:
    """H^n with the maps around it.

    i: B^n -> Z^n and j: Z^n -> C^n are the inclusions, delta_prime is
    delta^{n-1} corestricted onto B^n, p: Z^n -> H^n the projection and q the
    projection C^{n+1} -> C^{n+1}/B^{n+1}.  ``reps`` holds one cocycle (in
    Z^n coordinates) per generator of H^n, ``b_sections`` one preimage in
    C^{n-1} per generator of B^n.
    """

    n: int
    H: FgAbGroup
    Z: FgAbGroup
    B: FgAbGroup
    i: FgMorphism
    j: FgMorphism
    delta_prime: FgMorphism
    p: FgMorphism
    q: FgMorphism
    quotient: CokernelData
    reps: Matrix
    b_sections: Matrix

    def cocycle_coords(self, x: Sequence[int]) -> tuple[int, ...]:
        """Z^n coordinates of a cocycle x in C^n; raises NoPreimage for non-cocycles."""
        return solve_preimage(self.j, x)

    def class_of(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.p(self.cocycle_coords(x))

    def representative(self, k: int) -> tuple[int, ...]:
        """The chosen cocycle in C^n for the k-th generator of H^n."""
        return self.j(self.reps.col(k))


def _unit(k: int, n: int) -> list[int]:
    return [int(i == k) for i in range(n)]


def cohomology(C: CochainComplex, n: int) -> CohomologyData:
    cached = C._cohomology.get(n)
    if cached is not None:
        return cached
    d_in, d_out = C.delta(n - 1), C.delta(n)
    kd = kernel(d_out)
    j = kd.inclusion
    into_z = Matrix.from_columns([solve_preimage(j, c) for c in d_in.matrix.columns()], kd.group.ngens)
    d_z = FgMorphism(d_in.source, kd.group, into_z)
    im = image(d_z)
    co = cokernel(im.inclusion)
    q = cokernel(d_out)
    sections = Matrix.from_columns(
        [solve_preimage(im.corestriction, _unit(k, im.group.ngens)) for k in range(im.group.ngens)],
        d_in.source.ngens,
    )
    data = CohomologyData(
        n=n,
        H=co.group,
        Z=kd.group,
        B=im.group,
        i=im.inclusion,
        j=j,
        delta_prime=im.corestriction,
        p=co.projection,
        q=q.projection,
        quotient=q,
        reps=co.lifts,
        b_sections=sections,
    )
    C._cohomology[n] = data
    return data


class CochainMap:
    """Degreewise morphisms f^n: C^n -> D^n commuting with the differentials."""

    def __init__(self, source: CochainComplex, target: CochainComplex, components: Mapping[int, FgMorphism], check: bool = True):
        self.source, self.target = source, target
        lo, hi = min(source.lo, target.lo), max(source.hi, target.hi)
        self.components: dict[int, FgMorphism] = {}
        for n in range(lo, hi + 1):
            f = components.get(n)
            if f is None:
                f = FgMorphism.zero(source.group(n), target.group(n))
            elif f.source != source.group(n) or f.target != target.group(n):
                raise IllDefinedMorphism(f"component in degree {n} has the wrong source or target")
            self.components[n] = f
        if check:
            for n in range(lo - 1, hi + 1):
                a = compose(self.component(n + 1), source.delta(n))
                b = compose(target.delta(n), self.component(n))
                if a != b:
                    raise IllDefinedMorphism(f"does not commute with the differentials in degree {n}")

    def component(self, n: int) -> FgMorphism:
        f = self.components.get(n)
        return f if f is not None else FgMorphism.zero(self.source.group(n), self.target.group(n))

    @classmethod
    def identity(cls, C: CochainComplex) -> CochainMap:
        return cls(C, C, {n: FgMorphism.identity(C.group(n)) for n in C.degrees}, check=False)

    def compose(self, first: CochainMap) -> CochainMap:
        """self after first."""
        if first.target != self.source:
            raise ValueError("cochain maps do not compose")
        degrees = set(self.components) | set(first.components)
        return CochainMap(
            first.source,
            self.target,
            {n: compose(self.component(n), first.component(n)) for n in degrees},
            check=False,
        )

    def inverse(self) -> CochainMap:
        """Degreewise inverse; raises ValueError if some component is not an isomorphism."""
        return CochainMap(self.target, self.source, {n: f.inverse() for n, f in self.components.items()}, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CochainMap):
            return NotImplemented
        degrees = set(self.components) | set(other.components)
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.component(n) == other.component(n) for n in degrees)
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target))


def induced_on_cohomology(f: CochainMap, n: int) -> FgMorphism:
    src, tgt = cohomology(f.source, n), cohomology(f.target, n)
    fn = f.component(n)
    cols = [tgt.class_of(fn(src.representative(k))) for k in range(src.H.ngens)]
    return FgMorphism(src.H, tgt.H, Matrix.from_columns(cols, tgt.H.ngens))


@dataclass
class TowerOfComplexes:
    """C_0 -> C_1 -> ... : a finite prefix, optionally followed by a complex
    repeated forever under a fixed self-map.

    ``prefix_maps[k]`` goes from level k to level k+1; when a tail is present
    and the prefix is nonempty, the last prefix map lands in the tail complex.
    """

    prefix: list
    prefix_maps: list
    tail: Optional[tuple] = None
    _composites: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        expected = max(len(self.prefix) - 1, 0) + (1 if self.tail is not None and self.prefix else 0)
        if len(self.prefix_maps) != expected:
            raise ValueError(f"expected {expected} prefix maps, got {len(self.prefix_maps)}")
        if not self.prefix and self.tail is None:
            raise ValueError("empty tower")
        for k, m in enumerate(self.prefix_maps):
            if m.source != self.level(k) or m.target != self.level(k + 1):
                raise ValueError(f"bonding map {k} has the wrong source or target")
        if self.tail is not None:
            T, s = self.tail
            if s.source != T or s.target != T:
                raise ValueError("tail self-map must be an endomorphism of the tail complex")

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def length(self) -> Optional[int]:
        return len(self.prefix) if self.tail is None else None

    def level(self, gamma: int) -> CochainComplex:
        if gamma < len(self.prefix):
            return self.prefix[gamma]
        if self.tail is None:
            raise IndexError(f"finite tower has no level {gamma}")
        return self.tail[0]

    def bond(self, gamma: int) -> CochainMap:
        """The map from level gamma to level gamma + 1."""
        if gamma < len(self.prefix_maps):
            return self.prefix_maps[gamma]
        if self.tail is None:
            raise IndexError(f"finite tower has no bonding map at {gamma}")
        return self.tail[1]

    def bond_between(self, gamma: int, delta: int) -> CochainMap:
        """The composite map from level gamma to level delta >= gamma."""
        key = (gamma, delta)
        if key not in self._composites:
            if delta == gamma:
                out = CochainMap.identity(self.level(gamma))
            else:
                out = self.bond(delta - 1).compose(self.bond_between(gamma, delta - 1))
            self._composites[key] = out
        return self._composites[key]

    @property
    def tail_start(self) -> int:
        """First level belonging to the tail."""
        return len(self.prefix)


def _check_tail_isomorphism(T: TowerOfComplexes) -> None:
    C, s = T.tail
    for n in C.degrees:
        try:
            s.component(n).inverse()
        except ValueError:
            raise NotFinitelyGeneratedColimit(
                f"tail self-map is not an isomorphism in degree {n}", degree=n
            ) from None


def colimit(T: TowerOfComplexes) -> CochainComplex:
    """Degreewise colimit; defined when the tower is finite or its tail map is invertible."""
    if T.tail is None:
        return T.prefix[-1]
    _check_tail_isomorphism(T)
    return T.tail[0]


def colimit_map(T: TowerOfComplexes, gamma: int) -> CochainMap:
    """The structure map from level gamma into ``colimit(T)``."""
    if T.tail is None:
        return T.bond_between(gamma, len(T.prefix) - 1)
    _check_tail_isomorphism(T)
    start = T.tail_start
    if gamma <= start:
        return T.bond_between(gamma, start)
    inv = T.tail[1].inverse()
    out = CochainMap.identity(T.tail[0])
    for _ in range(gamma - start):
        out = inv.compose(out)
    return out
