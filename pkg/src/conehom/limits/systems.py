"""Inverse towers obtained from a direct system of cochain complexes.

Every construction here is contravariant in the complex, so a direct system
C_0 -> C_1 -> ... becomes an inverse tower X(C_0) <- X(C_1) <- ... with the
same prefix/tail shape.
"""
from __future__ import annotations

from typing import Callable

from ..complexes import CochainMap, TowerOfComplexes, cohomology, induced_on_cohomology
from ..cone_ucf import (
    Coefficients,
    InjectiveResolution,
    KernelXi,
    build_cone,
    chain_pullback,
    chi_bar,
    ext_quotient,
    hom_pullback,
    induced_on_cone_homology,
    resolve,
    xi_bar,
)
from ..lattice import Matrix
from ..qz import HomSpace, MixedSpan, QZGroup, QZMorphism, QZSubquotient, compose_qz
from .towers import TowerMorphism, TowerOfGroups


def _unit(k: int, n: int) -> list[int]:
    return [int(i == k) for i in range(n)]


def restrict(f: QZMorphism, source: QZSubquotient, target: QZSubquotient) -> QZMorphism:
    """f between subquotients of its source and target, assuming it respects them."""
    cols = [
        target.linear_coords(f.matrix.apply(source.lift(_unit(k, source.group.ngens))))
        for k in range(source.group.ngens)
    ]
    return QZMorphism(source.group, target.group, Matrix.from_columns(cols, target.group.ngens))


def _sub(span: MixedSpan, ambient: QZGroup) -> QZSubquotient:
    return QZSubquotient(span, MixedSpan.relations(ambient))


class SystemCones:
    """A direct system together with the cone of every distinct level, for one coefficient group."""

    def __init__(self, system: TowerOfComplexes, G: Coefficients | InjectiveResolution):
        self.system = system
        self.resolution = G if isinstance(G, InjectiveResolution) else resolve(G)
        self.levels = len(system.prefix) + (0 if system.tail is None else 1)
        self.cones = [build_cone(system.level(g), self.resolution) for g in range(self.levels)]
        self._cache: dict = {}

    def bond(self, gamma: int) -> CochainMap:
        return self.system.bond(gamma)

    def tower(self, level: Callable[[int], QZGroup], pull: Callable[[int], QZMorphism]) -> TowerOfGroups:
        """Tower with level(g) at g and pull(g): level(g+1) -> level(g)."""
        S = self.system
        prefix = [level(g) for g in range(len(S.prefix))]
        bonds = [pull(g) for g in range(len(S.prefix_maps))]
        tail = None
        if S.tail is not None:
            t = S.tail_start
            tail = (level(t), pull(t))
        return TowerOfGroups(prefix, bonds, tail)

    def morphism(self, source: TowerOfGroups, target: TowerOfGroups, component: Callable[[int], QZMorphism]) -> TowerMorphism:
        S = self.system
        prefix = [component(g) for g in range(len(S.prefix))]
        tail = component(S.tail_start) if S.tail is not None else None
        return TowerMorphism(source, target, prefix, tail)

    def _next(self, g: int) -> int:
        """Index of the cone of level g + 1 (the tail repeats)."""
        return min(g + 1, self.levels - 1)

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # --- Hom(C^n, X) and cone chains -------------------------------------------------------

    def hom_chain_tower(self, n: int, target: str = "G") -> TowerOfGroups:
        """Hom(C^n_g, X) for X the coefficients ("G") or a resolution term ("first", "second")."""
        X = {"G": self.resolution.G, "first": self.resolution.first, "second": self.resolution.second}[target]

        def space(g):
            return self._memo(("homchain", n, target, g), lambda: HomSpace(self.system.level(g).group(n), X))

        def pull(g):
            f = self.bond(g).component(n).matrix
            return space(self._next(g)).map_to(space(g), lambda m: [m[0] @ f])

        return self._memo(("homchain-tower", n, target), lambda: self.tower(lambda g: space(g).group, pull))

    def chain_tower(self, n: int) -> TowerOfGroups:
        return self._memo(
            ("chains", n),
            lambda: self.tower(
                lambda g: self.cones[g].group(n),
                lambda g: chain_pullback(self.bond(g), self.cones[g], self.cones[self._next(g)], n),
            ),
        )

    # --- homology and the UCF terms ---------------------------------------------------------

    def homology_tower(self, n: int) -> TowerOfGroups:
        return self._memo(
            ("homology", n),
            lambda: self.tower(
                lambda g: self.cones[g].homology(n).group,
                lambda g: induced_on_cone_homology(self.bond(g), self.cones[g], self.cones[self._next(g)], n),
            ),
        )

    def hom_cohomology_tower(self, n: int, target: str = "G") -> TowerOfGroups:
        def pull(g):
            u = induced_on_cohomology(self.bond(g), n)
            return hom_pullback(u, self.cones[self._next(g)], self.cones[g], n, target)

        return self._memo(
            ("homH", n, target), lambda: self.tower(lambda g: self.cones[g].hom_space(n, target).group, pull)
        )

    def ext_tower(self, n: int) -> TowerOfGroups:
        """Ext(H^n(C_g), G)."""

        def pull(g):
            src, tgt = ext_quotient(self.cones[self._next(g)], n), ext_quotient(self.cones[g], n)
            u = induced_on_cohomology(self.bond(g), n)
            on_second = hom_pullback(u, self.cones[self._next(g)], self.cones[g], n, "second")
            cols = [
                tgt.projection.matrix.apply(on_second.matrix.apply(src.lift(_unit(k, src.group.ngens))))
                for k in range(src.group.ngens)
            ]
            return QZMorphism(src.group, tgt.group, Matrix.from_columns(cols, tgt.group.ngens))

        return self._memo(("ext", n), lambda: self.tower(lambda g: ext_quotient(self.cones[g], n).group, pull))

    def chi_morphism(self, n: int) -> TowerMorphism:
        """chi-bar: Ext(H^{n+1}) -> Hbar_n, levelwise."""
        return self.morphism(
            self.ext_tower(n + 1),
            self.homology_tower(n),
            lambda g: chi_bar(self.cones[g], n, ext_quotient(self.cones[g], n + 1)),
        )

    def xi_morphism(self, n: int) -> TowerMorphism:
        """xi-bar: Hbar_n -> Hom(H^n, G), levelwise."""
        return self.morphism(self.homology_tower(n), self.hom_cohomology_tower(n), lambda g: xi_bar(self.cones[g], n))

    # --- cycles and the kernel of xi ----------------------------------------------------------

    def _cycle_sub(self, g: int, n: int) -> QZSubquotient:
        cone = self.cones[g]
        return self._memo(("cycsub", n, g), lambda: _sub(cone.homology(n).cycles, cone.group(n)))

    def cycle_tower(self, n: int) -> TowerOfGroups:
        def pull(g):
            f = chain_pullback(self.bond(g), self.cones[g], self.cones[self._next(g)], n)
            return restrict(f, self._cycle_sub(self._next(g), n), self._cycle_sub(g, n))

        return self._memo(("cycles", n), lambda: self.tower(lambda g: self._cycle_sub(g, n).group, pull))

    def kernel_xi(self, g: int, n: int) -> KernelXi:
        return self._memo(("kxi", n, g), lambda: KernelXi(self.cones[g], n))

    def _kernel_sub(self, g: int, n: int) -> QZSubquotient:
        return self._memo(("kxisub", n, g), lambda: _sub(self.kernel_xi(g, n).kernel, self.cones[g].group(n)))

    def kernel_xi_tower(self, n: int) -> TowerOfGroups:
        def pull(g):
            f = chain_pullback(self.bond(g), self.cones[g], self.cones[self._next(g)], n)
            return restrict(f, self._kernel_sub(self._next(g), n), self._kernel_sub(g, n))

        return self._memo(("kxi-tower", n), lambda: self.tower(lambda g: self._kernel_sub(g, n).group, pull))

    def _on_quotients(self, g: int, n: int) -> Matrix:
        kc, kd = self.kernel_xi(g, n), self.kernel_xi(self._next(g), n)
        return kd.quotient.projection.matrix @ self.bond(g).component(n + 1).matrix @ kc.quotient.lifts

    def quotient_hom_tower(self, n: int) -> TowerOfGroups:
        """Hom(C^{n+1}_g / B^{n+1}_g, G')."""

        def pull(g):
            q = self._on_quotients(g, n)
            return self.kernel_xi(self._next(g), n).source.map_to(self.kernel_xi(g, n).source, lambda m: [m[0] @ q])

        return self._memo(("qhom", n), lambda: self.tower(lambda g: self.kernel_xi(g, n).source.group, pull))

    def injective_hom_tower(self, n: int) -> TowerOfGroups:
        """Hom(C^{n+1}_g, G') + Hom(C^{n+1}_g / B^{n+1}_g, G'')."""

        def pull(g):
            q = self._on_quotients(g, n)
            f = self.bond(g).component(n + 1).matrix
            return self.kernel_xi(self._next(g), n).middle.map_to(
                self.kernel_xi(g, n).middle, lambda m: [m[0] @ f, m[1] @ q]
            )

        return self._memo(("ihom", n), lambda: self.tower(lambda g: self.kernel_xi(g, n).middle.group, pull))

    def sigma_morphism(self, n: int) -> TowerMorphism:
        return self.morphism(self.quotient_hom_tower(n), self.injective_hom_tower(n), lambda g: self.kernel_xi(g, n).sigma)

    def omega_morphism(self, n: int) -> TowerMorphism:
        """omega corestricted to Ker xi."""

        def comp(g):
            k = self.kernel_xi(g, n)
            sub = self._kernel_sub(g, n)
            cols = [sub.linear_coords(c) for c in k.omega.matrix.columns()] if k.omega.source.ngens else []
            return QZMorphism(k.omega.source, sub.group, Matrix.from_columns(cols, sub.group.ngens))

        return self.morphism(self.injective_hom_tower(n), self.kernel_xi_tower(n), comp)

    def cycle_to_hom_morphism(self, n: int) -> TowerMorphism:
        """Cycles -> Hbar_n -> Hom(H^n, G): the xi map on cycles."""

        def comp(g):
            H = self.cones[g].homology(n)
            sub = self._cycle_sub(g, n)
            to_h = QZMorphism(
                sub.group,
                H.group,
                Matrix.from_columns(
                    [H.subquotient.linear_coords(sub.lift(_unit(k, sub.group.ngens))) for k in range(sub.group.ngens)],
                    H.group.ngens,
                ),
            )
            return compose_qz(xi_bar(self.cones[g], n), to_h)

        return self.morphism(self.cycle_tower(n), self.hom_cohomology_tower(n), comp)

    def kernel_to_cycle_morphism(self, n: int) -> TowerMorphism:
        def comp(g):
            return restrict(
                QZMorphism.identity(self.cones[g].group(n)), self._kernel_sub(g, n), self._cycle_sub(g, n)
            )

        return self.morphism(self.kernel_xi_tower(n), self.cycle_tower(n), comp)


def hom_tower(system: TowerOfComplexes, n: int, G: Coefficients | InjectiveResolution, target: str = "G") -> TowerOfGroups:
    """The tower Hom(C^n_g, X) with X = G or a term of its injective resolution."""
    return SystemCones(system, G).hom_chain_tower(n, target)


def cohomology_tower_groups(system: TowerOfComplexes, n: int) -> list:
    """H^n of each distinct level, for reports."""
    levels = len(system.prefix) + (0 if system.tail is None else 1)
    return [cohomology(system.level(g), n).H for g in range(levels)]
