"""Comparison with the homology of the chain complex Hom(C*, G).

For degreewise free C* the map phi -> (alpha o phi, 0) into the cone induces
an isomorphism on homology.  The connecting map of
0 -> Hom(C*, G) -> Hom(C*, G') -> Hom(C*, G'') -> 0 gives chi_0, and the
triangle with chi and xi is checked on generators.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..complexes import CochainComplex, cohomology
from ..errors import NotFree
from ..lattice import FgAbGroup, FgMorphism, Matrix, hom_group
from ..qz import HomologyData, HomSpace, QZGroup, QZMorphism, homology_qz, is_isomorphism_qz, precompose
from .cone import ConeComplex, build_cone
from .resolution import Coefficients, as_qz
from .ucf import chi, xi_bar


def _unit(k: int, n: int) -> list[int]:
    return [int(i == k) for i in range(n)]


class HomComplex:
    """Hom(C*, G) as a chain complex: degree n is Hom(C^n, G), the boundary precomposes with delta^{n-1}."""

    def __init__(self, C: CochainComplex, G):
        self.complex = C
        self.G = G
        self._spaces: dict[int, HomSpace] = {}
        self._boundaries: dict[int, QZMorphism] = {}
        self._homology: dict[int, HomologyData] = {}

    def space(self, n: int) -> HomSpace:
        s = self._spaces.get(n)
        if s is None:
            s = HomSpace(self.complex.group(n), self.G)
            self._spaces[n] = s
        return s

    def boundary(self, n: int) -> QZMorphism:
        d = self._boundaries.get(n)
        if d is None:
            d = precompose(self.space(n - 1), self.space(n), self.complex.delta(n - 1))
            self._boundaries[n] = d
        return d

    def homology(self, n: int) -> HomologyData:
        h = self._homology.get(n)
        if h is None:
            h = homology_qz(self.boundary(n + 1), self.boundary(n))
            self._homology[n] = h
        return h


def classical_hom_homology(C: CochainComplex, G: Coefficients, n: int) -> QZGroup:
    """H_n(Hom(C*, G))."""
    return HomComplex(C, as_qz(G)).homology(n).group


def classical_hom_homology_lattice(C: CochainComplex, G: FgAbGroup, n: int) -> FgAbGroup:
    """The same group through lattice-core: Hom(C*, G) reindexed as a cochain complex."""
    degrees = range(C.lo, C.hi + 1)
    homs = {k: hom_group(C.group(k), G) for k in degrees}
    groups, deltas = [], []
    # cochain degree -k holds Hom(C^k, G); its differential precomposes with delta^{k-1}
    order = list(reversed(list(degrees)))
    for k in order:
        groups.append(homs[k].group)
    for k in order[:-1]:
        src, tgt = homs[k], homs[k - 1]
        cols = [tgt.coords(_precompose_fg(f, C.delta(k - 1))) for f in src.basis]
        deltas.append(FgMorphism(src.group, tgt.group, Matrix.from_columns(cols, tgt.group.ngens)))
    D = CochainComplex(-C.hi, groups, deltas)
    return cohomology(D, -n).H


def _precompose_fg(f: FgMorphism, u: FgMorphism) -> FgMorphism:
    return FgMorphism(u.source, f.target, f.matrix @ u.matrix)


@dataclass
class ComparisonReport:
    degree: int
    classical_group: QZGroup
    cone_group: QZGroup
    alpha_star: Matrix
    alpha_star_iso: bool
    routes_agree: bool
    chi_triangle: bool
    xi_triangle: bool
    connecting_well_defined: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all((self.alpha_star_iso, self.routes_agree, self.chi_triangle, self.xi_triangle, self.connecting_well_defined))


class Comparison:
    """The maps between H_n(Hom(C*, G)) and the cone homology."""

    def __init__(self, C: CochainComplex, G: Coefficients, require_free: bool = True):
        if require_free and not C.is_free():
            raise NotFree("comparison requires a degreewise free complex")
        self.cone: ConeComplex = build_cone(C, G)
        self.hom = HomComplex(C, self.cone.resolution.G)

    def alpha_star(self, n: int) -> QZMorphism:
        """H_n(Hom(C*, G)) -> Hbar_n, phi -> [(alpha o phi, 0)]."""
        res, cone = self.cone.resolution, self.cone
        src = self.hom.homology(n)
        tgt = cone.homology(n)
        cols = []
        for k in range(src.group.ngens):
            phi = self.hom.space(n).entries(src.representative(_unit(k, src.group.ngens)))[0]
            zero = Matrix.zeros(res.second.ngens, cone.complex.group(n + 1).ngens)
            chain = cone.chain_sum(n).linear_coords([res.embedding.matrix @ phi, zero])
            cols.append(tgt.subquotient.linear_coords(chain))
        return QZMorphism(src.group, tgt.group, Matrix.from_columns(cols, tgt.group.ngens))

    def connecting(self, n: int, second_entries: Matrix, shift: Optional[Matrix] = None) -> tuple:
        """E applied to a cycle of Hom(C*, G'') in degree n+1, given by entries.

        The cycle is lifted to Hom(C^{n+1}, G') through the reduction's section
        (plus `shift`, a map C^{n+1} -> G, embedded, to vary the lift), its
        boundary pulled back to Hom(C^n, G), and the class returned.
        """
        res, C = self.cone.resolution, self.cone.complex
        lift = res.reduction_section @ second_entries
        if shift is not None:
            lift = lift + res.embedding.matrix @ shift
        pulled = res.pull_back(lift @ C.delta(n).matrix)
        coords = self.hom.space(n).linear_coords([pulled])
        return self.hom.homology(n).class_of(coords)

    def chi_zero(self, n: int) -> QZMorphism:
        """Hom(H^{n+1}, G'') -> H_n(Hom(C*, G)): extend over C^{n+1}, then apply E."""
        space = self.cone.hom_space(n + 1, "second")
        data = cohomology(self.cone.complex, n + 1)
        tgt = self.hom.homology(n).group
        cols = []
        for k, kind in enumerate(space.group.kinds):
            if kind < 0:
                cols.append([0] * tgt.ngens)
                continue
            entries = space.entries(_unit(k, space.group.ngens))[0]
            ext = self.cone.cocycle_extender(n + 1).extend(entries @ data.p.matrix)
            cols.append(self.connecting(n, ext))
        return QZMorphism(space.group, tgt, Matrix.from_columns(cols, tgt.ngens))

    def xi_tilde(self, n: int) -> QZMorphism:
        """H_n(Hom(C*, G)) -> Hom(H^n, G): restrict a cycle to the chosen cocycle representatives."""
        src = self.hom.homology(n)
        data = cohomology(self.cone.complex, n)
        space = self.cone.hom_space(n, "G")
        cols = []
        for k in range(src.group.ngens):
            phi = self.hom.space(n).entries(src.representative(_unit(k, src.group.ngens)))[0]
            cols.append(space.linear_coords([phi @ data.j.matrix @ data.reps]))
        return QZMorphism(src.group, space.group, Matrix.from_columns(cols, space.group.ngens))

    def connecting_is_well_defined(self, n: int, rng: random.Random) -> bool:
        """Different lifts of the same cycle give the same class."""
        space = self.cone.hom_space(n + 1, "second")
        data = cohomology(self.cone.complex, n + 1)
        G = self.cone.resolution.G
        C = self.cone.complex
        for k in range(space.group.ngens):
            entries = space.entries(_unit(k, space.group.ngens))[0]
            ext = self.cone.cocycle_extender(n + 1).extend(entries @ data.p.matrix)
            base = self.connecting(n, ext)
            shift = Matrix(
                [[rng.randint(-3, 3) for _ in range(C.group(n + 1).ngens)] for _ in range(G.ngens)],
                C.group(n + 1).ngens,
            )
            if self.connecting(n, ext, shift) != base:
                return False
        return True

    def report(self, n: int, seed: int = 0) -> ComparisonReport:
        a = self.alpha_star(n)
        G = self.cone.resolution.G
        routes = True
        if G.is_finitely_generated:
            routes = a.source == QZGroup.from_fg(classical_hom_homology_lattice(self.cone.complex, G.to_fg(), n))
        chi0 = self.chi_zero(n)
        chi_tri = QZMorphism(chi0.source, a.target, a.matrix @ chi0.matrix) == chi(self.cone, n)
        xi = xi_bar(self.cone, n)
        xi_tri = QZMorphism(a.source, xi.target, xi.matrix @ a.matrix) == self.xi_tilde(n)
        return ComparisonReport(
            degree=n,
            classical_group=a.source,
            cone_group=a.target,
            alpha_star=a.matrix,
            alpha_star_iso=is_isomorphism_qz(a),
            routes_agree=routes,
            chi_triangle=chi_tri,
            xi_triangle=xi_tri,
            connecting_well_defined=self.connecting_is_well_defined(n, random.Random(seed)),
        )


def alpha_star(C: CochainComplex, G: Coefficients, n: int) -> QZMorphism:
    return Comparison(C, G, require_free=False).alpha_star(n)


def connecting_E(C: CochainComplex, G: Coefficients, n: int) -> QZMorphism:
    """chi_0 in degree n; requires C* degreewise free."""
    return Comparison(C, G).chi_zero(n)


def verify_comparison(C: CochainComplex, G: Coefficients, seed: int = 0) -> list[ComparisonReport]:
    comp = Comparison(C, G)
    return [comp.report(n, seed) for n in comp.cone.degrees]
