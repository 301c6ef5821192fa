"""Naturality of the cone homology and of the UCF maps under cochain maps.

A cochain map f: C -> D induces f#: Cone(D)_n -> Cone(C)_n by precomposition,
(phi1, phi2) -> (phi1 o f^n, phi2 o f^{n+1}).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..complexes import CochainMap, induced_on_cohomology
from ..lattice import FgMorphism, Matrix
from ..qz import QZMorphism, compose_qz
from .cone import ConeComplex, build_cone
from .kernel_xi import KernelXi
from .resolution import Coefficients, InjectiveResolution, resolve
from .ucf import chi, xi_bar


def _unit(k: int, n: int) -> list[int]:
    return [int(i == k) for i in range(n)]


def chain_pullback(f: CochainMap, source_cone: ConeComplex, target_cone: ConeComplex, n: int) -> QZMorphism:
    """f# in degree n, from the cone of f.target to the cone of f.source."""
    a, b = f.component(n).matrix, f.component(n + 1).matrix
    return target_cone.chain_sum(n).map_to(source_cone.chain_sum(n), lambda m: [m[0] @ a, m[1] @ b])


def induced_on_cone_homology(f: CochainMap, source_cone: ConeComplex, target_cone: ConeComplex, n: int) -> QZMorphism:
    """The map Hbar_n(f.target) -> Hbar_n(f.source)."""
    pull = chain_pullback(f, source_cone, target_cone, n)
    src, tgt = target_cone.homology(n), source_cone.homology(n)
    cols = [
        tgt.subquotient.linear_coords(pull.matrix.apply(src.representative(_unit(k, src.group.ngens))))
        for k in range(src.group.ngens)
    ]
    return QZMorphism(src.group, tgt.group, Matrix.from_columns(cols, tgt.group.ngens))


def hom_pullback(u: FgMorphism, cone_from: ConeComplex, cone_to: ConeComplex, n: int, target: str) -> QZMorphism:
    """Hom(H^n(D), X) -> Hom(H^n(C), X) for u: H^n(C) -> H^n(D)."""
    return cone_from.hom_space(n, target).map_to(cone_to.hom_space(n, target), lambda m: [m[0] @ u.matrix])


@dataclass
class NaturalityReport:
    degree: int
    sigma_square: bool
    omega_square: bool
    xi_square: bool
    chi_square: bool

    @property
    def ok(self) -> bool:
        return self.sigma_square and self.omega_square and self.xi_square and self.chi_square


def naturality_check(f: CochainMap, G: Coefficients | InjectiveResolution, n: int) -> NaturalityReport:
    res = G if isinstance(G, InjectiveResolution) else resolve(G)
    cone_c, cone_d = build_cone(f.source, res), build_cone(f.target, res)

    # the two short exact sequences onto Ker xi and the maps between them
    kc, kd = KernelXi(cone_c, n), KernelXi(cone_d, n)
    lifts_c = kc.quotient.lifts
    on_quotients = kd.quotient.projection.matrix @ f.component(n + 1).matrix @ lifts_c
    f_next = f.component(n + 1).matrix
    pull_source = kd.source.map_to(kc.source, lambda m: [m[0] @ on_quotients])
    pull_middle = kd.middle.map_to(kc.middle, lambda m: [m[0] @ f_next, m[1] @ on_quotients])
    pull_chains = chain_pullback(f, cone_c, cone_d, n)
    sigma_square = compose_qz(kc.sigma, pull_source) == compose_qz(pull_middle, kd.sigma)
    omega_square = compose_qz(kc.omega, pull_middle) == compose_qz(pull_chains, kd.omega)

    # the UCF maps
    fbar = induced_on_cone_homology(f, cone_c, cone_d, n)
    on_h = induced_on_cohomology(f, n)
    on_h_next = induced_on_cohomology(f, n + 1)
    xi_square = compose_qz(xi_bar(cone_c, n), fbar) == compose_qz(
        hom_pullback(on_h, cone_d, cone_c, n, "G"), xi_bar(cone_d, n)
    )
    chi_square = compose_qz(fbar, chi(cone_d, n)) == compose_qz(
        chi(cone_c, n), hom_pullback(on_h_next, cone_d, cone_c, n + 1, "second")
    )
    return NaturalityReport(n, sigma_square, omega_square, xi_square, chi_square)
