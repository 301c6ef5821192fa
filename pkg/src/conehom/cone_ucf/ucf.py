"""The maps around the cone homology and the exactness check

    0 -> Ext(H^{n+1}, G) --chi--> Hbar_n --xi--> Hom(H^n, G) -> 0.

Ext(H^{n+1}, G) is realized as the cokernel of Hom(H^{n+1}, G') -> Hom(H^{n+1}, G'').
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from gmpy2 import mpq

from ..complexes import CochainComplex, cohomology
from ..errors import LiftFailure, NotACycle
from ..lattice import FgAbGroup, Matrix, ext_group, hom_group
from ..qz import (
    HomSpace,
    QuotientData,
    QZGroup,
    QZMorphism,
    compose_qz,
    image_span,
    is_injective_qz,
    is_surjective_qz,
    kernel_qz,
    quotient_qz,
)
from .cone import ConeComplex, build_cone
from .resolution import Coefficients


def _unit(k: int, n: int) -> list[int]:
    return [int(i == k) for i in range(n)]


# --- xi ------------------------------------------------------------------------------


def cycle_restriction(cone: ConeComplex, n: int, can: Sequence, check: bool = True) -> Matrix:
    """For a cycle (phi1, phi2), the G-valued map on Z^n whose embedding is phi1 o j.

    Verifies that the lift exists and that it vanishes on B^n.
    """
    if check and not cone.is_cycle(n, can):
        raise NotACycle(f"chain in degree {n} has nonzero boundary")
    data = cohomology(cone.complex, n)
    phi1, _ = cone.parts(n, can)
    phi = cone.resolution.pull_back(phi1 @ data.j.matrix)
    on_boundaries = phi @ data.i.matrix
    G = cone.resolution.G
    if any(not G.is_zero_element(on_boundaries.col(k)) for k in range(on_boundaries.ncols)):
        raise LiftFailure("lifted map does not vanish on coboundaries")
    return phi


def xi_of_cycle(cone: ConeComplex, n: int, can: Sequence, check: bool = True) -> Matrix:
    """Entry matrix (G coordinates x H^n generators) of the induced map H^n -> G."""
    phi = cycle_restriction(cone, n, can, check)
    return phi @ cohomology(cone.complex, n).reps


def xi_bar(cone: ConeComplex, n: int) -> QZMorphism:
    """Hbar_n -> Hom(H^n, G), as a morphism of canonical groups."""
    H = cone.homology(n)
    space = cone.hom_space(n, "G")
    cols = []
    for k in range(H.group.ngens):
        rep = H.representative(_unit(k, H.group.ngens))
        cols.append(space.linear_coords([xi_of_cycle(cone, n, rep)]))
    return QZMorphism(H.group, space.group, Matrix.from_columns(cols, space.group.ngens))


# --- chi -----------------------------------------------------------------------------


def chi_chain(cone: ConeComplex, n: int, hom_entries: Matrix, variation: Optional[Matrix] = None) -> tuple:
    """The cone chain (0, -phi2) where phi2 extends hom_entries o p over C^{n+1}.

    `hom_entries` is a map H^{n+1} -> G''.  `variation`, a map from
    C^{n+1}/Z^{n+1} to G'', is added to the extension to produce a different one.
    """
    data = cohomology(cone.complex, n + 1)
    phi2 = cone.cocycle_extender(n + 1).extend(hom_entries @ data.p.matrix)
    if variation is not None:
        phi2 = phi2 + variation @ cone.cocycle_quotient(n + 1).projection.matrix
    zero = Matrix.zeros(cone.resolution.first.ngens, cone.complex.group(n).ngens)
    return cone.chain(n, zero, -phi2)


def chi_class(cone: ConeComplex, n: int, can: Sequence) -> tuple:
    """chi of the element of Hom(H^{n+1}, G'') with canonical coordinates `can`."""
    space = cone.hom_space(n + 1, "second")
    return cone.homology(n).class_of(chi_chain(cone, n, space.entries(can)[0]))


def chi(cone: ConeComplex, n: int) -> QZMorphism:
    """Hom(H^{n+1}, G'') -> Hbar_n.

    Divisible summands of the source go to zero: they lie in the image of
    Hom(H^{n+1}, G') (checked by ``chi_kills_image``).
    """
    space = cone.hom_space(n + 1, "second")
    H = cone.homology(n)
    cols = []
    for k, kind in enumerate(space.group.kinds):
        if kind < 0:
            cols.append([0] * H.group.ngens)
        else:
            cols.append(chi_class(cone, n, _unit(k, space.group.ngens)))
    return QZMorphism(space.group, H.group, Matrix.from_columns(cols, H.group.ngens))


def reduction_on_hom(cone: ConeComplex, n: int) -> QZMorphism:
    """Hom(H^n, G') -> Hom(H^n, G'') given by postcomposition with the reduction."""
    beta = cone.resolution.reduction.matrix
    return cone.hom_space(n, "first").map_to(cone.hom_space(n, "second"), lambda m: [beta @ m[0]])


def ext_quotient(cone: ConeComplex, n: int) -> QuotientData:
    """Ext(H^n, G) as the cokernel of ``reduction_on_hom``."""
    return quotient_qz(reduction_on_hom(cone, n))


def chi_kills_image(cone: ConeComplex, n: int) -> bool:
    """chi vanishes on the image of Hom(H^{n+1}, G'), tested on generators and their fractions."""
    red = reduction_on_hom(cone, n + 1)
    H = cone.homology(n).group
    for k, kind in enumerate(red.source.kinds):
        for t in (1, mpq(1, 2), mpq(1, 3)) if kind < 0 else (1,):
            x = [t if i == k else 0 for i in range(red.source.ngens)]
            if not H.is_zero_element(chi_class(cone, n, red(x))):
                return False
    return True


def chi_bar(cone: ConeComplex, n: int, ext: Optional[QuotientData] = None) -> QZMorphism:
    """Ext(H^{n+1}, G) -> Hbar_n through chosen lifts of the Ext generators."""
    ext = ext if ext is not None else ext_quotient(cone, n + 1)
    H = cone.homology(n)
    cols = [chi_class(cone, n, ext.lift(_unit(k, ext.group.ngens))) for k in range(ext.group.ngens)]
    return QZMorphism(ext.group, H.group, Matrix.from_columns(cols, H.group.ngens))


def chi_is_well_defined(cone: ConeComplex, n: int, rng: random.Random, trials: int = 2) -> bool:
    """Two extensions of the same map give the same class."""
    space = cone.hom_space(n + 1, "second")
    quotient = cone.cocycle_quotient(n + 1)
    vary = HomSpace(quotient.group, cone.resolution.second)
    H = cone.homology(n)
    for k in range(space.group.ngens):
        entries = space.entries(_unit(k, space.group.ngens))[0]
        base = H.class_of(chi_chain(cone, n, entries))
        for _ in range(trials):
            theta = vary.entries([rng.randint(-3, 3) for _ in range(vary.group.ngens)])[0]
            if H.class_of(chi_chain(cone, n, entries, theta)) != base:
                return False
    return True


# --- the kernel of xi lies in the image of chi ------------------------------------------


def chi_preimage(cone: ConeComplex, n: int, h: Sequence) -> Matrix:
    """For h in Hbar_n with xi(h) = 0, a map H^{n+1} -> G'' whose chi is h.

    The cycle (phi1, phi2) representing h has phi1 vanishing on Z^n, so phi1
    factors through B^{n+1}; extending that factor to psi1 on C^{n+1} gives
    h = [(0, -(beta psi1 - phi2))] and beta psi1 - phi2 descends to H^{n+1}.
    """
    C = cone.complex
    H = cone.homology(n)
    rep = H.representative(h)
    phi1, phi2 = cone.parts(n, rep)
    restr = cycle_restriction(cone, n, rep)
    if any(not cone.resolution.G.is_zero_element(restr.col(k)) for k in range(restr.ncols)):
        raise LiftFailure("class is not in the kernel of xi")
    upper = cohomology(C, n + 1)
    on_coboundaries = phi1 @ upper.b_sections
    psi1 = cone.coboundary_extender(n + 1).extend(on_coboundaries)
    first = cone.resolution.first
    # psi1 o delta must reproduce phi1
    check = psi1 @ C.delta(n).matrix - phi1
    if any(not first.is_zero_element(check.col(k)) for k in range(check.ncols)):
        raise LiftFailure("extension through the coboundaries does not reproduce phi1")
    psi = cone.resolution.reduction.matrix @ psi1 - phi2
    return psi @ upper.j.matrix @ upper.reps


# --- the report ---------------------------------------------------------------------------


@dataclass
class UcfReport:
    degree: int
    ext_group: QZGroup
    homology_group: QZGroup
    hom_group: QZGroup
    chi_bar: Matrix
    xi_bar: Matrix
    chi_injective: bool
    xi_surjective: bool
    exact_middle: bool
    ext_matches_lattice: bool
    hom_matches_lattice: bool
    chi_well_defined: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (
                self.chi_injective,
                self.xi_surjective,
                self.exact_middle,
                self.ext_matches_lattice,
                self.hom_matches_lattice,
                self.chi_well_defined,
            )
        )


def _matches(qz: QZGroup, fg: Optional[FgAbGroup]) -> bool:
    if fg is None:
        return qz.is_trivial
    return qz.is_finitely_generated and qz.to_fg() == fg


def _expected_hom(H: FgAbGroup, G: QZGroup, fg_part: FgAbGroup) -> QZGroup:
    """Hom(H, G) from Hom(H, fg part) and Hom(H, Q) = Q^rank, Hom(H, Q/Z) = (Q/Z)^rank + torsion(H)."""
    torsion = list(fg_part.torsion) + list(H.torsion) * G.qz_rank
    fg = FgAbGroup.from_orders(fg_part.free_rank, torsion)
    return QZGroup(G.q_rank * H.free_rank, G.qz_rank * H.free_rank, fg.torsion, fg.free_rank)


def verify_ucf_cone(cone: ConeComplex, n: int, seed: int = 0) -> UcfReport:
    C = cone.complex
    res = cone.resolution
    H_n = cohomology(C, n).H
    H_next = cohomology(C, n + 1).H
    notes = []

    ext = ext_quotient(cone, n + 1)
    xi = xi_bar(cone, n)
    chib = chi_bar(cone, n, ext)

    # independent route: lattice-core on the finitely generated summand of G,
    # closed forms on the divisible summands (Ext into them vanishes)
    G_fg = FgAbGroup(res.G.free_rank, res.G.torsion)
    ext_ok = _matches(ext.group, ext_group(H_next, G_fg))
    hom_ok = xi.target == _expected_hom(H_n, res.G, hom_group(H_n, G_fg).group)

    chi_inj = is_injective_qz(chib)
    xi_surj = is_surjective_qz(xi)

    exact = compose_qz(xi, chib).is_zero()
    if exact:
        ker = kernel_qz(xi)
        im = image_span(chib.matrix, chib.source, chib.target)
        chi_map = chi(cone, n)
        for k in range(ker.group.ngens):
            h = ker.inclusion.matrix.col(k)
            try:
                pre = chi_preimage(cone, n, h)
            except LiftFailure as err:
                notes.append(f"kernel generator {k}: {err}")
                exact = False
                break
            coords = cone.hom_space(n + 1, "second").coords([pre])
            if cone.homology(n).group.normalize(chi_map(coords)) != cone.homology(n).group.normalize(h):
                notes.append(f"kernel generator {k}: constructed preimage maps elsewhere")
                exact = False
                break
            if not im.contains(h):
                notes.append(f"kernel generator {k}: not in the image of chi on Ext")
                exact = False
                break
        exact = exact and chi_kills_image(cone, n)
    else:
        notes.append("xi o chi is not zero")

    well = chi_is_well_defined(cone, n, random.Random(seed))
    return UcfReport(
        degree=n,
        ext_group=ext.group,
        homology_group=cone.homology(n).group,
        hom_group=xi.target,
        chi_bar=chib.matrix,
        xi_bar=xi.matrix,
        chi_injective=chi_inj,
        xi_surjective=xi_surj,
        exact_middle=exact,
        ext_matches_lattice=ext_ok,
        hom_matches_lattice=hom_ok,
        chi_well_defined=well,
        notes=notes,
    )


def verify_ucf(C: CochainComplex, G: Coefficients, n: int, seed: int = 0) -> UcfReport:
    return verify_ucf_cone(build_cone(C, G), n, seed)


def verify_ucf_all(C: CochainComplex, G: Coefficients, seed: int = 0) -> list[UcfReport]:
    cone = build_cone(C, G)
    return [verify_ucf_cone(cone, n, seed) for n in cone.degrees]
