"""The kernel of xi on cone cycles as a quotient of free-ish Hom groups.

With Q = C^{n+1}/B^{n+1} and q: C^{n+1} -> Q the projection,

    0 -> Hom(Q, G') --sigma--> Hom(C^{n+1}, G') + Hom(Q, G'') --omega--> Ker xi -> 0

where sigma(phi) = (phi o q, beta o phi) and
omega(psi1, psi2) = (psi1 o delta, beta o psi1 - psi2 o q).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..complexes import CochainComplex, cohomology
from ..errors import ConehomError
from ..qz import HomSpace, HomSum, QZMorphism, image_span, is_injective_qz, kernel_qz, preimage_span
from .cone import ConeComplex, build_cone
from .resolution import Coefficients


class KernelXi:
    """The groups and maps of the sequence above in degree n."""

    def __init__(self, cone: ConeComplex, n: int):
        self.cone, self.n = cone, n
        C, res = cone.complex, cone.resolution
        self.lower = cohomology(C, n)
        self.upper = cohomology(C, n + 1)
        quotient = self.lower.quotient  # C^{n+1} / B^{n+1}
        self.quotient = quotient
        self.source = HomSpace(quotient.group, res.first)
        self.middle = HomSum([(C.group(n + 1), res.first), (quotient.group, res.second)])
        self.chains = cone.chain_sum(n)
        beta, q, delta = res.reduction.matrix, quotient.projection.matrix, C.delta(n).matrix
        self.sigma = self.source.map_to(self.middle, lambda m: [m[0] @ q, beta @ m[0]])
        self.omega = self.middle.map_to(self.chains, lambda m: [m[0] @ delta, beta @ m[0] - m[1] @ q])

        # Ker xi: cycles whose first component vanishes on Z^n
        j = self.lower.j.matrix
        checks = HomSum([(C.group(n - 1), res.first), (C.group(n), res.second), (self.lower.Z, res.first)])
        self.detector = self.chains.map_to(checks, lambda m: list(cone.boundary_parts(n, m[0], m[1])) + [m[0] @ j])
        self.kernel = preimage_span(self.detector.matrix, self.detector.source, self.detector.target)

    def omega_preimage(self, element) -> tuple:
        """(psi1, psi2) with omega(psi1, psi2) = element, for element in Ker xi."""
        res = self.cone.resolution
        phi1, phi2 = self.cone.parts(self.n, element)
        psi1 = self.cone.coboundary_extender(self.n + 1).extend(phi1 @ self.upper.b_sections)
        psi2 = (res.reduction.matrix @ psi1 - phi2) @ self.quotient.lifts
        return self.middle.coords([psi1, psi2])


@dataclass
class KernelXiReport:
    degree: int
    kernel_rank: int
    sigma_injective: bool
    omega_onto_kernel: bool
    exact_middle: bool
    constructive_preimages: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sigma_injective and self.omega_onto_kernel and self.exact_middle and self.constructive_preimages


def _sample_elements(group, k: int):
    kind = group.kinds[k]
    scales = (mpq(1, 2), mpq(1, 3)) if kind < 0 else (1,)
    for t in scales:
        yield [t if i == k else 0 for i in range(group.ngens)]


def verify_ker_xi_cone(cone: ConeComplex, n: int) -> KernelXiReport:
    kx = KernelXi(cone, n)
    notes = []
    sigma_inj = is_injective_qz(kx.sigma)
    omega_image = image_span(kx.omega.matrix, kx.omega.source, kx.omega.target)
    onto = omega_image == kx.kernel
    exact = image_span(kx.sigma.matrix, kx.sigma.source, kx.sigma.target) == preimage_span(
        kx.omega.matrix, kx.omega.source, kx.omega.target
    )

    constructive = True
    kernel_group = kernel_qz(kx.detector)
    G = kx.chains.group
    for k in range(kernel_group.group.ngens):
        for x in _sample_elements(kernel_group.group, k):
            element = G.normalize(kernel_group.inclusion(x))
            try:
                pre = kx.omega_preimage(element)
            except (ConehomError, ValueError) as err:
                notes.append(f"generator {k}: {err}")
                constructive = False
                continue
            if G.normalize(kx.omega(pre)) != element:
                notes.append(f"generator {k}: omega of the constructed preimage differs")
                constructive = False
    return KernelXiReport(
        degree=n,
        kernel_rank=kernel_group.group.ngens,
        sigma_injective=sigma_inj,
        omega_onto_kernel=onto,
        exact_middle=exact,
        constructive_preimages=constructive,
        notes=notes,
    )


def verify_ker_xi(C: CochainComplex, G: Coefficients, n: int) -> KernelXiReport:
    return verify_ker_xi_cone(build_cone(C, G), n)


def sigma(C: CochainComplex, G: Coefficients, n: int) -> QZMorphism:
    return KernelXi(build_cone(C, G), n).sigma


def omega(C: CochainComplex, G: Coefficients, n: int) -> QZMorphism:
    return KernelXi(build_cone(C, G), n).omega
