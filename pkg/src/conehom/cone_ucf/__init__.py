"""Cone homology of a cochain complex with coefficients, and its universal coefficient sequence."""
from .classical import (
    Comparison,
    ComparisonReport,
    HomComplex,
    alpha_star,
    classical_hom_homology,
    classical_hom_homology_lattice,
    connecting_E,
    verify_comparison,
)
from .cone import ConeComplex, build_cone, cone_homology
from .kernel_xi import KernelXi, KernelXiReport, omega, sigma, verify_ker_xi, verify_ker_xi_cone
from .naturality import NaturalityReport, chain_pullback, hom_pullback, induced_on_cone_homology, naturality_check
from .resolution import Coefficients, InjectiveResolution, as_qz, divisible_resolution, resolve, standard_resolution
from .ucf import (
    UcfReport,
    chi,
    chi_bar,
    chi_class,
    chi_preimage,
    ext_quotient,
    reduction_on_hom,
    verify_ucf,
    verify_ucf_all,
    verify_ucf_cone,
    xi_bar,
    xi_of_cycle,
)

__all__ = [
    "Coefficients",
    "Comparison",
    "ComparisonReport",
    "ConeComplex",
    "HomComplex",
    "InjectiveResolution",
    "KernelXi",
    "KernelXiReport",
    "NaturalityReport",
    "UcfReport",
    "alpha_star",
    "as_qz",
    "build_cone",
    "chain_pullback",
    "chi",
    "chi_bar",
    "chi_class",
    "chi_preimage",
    "classical_hom_homology",
    "classical_hom_homology_lattice",
    "cone_homology",
    "connecting_E",
    "divisible_resolution",
    "ext_quotient",
    "hom_pullback",
    "induced_on_cone_homology",
    "naturality_check",
    "omega",
    "reduction_on_hom",
    "resolve",
    "sigma",
    "standard_resolution",
    "verify_comparison",
    "verify_ker_xi",
    "verify_ker_xi_cone",
    "verify_ucf",
    "verify_ucf_all",
    "verify_ucf_cone",
    "xi_bar",
    "xi_of_cycle",
]
