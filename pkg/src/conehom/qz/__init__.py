"""Groups built from Q, Q/Z and finitely generated pieces, with exact kernels, images and homology."""
from .groups import QKIND, QZKIND, DiagonalCanonicalizer, QZGroup, QZMorphism, add_qz, compose_qz, direct_sum_qz
from .hom import Extender, HomSpace, HomSum, extend_to_divisible, hom_into, induced, postcompose, precompose
from .ops import (
    HomologyData,
    QuotientData,
    SubgroupData,
    cokernel_qz,
    corestriction,
    homology_qz,
    image_qz,
    is_injective_qz,
    is_isomorphism_qz,
    is_surjective_qz,
    kernel_qz,
    quotient_qz,
    quotient_span,
    solve_preimage_qz,
)
from .spans import MixedSpan, QZSubquotient, image_span, preimage_span, solve_mixed

__all__ = [
    "QKIND",
    "QZKIND",
    "DiagonalCanonicalizer",
    "Extender",
    "HomSpace",
    "HomSum",
    "HomologyData",
    "MixedSpan",
    "QZGroup",
    "QZMorphism",
    "QZSubquotient",
    "QuotientData",
    "SubgroupData",
    "add_qz",
    "cokernel_qz",
    "compose_qz",
    "corestriction",
    "direct_sum_qz",
    "extend_to_divisible",
    "hom_into",
    "homology_qz",
    "image_qz",
    "image_span",
    "induced",
    "is_injective_qz",
    "is_isomorphism_qz",
    "is_surjective_qz",
    "kernel_qz",
    "postcompose",
    "precompose",
    "preimage_span",
    "quotient_qz",
    "quotient_span",
    "solve_mixed",
    "solve_preimage_qz",
]
