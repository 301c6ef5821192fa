"""Integer matrices, Smith normal form and finitely generated abelian groups."""
from .groups import (
    CokernelData,
    DirectSum,
    FgAbGroup,
    FgMorphism,
    HomGroup,
    ImageData,
    KernelData,
    Presentation,
    Subquotient,
    cokernel,
    compose,
    diagonal_presentation,
    direct_sum,
    ext_group,
    group_from_presentation,
    hom_group,
    image,
    is_isomorphic,
    kernel,
    solve_preimage,
)
from .matrix import Matrix, to_rational
from .smith import SmithDecomposition, smith_normal_form

__all__ = [
    "CokernelData",
    "DirectSum",
    "FgAbGroup",
    "FgMorphism",
    "HomGroup",
    "ImageData",
    "KernelData",
    "Matrix",
    "Presentation",
    "SmithDecomposition",
    "Subquotient",
    "cokernel",
    "compose",
    "diagonal_presentation",
    "direct_sum",
    "ext_group",
    "group_from_presentation",
    "hom_group",
    "image",
    "is_isomorphic",
    "kernel",
    "smith_normal_form",
    "solve_preimage",
    "to_rational",
]
