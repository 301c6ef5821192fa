"""Inverse limits and lim^1 of towers, and the limit statements for direct systems of complexes."""
from .systems import SystemCones, cohomology_tower_groups, hom_tower, restrict
from .towers import (
    Lim1Certificate,
    LimitData,
    Pullback,
    TowerMorphism,
    TowerOfGroups,
    combine_certificates,
    free_image_indices,
    lim1_tower,
    lim_map,
    lim_tower,
    stabilization_bound,
    truncated_pullback,
    unit_core,
)
from .verify import (
    CertificateReport,
    Cor5Report,
    Lemma2Report,
    MilnorReport,
    Theorem3Report,
    default_truncation,
    exact_at,
    verify_cor2,
    verify_cor3,
    verify_cor5,
    verify_lemma2,
    verify_lemma4,
    verify_main_sequence,
    verify_theorem3,
)

__all__ = [
    "CertificateReport",
    "Cor5Report",
    "Lemma2Report",
    "Lim1Certificate",
    "LimitData",
    "MilnorReport",
    "Pullback",
    "SystemCones",
    "Theorem3Report",
    "TowerMorphism",
    "TowerOfGroups",
    "cohomology_tower_groups",
    "combine_certificates",
    "default_truncation",
    "exact_at",
    "free_image_indices",
    "hom_tower",
    "lim1_tower",
    "lim_map",
    "lim_tower",
    "restrict",
    "stabilization_bound",
    "truncated_pullback",
    "unit_core",
    "verify_cor2",
    "verify_cor3",
    "verify_cor5",
    "verify_lemma2",
    "verify_lemma4",
    "verify_main_sequence",
    "verify_theorem3",
]
