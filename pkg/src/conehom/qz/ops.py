"""Kernels, images, quotients and homology of maps between Q/Z-type groups."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..lattice.matrix import Matrix
from .groups import QZGroup, QZMorphism
from .spans import MixedSpan, QZSubquotient, image_span, preimage_span, solve_mixed


@dataclass(frozen=True)
class SubgroupData:
    """A canonical group with its inclusion and the subquotient that built it."""

    group: QZGroup
    inclusion: QZMorphism
    span: MixedSpan
    subquotient: QZSubquotient


@dataclass(frozen=True)
class QuotientData:
    group: QZGroup
    projection: QZMorphism
    subquotient: QZSubquotient

    def lift(self, can: Sequence) -> list:
        return self.subquotient.lift(can)


def _subgroup(D: MixedSpan, ambient: QZGroup) -> SubgroupData:
    sq = QZSubquotient(D, MixedSpan.relations(ambient))
    inc = QZMorphism(sq.group, ambient, sq.lift_matrix())
    return SubgroupData(sq.group, inc, D, sq)


def kernel_qz(f: QZMorphism) -> SubgroupData:
    return _subgroup(preimage_span(f.matrix, f.source, f.target), f.source)


def image_qz(f: QZMorphism) -> SubgroupData:
    return _subgroup(image_span(f.matrix, f.source, f.target), f.target)


def corestriction(f: QZMorphism, im: SubgroupData) -> QZMorphism:
    """f viewed as a map onto (or into) the subgroup `im`."""
    cols = [im.subquotient.linear_coords(c) for c in f.matrix.columns()] if f.source.ngens else []
    return QZMorphism(f.source, im.group, Matrix.from_columns(cols, im.group.ngens))


def quotient_span(ambient: QZGroup, sub: MixedSpan) -> QuotientData:
    """ambient / sub, where sub contains the relations of ambient."""
    sq = QZSubquotient(MixedSpan.of_group(ambient), sub)
    n = ambient.ngens
    cols = [sq.linear_coords([int(i == k) for k in range(n)]) for i in range(n)]
    proj = QZMorphism(ambient, sq.group, Matrix.from_columns(cols, sq.group.ngens))
    return QuotientData(sq.group, proj, sq)


def quotient_qz(inclusion: QZMorphism) -> QuotientData:
    """Cokernel of a morphism (usually an inclusion)."""
    return quotient_span(inclusion.target, image_span(inclusion.matrix, inclusion.source, inclusion.target))


cokernel_qz = quotient_qz


@dataclass(frozen=True)
class HomologyData:
    """ker(outgoing) / im(incoming) at a group C."""

    group: QZGroup
    cycles: MixedSpan
    boundaries: MixedSpan
    subquotient: QZSubquotient

    def class_of(self, cycle: Sequence) -> tuple:
        return self.subquotient.coords(cycle)

    def representative(self, can: Sequence) -> list:
        return self.subquotient.lift(can)

    def is_cycle(self, vec: Sequence) -> bool:
        return self.cycles.contains(vec)


def homology_qz(incoming: QZMorphism, outgoing: QZMorphism) -> HomologyData:
    """Homology at the group where `incoming` ends and `outgoing` starts."""
    if incoming.target != outgoing.source:
        raise ValueError("maps do not meet at a common group")
    Z = preimage_span(outgoing.matrix, outgoing.source, outgoing.target)
    B = image_span(incoming.matrix, incoming.source, incoming.target)
    sq = QZSubquotient(Z, B)
    return HomologyData(sq.group, Z, B, sq)


def solve_preimage_qz(f: QZMorphism, b: Sequence) -> tuple:
    """Some x with f(x) == b; raises NoPreimage otherwise."""
    return f.source.normalize(solve_mixed(f.matrix, f.source, f.target, list(b)))


def is_injective_qz(f: QZMorphism) -> bool:
    return kernel_qz(f).group.is_trivial


def is_surjective_qz(f: QZMorphism) -> bool:
    return quotient_qz(f).group.is_trivial


def is_isomorphism_qz(f: QZMorphism) -> bool:
    return is_injective_qz(f) and is_surjective_qz(f)


def same_subgroup(a: MixedSpan, b: MixedSpan) -> bool:
    return a == b
