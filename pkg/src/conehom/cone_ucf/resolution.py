"""Injective resolutions 0 -> G -> G' -> G'' -> 0 by divisible groups."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from gmpy2 import mpq

from ..errors import LiftFailure
from ..lattice import FgAbGroup, Matrix
from ..lattice.smith import rational_left_inverse, rational_right_inverse
from ..qz import QZGroup, QZMorphism, image_span, is_injective_qz, is_surjective_qz, preimage_span

Coefficients = Union[FgAbGroup, QZGroup]


def as_qz(G: Coefficients) -> QZGroup:
    return G if isinstance(G, QZGroup) else QZGroup.from_fg(G)


@dataclass(frozen=True)
class InjectiveResolution:
    """G embedded in the divisible group ``first`` with divisible cokernel ``second``.

    ``embedding`` and ``reduction`` are the two maps; the sections are rational
    matrices with embedding_section @ embedding = 1 and reduction @ reduction_section = 1.
    """

    G: QZGroup
    first: QZGroup
    second: QZGroup
    embedding: QZMorphism
    reduction: QZMorphism
    embedding_section: Matrix
    reduction_section: Matrix

    @property
    def is_split(self) -> bool:
        """True when G is itself divisible and the resolution is G -> G -> 0."""
        return self.second.ngens == 0

    def exactness(self) -> tuple[bool, bool, bool]:
        """(embedding injective, reduction surjective, image = kernel), each computed."""
        mid = image_span(self.embedding.matrix, self.G, self.first) == preimage_span(
            self.reduction.matrix, self.first, self.second
        )
        return is_injective_qz(self.embedding), is_surjective_qz(self.reduction), mid

    def pull_back(self, values: Matrix) -> Matrix:
        """The G-valued matrix whose embedding is `values`; raises LiftFailure otherwise.

        `values` has one column per element of the first group.
        """
        out = self.embedding_section @ values
        for k in range(values.ncols):
            col = out.col(k)
            if not self.G.is_element(col):
                raise LiftFailure("value does not come from G")
            if self.first.normalize(self.embedding.matrix.apply(col)) != self.first.normalize(values.col(k)):
                raise LiftFailure("value is not in the image of the embedding")
        return out


def resolve(G: Coefficients, check: bool = True) -> InjectiveResolution:
    """The componentwise resolution of G.

    Z goes to Q -> Q/Z (inclusion, then reduction mod 1), Z/d to Q/Z -> Q/Z
    (scaling by 1/d, then multiplication by d), and divisible summands
    resolve as themselves with nothing after them.
    """
    G = as_qz(G)
    a, b, tors, r = G.q_rank, G.qz_rank, G.torsion, G.free_rank
    t = len(tors)
    first = QZGroup(a + r, b + t)
    second = QZGroup(0, r + t)

    emb = [[0] * G.ngens for _ in range(first.ngens)]
    for k in range(a):
        emb[k][k] = 1
    for k in range(r):
        emb[a + k][a + b + t + k] = 1
    for k in range(b):
        emb[a + r + k][a + k] = 1
    for k, d in enumerate(tors):
        emb[a + r + b + k][a + b + k] = mpq(1, d)
    embedding = QZMorphism(G, first, Matrix(emb, G.ngens))

    red = [[0] * first.ngens for _ in range(second.ngens)]
    for k in range(r):
        red[k][a + k] = 1
    for k, d in enumerate(tors):
        red[r + k][a + r + b + k] = d
    reduction = QZMorphism(first, second, Matrix(red, first.ngens))

    res = InjectiveResolution(
        G,
        first,
        second,
        embedding,
        reduction,
        rational_left_inverse(embedding.matrix),
        rational_right_inverse(reduction.matrix) if second.ngens else Matrix.zeros(first.ngens, 0),
    )
    if check and not all(res.exactness()):
        raise AssertionError(f"resolution of {G} is not exact")
    return res


def standard_resolution(G: FgAbGroup) -> InjectiveResolution:
    """Resolution of a finitely generated group."""
    return resolve(G)


def divisible_resolution(G: QZGroup) -> InjectiveResolution:
    """0 -> G -> G -> 0 -> 0 for a divisible G."""
    if not G.is_divisible:
        raise ValueError(f"{G} is not divisible")
    return resolve(G)
