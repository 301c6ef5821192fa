"""The cone of Hom(C*, G') -> Hom(C*, G'') and its homology.

The chain group in degree n is Hom(C^n, G') + Hom(C^{n+1}, G''), and the
boundary lowers n by one:

    d(phi1, phi2) = (phi1 o delta^{n-1}, beta o phi1 - phi2 o delta^n).
"""
from __future__ import annotations

from typing import Sequence

from ..complexes import CochainComplex, cohomology
from ..errors import NotFinitelyGenerated
from ..lattice import Matrix, cokernel
from ..qz import Extender, HomologyData, HomSpace, HomSum, QZGroup, QZMorphism, homology_qz
from .resolution import Coefficients, InjectiveResolution, resolve


class ConeComplex:
    def __init__(self, complex: CochainComplex, resolution: InjectiveResolution):
        self.complex = complex
        self.resolution = resolution
        self._sums: dict[int, HomSum] = {}
        self._boundaries: dict[int, QZMorphism] = {}
        self._homology: dict[int, HomologyData] = {}
        self._spaces: dict[tuple, HomSpace] = {}
        self._extenders: dict[tuple, Extender] = {}

    @property
    def degrees(self) -> range:
        """Degrees where the cone can be nonzero."""
        return range(self.complex.lo - 1, self.complex.hi + 1)

    def chain_sum(self, n: int) -> HomSum:
        s = self._sums.get(n)
        if s is None:
            C, res = self.complex, self.resolution
            s = HomSum([(C.group(n), res.first), (C.group(n + 1), res.second)])
            self._sums[n] = s
        return s

    def group(self, n: int) -> QZGroup:
        return self.chain_sum(n).group

    def parts(self, n: int, can: Sequence) -> tuple[Matrix, Matrix]:
        """Entry matrices (phi1, phi2) of a chain given in canonical coordinates."""
        first, second = self.chain_sum(n).entries(can)
        return first, second

    def chain(self, n: int, phi1: Matrix, phi2: Matrix) -> tuple:
        """Canonical coordinates of (phi1, phi2)."""
        return self.chain_sum(n).coords([phi1, phi2])

    def boundary_parts(self, n: int, phi1: Matrix, phi2: Matrix) -> tuple[Matrix, Matrix]:
        C, beta = self.complex, self.resolution.reduction.matrix
        return phi1 @ C.delta(n - 1).matrix, beta @ phi1 - phi2 @ C.delta(n).matrix

    def boundary(self, n: int) -> QZMorphism:
        """The boundary map from degree n to degree n - 1."""
        d = self._boundaries.get(n)
        if d is None:
            d = self.chain_sum(n).map_to(self.chain_sum(n - 1), lambda m: list(self.boundary_parts(n, m[0], m[1])))
            self._boundaries[n] = d
        return d

    def homology(self, n: int) -> HomologyData:
        h = self._homology.get(n)
        if h is None:
            h = homology_qz(self.boundary(n + 1), self.boundary(n))
            self._homology[n] = h
        return h

    def is_cycle(self, n: int, can: Sequence) -> bool:
        return self.group(n - 1).is_zero_element(self.boundary(n)(can))

    # shared Hom spaces and extension operators

    def hom_space(self, n: int, target: str) -> HomSpace:
        """Hom(H^n, X) for X one of 'G', 'first', 'second'."""
        key = (n, target)
        hs = self._spaces.get(key)
        if hs is None:
            T = {"G": self.resolution.G, "first": self.resolution.first, "second": self.resolution.second}[target]
            hs = HomSpace(cohomology(self.complex, n).H, T)
            self._spaces[key] = hs
        return hs

    def cocycle_extender(self, n: int) -> Extender:
        """Extension along Z^n -> C^n."""
        return self._extender(("cocycles", n), lambda: cohomology(self.complex, n).j.matrix)

    def coboundary_extender(self, n: int) -> Extender:
        """Extension along B^n -> C^n."""

        def inclusion():
            data = cohomology(self.complex, n)
            return data.j.matrix @ data.i.matrix

        return self._extender(("coboundaries", n), inclusion)

    def _extender(self, key, inclusion) -> Extender:
        ext = self._extenders.get(key)
        if ext is None:
            ext = Extender(inclusion(), self.complex.group(key[1]))
            self._extenders[key] = ext
        return ext

    def cocycle_quotient(self, n: int):
        """C^n / Z^n with its projection, used to vary extensions."""
        key = ("quotient", n)
        q = self._extenders.get(key)
        if q is None:
            q = cokernel(cohomology(self.complex, n).j)
            self._extenders[key] = q
        return q


def build_cone(C: CochainComplex, resolution: InjectiveResolution | Coefficients) -> ConeComplex:
    res = resolution if isinstance(resolution, InjectiveResolution) else resolve(resolution)
    return ConeComplex(C, res)


def cone_homology(cone: ConeComplex, n: int, require_fg: bool = False) -> HomologyData:
    """Homology of the cone in degree n, with representatives kept for the UCF maps."""
    h = cone.homology(n)
    if require_fg and not h.group.is_finitely_generated:
        raise NotFinitelyGenerated(f"cone homology {h.group} in degree {n}")
    return h
