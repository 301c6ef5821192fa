"""Exception types raised across the package."""
from __future__ import annotations


class ConehomError(Exception):
    """Base class for the package's domain errors."""


class NoPreimage(ConehomError):
    """An element is not in the image of a morphism."""


class NotRepresentable(ConehomError):
    """A requested group has no finite description in the supported class."""


class NotFinitelyGenerated(NotRepresentable):
    """A computation produced a group with a divisible summand where a finitely generated one was required."""


class NotDivisibleTarget(ConehomError):
    """An extension problem was posed with a target that is not divisible."""


class NotACycle(ConehomError):
    """A chain passed as a cycle has nonzero boundary."""


class LiftFailure(ConehomError):
    """A value that should lie in the image of an injection does not."""


class NotFree(ConehomError):
    """A construction that needs a free cochain group received torsion."""


class NotFinitelyGeneratedColimit(ConehomError):
    """The colimit of a system of complexes is not finitely generated."""

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class InvalidSubcomplex(ConehomError):
    """A simplicial pair whose second member is not a subcomplex of the first."""


class NotSimplicial(ConehomError):
    """A vertex map that does not send simplices to simplices."""


class IllDefinedMorphism(ConehomError, ValueError):
    """A matrix that does not define a homomorphism between the given groups."""
