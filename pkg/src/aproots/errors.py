"""Exception hierarchy for domain errors.

Every error that a caller can provoke with bad input derives from
:class:`AprootsError`; internal consistency failures use plain asserts.
"""


class AprootsError(Exception):
    """Base class for all domain errors raised by this package."""


class CartanError(AprootsError):
    """Invalid Cartan matrix input."""


class BadDiagonal(CartanError):
    pass


class PositiveOffDiagonal(CartanError):
    pass


class NotSymmetrizable(CartanError):
    pass


class UnknownLabel(AprootsError):
    pass


class RankOutOfRange(AprootsError):
    pass


class NotAffine(AprootsError):
    pass


class IndexOutOfRange(AprootsError):
    pass


class NotAlmostPositive(AprootsError):
    pass


class NotInPhiC(AprootsError):
    pass


class NotInTube(AprootsError):
    pass


class DeltaHasNoTubeSupport(NotInTube):
    pass


class NotDistinct(AprootsError):
    pass


class NotACluster(AprootsError):
    pass


class RootNotInCluster(AprootsError):
    pass


class NonExactDivision(AprootsError):
    """Laurent-phenomenon violation; signals an implementation bug."""


class NotHomogeneous(AprootsError):
    """Principal-grading violation; signals an implementation bug."""


class DepthTooDeep(AprootsError):
    """Polynomial term cap exceeded during seed exploration."""


class RankNot3(AprootsError):
    pass
