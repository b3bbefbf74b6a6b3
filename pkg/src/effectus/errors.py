"""Exception hierarchy shared by every layer of the package."""


class EffectusError(Exception):
    """Base class for all errors raised by this package."""


class TypeMismatch(EffectusError):
    """Morphisms or objects do not line up (domain/codomain, instance, shape)."""


class ObjectMismatch(TypeMismatch):
    pass


class ShapeMismatch(TypeMismatch):
    pass


class NotBelow(EffectusError):
    """Raised by a difference ``b - a`` when ``a <= b`` fails."""


class TooLarge(EffectusError):
    """An exhaustive operation was asked to scan more than its configured bound."""


class ZeroElement(EffectusError):
    pass


class NotLattice(EffectusError):
    pass


class NotMackey(EffectusError):
    pass


class NotPsd(EffectusError):
    pass


class NotProjection(EffectusError):
    pass


class NotSharp(EffectusError):
    pass


class NotInstrument(EffectusError):
    pass


class NotObservable(NotInstrument):
    pass


class ToleranceViolation(EffectusError):
    """A floating-point quantity left its admissible range by more than the tolerance."""


class InvalidAlgebra(EffectusError):
    """A loaded table failed its law suite; ``report`` carries the failures."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
