"""Exception hierarchy.

Input problems derive from :class:`RingSpecError`, resource limits from
:class:`CapExceeded`. The CLI maps these to exit codes 2 and 3.
"""


class QPrimError(Exception):
    pass


class RingSpecError(QPrimError, ValueError):
    """A ring description is malformed or does not define a commutative unital ring."""


class TableNotCommutative(RingSpecError):
    pass


class TableNoIdentity(RingSpecError):
    pass


class TableNotRing(RingSpecError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadModulus(RingSpecError):
    pass


class CapExceeded(QPrimError):
    pass


class OrderCapExceeded(CapExceeded):
    pass


class IdealCountCapExceeded(CapExceeded):
    pass


class SearchCapExceeded(CapExceeded):
    pass


class CoverEnumerationCapExceeded(CapExceeded):
    pass


class MixedRings(QPrimError, ValueError):
    pass


class NotAHom(QPrimError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ImproperIdeal(QPrimError, ValueError):
    pass


class NotPrime(QPrimError, ValueError):
    pass


class NotIrreducible(QPrimError, ValueError):
    pass


class NotContained(QPrimError, ValueError):
    pass


class NotAProductSpec(QPrimError, ValueError):
    pass


class EmptySpectrum(QPrimError, ValueError):
    pass
