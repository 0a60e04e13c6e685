"""Exception types shared across the package."""


class BciphsError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(BciphsError):
    """Array or matrix shapes are inconsistent with the declared sizes."""


class InadmissibleState(BciphsError):
    """A field state left the admissible region of its thermodynamic closure."""

    def __init__(self, message, *, t=None, where=None):
        super().__init__(message)
        self.t = t
        self.where = where


class StepRejected(BciphsError):
    """The requested time step violates the stability bound."""


class InvalidParametrization(BciphsError):
    """A boundary-port parametrization fails the defining conditions."""


class SingularGram(BciphsError):
    """The Gram matrix of a span basis is numerically singular."""


class SingularP1(BciphsError):
    """The symmetric first-order coupling block is singular, so the

    reversible boundary-condition check (which needs its inverse) cannot run.
    """


class TooLarge(BciphsError):
    """A dense-operator request exceeds the supported grid size."""


class InvalidKinetics(BciphsError):
    """Reaction parameters violate positivity requirements."""


class ParseError(BciphsError):
    """A configuration file could not be parsed.

    Carries ``line`` and ``column`` (1-based) when the location is known.
    """

    def __init__(self, message, *, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class SchemaError(BciphsError):
    """A parsed configuration violates the schema; ``key`` names the culprit."""

    def __init__(self, message, *, key=None):
        super().__init__(message)
        self.key = key
