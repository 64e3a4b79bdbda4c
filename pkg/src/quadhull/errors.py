"""Exception types raised across the package."""


class QuadhullError(Exception):
    pass


class DivisionByZero(QuadhullError, ZeroDivisionError):
    pass


class LevelMismatch(QuadhullError, TypeError):
    """Operands live in different fields of the tower."""


class BadLength(QuadhullError, ValueError):
    pass


class LengthMismatch(BadLength):
    """Vectors or codes of different lengths were combined."""


class ParamError(QuadhullError, ValueError):
    pass


class NotInvertible(QuadhullError, ValueError):
    pass


class NotSimilar(QuadhullError, ValueError):
    pass


class DegreeMismatch(QuadhullError, ValueError):
    pass


class PointNotOnVariety(QuadhullError, ValueError):
    pass


class DecodeFailure(QuadhullError):
    pass


class DegenerateTangent(QuadhullError):
    pass


class AlgebraDimensionError(QuadhullError):
    """The stabilizer algebra does not have the expected dimension m."""


class GeneratorSearchExhausted(QuadhullError):
    pass


class SSFailure(QuadhullError):
    """Support/multiplier recovery from a GRS generator matrix failed."""


class VerificationFailure(QuadhullError):
    pass
