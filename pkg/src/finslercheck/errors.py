"""Exception hierarchy shared by all modules."""


class FinslerCheckError(Exception):
    """Base class for every error raised by this package."""


class ZeroDirection(FinslerCheckError):
    pass


class OrientationViolation(FinslerCheckError):
    """Point lies outside the positive cone x1*y2 - x2*y1 > 0."""


class CollinearInputs(FinslerCheckError):
    pass


class CapTooSmall(FinslerCheckError):
    """Requested derivative exceeds the order caps of a jet."""


class DomainError(FinslerCheckError, ArithmeticError):
    """Division by zero, sqrt of a nonpositive value, or a non-finite result."""


class SingularIntegrand(DomainError):
    pass


class QuadratureFailure(FinslerCheckError):
    pass


class DegenerateMetric(FinslerCheckError):
    pass


class SAxisSingular(DomainError):
    """The H-rewritten mean Berwald formula divides by s."""


class ExprSyntaxError(FinslerCheckError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(FinslerCheckError, ValueError):
    def __init__(self, name, offset=None):
        super().__init__(f"unknown identifier {name!r}")
        self.name = name
        self.offset = offset


class ConfigError(FinslerCheckError, ValueError):
    pass
