"""Exception hierarchy.  Each error carries a machine-readable code and the
process exit status the CLI uses for it."""


class AffineHodgeError(Exception):
    code = "internal-error"
    exit_code = 70


class NotTame(AffineHodgeError):
    """The top quasi-homogeneous part has a non-isolated singularity."""

    code = "not-tame"
    exit_code = 3

    def __init__(self, message, missing_variables=()):
        super().__init__(message)
        self.missing_variables = tuple(missing_variables)


class CriticalValue(AffineHodgeError):
    code = "critical-value"
    exit_code = 4


class ExceptionalValue(AffineHodgeError):
    code = "exceptional-value"
    exit_code = 5


class ParseError(AffineHodgeError):
    code = "parse-error"
    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class OddDimension(AffineHodgeError):
    code = "odd-dimension"
    exit_code = 6


class DimensionMismatch(AffineHodgeError):
    code = "dimension-mismatch"
    exit_code = 7


class NotSeparable(AffineHodgeError):
    code = "not-separable"
    exit_code = 8


class NonzeroRemainder(AffineHodgeError):
    """S(f) did not reduce to zero modulo the Jacobian ideal."""

    code = "nonzero-remainder"


class DenominatorSurvived(AffineHodgeError):
    code = "denominator-survived"


class InternalInconsistency(AffineHodgeError):
    code = "internal-inconsistency"


class CertificateFailure(AffineHodgeError):
    code = "certificate-failure"
