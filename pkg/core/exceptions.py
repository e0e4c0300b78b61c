"""Custom exceptions for the verification lab"""


class VerificationLabError(Exception):
    """Base exception for all verification lab errors"""

    pass


class XPrecError(VerificationLabError):
    """Extended-precision arithmetic error"""

    pass


class PrecisionDomainError(XPrecError):
    """Elementary function called outside its domain"""

    pass


class DivisionByZeroError(XPrecError):
    """Division by an exact zero"""

    pass


class SpecialFunctionError(VerificationLabError):
    """Special-function evaluation error"""

    pass


class SpecialFunctionDomainError(SpecialFunctionError):
    """Special function called outside its supported domain"""

    pass


class BranchCutError(SpecialFunctionError):
    """Argument lies exactly on a branch cut"""

    pass


class SeriesError(VerificationLabError):
    """Summation engine error"""

    pass


class SeriesConvergenceError(SeriesError):
    """Series did not reach the requested accuracy"""

    def __init__(self, message: str, best_estimate=None, terms_used: int = 0):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.terms_used = terms_used


class BracketingError(SeriesError):
    """Accelerated value is not bracketed by consecutive partial sums"""

    pass


class BudgetExceededError(SeriesConvergenceError):
    """Term budget exhausted before convergence"""

    pass


class QuadratureError(VerificationLabError):
    """Numerical integration error"""

    pass


class QuadratureConvergenceError(QuadratureError):
    """Level refinement did not converge"""

    def __init__(self, message: str, best_estimate=None, levels_used: int = 0):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.levels_used = levels_used


class IntegrandEvaluationError(QuadratureError):
    """Integrand failed at an abscissa"""

    def __init__(self, message: str, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class ClosedFormError(VerificationLabError):
    """Closed-form construction error"""

    pass


class ClosedFormDomainError(ClosedFormError):
    """Closed form requested outside its parameter domain"""

    pass


class RegistryError(VerificationLabError):
    """Identity registry error"""

    pass


class UnknownIdentityError(RegistryError):
    """Identity id or group is not registered"""

    pass


class RegistryCoverageError(RegistryError):
    """A required identity is missing from the registry"""

    pass


class ConfigError(VerificationLabError):
    """Configuration loading or validation error"""

    pass


class ReportError(VerificationLabError):
    """Report could not be written"""

    pass
