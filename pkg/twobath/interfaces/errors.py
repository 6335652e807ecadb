class TwobathError(Exception):
    """Base class for every error raised by twobath"""


class ConfigError(TwobathError):
    """A configuration source could not be read, parsed or typed"""

    def __init__(self, message: str, lineNumber: int = None):
        if lineNumber is not None:
            message = f'line {lineNumber}: {message}'
        super().__init__(message)
        self.lineNumber = lineNumber


class ParameterDomainError(TwobathError, ValueError):
    """A physical parameter lies outside the admissible region"""

    def __init__(self, message: str, bound: str = None):
        super().__init__(message)
        self.bound = bound


class NumericalError(TwobathError):
    """Base class for failures of the numerical pipeline"""


class FreeParticleRegimeError(NumericalError):
    """The symmetric normal mode is not oscillatory (λ̃ ≥ 1 − γ̃²)"""

    def __init__(self, message: str, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic


class SingularTimeError(NumericalError):
    """The horizon sits on a singular time t = kπ/Ωₖ of the boundary-value problem"""

    def __init__(self, message: str, mode: int = None, t: float = None):
        super().__init__(message)
        self.mode = mode
        self.t = t


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach the requested tolerance"""

    def __init__(self, message: str, panel=None, errorEstimate: float = None):
        super().__init__(message)
        self.panel = panel
        self.errorEstimate = errorEstimate


class NonNormalizableStateError(NumericalError):
    """An intermediate denominator (Z₁ or Y₁) is not positive"""


class DegenerateGaussianError(NumericalError):
    """The β matrix is not positive definite"""


class HorizonOverflowError(NumericalError):
    """γt is beyond the range where the exponential factors are representable"""
