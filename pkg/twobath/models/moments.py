import dataclasses
import typing

from .params import NATURAL_DISPERSION


class MomentPath:  # pragma: no cover
    PRINTED   = 'printed'
    MODAL     = 'modal'
    UNCOUPLED = 'uncoupled'


@dataclasses.dataclass(frozen=True)
class Intermediates:
    """
    e/Z/Y quantities feeding the β coefficients. Y₄ and Y₅ are purely
    imaginary and kept as ŷ₄, ŷ₅ with Y = i·ŷ.
    """
    e3: float
    e4: float
    e5: float
    e6: float
    z1: float
    z2: float
    z3: float
    z6: float
    y1: float
    y4Imag: float
    y5Imag: float
    # C₂ + ℏa₂ and 4ℏa₂(C₂ + ℏa₂) + (D′₄ + Π₁₆)²
    c2Shifted: float
    commonDenominator: float


@dataclasses.dataclass(frozen=True)
class MomentState:
    """
    Second moments of the reduced Gaussian state at time t, internal units.

    `cov` is the ratio β₁₂/(β₁₁β₂₂ − β₁₂²); `gaussianCovariance` is ⟨x₁x₂⟩ of
    the exponent −½β₁₁x₁² − β₁₂x₁x₂ − ½β₂₂x₂², i.e. the same with opposite sign.
    """
    t: typing.Optional[float]
    beta11: float
    beta22: float
    beta12: float
    sigma1Sq: float
    sigma2Sq: float
    cov: float
    positiveDefinite: bool = True
    path: str = MomentPath.PRINTED
    warnings: typing.Tuple[str, ...] = ()

    @property
    def determinant(self) -> float:
        return self.beta11 * self.beta22 - self.beta12 ** 2

    @property
    def gaussianCovariance(self) -> float:
        return -self.cov

    @property
    def sigma1SqNatural(self) -> float:
        """σ₁² in units of ℏ/2Mω₀"""
        return self.sigma1Sq / NATURAL_DISPERSION

    @property
    def sigma2SqNatural(self) -> float:
        return self.sigma2Sq / NATURAL_DISPERSION

    @property
    def covNatural(self) -> float:
        return self.cov / NATURAL_DISPERSION


@dataclasses.dataclass(frozen=True)
class PointFailure:
    t: float
    errorName: str
    message: str


@dataclasses.dataclass
class SeriesResult:
    """Ordered moment states of a time grid plus the points that failed"""
    states: typing.List[MomentState] = dataclasses.field(default_factory=list)
    failures: typing.List[PointFailure] = dataclasses.field(default_factory=list)
    warnings: typing.List[str] = dataclasses.field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.failures)

    @property
    def times(self) -> typing.List[float]:
        return [state.t for state in self.states]


@dataclasses.dataclass(frozen=True)
class SteadyState:
    """
    Long-time plateau of a relaxation series, normalized by the FDT
    variances of the two baths. `covNorm` is mean cov/√(fdt₁·fdt₂).
    """
    sigma1Norm: float
    sigma2Norm: float
    covNorm: float
    windowStart: float
    windowEnd: float
    flatness: float
    converged: bool
    growthRate: float
    positiveDefinite: bool
    fdt1: float
    fdt2: float
    sigma1Sq: float
    sigma2Sq: float
    cov: float

    @property
    def window(self) -> typing.Tuple[float, float]:
        return (self.windowStart, self.windowEnd)


@dataclasses.dataclass(frozen=True)
class ScanRow:
    """One grid point of a λ̃ or temperature scan"""
    lambdaTilde: float
    theta1: float
    theta2: float
    steady: typing.Optional[SteadyState] = None
    failure: typing.Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.steady is not None
