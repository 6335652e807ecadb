import dataclasses
import math

from ..interfaces.errors import ParameterDomainError

# ℏ = M = ω₀ = k_B = 1 internally; lengths in √(ℏ/Mω₀), times in 1/ω₀
HBAR = 1.0
MASS = 1.0
OMEGA0 = 1.0

# ground-state variance ℏ/2Mω₀, the reporting unit for every variance
NATURAL_DISPERSION = HBAR / (2.0 * MASS * OMEGA0)


@dataclasses.dataclass(frozen=True)
class SystemParams:
    """
    Two identical damped oscillators, each coupled to its own Ohmic bath, in
    internal natural units.

    `sigma01Sq`, `sigma02Sq` are initial dispersions in units of ℏ/2Mω₀ (so
    1.0 is the ground state); `theta1`, `theta2` are k_BT/ℏω₀.
    """
    gamma: float
    lambdaTilde: float = 0.0
    theta1: float = 0.0
    theta2: float = 0.0
    sigma01Sq: float = 1.0
    sigma02Sq: float = 1.0
    mass: float = MASS
    omega0: float = OMEGA0

    def __post_init__(self):
        for name in ('gamma', 'lambdaTilde', 'theta1', 'theta2', 'sigma01Sq', 'sigma02Sq'):
            if not math.isfinite(getattr(self, name)):
                raise ParameterDomainError(f'{name} must be finite', bound=f'{name} finite')
        if abs(self.lambdaTilde) > 1.0:
            raise ParameterDomainError(
                f'|λ̃| = {abs(self.lambdaTilde)} exceeds the bound |λ| ≤ Mω₀²', bound='|λ̃| ≤ 1'
            )
        if self.gamma <= 0.0:
            raise ParameterDomainError(f'γ̃ = {self.gamma} must be positive', bound='γ > 0')
        if self.sigma01Sq <= 0.0 or self.sigma02Sq <= 0.0:
            raise ParameterDomainError('initial dispersions must be positive', bound='σ₀² > 0')
        if self.theta1 < 0.0 or self.theta2 < 0.0:
            raise ParameterDomainError('bath temperatures must be non-negative', bound='θ ≥ 0')

    @property
    def dispersion1(self) -> float:
        """σ₀₁² in internal length² units"""
        return self.sigma01Sq * NATURAL_DISPERSION

    @property
    def dispersion2(self) -> float:
        return self.sigma02Sq * NATURAL_DISPERSION

    @property
    def a1(self) -> float:
        return 1.0 / (8.0 * self.dispersion1)

    @property
    def a2(self) -> float:
        return 1.0 / (8.0 * self.dispersion2)

    @property
    def coupling(self) -> float:
        """λ in internal units (λ̃·Mω₀²)"""
        return self.lambdaTilde * self.mass * self.omega0 ** 2

    def swapped(self) -> 'SystemParams':
        """The same system with the two oscillators (and their baths) exchanged"""
        return dataclasses.replace(
            self, theta1=self.theta2, theta2=self.theta1,
            sigma01Sq=self.sigma02Sq, sigma02Sq=self.sigma01Sq,
        )


@dataclasses.dataclass(frozen=True)
class QuadratureSpec:
    """Frequency quadrature settings for the bath integrals and the FDT variance"""
    omegaCutoff: float = 50.0
    relTol: float = 1e-8
    absTol: float = 1e-14
    maxSubdivisions: int = 200
    splitResonances: bool = True

    def __post_init__(self):
        if not 1e-14 < self.relTol < 1e-2:
            raise ParameterDomainError(f'relTol = {self.relTol} outside (1e-14, 1e-2)', bound='ε_quad')
        if self.absTol < 0.0:
            raise ParameterDomainError('absTol must be non-negative', bound='absTol ≥ 0')
        if self.maxSubdivisions < 1:
            raise ParameterDomainError('maxSubdivisions must be positive', bound='maxSubdivisions ≥ 1')
        if self.omegaCutoff <= 0.0:
            raise ParameterDomainError('omegaCutoff must be positive', bound='ω_c > 0')

    def token(self) -> str:
        """Stable text form used in cache keys and manifests"""
        return (
            f'wc={float(self.omegaCutoff).hex()};rel={float(self.relTol).hex()};abs={float(self.absTol).hex()};'
            f'sub={self.maxSubdivisions};split={int(self.splitResonances)}'
        )
