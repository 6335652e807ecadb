"""
Laboratory (CGS) inputs and their conversion to the internal natural units
ℏ = M = ω₀ = k_B = 1.
"""
import dataclasses
import math

from .interfaces.errors import ParameterDomainError
from .models.params import QuadratureSpec, SystemParams

# erg·s and erg/K
HBAR_CGS = 1.0546e-27
KB_CGS = 1.3807e-16

# |λ̃| this close above 1 is roundoff of a value set exactly at the bound
_BOUND_SLACK = 1e-12


@dataclasses.dataclass(frozen=True)
class LabParameters:
    massGrams: float
    omega0Radps: float
    gammaRadps: float
    lambdaCgs: float = 0.0
    t1Kelvin: float = 0.0
    t2Kelvin: float = 0.0
    sigma01SqCm2: float = None
    sigma02SqCm2: float = None

    @property
    def naturalDispersionCm2(self) -> float:
        """ℏ/2Mω₀ in cm²"""
        return HBAR_CGS / (2.0 * self.massGrams * self.omega0Radps)


def toNaturalUnits(lab: LabParameters) -> SystemParams:
    """
    Converts laboratory inputs to dimensionless `SystemParams`.

    Unset initial dispersions default to the ground state ℏ/2Mω₀.

    Raises:
        ParameterDomainError: non-finite input, non-positive mass or frequency,
            or |λ| > Mω₀².
    """
    if not lab.massGrams > 0.0:
        raise ParameterDomainError(f'mass {lab.massGrams} g must be positive', bound='M > 0')
    if not lab.omega0Radps > 0.0:
        raise ParameterDomainError(f'ω₀ = {lab.omega0Radps} rad/s must be positive', bound='ω₀ > 0')
    for name, value in dataclasses.asdict(lab).items():
        if value is not None and not math.isfinite(value):
            raise ParameterDomainError(f'{name} must be finite', bound=f'{name} finite')

    stiffness = lab.massGrams * lab.omega0Radps ** 2
    lambdaTilde = lab.lambdaCgs / stiffness
    if 1.0 < abs(lambdaTilde) <= 1.0 + _BOUND_SLACK:
        lambdaTilde = math.copysign(1.0, lambdaTilde)
    if abs(lambdaTilde) > 1.0:
        raise ParameterDomainError(
            f'|λ| = {abs(lab.lambdaCgs):g} g/s² exceeds Mω₀² = {stiffness:g} g/s²', bound='|λ| ≤ Mω₀²'
        )

    energy = HBAR_CGS * lab.omega0Radps
    unit = lab.naturalDispersionCm2
    sigma01Sq = 1.0 if lab.sigma01SqCm2 is None else lab.sigma01SqCm2 / unit
    sigma02Sq = 1.0 if lab.sigma02SqCm2 is None else lab.sigma02SqCm2 / unit

    return SystemParams(
        gamma=lab.gammaRadps / lab.omega0Radps,
        lambdaTilde=lambdaTilde,
        theta1=KB_CGS * lab.t1Kelvin / energy,
        theta2=KB_CGS * lab.t2Kelvin / energy,
        sigma01Sq=sigma01Sq,
        sigma02Sq=sigma02Sq,
    )


def toLabUnits(params: SystemParams, massGrams: float, omega0Radps: float) -> LabParameters:
    """Inverse of `toNaturalUnits` for a given mass and eigenfrequency"""
    energy = HBAR_CGS * omega0Radps
    unit = HBAR_CGS / (2.0 * massGrams * omega0Radps)
    return LabParameters(
        massGrams=massGrams,
        omega0Radps=omega0Radps,
        gammaRadps=params.gamma * omega0Radps,
        lambdaCgs=params.lambdaTilde * massGrams * omega0Radps ** 2,
        t1Kelvin=params.theta1 * energy / KB_CGS,
        t2Kelvin=params.theta2 * energy / KB_CGS,
        sigma01SqCm2=params.sigma01Sq * unit,
        sigma02SqCm2=params.sigma02Sq * unit,
    )


def thetaFromKelvin(kelvin: float, omega0Radps: float) -> float:
    return KB_CGS * kelvin / (HBAR_CGS * omega0Radps)


def labFromConfig(config: dict) -> LabParameters:
    massGrams = config['mass_g']
    omega0 = config['omega0_radps']
    unit = HBAR_CGS / (2.0 * massGrams * omega0) if massGrams > 0 and omega0 > 0 else float('nan')
    return LabParameters(
        massGrams=massGrams,
        omega0Radps=omega0,
        gammaRadps=config['gamma_over_omega0'] * omega0,
        lambdaCgs=config['lambda_tilde'] * massGrams * omega0 ** 2,
        t1Kelvin=config['T1_K'],
        t2Kelvin=config['T2_K'],
        sigma01SqCm2=config['sigma01_sq_natural'] * unit,
        sigma02SqCm2=config['sigma02_sq_natural'] * unit,
    )


def paramsFromConfig(config: dict) -> SystemParams:
    """Resolved config (see `twobath.config.getConfig`) -> SystemParams"""
    return toNaturalUnits(labFromConfig(config))


def quadratureFromConfig(config: dict) -> QuadratureSpec:
    return QuadratureSpec(
        omegaCutoff=config['omega_cutoff'],
        relTol=config['quad_rel_tol'],
        absTol=config['quad_abs_tol'],
        maxSubdivisions=config['quad_max_depth'],
        splitResonances=config['split_resonances'],
    )
