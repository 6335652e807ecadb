import dataclasses
import typing


@dataclasses.dataclass(frozen=True)
class ModeStructure:
    """
    Normal modes of two identical damped oscillators.

    Mode 1 is the sum mode (x₁+x₂)/2 with Ω₁² = ω₀² − γ² − λ/M, mode 2 the
    difference mode (x₂−x₁)/2 with Ω₂² = ω₀² − γ² + λ/M.
    """
    omega1: float
    omega2: float
    delta1: float
    delta2: float
    r1: float = 1.0
    r2: float = -1.0

    @property
    def frequencies(self) -> typing.Tuple[float, float]:
        return (self.omega1, self.omega2)

    @property
    def isDegenerate(self) -> bool:
        return self.omega1 == self.omega2


@dataclasses.dataclass(frozen=True)
class TrajectoryEndpoints:
    """Boundary data of the classical X and ξ paths on [0, t]"""
    t: float
    xInitial1: float = 0.0
    xInitial2: float = 0.0
    xFinal1: float = 0.0
    xFinal2: float = 0.0
    xiInitial1: float = 0.0
    xiInitial2: float = 0.0
    xiFinal1: float = 0.0
    xiFinal2: float = 0.0

    def __post_init__(self):
        if self.t <= 0.0:
            raise ValueError(f'horizon t = {self.t} must be positive')


@dataclasses.dataclass(frozen=True)
class TrajectoryPoint:
    x1: float
    x2: float
    xi1: float
    xi2: float


@dataclasses.dataclass(frozen=True)
class GeneralModeReport:
    """
    Eigen-structure of two arbitrary damped oscillators. Frequencies and
    ratios are complex when the discriminant or a squared frequency is
    negative; ratios are None when the coupling vanishes.
    """
    omega1: complex
    omega2: complex
    delta1: float
    delta2: float
    r1: typing.Optional[complex]
    r2: typing.Optional[complex]
    kappa1: float
    kappa2: float
    complexFrequencies: bool
    ratiosDivergent: bool
    iterations: int


@dataclasses.dataclass(frozen=True)
class DecoupledModes:
    """
    Hamiltonian normal modes (x₁ ± x₂) of the coupled pair: reduced mass M/2
    and ω±² = ω₀² ± λ/M. When a squared frequency is not positive the mode
    is a free particle and its variance grows as 2Dt with D = k_BT/Mγ.
    """
    reducedMass: float
    omegaPlusSq: float
    omegaMinusSq: float
    freeParticle: bool
    diffusion1: float
    diffusion2: float

    def freeParticleVariance(self, t: float, bath: int = 1) -> float:
        diffusion = self.diffusion1 if bath == 1 else self.diffusion2
        return 2.0 * diffusion * t
