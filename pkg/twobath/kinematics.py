"""
Deterministic time functions of the identical-oscillator problem: the
s-integrals, the b/b′ tables, the n/m helpers, the D-combinations and the
Π-functions.

Arrays are indexed like the printed tables (s[1]…s[14], b[1]…b[16]); slot 0
is unused.
"""
import math
import typing

import numpy as np

from .interfaces.errors import HorizonOverflowError
from .models.kinematics import DPiValues, KinematicSet, ModalCoefficients
from .models.modes import ModeStructure
from .models.params import SystemParams
from .modes import checkRegularTime

S_SIZE = 15
B_SIZE = 17

# relative mode splitting below which the sum/difference-frequency forms are used
DEGENERACY_EPSILON = 1e-4

# e^{2γt} must stay representable; the printed β assembly stops earlier
MAX_GAMMA_T = 300.0


def checkHorizon(t: float, gamma: float):
    """
    Raises:
        HorizonOverflowError: γt > MAX_GAMMA_T.
    """
    if gamma * t > MAX_GAMMA_T:
        raise HorizonOverflowError(f'γt = {gamma * t:.6g} exceeds {MAX_GAMMA_T:g}')


def _sineIntegral(x: float, t: float) -> float:
    """∫₀ᵗ cos(xτ) dτ = sin(xt)/x, finite at x = 0"""
    return t * np.sinc(x * t / np.pi)


def _cosineIntegral(x: float, t: float) -> float:
    """∫₀ᵗ sin(xτ) dτ = (1 − cos xt)/x, finite at x = 0"""
    return 0.5 * x * t ** 2 * np.sinc(x * t / (2.0 * np.pi)) ** 2


def sFunctions(t: float, omega1: float, omega2: float) -> np.ndarray:
    """
    The fourteen s-integrals at horizon t.

    s₇…s₁₀ are ∫₀ᵗ cos₁cos₂, ∫cos₁sin₂, ∫sin₁cos₂ and ∫sin₁sin₂ (subscripts
    naming Ω₁τ, Ω₂τ); s₁₁…s₁₄ repeat them. When |Ω₁ − Ω₂| < 10⁻⁴·Ω₁ they
    are evaluated from the sum and difference frequencies, which avoids the
    1/(Ω₁² − Ω₂²) cancellation.
    """
    if t < 0.0 or omega1 <= 0.0 or omega2 <= 0.0:
        raise ValueError('s-functions need t ≥ 0 and positive frequencies')

    s = np.zeros(S_SIZE)
    sin1, cos1 = math.sin(omega1 * t), math.cos(omega1 * t)
    sin2, cos2 = math.sin(omega2 * t), math.cos(omega2 * t)

    s[1] = t / 2.0 + math.sin(2.0 * omega1 * t) / (4.0 * omega1)
    s[2] = t / 2.0 - math.sin(2.0 * omega1 * t) / (4.0 * omega1)
    s[3] = t / 2.0 + math.sin(2.0 * omega2 * t) / (4.0 * omega2)
    s[4] = t / 2.0 - math.sin(2.0 * omega2 * t) / (4.0 * omega2)
    s[5] = sin1 ** 2 / (2.0 * omega1)
    s[6] = sin2 ** 2 / (2.0 * omega2)

    if abs(omega1 - omega2) < DEGENERACY_EPSILON * omega1:
        difference = omega1 - omega2
        total = omega1 + omega2
        s[7] = 0.5 * (_sineIntegral(difference, t) + _sineIntegral(total, t))
        s[8] = 0.5 * (_cosineIntegral(total, t) - _cosineIntegral(difference, t))
        s[9] = 0.5 * (_cosineIntegral(total, t) + _cosineIntegral(difference, t))
        s[10] = 0.5 * (_sineIntegral(difference, t) - _sineIntegral(total, t))
    else:
        denominator = omega1 ** 2 - omega2 ** 2
        s[7] = (omega1 * cos2 * sin1 - omega2 * cos1 * sin2) / denominator
        s[8] = (-omega2 + omega2 * cos2 * cos1 + omega1 * sin1 * sin2) / denominator
        s[9] = (omega1 - omega1 * cos2 * cos1 - omega2 * sin1 * sin2) / denominator
        s[10] = (omega2 * cos2 * sin1 - omega1 * cos1 * sin2) / denominator

    s[11] = s[7]
    s[12] = s[9]
    s[13] = s[8]
    s[14] = s[10]
    return s


def bTables(
    s: np.ndarray, omega1: float, omega2: float, gamma: float, omega0: float = 1.0
) -> typing.Tuple[np.ndarray, np.ndarray]:
    """The b and b′ tables, linear in the s-values, exactly as printed"""
    w = omega0 ** 2 - gamma ** 2
    o1, o2, g = omega1, omega2, gamma
    o12 = o1 * o2

    b = np.zeros(B_SIZE)
    b[1] = o1 ** 2 * s[1] - w * s[2] - 2.0 * o1 * g * s[5]
    b[2] = -o1 ** 2 * s[5] - w * s[5] - o1 * g * (s[1] - s[2])
    b[3] = -o1 ** 2 * s[5] - w * s[5] - o1 * g * (s[1] - s[2])
    b[4] = o1 ** 2 * s[2] - w * s[1] + 2.0 * o1 * g * s[5]
    b[5] = -o12 * s[7] + w * s[10] + o1 * g * s[8] + o2 * g * s[9]
    b[6] = o12 * s[8] + w * s[9] + o1 * g * s[7] - o2 * g * s[10]
    b[7] = o12 * s[9] + w * s[8] - o1 * g * s[10] + o2 * g * s[7]
    b[8] = -o12 * s[10] + w * s[7] - o1 * g * s[9] - o2 * g * s[8]
    b[9] = -o12 * s[11] + w * s[14] + o2 * g * s[12] + o1 * g * s[13]
    b[10] = o12 * s[12] + w * s[13] + o2 * g * s[11] - o1 * g * s[14]
    b[11] = o12 * s[13] + w * s[12] - o2 * g * s[14] + o1 * g * s[11]
    b[12] = -o12 * s[14] + w * s[11] - o2 * g * s[13] - o1 * g * s[12]
    b[13] = o2 ** 2 * s[3] - w * s[4] - 2.0 * o2 * g * s[6]
    b[14] = -o2 ** 2 * s[6] - w * s[6] + o2 * g * (s[4] - s[3])
    b[15] = -o2 ** 2 * s[6] - w * s[6] + o2 * g * (s[4] - s[3])
    b[16] = o2 ** 2 * s[4] - w * s[3] + 2.0 * o2 * g * s[6]

    bp = np.zeros(B_SIZE)
    bp[1] = o2 ** 2 * s[3] - w * s[4] - 2.0 * o2 * g * s[6]
    bp[2] = -o2 ** 2 * s[6] - w * s[6] - o2 * g * (s[3] - s[4])
    bp[3] = -o2 ** 2 * s[6] - w * s[6] - o2 * g * (s[3] - s[4])
    bp[4] = o2 ** 2 * s[4] - w * s[3] + 2.0 * o2 * g * s[6]
    bp[5] = o12 * s[7] - w * s[10] - o1 * g * s[8] - o2 * g * s[9]
    bp[6] = -o12 * s[8] - w * s[9] - o1 * g * s[7] + o2 * g * s[10]
    bp[7] = o12 * s[10] - w * s[7] + o1 * g * s[9] + o2 * g * s[8]
    bp[8] = -o12 * s[9] - w * s[8] + o1 * g * s[10] - o2 * g * s[7]
    bp[9] = o12 * s[11] - w * s[14] - o2 * g * s[12] - o1 * g * s[13]
    bp[10] = -o12 * s[12] - w * s[13] - o2 * g * s[11] + o1 * g * s[14]
    bp[11] = -o12 * s[13] - w * s[12] + o2 * g * s[14] - o1 * g * s[11]
    bp[12] = o12 * s[14] - w * s[11] + o2 * g * s[13] + o1 * g * s[12]
    bp[13] = o1 ** 2 * s[1] - w * s[2] - 2.0 * o1 * g * s[5]
    bp[14] = -o1 ** 2 * s[5] - w * s[5] + o1 * g * (s[2] - s[1])
    bp[15] = -o1 ** 2 * s[5] - w * s[5] + o1 * g * (s[2] - s[1])
    bp[16] = o1 ** 2 * s[2] - w * s[1] + 2.0 * o1 * g * s[5]

    return b, bp


def nmHelpers(t: float, modes: ModeStructure) -> typing.Dict[str, float]:
    """n₁,₂ = e^{γt}/2 sin Ωt, n̄₁,₂ = e^{−γt}/2 sin Ωt, m₁,₂ = cot(Ωt)/2"""
    gamma = modes.delta1
    sin1, sin2 = math.sin(modes.omega1 * t), math.sin(modes.omega2 * t)
    growth, decay = math.exp(gamma * t), math.exp(-gamma * t)
    return {
        'n1': growth / (2.0 * sin1),
        'n2': growth / (2.0 * sin2),
        'nBar1': decay / (2.0 * sin1),
        'nBar2': decay / (2.0 * sin2),
        'm1': math.cos(modes.omega1 * t) / (2.0 * sin1),
        'm2': math.cos(modes.omega2 * t) / (2.0 * sin2),
    }


def dPiFunctions(
    b: np.ndarray, bPrime: np.ndarray, s: np.ndarray,
    n1: float, n2: float, m1: float, m2: float,
    coupling: float, mass: float = 1.0, printedD11: bool = False
) -> DPiValues:
    """
    The eight D-combinations and eight Π-functions of identical oscillators.

    Primed D's equal the unprimed ones, and D₁₀+D′₁₀, D₁₂+D′₁₂ equal
    D₉+D′₉, D₁₁+D′₁₁. The m₂² term of D₁₁+D′₁₁ multiplies (b₁₃ + b′₁); with
    `printedD11` it multiplies (b₁ + b′₁₃) as printed, which breaks the modal
    decomposition when λ ≠ 0.
    """
    bp = bPrime
    mode1 = (b[1] + bp[13], b[2] + bp[14], b[3] + bp[15], b[4] + bp[16])
    mode2 = (b[13] + bp[1], b[14] + bp[2], b[15] + bp[3], b[16] + bp[4])
    half = mass / 2.0

    d3 = half * (-m1 * n1 * mode1[0] + n1 * mode1[2] / 2.0 - m2 * n2 * mode2[0] + n2 * mode2[2] / 2.0)
    d9Sum = half * (-m1 * n1 * mode1[0] + n1 * mode1[2] / 2.0 + m2 * n2 * mode2[0] - n2 * mode2[2] / 2.0)

    def boundary(m: float, sums) -> float:
        return m ** 2 * sums[0] - m * sums[2] / 2.0 - m * sums[1] / 2.0 + sums[3] / 4.0

    d4 = half * (boundary(m1, mode1) + boundary(m2, mode2))
    m2Squared = mode1[0] if printedD11 else mode2[0]
    d11Sum = half * (
        boundary(m1, mode1)
        - m2 ** 2 * m2Squared + m2 * mode2[2] / 2.0 + m2 * mode2[1] / 2.0 - mode2[3] / 4.0
    )

    pi5 = coupling * (-n1 * m1 * s[2] + n1 * s[5] / 2.0 + n2 * m2 * s[4] - n2 * s[6] / 2.0)
    pi6 = coupling * (-n1 * m1 * s[2] + n1 * s[5] / 2.0 - n2 * m2 * s[4] + n2 * s[6] / 2.0)
    pi13 = coupling * (m1 ** 2 * s[2] - m1 * s[5] + s[1] / 4.0 - m2 ** 2 * s[4] + m2 * s[6] - s[3] / 4.0)
    pi14 = coupling * (m1 ** 2 * s[2] - m1 * s[5] + s[1] / 4.0 + m2 ** 2 * s[4] - m2 * s[6] + s[3] / 4.0)

    return DPiValues(
        d3=d3, d3Prime=d3, d4=d4, d4Prime=d4,
        d9Sum=d9Sum, d10Sum=d9Sum, d11Sum=d11Sum, d12Sum=d11Sum,
        pi5=pi5, pi6=pi6, pi7=pi6, pi8=pi5,
        pi13=pi13, pi14=pi14, pi15=pi14, pi16=pi13,
    )


def kinematicSet(
    t: float, params: SystemParams, modes: ModeStructure, printedD11: bool = False
) -> KinematicSet:
    """
    Every deterministic time function at horizon t.

    Raises:
        SingularTimeError: |sin Ωₖt| < ε_sing for either mode.
        HorizonOverflowError: γt beyond MAX_GAMMA_T.
    """
    checkRegularTime(t, modes)
    checkHorizon(t, params.gamma)

    s = sFunctions(t, modes.omega1, modes.omega2)
    b, bPrime = bTables(s, modes.omega1, modes.omega2, params.gamma, params.omega0)
    helpers = nmHelpers(t, modes)
    dpi = dPiFunctions(
        b, bPrime, s,
        helpers['n1'], helpers['n2'], helpers['m1'], helpers['m2'],
        params.coupling, params.mass, printedD11=printedD11,
    )
    return KinematicSet(
        t=t,
        s=tuple(float(v) for v in s),
        b=tuple(float(v) for v in b),
        bPrime=tuple(float(v) for v in bPrime),
        dpi=dpi,
        **helpers,
    )


def modalCoefficients(t: float, modes: ModeStructure, mass: float = 1.0) -> ModalCoefficients:
    """
    Boundary coefficients of the sum and difference modes,
    K3ₖ = −MΩₖnₖ and K4ₖ = (M/2)(Ωₖ cot Ωₖt + γ).

    The printed combinations are recovered as D₃+Π₅ = (K3₁+K3₂)/2,
    D₉+D′₉+Π₆ = (K3₁−K3₂)/2, D₄+Π₁₃ = (K4₁+K4₂)/2 and
    D₁₁+D′₁₁+Π₁₄ = (K4₁−K4₂)/2.
    """
    checkRegularTime(t, modes)
    gamma = modes.delta1
    growth = math.exp(gamma * t)
    k3 = []
    k4 = []
    for omega in modes.frequencies:
        sine = math.sin(omega * t)
        k3.append(-mass * omega * growth / (2.0 * sine))
        k4.append(0.5 * mass * (omega * math.cos(omega * t) / sine + gamma))
    return ModalCoefficients(t=t, k3=tuple(k3), k4=tuple(k4))
