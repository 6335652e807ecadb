"""
Classical normal modes of the coupled damped pair: frequencies, decay rates,
amplitude ratios and boundary-value trajectories.
"""
import cmath
import math
import typing

import numpy as np

from .interfaces.errors import FreeParticleRegimeError, SingularTimeError
from .models.modes import (
    DecoupledModes, GeneralModeReport, ModeStructure, TrajectoryEndpoints, TrajectoryPoint
)
from .models.params import SystemParams
from .utils import logging

# |sin Ωₖt| below this makes the boundary-value problem singular
SINGULAR_EPSILON = 1e-8

_DELTA_TOLERANCE = 1e-14
_DELTA_MAX_ITERATIONS = 200
# negative discriminants this small are roundoff of an exact zero
_DISCRIMINANT_SLACK = 1e-14


def modeStructure(params: SystemParams) -> ModeStructure:
    """
    Normal modes of the identical pair: Ω₁,₂² = ω₀² − γ² ∓ λ/M, δ₁ = δ₂ = γ,
    r₁ = 1, r₂ = −1.

    Raises:
        FreeParticleRegimeError: one of Ω₁², Ω₂² is not positive. The error
            carries the `decoupledModes` diagnostic.
    """
    base = params.omega0 ** 2 - params.gamma ** 2
    shift = params.coupling / params.mass
    omega1Sq = base - shift
    omega2Sq = base + shift

    if omega1Sq <= 0.0 or omega2Sq <= 0.0:
        raise FreeParticleRegimeError(
            f'non-oscillatory normal mode at λ̃ = {params.lambdaTilde}, γ̃ = {params.gamma} '
            f'(Ω₁² = {omega1Sq:.6g}, Ω₂² = {omega2Sq:.6g}); |λ̃| must stay below 1 − γ̃²',
            diagnostic=decoupledModes(params),
        )

    return ModeStructure(
        omega1=math.sqrt(omega1Sq),
        omega2=math.sqrt(omega2Sq),
        delta1=params.gamma,
        delta2=params.gamma,
    )


def decoupledModes(params: SystemParams) -> DecoupledModes:
    """Hamiltonian sum/difference modes with mass M/2 and ω±² = ω₀² ± λ/M"""
    shift = params.coupling / params.mass
    omegaPlusSq = params.omega0 ** 2 + shift
    omegaMinusSq = params.omega0 ** 2 - shift
    return DecoupledModes(
        reducedMass=params.mass / 2.0,
        omegaPlusSq=omegaPlusSq,
        omegaMinusSq=omegaMinusSq,
        freeParticle=min(omegaPlusSq, omegaMinusSq) <= 0.0,
        diffusion1=params.theta1 / (params.mass * params.gamma),
        diffusion2=params.theta2 / (params.mass * params.gamma),
    )


def generalModeDiagnostic(
    omega01: float, omega02: float, gamma1: float, gamma2: float,
    mass1: float, mass2: float, coupling: float
) -> GeneralModeReport:
    """
    Eigen-structure of two arbitrary damped oscillators with bilinear coupling.

    The quartic roots are solved with the decay rate δ on both sides; each
    mode's δ is found by fixed-point iteration from δ = (γ₁+γ₂)/2. Cubic
    damping terms are neglected. Not used by the dynamics pipeline.

    A negative discriminant gives complex frequencies (reported, not raised);
    at zero coupling the amplitude ratios are divergent and reported as None.
    """
    if min(omega01, omega02, mass1, mass2) <= 0.0:
        raise ValueError('frequencies and masses must be positive')

    w1 = omega01 ** 2
    w2 = omega02 ** 2
    couplingSq = coupling ** 2 / (mass1 * mass2)
    start = 0.5 * (gamma1 + gamma2)

    def squaredFrequency(delta: float, sign: float) -> typing.Tuple[complex, bool]:
        c1 = 2.0 * gamma1 * delta - delta ** 2
        c2 = 2.0 * gamma2 * delta - delta ** 2
        delta1 = 4.0 * (gamma1 - delta) * (gamma2 - delta) - c1 - c2
        delta2 = c1 * c2 - c1 * w2 - c2 * w1
        total = w1 + w2 + delta1
        disc = total ** 2 / 4.0 - w1 * w2 - delta2 + couplingSq
        if disc < 0.0:
            if disc > -_DISCRIMINANT_SLACK * max(1.0, total ** 2):
                return total / 2.0, False
            return total / 2.0 + sign * cmath.sqrt(disc), True
        return total / 2.0 + sign * math.sqrt(disc), False

    def solve(sign: float):
        delta = start
        iterations = 0
        omegaSq, isComplex = squaredFrequency(delta, sign)
        for iterations in range(1, _DELTA_MAX_ITERATIONS + 1):
            re = omegaSq.real if isinstance(omegaSq, complex) else omegaSq
            weight1 = re - w2
            weight2 = re - w1
            denominator = weight1 + weight2
            if abs(denominator) < 1e-300:
                updated = start
            else:
                updated = (weight1 * gamma1 + weight2 * gamma2) / denominator
            converged = abs(updated - delta) <= _DELTA_TOLERANCE * max(1.0, abs(delta))
            delta = updated
            omegaSq, isComplex = squaredFrequency(delta, sign)
            if converged:
                break
        else:
            logging.warning(f'decay-rate iteration did not converge after {iterations} steps')
        return omegaSq, isComplex, delta, iterations

    omega1Sq, complex1, delta1, iterations1 = solve(-1.0)
    omega2Sq, complex2, delta2, iterations2 = solve(+1.0)

    complexFrequencies = complex1 or complex2 or _isNegative(omega1Sq) or _isNegative(omega2Sq)
    omega1 = _root(omega1Sq)
    omega2 = _root(omega2Sq)

    def ratio(wk: float, gammak: float, delta: float, omega, massk: float):
        real = (wk - 2.0 * gammak * delta + delta ** 2) - omega ** 2
        imag = 2.0 * omega * (gammak - delta)
        kappa = _lossAngle(imag, real)
        if coupling == 0.0:
            return None, kappa
        return (real + 1j * imag) / (coupling / massk), kappa

    r1, kappa1 = ratio(w1, gamma1, delta1, omega1, mass1)
    r2, kappa2 = ratio(w2, gamma2, delta2, omega2, mass2)

    return GeneralModeReport(
        omega1=omega1,
        omega2=omega2,
        delta1=delta1,
        delta2=delta2,
        r1=r1,
        r2=r2,
        kappa1=kappa1,
        kappa2=kappa2,
        complexFrequencies=bool(complexFrequencies),
        ratiosDivergent=coupling == 0.0,
        iterations=max(iterations1, iterations2),
    )


def _isNegative(value) -> bool:
    return not isinstance(value, complex) and value < 0.0


def _root(value):
    if isinstance(value, complex) or value < 0.0:
        return cmath.sqrt(value)
    return math.sqrt(value)


def _lossAngle(numerator, denominator) -> float:
    """κ with tan κ = numerator/denominator; 0/0 is 0 and x/0 is ±π/2"""
    numerator = numerator.real if isinstance(numerator, complex) else numerator
    denominator = denominator.real if isinstance(denominator, complex) else denominator
    if abs(numerator) < 1e-15:
        return 0.0
    if denominator == 0.0:
        return math.copysign(math.pi / 2.0, numerator)
    return math.atan(numerator / denominator)


def singularMode(t: float, modes: ModeStructure, epsilon: float = SINGULAR_EPSILON) -> typing.Optional[int]:
    """Index (1 or 2) of the first mode with |sin Ωₖt| < epsilon, else None"""
    for index, omega in enumerate(modes.frequencies, start=1):
        if abs(math.sin(omega * t)) < epsilon:
            return index
    return None


def checkRegularTime(t: float, modes: ModeStructure):
    """
    Raises:
        SingularTimeError: t lies within SINGULAR_EPSILON (in |sin Ωₖt|) of kπ/Ωₖ.
    """
    mode = singularMode(t, modes)
    if mode is not None:
        raise SingularTimeError(
            f't = {t!r} is singular for mode {mode} (|sin Ω{mode}t| < {SINGULAR_EPSILON:g})', mode=mode, t=t
        )


def _modeAmplitude(
    final: float, initial: float, omega: float, t: float, tau, boundary: float, body
):
    """
    One mode of the boundary-value solution, with boundary factor e^{±γt}
    and body factor e^{∓γτ}.
    """
    sine = math.sin(omega * t)
    cot = math.cos(omega * t) / sine
    coefficient = final * boundary / sine - cot * initial
    return (coefficient * np.sin(omega * tau) + initial * np.cos(omega * tau)) * body


def classicalTrajectory(
    modes: ModeStructure, ends: TrajectoryEndpoints, tau
) -> TrajectoryPoint:
    """
    Closed-form classical X and ξ paths of the identical pair at time(s) τ in
    [0, t], meeting the endpoints at τ = 0 and τ = t.

    `tau` may be a float or a numpy array; the fields of the result follow.

    Raises:
        SingularTimeError: |sin Ωₖt| < SINGULAR_EPSILON for either mode.
    """
    t = ends.t
    checkRegularTime(t, modes)
    gamma = modes.delta1
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0.0) or np.any(tau > t * (1.0 + 1e-12)):
        raise ValueError(f'τ must lie in [0, {t}]')

    damped = np.exp(-gamma * tau)
    grown = np.exp(gamma * tau)
    growth = math.exp(gamma * t)
    decay = math.exp(-gamma * t)

    sumX = _modeAmplitude(
        0.5 * (ends.xFinal1 + ends.xFinal2), 0.5 * (ends.xInitial1 + ends.xInitial2),
        modes.omega1, t, tau, growth, damped,
    )
    diffX = _modeAmplitude(
        0.5 * (ends.xFinal2 - ends.xFinal1), 0.5 * (ends.xInitial2 - ends.xInitial1),
        modes.omega2, t, tau, growth, damped,
    )
    sumXi = _modeAmplitude(
        0.5 * (ends.xiFinal1 + ends.xiFinal2), 0.5 * (ends.xiInitial1 + ends.xiInitial2),
        modes.omega1, t, tau, decay, grown,
    )
    diffXi = _modeAmplitude(
        0.5 * (ends.xiFinal2 - ends.xiFinal1), 0.5 * (ends.xiInitial2 - ends.xiInitial1),
        modes.omega2, t, tau, decay, grown,
    )

    point = TrajectoryPoint(
        x1=sumX - diffX,
        x2=sumX + diffX,
        xi1=sumXi - diffXi,
        xi2=sumXi + diffXi,
    )
    if point.x1.ndim == 0:
        return TrajectoryPoint(*(float(v) for v in (point.x1, point.x2, point.xi1, point.xi2)))
    return point
