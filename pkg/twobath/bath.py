"""
Thermal bath integrals C₁, C₂ and E₁.

The double time integral of every kernel is done in closed form through the
modal transforms

    Gₖ(ω) = ∫₀ᵗ e^{(γ+iω)τ} sin(Ωₖ(t−τ))/sin(Ωₖt) dτ,

and the remaining frequency integral over [0, ω_c] by adaptive QUADPACK
quadrature, split at the mode resonances.
"""
import math
import typing

import numpy as np
from scipy import integrate

from .interfaces.errors import ParameterDomainError, QuadratureError
from .kinematics import checkHorizon
from .models.kernels import MODAL_PAIRS, BathKernels
from .models.modes import ModeStructure
from .models.params import QuadratureSpec, SystemParams
from .modes import checkRegularTime
from .utils import logging

F14_READINGS = ('corrected', 'printed')

# ω_c·t above which the e^{iωt} part is split off and integrated with QAWO
DIRECT_LIMIT = 200.0

# coth argument beyond which ω·coth(ω/2θ) is ω to double precision
_COTH_SATURATION = 350.0

_PANEL_HALF_WIDTH = 5.0


def kernelBasis(tau, s, omega1: float, omega2: float, f14Reading: str = 'corrected') -> np.ndarray:
    """
    The sixteen trigonometric products f₁…f₁₆ of (τ, s), slot 0 unused.

    f₁₄ is cos(Ω₂τ) sin(Ω₂s) by default; `f14Reading='printed'` gives
    cos(Ω₂τ) sin(Ω₁s), which duplicates f₁₆.
    """
    if f14Reading not in F14_READINGS:
        raise ValueError(f'f14Reading must be one of {F14_READINGS}')

    tau, s = np.broadcast_arrays(np.asarray(tau, dtype=float), np.asarray(s, dtype=float))
    sin1t, cos1t = np.sin(omega1 * tau), np.cos(omega1 * tau)
    sin2t, cos2t = np.sin(omega2 * tau), np.cos(omega2 * tau)
    sin1s, cos1s = np.sin(omega1 * s), np.cos(omega1 * s)
    sin2s, cos2s = np.sin(omega2 * s), np.cos(omega2 * s)

    f = np.zeros((17,) + tau.shape)
    f[1] = sin1t * sin1s
    f[2] = sin2t * sin2s
    f[3] = sin1t * sin2s
    f[4] = sin2t * sin1s
    f[5] = cos1t * cos1s
    f[6] = cos2t * cos2s
    f[7] = cos1t * cos2s
    f[8] = cos2t * cos1s
    f[9] = sin1t * cos1s
    f[10] = cos1t * sin1s
    f[11] = sin1t * cos2s
    f[12] = cos1t * sin2s
    f[13] = sin2t * cos2s
    f[14] = cos2t * sin2s if f14Reading == 'corrected' else cos2t * sin1s
    f[15] = sin2t * cos1s
    f[16] = cos2t * sin1s
    return f


def kernelCE(
    tau, s, m1: float, m2: float, modes: ModeStructure, f14Reading: str = 'corrected'
) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The printed kernel combinations (C⁽¹⁾, C⁽²⁾, E⁽¹⁾) at (τ, s).

    C⁽¹⁾ weighs bath 1 in C₁ and bath 2 in C₂, C⁽²⁾ the other way round;
    E⁽¹⁾ weighs both baths in E₁. `m1`, `m2` belong to the horizon t.
    """
    f = kernelBasis(tau, s, modes.omega1, modes.omega2, f14Reading)
    first = (
        m1 ** 2 * f[1] + m2 ** 2 * f[2] + m1 * m2 * (f[3] + f[4])
        - m1 * (f[9] + f[10] + f[11] + f[16]) / 2.0
        - m2 * (f[12] + f[15] + f[13] + f[14]) / 2.0
        + (f[5] + f[6] + f[7] + f[8]) / 4.0
    )
    second = (
        m1 ** 2 * f[1] + m2 ** 2 * f[2] - m1 * m2 * (f[3] + f[4])
        + m1 * (f[11] + f[16] - f[9] - f[10]) / 2.0
        + m2 * (f[12] + f[15] - f[13] - f[14]) / 2.0
        + (f[5] + f[6] - f[7] - f[8]) / 4.0
    )
    cross = (
        2.0 * m1 ** 2 * f[1] - 2.0 * m2 ** 2 * f[2]
        - m1 * (f[9] + f[10]) + m2 * (f[13] + f[14])
        + (f[5] - f[6]) / 2.0
    )
    return first, second, cross


def modalGreen(omega, t: float, modeOmega: float, gamma: float):
    """
    Gₖ(ω) in closed form,

        [Ω e^{zt} − z sin Ωt − Ω cos Ωt] / ((z² + Ω²) sin Ωt),  z = γ + iω,

    with the numerator arranged so that no O(1) terms cancel at small t.
    """
    omega = np.asarray(omega, dtype=float)
    z = gamma + 1j * omega
    sine = math.sin(modeOmega * t)
    # e^{zt} − 1 from real expm1 pieces
    zExpm1 = math.expm1(gamma * t) * np.exp(1j * omega * t) + (-2.0 * np.sin(0.5 * omega * t) ** 2 + 1j * np.sin(omega * t))
    numerator = modeOmega * (zExpm1 + 2.0 * math.sin(0.5 * modeOmega * t) ** 2) - z * sine
    return numerator / ((z ** 2 + modeOmega ** 2) * sine)


def _boundaryParts(omega, t: float, modeOmega: float, gamma: float):
    """(P, Q) with Gₖ = e^{γt} e^{iωt} P + Q"""
    z = gamma + 1j * omega
    resolvent = z ** 2 + modeOmega ** 2
    sine = math.sin(modeOmega * t)
    cot = math.cos(modeOmega * t) / sine
    return modeOmega / (resolvent * sine), -(z + modeOmega * cot) / resolvent


def innerIntegrals(t: float, omega, modes: ModeStructure) -> np.ndarray:
    """
    Closed-form double time integrals
    ∫₀ᵗ∫₀^τ K(τ,s) cos[ω(τ−s)] e^{γ(τ+s)} ds dτ of the three kernels, for
    K = C⁽¹⁾, C⁽²⁾, E⁽¹⁾ at frequencies ω. Rows are ½|H₊|², ½|H₋|² and
    Re(H₊H₋*) with H± = (G₁ ± G₂)/2.
    """
    gamma = modes.delta1
    green1 = modalGreen(omega, t, modes.omega1, gamma)
    green2 = modalGreen(omega, t, modes.omega2, gamma)
    plus = 0.5 * (green1 + green2)
    minus = 0.5 * (green1 - green2)
    return np.array([
        0.5 * np.abs(plus) ** 2,
        0.5 * np.abs(minus) ** 2,
        (plus * np.conj(minus)).real,
    ])


def thermalWeight(omega: float, theta: float) -> float:
    """ω·coth(ω/2θ), with the limits 2θ at ω = 0 and ω at θ = 0"""
    if theta == 0.0:
        return omega
    if omega == 0.0:
        return 2.0 * theta
    x = omega / (2.0 * theta)
    if x > _COTH_SATURATION:
        return omega
    return omega / math.tanh(x)


def panelBreakpoints(modes: ModeStructure, spec: QuadratureSpec) -> typing.List[float]:
    """Interior breakpoints Ωₖ ± 5γ inside (0, ω_c), sorted and unique"""
    if not spec.splitResonances:
        return []
    width = _PANEL_HALF_WIDTH * modes.delta1
    points = set()
    for omega in modes.frequencies:
        for point in (omega - width, omega + width):
            if 0.0 < point < spec.omegaCutoff:
                points.add(point)
    return sorted(points)


def _checkConvergence(value: float, error: float, failed: bool, panel, spec: QuadratureSpec, label: str):
    threshold = max(spec.absTol, 10.0 * spec.relTol * abs(value))
    if failed and error > threshold:
        raise QuadratureError(
            f'{label}: error estimate {error:.3e} above {threshold:.3e} on panel {panel}',
            panel=panel, errorEstimate=error,
        )
    if error > threshold:
        logging.debug(f'{label}: loose error estimate {error:.3e} (value {value:.6e})')


def _directIntegrals(t, modes, thetas, pairs, spec, points):
    gamma = modes.delta1

    def integrand(omega):
        greens = [modalGreen(omega, t, frequency, gamma) for frequency in modes.frequencies]
        products = [(greens[j] * np.conj(greens[k])).real for j, k in pairs]
        return np.array([thermalWeight(omega, theta) * p for theta in thetas for p in products])

    values, error, info = integrate.quad_vec(
        integrand, 0.0, spec.omegaCutoff,
        epsabs=spec.absTol, epsrel=spec.relTol, norm='max',
        points=points or None, limit=spec.maxSubdivisions, full_output=True,
    )
    worst = tuple(info.intervals[int(np.argmax(info.errors))]) if len(info.errors) else (0.0, spec.omegaCutoff)
    _checkConvergence(float(np.max(np.abs(values))), error, not info.success, worst, spec, f'bath integrals at t={t:g}')
    return list(values), [error] * len(values)


def _splitIntegrals(t, modes, thetas, pairs, spec, points):
    """
    Long horizons: Re(GⱼGₖ*) = e^{2γt}Re(PⱼPₖ*) + Re(QⱼQₖ*) + e^{γt}Re(e^{iωt}F)
    with F = PⱼQₖ* + Qⱼ*Pₖ. The first two terms are smooth; the last is
    integrated with QUADPACK's Fourier weights.
    """
    gamma = modes.delta1
    growth = math.exp(gamma * t)

    def parts(omega):
        return [_boundaryParts(omega, t, frequency, gamma) for frequency in modes.frequencies]

    def smooth(omega):
        pq = parts(omega)
        products = [
            growth ** 2 * (pq[j][0] * np.conj(pq[k][0])).real + (pq[j][1] * np.conj(pq[k][1])).real
            for j, k in pairs
        ]
        return np.array([thermalWeight(omega, theta) * p for theta in thetas for p in products])

    smoothValues, smoothError, info = integrate.quad_vec(
        smooth, 0.0, spec.omegaCutoff,
        epsabs=spec.absTol, epsrel=spec.relTol, norm='max',
        points=points or None, limit=spec.maxSubdivisions, full_output=True,
    )
    worst = tuple(info.intervals[int(np.argmax(info.errors))]) if len(info.errors) else (0.0, spec.omegaCutoff)
    _checkConvergence(
        float(np.max(np.abs(smoothValues))), smoothError, not info.success, worst, spec,
        f'smooth bath integrals at t={t:g}',
    )

    edges = [0.0] + list(points) + [spec.omegaCutoff]
    values = []
    errors = []
    index = 0
    for theta in thetas:
        for j, k in pairs:
            def oscillating(omega, part, j=j, k=k, theta=theta):
                pq = parts(omega)
                f = pq[j][0] * np.conj(pq[k][1]) + np.conj(pq[j][1]) * pq[k][0]
                return thermalWeight(omega, theta) * (f.real if part == 'real' else f.imag)

            smoothValue = float(smoothValues[index])
            tolerance = max(spec.absTol, spec.relTol * abs(smoothValue)) / growth
            cross = 0.0
            crossError = 0.0
            worstPanel, worstError = None, -1.0
            for a, b in zip(edges[:-1], edges[1:]):
                for weight, part, sign in (('cos', 'real', 1.0), ('sin', 'imag', -1.0)):
                    result = integrate.quad(
                        oscillating, a, b, args=(part,), weight=weight, wvar=t,
                        epsabs=tolerance, epsrel=spec.relTol,
                        limit=spec.maxSubdivisions, maxp1=100, full_output=1,
                    )
                    panelValue, panelError = result[0], result[1]
                    cross += sign * panelValue
                    crossError += panelError
                    # a fourth element is QUADPACK's failure message
                    if len(result) > 3 and panelError > worstError:
                        worstPanel, worstError = (a, b), panelError

            value = smoothValue + growth * cross
            error = smoothError + growth * crossError
            _checkConvergence(
                value, error, worstPanel is not None, worstPanel, spec, f'oscillatory bath integral at t={t:g}'
            )
            values.append(value)
            errors.append(error)
            index += 1

    return values, errors


def modalIntegrals(
    t: float, modes: ModeStructure, theta1: float, theta2: float,
    spec: QuadratureSpec, coupled: bool = True, mass: float = 1.0
):
    """
    Per-bath modal integrals Jᵦ[jk] = (2Mγ/π)∫₀^{ω_c} ω coth(ω/2θᵦ) Re(GⱼGₖ*) dω.

    Returns:
        (j1, j2, j1Err, j2Err) - triples ordered (J[11], J[22], J[12]).

    Uncoupled modes share one frequency, so only J[11] is integrated and
    reused; equal temperatures reuse the first bath.
    """
    gamma = modes.delta1
    if gamma == 0.0:
        zeros = (0.0, 0.0, 0.0)
        return zeros, zeros, zeros, zeros

    pairs = MODAL_PAIRS if coupled else MODAL_PAIRS[:1]
    thetas = (theta1,) if theta1 == theta2 else (theta1, theta2)
    points = panelBreakpoints(modes, spec)

    if spec.omegaCutoff * t <= DIRECT_LIMIT:
        values, errors = _directIntegrals(t, modes, thetas, pairs, spec, points)
    else:
        values, errors = _splitIntegrals(t, modes, thetas, pairs, spec, points)

    prefactor = 2.0 * mass * gamma / math.pi
    perBath = len(pairs)

    def expand(sequence, bath):
        chunk = sequence[bath * perBath:(bath + 1) * perBath] if bath < len(thetas) else sequence[:perBath]
        chunk = [prefactor * float(v) for v in chunk]
        if not coupled:
            chunk = chunk * 3
        return tuple(chunk)

    return expand(values, 0), expand(values, 1), expand(errors, 0), expand(errors, 1)


def combineModal(j1, j2) -> typing.Tuple[float, float, float]:
    """(C₁, C₂, E₁) from the modal integrals of the two baths"""
    c1 = (j1[0] + j1[1] + 2.0 * j1[2] + j2[0] + j2[1] - 2.0 * j2[2]) / 8.0
    c2 = (j1[0] + j1[1] - 2.0 * j1[2] + j2[0] + j2[1] + 2.0 * j2[2]) / 8.0
    e1 = (j1[0] - j1[1] + j2[0] - j2[1]) / 4.0
    return c1, c2, e1


def _combineErrors(e1, e2) -> typing.Tuple[float, float, float]:
    c = (e1[0] + e1[1] + 2.0 * e1[2] + e2[0] + e2[1] + 2.0 * e2[2]) / 8.0
    e = (e1[0] + e1[1] + e2[0] + e2[1]) / 4.0
    return c, c, e


def bathIntegrals(
    t: float, params: SystemParams, modes: ModeStructure, spec: QuadratureSpec, cache=None
) -> BathKernels:
    """
    C₁(t), C₂(t) and E₁(t) with quadrature error estimates.

    The modal transforms integrate the factorised kernels, so this always
    follows the corrected f₁₄ reading; `f14Reading` only reaches
    `kernelBasis` and `kernelCE`.

    Args:
        cache: optional `twobath.cache.KernelCache`; hits skip the quadrature.

    Raises:
        ParameterDomainError: ω_c does not exceed Ω₂.
        SingularTimeError: t on the singular set of either mode.
        QuadratureError: a panel failed to converge.
    """
    if spec.omegaCutoff <= max(modes.frequencies):
        raise ParameterDomainError(
            f'ω_c = {spec.omegaCutoff} must exceed the mode frequencies {modes.frequencies}', bound='ω_c > Ω₂'
        )
    checkRegularTime(t, modes)
    checkHorizon(t, params.gamma)

    key = None
    if cache is not None:
        key = cache.key(t, params, spec)
        cached = cache.get(key)
        if cached is not None:
            return cached

    j1, j2, j1Err, j2Err = modalIntegrals(
        t, modes, params.theta1, params.theta2, spec,
        coupled=params.lambdaTilde != 0.0, mass=params.mass,
    )
    c1, c2, e1 = combineModal(j1, j2)
    c1Err, c2Err, e1Err = _combineErrors(j1Err, j2Err)

    kernels = BathKernels(
        t=t, c1=c1, c2=c2, e1=e1, c1Err=c1Err, c2Err=c2Err, e1Err=e1Err,
        j1=j1, j2=j2, j1Err=j1Err, j2Err=j2Err,
    )
    if cache is not None:
        cache.put(key, kernels)
    return kernels
