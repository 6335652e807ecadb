"""
Equilibrium (fluctuation–dissipation) variance, steady-state extraction and
the λ̃ and temperature scans built on them.
"""
import dataclasses
import functools
import math
import typing

import numpy as np
from scipy import integrate

from .bath import thermalWeight
from .evolution import relaxationSeries, timeGrid
from .interfaces.errors import ParameterDomainError, QuadratureError, TwobathError
from .models.moments import MomentState, ScanRow, SteadyState
from .models.params import QuadratureSpec, SystemParams
from .modes import modeStructure
from .utils import logging, timed

WINDOW_FRACTION = 0.25
FLATNESS_THRESHOLD = 0.01
HALF_WINDOW_TOLERANCE = 0.005
MIN_DAMPING_TIMES = 5.0
PLATEAU_POINTS = 8

_RESONANCE_HALF_WIDTH = 5.0


def _fdtIntegrand(nu: float, theta: float, gamma: float) -> float:
    return thermalWeight(nu, theta) * 2.0 * gamma / (math.pi * ((nu ** 2 - 1.0) ** 2 + 4.0 * gamma ** 2 * nu ** 2))


@functools.lru_cache(maxsize=256)
def fdtVariance(theta: float, gamma: float, spec: QuadratureSpec = None) -> typing.Tuple[float, float]:
    """
    Equilibrium position variance of one damped oscillator in its bath,

        σ²(FDT) = (1/π)∫₀^∞ coth(ν/2θ) 2γν / ((ν² − 1)² + 4γ²ν²) dν,

    internal units. The ν → 0 limit of the integrand is 4γθ/π.

    Returns:
        (value, errorEstimate)

    Raises:
        QuadratureError: a panel failed to converge.
    """
    if theta < 0.0 or not gamma > 0.0:
        raise ParameterDomainError(f'need θ ≥ 0 and γ > 0, got θ={theta}, γ={gamma}', bound='θ ≥ 0, γ > 0')
    spec = spec or QuadratureSpec()

    lower = 1.0 - _RESONANCE_HALF_WIDTH * gamma
    upper = 1.0 + _RESONANCE_HALF_WIDTH * gamma
    edges = [0.0, lower, upper, math.inf] if lower > 0.0 else [0.0, upper, math.inf]

    value = 0.0
    error = 0.0
    failure = None
    for a, b in zip(edges[:-1], edges[1:]):
        result = integrate.quad(
            _fdtIntegrand, a, b, args=(theta, gamma),
            epsabs=spec.absTol, epsrel=spec.relTol, limit=spec.maxSubdivisions, full_output=1,
        )
        value += result[0]
        error += result[1]
        if len(result) > 3:
            failure = (a, b)

    if failure is not None and error > max(spec.absTol, 10.0 * spec.relTol * abs(value)):
        raise QuadratureError(
            f'FDT variance at θ={theta}, γ={gamma}: error {error:.3e} on panel {failure}',
            panel=failure, errorEstimate=error,
        )
    return value, error


def fdtSweep(theta: float, gammas: typing.Iterable[float], spec: QuadratureSpec = None):
    """[(γ, σ²(FDT), error)] over a damping sweep at fixed θ"""
    return [(gamma, *fdtVariance(theta, gamma, spec)) for gamma in gammas]


def steadyState(
    series: typing.Sequence[MomentState], fdt1: float, fdt2: float,
    windowFraction: float = WINDOW_FRACTION, gamma: float = None,
    flatnessThreshold: float = FLATNESS_THRESHOLD, halfWindowTolerance: float = HALF_WINDOW_TOLERANCE,
) -> SteadyState:
    """
    Plateau of the trailing `windowFraction` of a series, normalized by the
    FDT variances.

    Converged means flatness (max − min)/mean below `flatnessThreshold` for
    both normalized variances, and the two half-window means agreeing within
    `halfWindowTolerance`. The growth rate is the linear-fit slope of
    σ₁² + σ₂² over the window divided by its mean.

    Raises:
        ParameterDomainError: the series spans fewer than 5 damping times
            (only checked when `gamma` is given).
        ValueError: fewer than two states in the window.
    """
    states = sorted(series, key=lambda state: state.t)
    if gamma is not None and states and gamma * states[-1].t < MIN_DAMPING_TIMES:
        raise ParameterDomainError(
            f'series ends at γt = {gamma * states[-1].t:.3g}, below {MIN_DAMPING_TIMES:g} damping times',
            bound='γt_end ≥ 5',
        )

    count = max(2, int(math.ceil(windowFraction * len(states))))
    window = states[-count:]
    if len(window) < 2:
        raise ValueError('steady-state extraction needs at least two states in the window')

    times = np.array([state.t for state in window])
    sigma1 = np.array([state.sigma1Sq for state in window])
    sigma2 = np.array([state.sigma2Sq for state in window])
    cov = np.array([state.cov for state in window])
    norm1 = sigma1 / fdt1
    norm2 = sigma2 / fdt2

    flatness = max(_flatness(norm1), _flatness(norm2))
    half = len(window) // 2
    halvesAgree = all(
        abs(np.mean(values[:half]) - np.mean(values[half:])) <= halfWindowTolerance * abs(np.mean(values))
        for values in (norm1, norm2)
    )

    total = sigma1 + sigma2
    if np.ptp(times) > 0.0:
        slope = np.polyfit(times, total, 1)[0]
    else:
        slope = 0.0
    growthRate = float(slope / np.mean(total))

    converged = bool(flatness < flatnessThreshold and halvesAgree)
    if not converged:
        logging.warning(
            f'no plateau over t ∈ [{times[0]:g}, {times[-1]:g}]: flatness {flatness:.3g}, growth rate {growthRate:.3g}'
        )

    return SteadyState(
        sigma1Norm=float(np.mean(norm1)),
        sigma2Norm=float(np.mean(norm2)),
        covNorm=float(np.mean(cov) / math.sqrt(fdt1 * fdt2)),
        windowStart=float(times[0]),
        windowEnd=float(times[-1]),
        flatness=float(flatness),
        converged=converged,
        growthRate=growthRate,
        positiveDefinite=all(state.positiveDefinite for state in window),
        fdt1=fdt1,
        fdt2=fdt2,
        sigma1Sq=float(np.mean(sigma1)),
        sigma2Sq=float(np.mean(sigma2)),
        cov=float(np.mean(cov)),
    )


def _flatness(values: np.ndarray) -> float:
    mean = np.mean(values)
    if mean == 0.0:
        return math.inf
    return float(np.ptp(values) / abs(mean))


def plateau(
    params: SystemParams, tEnd: float, spec: QuadratureSpec,
    points: int = PLATEAU_POINTS, jobs: int = 1, cacheDir: str = None
) -> SteadyState:
    """
    Steady state of one parameter set from a grid over the trailing quarter
    of [0, tEnd].
    """
    modes = modeStructure(params)
    times, _ = timeGrid((1.0 - WINDOW_FRACTION) * tEnd, tEnd, points, modes)
    series = relaxationSeries(params, times, spec, jobs=jobs, cacheDir=cacheDir)
    if len(series.states) < 2:
        raise ValueError(f'only {len(series.states)} plateau points evaluated')
    fdt1, _ = fdtVariance(params.theta1, params.gamma, spec)
    fdt2, _ = fdtVariance(params.theta2, params.gamma, spec)
    return steadyState(series.states, fdt1, fdt2, windowFraction=1.0, gamma=params.gamma)


def _scanRow(params: SystemParams, tEnd, spec, points, jobs, cacheDir) -> ScanRow:
    try:
        steady = plateau(params, tEnd, spec, points=points, jobs=jobs, cacheDir=cacheDir)
    except (TwobathError, ValueError) as ex:
        logging.warning(f'scan point λ̃={params.lambdaTilde}, θ₂={params.theta2} failed: {ex}')
        return ScanRow(params.lambdaTilde, params.theta1, params.theta2, failure=f'{type(ex).__name__}: {ex}')
    return ScanRow(params.lambdaTilde, params.theta1, params.theta2, steady=steady)


@timed('scanLambda')
def scanLambda(
    params: SystemParams, lambdas: typing.Iterable[float], tEnd: float, spec: QuadratureSpec = None,
    points: int = PLATEAU_POINTS, jobs: int = 1, cacheDir: str = None
) -> typing.List[ScanRow]:
    """Steady states over a λ̃ grid, every other parameter fixed"""
    spec = spec or QuadratureSpec()
    rows = []
    for lambdaTilde in lambdas:
        try:
            point = dataclasses.replace(params, lambdaTilde=lambdaTilde)
        except ParameterDomainError as ex:
            rows.append(ScanRow(lambdaTilde, params.theta1, params.theta2, failure=f'{type(ex).__name__}: {ex}'))
            continue
        rows.append(_scanRow(point, tEnd, spec, points, jobs, cacheDir))
    return rows


@timed('scanTemperature')
def scanTemperature(
    params: SystemParams, theta2s: typing.Iterable[float], lambdas: typing.Iterable[float],
    tEnd: float, spec: QuadratureSpec = None,
    points: int = PLATEAU_POINTS, jobs: int = 1, cacheDir: str = None
) -> typing.List[ScanRow]:
    """Steady states over θ₂ at fixed θ₁, one curve per λ̃"""
    spec = spec or QuadratureSpec()
    theta2s = list(theta2s)
    rows = []
    for lambdaTilde in lambdas:
        for theta2 in theta2s:
            try:
                point = dataclasses.replace(params, lambdaTilde=lambdaTilde, theta2=theta2)
            except ParameterDomainError as ex:
                rows.append(ScanRow(lambdaTilde, params.theta1, theta2, failure=f'{type(ex).__name__}: {ex}'))
                continue
            rows.append(_scanRow(point, tEnd, spec, points, jobs, cacheDir))
    return rows
