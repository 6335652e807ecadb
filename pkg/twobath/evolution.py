"""
End-to-end moment evaluation: time grids, single points and parallel series.
"""
import concurrent.futures
import functools
import math
import typing

import numpy as np

from . import density
from .bath import bathIntegrals
from .cache import KernelCache
from .interfaces.errors import NumericalError
from .kinematics import checkHorizon, kinematicSet
from .models.modes import ModeStructure
from .models.moments import MomentPath, MomentState, PointFailure, SeriesResult
from .models.params import QuadratureSpec, SystemParams
from .modes import SINGULAR_EPSILON, modeStructure
from .utils import logging, timed

# min |sin Ωₖt| below which the modal covariance replaces the printed assembly
MODAL_SWITCH = 1e-4

# γt above which the printed assembly holds e^{4γt}-sized intermediates;
# the modal covariance takes over there
PRINTED_GAMMA_T = 150.0

SPACINGS = ('linear', 'log')

# one cache per worker process, keyed by cache directory
_PROCESS_CACHES: typing.Dict[typing.Optional[str], KernelCache] = {}


def singularShiftedGrid(
    times: typing.Iterable[float], modes: ModeStructure, epsilon: float = SINGULAR_EPSILON
) -> typing.Tuple[typing.List[float], typing.List[str]]:
    """
    Moves every time with |sin Ωₖt| < epsilon to the phase jπ + 3·epsilon of
    that mode, t′ = (jπ + 3ε)/Ωₖ with j = round(Ωₖt/π).

    Returns:
        (times, warnings) - the shifted grid and one warning per shift.
    """
    shifted = []
    warnings = []
    for t in times:
        original = t
        for _ in range(4):
            moved = False
            for index, omega in enumerate(modes.frequencies, start=1):
                if abs(math.sin(omega * t)) < epsilon:
                    j = round(omega * t / math.pi)
                    t = (j * math.pi + 3.0 * epsilon) / omega
                    moved = True
                    warnings.append(f'singular time {original!r} shifted to {t!r} (mode {index})')
            if not moved:
                break
        shifted.append(t)

    for warning in warnings:
        logging.warning(warning)
    return shifted, warnings


def timeGrid(
    tStart: float, tEnd: float, points: int, modes: ModeStructure, spacing: str = 'linear'
) -> typing.Tuple[typing.List[float], typing.List[str]]:
    """Evaluation times in [tStart, tEnd], shifted off the singular set"""
    if spacing not in SPACINGS:
        raise ValueError(f'spacing must be one of {SPACINGS}')
    if points < 1:
        raise ValueError('a time grid needs at least one point')
    if not 0.0 < tStart <= tEnd:
        raise ValueError(f'need 0 < tStart ≤ tEnd, got [{tStart}, {tEnd}]')

    if spacing == 'log':
        times = np.geomspace(tStart, tEnd, points)
    else:
        times = np.linspace(tStart, tEnd, points)
    return singularShiftedGrid([float(t) for t in times], modes)


def evaluateMoments(
    t: float, params: SystemParams, spec: QuadratureSpec,
    cache: KernelCache = None, printedD11: bool = False
) -> MomentState:
    """
    Moments at one time through the full pipeline: modes, kinematics, bath
    integrals, intermediates, β and the three ratios.

    Within MODAL_SWITCH of a singular time, and beyond PRINTED_GAMMA_T, the
    covariance is assembled in mode coordinates instead and the state
    records a warning.

    Raises:
        NumericalError: any pipeline failure at this time.
    """
    modes = modeStructure(params)
    checkHorizon(t, params.gamma)
    kernels = bathIntegrals(t, params, modes, spec, cache)

    nearest = min(abs(math.sin(omega * t)) for omega in modes.frequencies)
    warning = None
    if nearest < MODAL_SWITCH:
        warning = f't = {t!r} within {MODAL_SWITCH:g} of a singular time; modal covariance used'
    elif params.gamma * t > PRINTED_GAMMA_T:
        warning = f'γt beyond {PRINTED_GAMMA_T:g}; modal covariance used'
    if warning is not None:
        logging.info(warning)
        covariance = density.modalCovariance(t, modes, kernels, params.a1, params.a2, mass=params.mass)
        beta = density.betaFromCovariance(covariance)
        return density.moments(beta, t=t, strict=False, path=MomentPath.MODAL, warnings=(warning,))

    kin = kinematicSet(t, params, modes, printedD11=printedD11)
    im = density.intermediates(kin, kernels, params.a1, params.a2)
    beta = density.betaCoefficients(im, kin, kernels, params.a2)
    return density.moments(beta, t=t, strict=False, path=MomentPath.PRINTED)


def _processCache(cacheDir: typing.Optional[str]) -> KernelCache:
    if cacheDir not in _PROCESS_CACHES:
        _PROCESS_CACHES[cacheDir] = KernelCache(cacheDir)
    return _PROCESS_CACHES[cacheDir]


def _evaluatePoint(
    t: float, params: SystemParams, spec: QuadratureSpec, cacheDir: typing.Optional[str] = None
) -> typing.Union[MomentState, PointFailure]:
    try:
        return evaluateMoments(t, params, spec, _processCache(cacheDir))
    except NumericalError as ex:
        logging.warning(f'point t={t!r} failed: {type(ex).__name__}: {ex}')
        return PointFailure(t=t, errorName=type(ex).__name__, message=str(ex))


@timed('relaxationSeries')
def relaxationSeries(
    params: SystemParams, times: typing.Sequence[float], spec: QuadratureSpec,
    jobs: int = 1, cacheDir: str = None
) -> SeriesResult:
    """
    Moments over a time grid. Points are independent; `jobs` > 1 spreads
    them over a process pool and the result keeps grid order.

    Raises:
        FreeParticleRegimeError: the parameters have no oscillatory modes.
    """
    modeStructure(params)
    work = functools.partial(_evaluatePoint, params=params, spec=spec, cacheDir=cacheDir)

    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(work, times))
    else:
        outcomes = [work(t) for t in times]

    result = SeriesResult()
    for outcome in outcomes:
        if isinstance(outcome, PointFailure):
            result.failures.append(outcome)
            continue
        result.states.append(outcome)
        result.warnings.extend(outcome.warnings)
        if not outcome.positiveDefinite:
            result.warnings.append(f'non-positive-definite Gaussian at t = {outcome.t!r}')

    if result.failures:
        logging.warning(f'{len(result.failures)} of {len(outcomes)} points failed')
    return result
