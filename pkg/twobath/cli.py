"""
Command line entry point.

    twobath relax       --config run.cfg --out out/ --jobs 4
    twobath scan-lambda --lambdas 0.001,0.01,0.1,0.5 --t2-kelvin 700
    twobath scan-temp   --lambdas 0.01,0.1 --t2-kelvin 300,500,700,900
    twobath fdt         --gammas 0.001,0.01,0.1
    twobath selftest

Exit codes: 0 success, 2 configuration or parameter error, 3 numerical error,
4 partial results (some grid points failed).
"""
import argparse
import dataclasses
import math
import sys
import time
import typing

import numpy as np

from . import density, plotting
from .__version__ import __version__
from .config import getConfig
from .evolution import evaluateMoments, relaxationSeries, timeGrid
from .fdt import MIN_DAMPING_TIMES, fdtSweep, fdtVariance, scanLambda, scanTemperature, steadyState
from .interfaces.errors import ConfigError, NumericalError, ParameterDomainError
from .io import OutputFolder
from .kinematics import kinematicSet, modalCoefficients
from .models.manifest import RunManifest
from .models.moments import ScanRow, SeriesResult
from .models.params import NATURAL_DISPERSION, QuadratureSpec, SystemParams
from .modes import modeStructure
from .units import paramsFromConfig, quadratureFromConfig, thetaFromKelvin
from .utils import catchAllExceptionsToLog, logging, timed

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_PARTIAL = 4

DEFAULT_T_START = 0.1
DEFAULT_DAMPING_TIMES = 10.0
DEFAULT_SCAN_LAMBDAS = (0.001, 0.003, 0.01, 0.03, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99)
DEFAULT_TEMPERATURE_LAMBDAS = (0.01, 0.1)
DEFAULT_T2_KELVIN = (300.0, 400.0, 500.0, 600.0, 700.0, 800.0, 900.0, 1000.0)

NUMBER_FORMAT = '%.12e'
RELAX_COLUMNS = ('t_omega0', 'sigma1_sq', 'sigma2_sq', 'cov', 'sigma1_norm', 'sigma2_norm', 'cov_norm', 'pd_flag')
SCAN_COLUMNS = (
    'lambda_tilde', 'theta1', 'theta2', 'sigma1_norm', 'sigma2_norm', 'cov_norm',
    'converged', 'growth_rate', 'flatness', 'pd_flag',
)
FDT_COLUMNS = ('bath', 'theta', 'gamma', 'sigma_sq_fdt', 'error')


def _floatList(text: str) -> typing.List[float]:
    try:
        return [float(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma separated numbers, got "{text}"')


def buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='twobath',
        description='Second moments of two coupled damped quantum oscillators between two heat baths',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='config file: path, file://path or s3://bucket/key')
    common.add_argument('--out', default='out', help='output directory or s3://bucket/prefix')
    common.add_argument('--jobs', type=int, default=1, help='worker processes for grid points')
    common.add_argument('--omega-cutoff', type=float, help='upper frequency limit of the bath integrals (units of ω₀)')
    common.add_argument('--quad-tol', type=float, help='relative quadrature tolerance')
    common.add_argument('--log-format', choices=('txt', 'json'))
    common.add_argument('--log-level', choices=('debug', 'info', 'warning', 'error', 'critical'))

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument('--t-end', type=float, help='final ω₀t (default 10/γ̃)')
    grid.add_argument('--t-points', type=int, help='number of time points')
    grid.add_argument('--svg', action=argparse.BooleanOptionalAction, default=True, help='also write an SVG figure')

    subparsers = parser.add_subparsers(dest='command', required=True)

    relax = subparsers.add_parser('relax', parents=[common, grid], help='relaxation curves σ₁²(t), σ₂²(t), cov(t)')
    relax.add_argument('--t-start', type=float, help=f'first ω₀t (default {DEFAULT_T_START})')
    relax.add_argument('--spacing', choices=('linear', 'log'), default='linear')

    scanL = subparsers.add_parser('scan-lambda', parents=[common, grid], help='steady states against λ̃')
    scanL.add_argument('--lambdas', type=_floatList, default=list(DEFAULT_SCAN_LAMBDAS))
    scanL.add_argument('--t2-kelvin', type=float, help='temperature of bath 2 (overrides T2_K)')

    scanT = subparsers.add_parser('scan-temp', parents=[common, grid], help='steady states against T₂ at fixed T₁')
    scanT.add_argument('--lambdas', type=_floatList, default=list(DEFAULT_TEMPERATURE_LAMBDAS))
    scanT.add_argument('--t2-kelvin', type=_floatList, default=list(DEFAULT_T2_KELVIN))

    fdt = subparsers.add_parser('fdt', parents=[common], help='equilibrium FDT variance of each bath')
    fdt.add_argument('--gammas', type=_floatList, help='also sweep γ̃ over these values')

    subparsers.add_parser('selftest', parents=[common], help='fast invariant checks')

    return parser


def _resolveConfig(args: argparse.Namespace) -> dict:
    config = getConfig(args.config)
    overrides = {
        'omega_cutoff': args.omega_cutoff,
        'quad_rel_tol': args.quad_tol,
        'log_format': args.log_format,
        'log_level': args.log_level,
        't_end': getattr(args, 't_end', None),
        't_points': getattr(args, 't_points', None),
        't_start': getattr(args, 't_start', None),
    }
    t2Kelvin = getattr(args, 't2_kelvin', None)
    if isinstance(t2Kelvin, float):
        overrides['T2_K'] = t2Kelvin
    config.update({k: v for k, v in overrides.items() if v is not None})
    return config


def main(argv: typing.Sequence[str] = None) -> int:
    args = buildParser().parse_args(argv)

    try:
        config = _resolveConfig(args)
        logging.updateLogger(logFormat=config['log_format'], logLevel=config['log_level'])
        spec = quadratureFromConfig(config)
        params = paramsFromConfig(config)

        if args.command == 'relax':
            return cmdRelax(
                config, params, spec, OutputFolder(args.out),
                spacing=args.spacing, jobs=args.jobs, svg=args.svg,
            )
        if args.command == 'scan-lambda':
            return cmdScan(config, params, spec, OutputFolder(args.out), 'lambda', args.lambdas, jobs=args.jobs, svg=args.svg)
        if args.command == 'scan-temp':
            return cmdScan(
                config, params, spec, OutputFolder(args.out), 'temperature', args.lambdas,
                t2Kelvin=args.t2_kelvin, jobs=args.jobs, svg=args.svg,
            )
        if args.command == 'fdt':
            return cmdFdt(config, params, spec, OutputFolder(args.out), gammas=args.gammas)
        return cmdSelftest(config, params, spec)

    except (ConfigError, ParameterDomainError, ValueError) as ex:
        logging.error(f'{type(ex).__name__}: {ex}')
        print(f'error: {ex}', file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as ex:
        logging.error(f'{type(ex).__name__}: {ex}')
        print(f'numerical error: {type(ex).__name__}: {ex}', file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        logging.tearDownLogging(logLevel='warning')


def _tEnd(config: dict, params: SystemParams) -> float:
    return config.get('t_end') or DEFAULT_DAMPING_TIMES / params.gamma


def _format(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return NUMBER_FORMAT % value


def formatCsv(columns: typing.Sequence[str], rows: typing.Iterable[typing.Sequence], manifest: RunManifest) -> str:
    """
    '#' header comments (version, manifest hash, formula readings, every
    warning), then the column row and the data rows.
    """
    lines = [
        f'# twobath {manifest.version}',
        f'# manifest {manifest.manifestHash()}',
        f'# command {manifest.command}',
    ]
    lines.extend(f'# reading {name}={value}' for name, value in sorted(manifest.readings.items()))
    lines.extend(f'# warning {warning}' for warning in manifest.warnings)
    lines.append(','.join(columns))
    lines.extend(','.join(_format(value) for value in row) for row in rows)
    return '\n'.join(lines) + '\n'


def _finish(folder: OutputFolder, manifest: RunManifest, startTime: float) -> str:
    manifest.finish(time.perf_counter() - startTime)
    return folder.appendManifest(manifest)


def _announce(manifest: RunManifest, config: dict) -> str:
    manifestHash = manifest.manifestHash()
    logging.updateLogger(runId=manifestHash, logFormat=config['log_format'], logLevel=config['log_level'])
    return manifestHash


@timed('relax')
def cmdRelax(
    config: dict, params: SystemParams, spec: QuadratureSpec, folder: OutputFolder,
    spacing: str = 'linear', jobs: int = 1, svg: bool = True
) -> int:
    """
    Relaxation series over the configured time grid. Writes relax.csv (and
    relax.svg) and appends the run manifest.

    Returns:
        exit code - EXIT_PARTIAL when some time points failed.

    Raises:
        NumericalError: no point could be evaluated, or the modes are not
            oscillatory.
    """
    startTime = time.perf_counter()
    manifest = RunManifest.create('relax', config, spec)

    modes = modeStructure(params)
    tEnd = _tEnd(config, params)
    tStart = min(config.get('t_start') or DEFAULT_T_START, tEnd)
    times, shifts = timeGrid(tStart, tEnd, config['t_points'], modes, spacing=spacing)
    manifest.extendWarnings(shifts)

    series = relaxationSeries(params, times, spec, jobs=jobs, cacheDir=config.get('cache_dir'))
    manifest.extendWarnings(series.warnings)
    manifest.extendWarnings(
        f'point t={failure.t!r} failed: {failure.errorName}: {failure.message}' for failure in series.failures
    )
    if not series.states:
        raise NumericalError(f'all {len(series.failures)} time points failed')

    fdt1, _ = fdtVariance(params.theta1, params.gamma, spec)
    fdt2, _ = fdtVariance(params.theta2, params.gamma, spec)
    if params.gamma * tEnd >= MIN_DAMPING_TIMES and len(series.states) >= 2:
        steady = steadyState(series.states, fdt1, fdt2, gamma=params.gamma)
        if not steady.converged:
            manifest.addWarning(f'no plateau: flatness {steady.flatness:.3g}, growth rate {steady.growthRate:.3g}')
        print(
            f'steady state over ω₀t ∈ [{steady.windowStart:g}, {steady.windowEnd:g}]: '
            f'σ̃₁² = {steady.sigma1Norm:.6f}, σ̃₂² = {steady.sigma2Norm:.6f}, '
            f'β̃₁₂⁻¹ = {steady.covNorm:.6f}, converged = {steady.converged}'
        )

    manifestHash = _announce(manifest, config)
    folder.writeText('relax.csv', formatCsv(RELAX_COLUMNS, _relaxRows(series, fdt1, fdt2), manifest))
    if svg:
        figure = plotting.relaxationFigure(series.states, fdt1, fdt2, title=f'λ̃ = {params.lambdaTilde:g}')
        folder.writeBytes('relax.svg', plotting.toSvg(figure))
    _finish(folder, manifest, startTime)

    logging.info(f'relax run {manifestHash}: {len(series.states)} points, {len(series.failures)} failed')
    return EXIT_PARTIAL if series.partial else EXIT_OK


def _relaxRows(series: SeriesResult, fdt1: float, fdt2: float):
    scale = math.sqrt(fdt1 * fdt2)
    for state in series.states:
        yield (
            state.t, state.sigma1SqNatural, state.sigma2SqNatural, state.covNatural,
            state.sigma1Sq / fdt1, state.sigma2Sq / fdt2, state.cov / scale, state.positiveDefinite,
        )


@timed('scan')
def cmdScan(
    config: dict, params: SystemParams, spec: QuadratureSpec, folder: OutputFolder,
    kind: str, lambdas: typing.Sequence[float], t2Kelvin: typing.Sequence[float] = None,
    jobs: int = 1, svg: bool = True
) -> int:
    """
    λ̃ scan (kind 'lambda') or T₂ scan (kind 'temperature') of the steady
    state. Writes scan_<kind>.csv (and .svg) and appends the run manifest.
    """
    if kind not in ('lambda', 'temperature'):
        raise ValueError(f'unknown scan kind "{kind}"')
    startTime = time.perf_counter()
    manifest = RunManifest.create(f'scan-{kind}', config, spec)
    tEnd = _tEnd(config, params)
    points = config['t_points']
    cacheDir = config.get('cache_dir')

    if kind == 'lambda':
        rows = scanLambda(params, lambdas, tEnd, spec, points=points, jobs=jobs, cacheDir=cacheDir)
    else:
        omega0 = config['omega0_radps']
        theta2s = [thetaFromKelvin(kelvin, omega0) for kelvin in t2Kelvin]
        rows = scanTemperature(params, theta2s, lambdas, tEnd, spec, points=points, jobs=jobs, cacheDir=cacheDir)

    for row in rows:
        if not row.ok:
            manifest.addWarning(f'scan point λ̃={row.lambdaTilde!r}, θ₂={row.theta2!r} failed: {row.failure}')
        elif not row.steady.converged:
            manifest.addWarning(
                f'scan point λ̃={row.lambdaTilde!r}, θ₂={row.theta2!r} unconverged, growth rate {row.steady.growthRate:.3g}'
            )

    succeeded = [row for row in rows if row.ok]
    if not succeeded:
        raise NumericalError(f'all {len(rows)} scan points failed')

    _announce(manifest, config)
    name = f'scan_{kind}'
    folder.writeText(f'{name}.csv', formatCsv(SCAN_COLUMNS, (_scanRow(row) for row in rows), manifest))
    if svg:
        if kind == 'lambda':
            figure = plotting.lambdaScanFigure(rows)
        else:
            figure = plotting.temperatureScanFigure(rows, params.theta1)
        folder.writeBytes(f'{name}.svg', plotting.toSvg(figure))
    _finish(folder, manifest, startTime)

    return EXIT_PARTIAL if len(succeeded) < len(rows) else EXIT_OK


def _scanRow(row: ScanRow):
    if not row.ok:
        return (row.lambdaTilde, row.theta1, row.theta2) + (math.nan,) * 3 + (False, math.nan, math.nan, False)
    steady = row.steady
    return (
        row.lambdaTilde, row.theta1, row.theta2, steady.sigma1Norm, steady.sigma2Norm, steady.covNorm,
        steady.converged, steady.growthRate, steady.flatness, steady.positiveDefinite,
    )


@timed('fdt')
def cmdFdt(
    config: dict, params: SystemParams, spec: QuadratureSpec, folder: OutputFolder,
    gammas: typing.Sequence[float] = None
) -> int:
    """
    Prints σ²(FDT) of each bath in units of ℏ/2Mω₀ with its quadrature error,
    optionally for a sweep of γ̃, and writes fdt.csv.
    """
    startTime = time.perf_counter()
    manifest = RunManifest.create('fdt', config, spec)

    rows = []
    for bath, theta in ((1, params.theta1), (2, params.theta2)):
        for gamma, value, error in fdtSweep(theta, [params.gamma] + list(gammas or []), spec):
            rows.append((bath, theta, gamma, value / NATURAL_DISPERSION, error / NATURAL_DISPERSION))
            print(
                f'bath {bath}: θ = {theta:.6g}, γ̃ = {gamma:g}, '
                f'σ²(FDT) = {value / NATURAL_DISPERSION:.10g} ± {error / NATURAL_DISPERSION:.2g} (ℏ/2Mω₀)'
            )
    if any(theta == 0.0 for theta in (params.theta1, params.theta2)):
        manifest.addWarning('θ = 0: σ²(FDT) approaches 1 (ℏ/2Mω₀) only as γ̃ → 0')

    _announce(manifest, config)
    folder.writeText('fdt.csv', formatCsv(FDT_COLUMNS, rows, manifest))
    _finish(folder, manifest, startTime)
    return EXIT_OK


SELFTEST_TIMES = (0.5, 7.3, 40.1)


@catchAllExceptionsToLog
def _checkLambdaZeroReduction(spec: QuadratureSpec) -> bool:
    params = SystemParams(gamma=0.01, lambdaTilde=0.0, theta1=3.93, theta2=3.93)
    modes = modeStructure(params)
    for t in SELFTEST_TIMES:
        general = evaluateMoments(t, params, spec).sigma1Sq
        closed = density.uncoupledVariance(t, params.theta1, params.a1, modes, spec)
        if abs(general - closed) > 1e-6 * abs(closed):
            logging.warning(f'λ=0 reduction at t={t}: {general!r} vs {closed!r}')
            return False
    return True


@catchAllExceptionsToLog
def _checkKinematicIdentities(spec: QuadratureSpec) -> bool:
    params = SystemParams(gamma=0.01, lambdaTilde=0.3)
    modes = modeStructure(params)
    t = 2.7
    kin = kinematicSet(t, params, modes)
    modal = modalCoefficients(t, modes)
    pairs = (
        (kin.a11, (modal.k3[0] + modal.k3[1]) / 2.0),
        (kin.a21, (modal.k3[0] - modal.k3[1]) / 2.0),
        (kin.b11, (modal.k4[0] + modal.k4[1]) / 2.0),
        (kin.b21, (modal.k4[0] - modal.k4[1]) / 2.0),
    )
    scale = max(abs(expected) for _, expected in pairs)
    return all(abs(value - expected) <= 1e-10 * scale for value, expected in pairs)


@catchAllExceptionsToLog
def _checkFdtHighTemperature(spec: QuadratureSpec) -> bool:
    value, _ = fdtVariance(50.0, 0.01, spec)
    return abs(value - 50.0) <= 0.01 * 50.0


@catchAllExceptionsToLog
def _checkParity(spec: QuadratureSpec) -> bool:
    params = SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=3.93, theta2=9.16)
    positive = evaluateMoments(5.0, params, spec)
    negative = evaluateMoments(5.0, dataclasses.replace(params, lambdaTilde=-0.3), spec)
    return (
        abs(positive.sigma1Sq - negative.sigma1Sq) <= 1e-4 * positive.sigma1Sq
        and abs(positive.sigma2Sq - negative.sigma2Sq) <= 1e-4 * positive.sigma2Sq
        and abs(positive.cov + negative.cov) <= 1e-4 * abs(positive.cov)
    )


SELFTEST_CHECKS = {
    'lambda-zero-reduction': _checkLambdaZeroReduction,
    'kinematic-identities': _checkKinematicIdentities,
    'fdt-high-temperature': _checkFdtHighTemperature,
    'coupling-parity': _checkParity,
}


@timed('selftest')
def cmdSelftest(config: dict, params: SystemParams, spec: QuadratureSpec) -> int:
    """Runs every SELFTEST_CHECKS entry; a check that raises counts as failed"""
    failed = []
    for name, check in SELFTEST_CHECKS.items():
        passed = bool(check(spec))
        print(f'{"PASS" if passed else "FAIL"} {name}')
        if not passed:
            failed.append(name)
    return EXIT_NUMERICAL if failed else EXIT_OK
