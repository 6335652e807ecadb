import copy
import dataclasses
import logging
import os
import typing

from . import aws
from .interfaces.errors import ConfigError

# To avoid importing twobath.utils.logging in case of circular logic
logger = logging.getLogger()


def _parseBool(value) -> bool:
    if isinstance(value, bool):
        return value
    lowered = str(value).strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f'"{value}" is not a boolean')


@dataclasses.dataclass
class _ConfigVariableDefinition:
    name: str
    python_type: typing.Callable
    default: typing.Any = None


CONFIG_ENV_VAR_NAME = 'TWOBATH_CONFIG'
CONFIG_VARS = [
    # physical parameters, laboratory units
    _ConfigVariableDefinition('mass_g', float, 1e-23),
    _ConfigVariableDefinition('omega0_radps', float, 1e13),
    _ConfigVariableDefinition('gamma_over_omega0', float, 0.01),
    _ConfigVariableDefinition('lambda_tilde', float, 0.0),
    _ConfigVariableDefinition('T1_K', float, 300.0),
    _ConfigVariableDefinition('T2_K', float, 300.0),
    _ConfigVariableDefinition('sigma01_sq_natural', float, 1.0),
    _ConfigVariableDefinition('sigma02_sq_natural', float, 1.0),
    # quadrature
    _ConfigVariableDefinition('omega_cutoff', float, 50.0),
    _ConfigVariableDefinition('quad_rel_tol', float, 1e-8),
    _ConfigVariableDefinition('quad_abs_tol', float, 1e-14),
    _ConfigVariableDefinition('quad_max_depth', int, 200),
    _ConfigVariableDefinition('split_resonances', _parseBool, True),
    _ConfigVariableDefinition('cache_dir', str),
    # time grid, in units of 1/ω₀
    _ConfigVariableDefinition('t_start', float),
    _ConfigVariableDefinition('t_end', float),
    _ConfigVariableDefinition('t_points', int, 50),
    _ConfigVariableDefinition('log_level', str, 'warning'),
    _ConfigVariableDefinition('log_format', str, 'txt'),
]


def getConfig(configPath: str = None) -> dict:
    """
    Retrieves the run configuration.

    The source is `configPath` when given, otherwise the value of the
    TWOBATH_CONFIG environment variable, otherwise no source at all (defaults
    only). A source is a filesystem path, "file://path" or "s3://bucket/key".

    The format is line oriented, one "key = value" pair per line; "#" starts
    a comment.

    Returns:
        dict - keys are config variables, values are the corresponding values for those variables.

    Raises:
        ConfigError: the source cannot be read, or a line cannot be parsed or typed.
    """
    if configPath is None:
        configPath = os.environ.get(CONFIG_ENV_VAR_NAME)

    lineNumbers = {}
    config = {}
    if configPath:
        text = _getConfigString(configPath)
        if isinstance(text, bytes):
            text = text.decode('utf-8')
        config, lineNumbers = _parseConfigText(text)

    config = _addDefaults(config)
    config = _enforceTypes(config, lineNumbers)
    _checkUnrecognisedVars(config)

    return config


def _getConfigString(configPath: str) -> typing.Union[str, bytes]:
    if configPath.startswith('s3://'):
        contents, _ = aws.s3.getObject(configPath)
        return contents

    if configPath.startswith('file://'):
        return _readFile(configPath[7:])

    if '://' in configPath:
        raise ConfigError(f'"{configPath}" not recognised as a valid path to a config.')

    return _readFile(configPath)


def _parseConfigText(text: str) -> typing.Tuple[dict, dict]:
    """
    Parses "key = value" lines.

    Returns:
        (config, lineNumbers) - the raw string values and the 1-based line each key came from.
    """
    config = {}
    lineNumbers = {}
    for lineNumber, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue

        if '=' not in line:
            raise ConfigError(f'expected "key = value", got "{line}"', lineNumber)

        key, value = (part.strip() for part in line.split('=', 1))
        if not key:
            raise ConfigError('missing key before "="', lineNumber)
        if key in config:
            raise ConfigError(f'duplicate key "{key}" (first set on line {lineNumbers[key]})', lineNumber)

        config[key] = value
        lineNumbers[key] = lineNumber

    return config, lineNumbers


def _addDefaults(config: dict) -> dict:
    defaults = _getDefaultConfig()
    defaults.update(config)
    return defaults


def _getDefaultConfig() -> dict:
    """Contains default values for all twobath config options.

    Returns:
        dict: The default config.
    """
    return {
        config_var.name: config_var.default
        for config_var in CONFIG_VARS
        if config_var.default is not None
    }


def _enforceTypes(config: dict, lineNumbers: dict = None) -> dict:
    lineNumbers = lineNumbers or {}
    config = copy.deepcopy(config)
    for config_var in CONFIG_VARS:
        if config_var.name not in config:
            continue
        try:
            config[config_var.name] = config_var.python_type(config[config_var.name])
        except (TypeError, ValueError) as ex:
            raise ConfigError(
                f'{config_var.name}: cannot read "{config[config_var.name]}" ({ex})',
                lineNumbers.get(config_var.name)
            ) from ex
    return config


def _checkUnrecognisedVars(config: dict):
    knownVars = {
        config_var.name
        for config_var in CONFIG_VARS
    }
    for config_var in config.keys():
        if config_var not in knownVars:
            logger.warning('Using unrecognised config variable %s', config_var)


def _readFile(path: str) -> str:
    try:
        with open(path, 'r') as fd:
            contents = fd.read()
    except OSError as ex:
        raise ConfigError(f'cannot read config file "{path}": {ex}') from ex
    return contents
