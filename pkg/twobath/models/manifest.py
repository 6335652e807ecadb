import typing

from ..interfaces.serializing import JsonSerializable
from ..utils import canonicalHash, currentISOTimestampUTC
from ..__version__ import __version__


# formula readings every run uses; f14 is fixed by the modal bath transforms
DEFAULT_READINGS = {'f14': 'corrected', 'd11': 'corrected'}


class RunManifest(JsonSerializable):
    """
    Provenance of one CLI run. Every emitted data file carries the hash of
    exactly one manifest.

    Usage:

    ```
    manifest = RunManifest.create('relax', config, spec)
    manifest.addWarning('t = 3.1416 shifted to 3.1416 (mode 1 singular)')
    folder.appendManifest(manifest)
    ```
    """

    def __init__(self):
        self.command         = ''
        self.config          = {}
        self.quadrature      = {}
        self.quadratureToken = ''
        self.version         = __version__
        self.readings        = dict(DEFAULT_READINGS)
        self.warnings        = []
        self.wallTimeSeconds = None
        self.createdAt       = None

    @classmethod
    def create(cls, command: str, config: dict, spec=None, readings: dict = None) -> 'RunManifest':
        this = cls()
        this.command = command
        this.config = {k: config[k] for k in sorted(config)}
        if spec is not None:
            this.quadrature = {
                'omegaCutoff': spec.omegaCutoff,
                'relTol': spec.relTol,
                'absTol': spec.absTol,
                'maxSubdivisions': spec.maxSubdivisions,
                'splitResonances': spec.splitResonances,
            }
            this.quadratureToken = spec.token()
        if readings:
            this.readings.update(readings)
        return this

    def addWarning(self, warning: str):
        if warning not in self.warnings:
            self.warnings.append(warning)

    def extendWarnings(self, warnings: typing.Iterable[str]):
        for warning in warnings:
            self.addWarning(warning)

    def finish(self, wallTimeSeconds: float):
        self.wallTimeSeconds = wallTimeSeconds
        self.createdAt = currentISOTimestampUTC()

    def manifestHash(self) -> str:
        """Content hash, independent of wall time and creation timestamp"""
        content = self.toDict()
        content.pop('wallTimeSeconds', None)
        content.pop('createdAt', None)
        return canonicalHash(content)

    def jsonKeys(self) -> typing.Iterable:
        return [
            'command', 'config', 'quadrature', 'quadratureToken', 'version',
            'readings', 'warnings', 'wallTimeSeconds', 'createdAt',
        ]
