"""
Memoization of `BathKernels` per (t, θ₁, θ₂, λ̃, γ, quadrature spec).

Entries live in a bounded, thread-safe in-memory LRU map and, when a
directory is given, in one binary file per key:

    header  '<4sI32sI'  magic b'TWBK', format version, SHA-256 of the key, value count
    payload '<f8' × 19  t, C₁, C₂, E₁, their errors, J₁, J₂ and their errors
"""
import collections
import hashlib
import os
import struct
import tempfile
import threading
import typing

import numpy as np

from .__version__ import __version__
from .models.kernels import BathKernels
from .models.params import QuadratureSpec, SystemParams
from .utils import logging

MAGIC = b'TWBK'
FORMAT_VERSION = 1
HEADER = struct.Struct('<4sI32sI')
PAYLOAD_DTYPE = np.dtype('<f8')

# in-memory entries kept per cache; the least recently used go first
MAX_MEMORY_ENTRIES = 4096


def kernelKey(t: float, params: SystemParams, spec: QuadratureSpec) -> str:
    """Hex SHA-256 over the exact bit patterns of the inputs the kernels depend on"""
    fields = [float(v).hex() for v in (t, params.theta1, params.theta2, params.lambdaTilde, params.gamma)]
    text = ';'.join(fields + [spec.token(), __version__])
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class KernelCache:
    def __init__(self, directory: str = None, maxEntries: int = MAX_MEMORY_ENTRIES):
        if maxEntries < 1:
            raise ValueError('maxEntries must be positive')
        self.directory = directory
        self.maxEntries = maxEntries
        self._entries: typing.OrderedDict[str, BathKernels] = collections.OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        if directory is not None:
            os.makedirs(directory, exist_ok=True)

    def __len__(self):
        with self._lock:
            return len(self._entries)

    def key(self, t: float, params: SystemParams, spec: QuadratureSpec) -> str:
        return kernelKey(t, params, spec)

    def get(self, key: str) -> typing.Optional[BathKernels]:
        with self._lock:
            kernels = self._entries.get(key)
            if kernels is not None:
                self._entries.move_to_end(key)
        if kernels is None and self.directory is not None:
            kernels = self._readEntry(key)
            if kernels is not None:
                self._remember(key, kernels)

        if kernels is None:
            self.misses += 1
        else:
            self.hits += 1
        return kernels

    def put(self, key: str, kernels: BathKernels):
        self._remember(key, kernels)
        if self.directory is not None:
            self._writeEntry(key, kernels)

    def _remember(self, key: str, kernels: BathKernels):
        with self._lock:
            self._entries[key] = kernels
            self._entries.move_to_end(key)
            while len(self._entries) > self.maxEntries:
                self._entries.popitem(last=False)

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, f'{key}.twbk')

    def _readEntry(self, key: str) -> typing.Optional[BathKernels]:
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path, 'rb') as fd:
            blob = fd.read()
        try:
            return decodeEntry(blob, key)
        except ValueError as ex:
            logging.warning(f'Ignoring unreadable cache entry {path}: {ex}')
            return None

    def _writeEntry(self, key: str, kernels: BathKernels):
        blob = encodeEntry(key, kernels)
        fd, temporaryPath = tempfile.mkstemp(dir=self.directory, suffix='.tmp')
        try:
            with os.fdopen(fd, 'wb') as handle:
                handle.write(blob)
            os.replace(temporaryPath, self._path(key))
        except OSError:
            if os.path.exists(temporaryPath):
                os.remove(temporaryPath)
            raise


def encodeEntry(key: str, kernels: BathKernels) -> bytes:
    values = np.asarray(kernels.toValues(), dtype=PAYLOAD_DTYPE)
    header = HEADER.pack(MAGIC, FORMAT_VERSION, bytes.fromhex(key), len(values))
    return header + values.tobytes()


def decodeEntry(blob: bytes, key: str) -> BathKernels:
    """
    Raises:
        ValueError: wrong magic, version, key digest or length.
    """
    if len(blob) < HEADER.size:
        raise ValueError('truncated header')
    magic, version, digest, count = HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f'bad magic {magic!r}')
    if version != FORMAT_VERSION:
        raise ValueError(f'unsupported format version {version}')
    if digest != bytes.fromhex(key):
        raise ValueError('key digest mismatch')
    if count != BathKernels.FIELD_COUNT or len(blob) != HEADER.size + count * PAYLOAD_DTYPE.itemsize:
        raise ValueError(f'unexpected payload of {count} values')
    values = np.frombuffer(blob, dtype=PAYLOAD_DTYPE, offset=HEADER.size)
    return BathKernels.fromValues(values.tolist())
