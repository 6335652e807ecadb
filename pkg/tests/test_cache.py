import os

import pytest

from twobath import cache
from twobath.cache import KernelCache, decodeEntry, encodeEntry, kernelKey
from twobath.models.kernels import BathKernels
from twobath.models.params import QuadratureSpec, SystemParams

PARAMS = SystemParams(gamma=0.01, lambdaTilde=0.1, theta1=3.92765, theta2=9.1645)

KERNELS = BathKernels(
    t=12.5, c1=0.25, c2=0.75, e1=-0.125, c1Err=1e-12, c2Err=2e-12, e1Err=3e-12,
    j1=(1.0, 2.0, 0.5), j2=(3.0, 4.0, -0.5), j1Err=(1e-13, 2e-13, 3e-13), j2Err=(4e-13, 5e-13, 6e-13),
)


@pytest.fixture
def key():
    return kernelKey(12.5, PARAMS, QuadratureSpec())


def test_kernelKey_deterministic(key):
    assert key == kernelKey(12.5, PARAMS, QuadratureSpec())
    assert len(key) == 64


@pytest.mark.parametrize(
    't, params, spec',
    [
        (12.500000000000002, PARAMS, QuadratureSpec()),
        (12.5, PARAMS.swapped(), QuadratureSpec()),
        (12.5, SystemParams(gamma=0.01, lambdaTilde=0.2, theta1=3.92765, theta2=9.1645), QuadratureSpec()),
        (12.5, PARAMS, QuadratureSpec(relTol=1e-9)),
        (12.5, PARAMS, QuadratureSpec(splitResonances=False)),
    ]
)
def test_kernelKey_distinguishes(key, t, params, spec):
    assert kernelKey(t, params, spec) != key


def test_kernelKey_version(monkeypatch, key):
    monkeypatch.setattr(cache, '__version__', '99.0.0')

    assert kernelKey(12.5, PARAMS, QuadratureSpec()) != key


def test_encodeEntry_layout(key):
    blob = encodeEntry(key, KERNELS)

    assert blob[:4] == b'TWBK'
    assert len(blob) == cache.HEADER.size + 8 * BathKernels.FIELD_COUNT
    assert decodeEntry(blob, key) == KERNELS


def test_decodeEntry_badMagic(key):
    blob = bytearray(encodeEntry(key, KERNELS))
    blob[:4] = b'NOPE'

    with pytest.raises(ValueError, match='magic'):
        decodeEntry(bytes(blob), key)


def test_decodeEntry_badVersion(key):
    blob = encodeEntry(key, KERNELS)
    header = cache.HEADER.pack(cache.MAGIC, cache.FORMAT_VERSION + 1, bytes.fromhex(key), BathKernels.FIELD_COUNT)

    with pytest.raises(ValueError, match='version'):
        decodeEntry(header + blob[cache.HEADER.size:], key)


def test_decodeEntry_otherKey(key):
    blob = encodeEntry(key, KERNELS)

    with pytest.raises(ValueError, match='digest'):
        decodeEntry(blob, kernelKey(1.0, PARAMS, QuadratureSpec()))


@pytest.mark.parametrize('cut', [3, cache.HEADER.size + 8])
def test_decodeEntry_truncated(key, cut):
    blob = encodeEntry(key, KERNELS)

    with pytest.raises(ValueError):
        decodeEntry(blob[:cut], key)


def test_KernelCache_memory(key):
    store = KernelCache()

    assert store.get(key) is None
    store.put(key, KERNELS)

    assert store.get(key) == KERNELS
    assert len(store) == 1
    assert (store.hits, store.misses) == (1, 1)


def test_KernelCache_evictsLeastRecentlyUsed():
    store = KernelCache(maxEntries=2)
    first, second, third = (f'{index:064x}' for index in range(3))

    store.put(first, KERNELS)
    store.put(second, KERNELS)
    assert store.get(first) == KERNELS
    store.put(third, KERNELS)

    assert len(store) == 2
    assert store.get(second) is None
    assert store.get(first) == KERNELS
    assert store.get(third) == KERNELS


def test_KernelCache_evictedEntryReloadsFromDisk(tmp_path, key):
    store = KernelCache(str(tmp_path), maxEntries=1)
    other = 'f' * 64

    store.put(key, KERNELS)
    store.put(other, KERNELS)

    assert len(store) == 1
    assert store.get(key) == KERNELS
    assert store.hits == 1


def test_KernelCache_maxEntries_invalid():
    with pytest.raises(ValueError):
        KernelCache(maxEntries=0)


def test_KernelCache_disk(tmp_path, key):
    KernelCache(str(tmp_path)).put(key, KERNELS)
    fresh = KernelCache(str(tmp_path))

    assert os.path.exists(os.path.join(str(tmp_path), f'{key}.twbk'))
    assert fresh.get(key) == KERNELS
    assert fresh.hits == 1
    assert not [name for name in os.listdir(str(tmp_path)) if name.endswith('.tmp')]


def test_KernelCache_corruptedEntry(tmp_path, caplog, key):
    path = tmp_path / f'{key}.twbk'
    path.write_bytes(b'TWBK garbage')

    assert KernelCache(str(tmp_path)).get(key) is None
    assert 'Ignoring unreadable cache entry' in caplog.text


def test_BathKernels_fromValues_length():
    with pytest.raises(ValueError):
        BathKernels.fromValues([0.0] * 3)
