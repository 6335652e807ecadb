import json

import pytest

from twobath.__version__ import __version__
from twobath.models.manifest import RunManifest
from twobath.models.params import QuadratureSpec


@pytest.fixture
def manifest():
    return RunManifest.create('relax', {'T2_K': 700.0, 'T1_K': 300.0}, QuadratureSpec())


def test_create(manifest):
    assert manifest.command == 'relax'
    assert list(manifest.config) == ['T1_K', 'T2_K']
    assert manifest.version == __version__
    assert manifest.readings == {'f14': 'corrected', 'd11': 'corrected'}
    assert manifest.quadrature['omegaCutoff'] == 50.0
    assert manifest.quadratureToken == QuadratureSpec().token()


def test_create_readings():
    manifest = RunManifest.create('relax', {}, readings={'d11': 'printed'})

    assert manifest.readings == {'f14': 'corrected', 'd11': 'printed'}


def test_manifestHash_ignoresWallTime(manifest):
    before = manifest.manifestHash()

    manifest.finish(12.5)

    assert manifest.manifestHash() == before
    assert manifest.wallTimeSeconds == 12.5
    assert manifest.createdAt.endswith('+00:00')


@pytest.mark.parametrize(
    'change',
    [
        lambda m: m.addWarning('t = 3.14 shifted'),
        lambda m: m.config.update({'lambda_tilde': 0.1}),
        lambda m: setattr(m, 'command', 'scan-lambda'),
    ]
)
def test_manifestHash_content(manifest, change):
    before = manifest.manifestHash()

    change(manifest)

    assert manifest.manifestHash() != before


def test_addWarning_dedupes(manifest):
    manifest.addWarning('first')
    manifest.extendWarnings(['second', 'first', 'third'])

    assert manifest.warnings == ['first', 'second', 'third']


def test_toJSON(manifest):
    record = json.loads(manifest.toJSON())

    assert set(record) == set(manifest.jsonKeys())
    assert list(record) == sorted(record)

    restored = RunManifest.fromJSON(manifest.toJSON())
    assert restored.manifestHash() == manifest.manifestHash()
