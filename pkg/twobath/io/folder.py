import json
import os
import typing

from .. import aws
from ..models.manifest import RunManifest
from ..utils import logging

MANIFEST_LOG = 'manifests.jsonl'
MANIFEST_PREFIX = 'manifests'

_CONTENT_TYPES = {
    '.csv': 'text/csv',
    '.svg': 'image/svg+xml',
    '.json': 'application/json',
    '.txt': 'text/plain',
}


class OutputFolder:
    """
    Destination for the artefacts of one run: a local directory or an
    "s3://bucket/prefix" location.

    Locally, manifests are appended to `manifests.jsonl`; on S3 (where objects
    cannot be appended to) each manifest is its own object
    `manifests/<hash>.json`.

    Usage:

    ```
    folder = OutputFolder('out/')
    folder.writeText('relax.csv', text)
    folder.appendManifest(manifest)
    ```
    """

    def __init__(self, path: str):
        self.path = path.rstrip('/') if path.startswith('s3://') else path
        self.isS3 = path.startswith('s3://')
        if not self.isS3:
            os.makedirs(path, exist_ok=True)

    def __repr__(self):
        return f'<{self.__class__.__module__}.{self.__class__.__name__} {self.path}>'

    def location(self, name: str) -> str:
        if self.isS3:
            return f'{self.path}/{name}'
        return os.path.join(self.path, name)

    def writeText(self, name: str, text: str) -> str:
        return self.writeBytes(name, text.encode('utf-8'))

    def writeBytes(self, name: str, content: bytes) -> str:
        location = self.location(name)
        if self.isS3:
            return aws.s3.putObject(location, content, contentType=_contentType(name))

        _writeFile(content, location)
        logging.info(f'Wrote {len(content):,} bytes to {location}')
        return location

    def appendManifest(self, manifest: RunManifest) -> str:
        manifestHash = manifest.manifestHash()
        record = dict(manifest.toDict(), manifestHash=manifestHash)
        line = json.dumps(record, sort_keys=True, default=str)

        if self.isS3:
            return aws.s3.putObject(
                self.location(f'{MANIFEST_PREFIX}/{manifestHash}.json'), line, encoding='utf-8',
                contentType='application/json', metadata={'manifestHash': manifestHash},
            )

        location = self.location(MANIFEST_LOG)
        with open(location, 'a') as _fd:
            _fd.write(line + '\n')
        return location

    def readManifests(self) -> typing.List[dict]:
        """Every manifest record of a local folder, oldest first"""
        location = self.location(MANIFEST_LOG)
        if self.isS3 or not os.path.exists(location):
            return []
        with open(location, 'r') as _fd:
            return [json.loads(line) for line in _fd if line.strip()]


def _contentType(name: str) -> typing.Optional[str]:
    return _CONTENT_TYPES.get(os.path.splitext(name)[1])


def _writeFile(content: bytes, filepath: str):
    with open(filepath, 'wb') as _fd:
        _fd.write(content)
