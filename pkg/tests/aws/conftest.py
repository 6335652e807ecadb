import pytest
from unittest import mock

import boto3

from twobath.aws import s3


@pytest.fixture
def mockAWS(monkeypatch):
    """mock AWS endpoints"""
    monkeypatch.setattr(boto3, 'resource', mock.MagicMock())
    monkeypatch.setattr(boto3, 'client', mock.MagicMock())
    s3.Bucket.cache_clear()
    yield
    s3.Bucket.cache_clear()


@pytest.fixture
def testBucket(mockAWS):
    """Provides a bucket we can use"""
    yield s3.Bucket('TwobathBucketBestBucket')


@pytest.fixture
def bucketEndpoint(mockAWS):
    """The mocked boto3 Bucket resource every `s3.Bucket` talks to"""
    return boto3.resource('s3').Bucket('any')
