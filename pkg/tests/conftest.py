import pytest
import twobath
from twobath.models.params import QuadratureSpec, SystemParams


@pytest.fixture
def useFixture(request):
    """Uses a fixture by name"""
    return request.getfixturevalue(request.param)


@pytest.fixture
def useFixtures(request):
    """Uses multiple fixtures as specified by name in a list"""
    return [
        request.getfixturevalue(item)
        for item in request.param
    ]


@pytest.fixture(autouse=True)
def reset_logging():
    twobath.logging.updateLogger(logLevel='info')


@pytest.fixture
def spec():
    return QuadratureSpec()


@pytest.fixture
def equalBaths():
    """γ̃ = 0.01, both baths at 300 K for ω₀ = 1e13 rad/s"""
    return SystemParams(gamma=0.01, lambdaTilde=0.0, theta1=3.93, theta2=3.93)


@pytest.fixture
def unequalBaths():
    """300 K and 700 K for ω₀ = 1e13 rad/s"""
    return SystemParams(gamma=0.01, lambdaTilde=0.1, theta1=3.92765, theta2=9.1645)
