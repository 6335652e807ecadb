import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twobath import modes
from twobath.interfaces.errors import FreeParticleRegimeError, SingularTimeError
from twobath.models.modes import ModeStructure, TrajectoryEndpoints
from twobath.models.params import SystemParams


@pytest.mark.parametrize(
    'lambdaTilde, gamma, omega1Sq, omega2Sq',
    [
        (0.0, 0.01, 1.0 - 1e-4, 1.0 - 1e-4),
        (0.3, 0.01, 0.7 - 1e-4, 1.3 - 1e-4),
        (-0.3, 0.01, 1.3 - 1e-4, 0.7 - 1e-4),
        (0.5, 0.1, 0.49, 1.49),
    ]
)
def test_modeStructure(lambdaTilde, gamma, omega1Sq, omega2Sq):
    structure = modes.modeStructure(SystemParams(gamma=gamma, lambdaTilde=lambdaTilde))

    assert structure.omega1 ** 2 == pytest.approx(omega1Sq, rel=1e-12)
    assert structure.omega2 ** 2 == pytest.approx(omega2Sq, rel=1e-12)
    assert structure.delta1 == structure.delta2 == gamma
    assert (structure.r1, structure.r2) == (1.0, -1.0)


@pytest.mark.parametrize('lambdaTilde', [1.0, -1.0, 0.99995])
def test_modeStructure_freeParticle(lambdaTilde):
    params = SystemParams(gamma=0.01, lambdaTilde=lambdaTilde, theta1=2.0, theta2=4.0)

    with pytest.raises(FreeParticleRegimeError) as info:
        modes.modeStructure(params)

    diagnostic = info.value.diagnostic
    assert diagnostic.diffusion1 == pytest.approx(200.0)
    assert diagnostic.freeParticleVariance(10.0, bath=2) == pytest.approx(2.0 * 400.0 * 10.0)


def test_decoupledModes():
    decoupled = modes.decoupledModes(SystemParams(gamma=0.01, lambdaTilde=0.99, theta1=3.0))

    assert decoupled.reducedMass == 0.5
    assert decoupled.omegaPlusSq == pytest.approx(1.99)
    assert decoupled.omegaMinusSq == pytest.approx(0.01)
    assert not decoupled.freeParticle
    assert modes.decoupledModes(SystemParams(gamma=0.01, lambdaTilde=1.0)).freeParticle


def test_decoupledModes_softModeVanishes():
    softest = [
        modes.decoupledModes(SystemParams(gamma=0.01, lambdaTilde=lam)).omegaMinusSq
        for lam in (0.5, 0.9, 0.99, 0.999)
    ]

    assert softest == sorted(softest, reverse=True)
    assert softest[-1] == pytest.approx(1e-3)


@settings(max_examples=50, deadline=None)
@given(
    lambdaTilde=st.floats(min_value=-0.9, max_value=0.9),
    gamma=st.floats(min_value=1e-3, max_value=0.2),
)
def test_generalModeDiagnostic_identicalReduction(lambdaTilde, gamma):
    report = modes.generalModeDiagnostic(1.0, 1.0, gamma, gamma, 1.0, 1.0, lambdaTilde)

    lower = 1.0 - gamma ** 2 - abs(lambdaTilde)
    upper = 1.0 - gamma ** 2 + abs(lambdaTilde)
    assert report.omega1 ** 2 == pytest.approx(lower, rel=1e-10, abs=1e-7)
    assert report.omega2 ** 2 == pytest.approx(upper, rel=1e-10, abs=1e-7)
    assert report.delta1 == pytest.approx(gamma, rel=1e-12)
    assert report.delta2 == pytest.approx(gamma, rel=1e-12)
    assert not report.complexFrequencies


def test_generalModeDiagnostic_ratios():
    report = modes.generalModeDiagnostic(1.0, 1.0, 0.01, 0.01, 1.0, 1.0, 0.3)

    assert report.r1 == pytest.approx(1.0)
    assert report.r2 == pytest.approx(-1.0)
    assert report.kappa1 == pytest.approx(0.0, abs=1e-12)
    assert not report.ratiosDivergent


def test_generalModeDiagnostic_zeroCoupling():
    report = modes.generalModeDiagnostic(1.0, 1.5, 0.01, 0.02, 1.0, 2.0, 0.0)

    assert report.ratiosDivergent
    assert report.r1 is None and report.r2 is None
    # uncoupled oscillators keep their own damped frequencies
    assert sorted([report.omega1 ** 2, report.omega2 ** 2]) == pytest.approx([1.0 - 1e-4, 2.25 - 4e-4], rel=1e-6)


def test_generalModeDiagnostic_complexFrequencies():
    report = modes.generalModeDiagnostic(1.0, 1.0, 0.01, 0.01, 1.0, 1.0, 1.5)

    assert report.complexFrequencies
    assert isinstance(report.omega1, complex)


def test_generalModeDiagnostic_invalid():
    with pytest.raises(ValueError):
        modes.generalModeDiagnostic(0.0, 1.0, 0.01, 0.01, 1.0, 1.0, 0.1)


@pytest.fixture
def coupled():
    return modes.modeStructure(SystemParams(gamma=0.05, lambdaTilde=0.3))


def test_checkRegularTime(coupled):
    singular = math.pi / coupled.omega2

    with pytest.raises(SingularTimeError) as info:
        modes.checkRegularTime(singular, coupled)

    assert info.value.mode == 2
    assert info.value.t == singular
    assert modes.singularMode(singular * 1.001, coupled) is None
    assert modes.singularMode(2.0 * math.pi / coupled.omega1, coupled) == 1


@pytest.fixture
def ends():
    return TrajectoryEndpoints(
        t=2.9, xInitial1=0.4, xInitial2=-1.1, xFinal1=0.9, xFinal2=0.2,
        xiInitial1=-0.3, xiInitial2=0.7, xiFinal1=1.2, xiFinal2=-0.5,
    )


def test_classicalTrajectory_boundaries(coupled, ends):
    start = modes.classicalTrajectory(coupled, ends, 0.0)
    end = modes.classicalTrajectory(coupled, ends, ends.t)

    assert (start.x1, start.x2, start.xi1, start.xi2) == pytest.approx((0.4, -1.1, -0.3, 0.7), abs=1e-12)
    assert (end.x1, end.x2, end.xi1, end.xi2) == pytest.approx((0.9, 0.2, 1.2, -0.5), abs=1e-12)
    assert isinstance(start.x1, float)


def test_classicalTrajectory_equationsOfMotion(coupled, ends):
    """x paths solve ẍ + 2γẋ + ω₀²x ∓ λx_other = 0, ξ paths the time-reversed damping"""
    gamma = 0.05
    lam = 0.3
    h = 1e-4
    tau = np.linspace(0.2, 2.7, 12)

    def at(shift):
        return modes.classicalTrajectory(coupled, ends, tau + shift)

    before, here, after = at(-h), at(0.0), at(h)

    def residual(name, other, sign):
        x = getattr(here, name)
        velocity = (getattr(after, name) - getattr(before, name)) / (2.0 * h)
        acceleration = (getattr(after, name) - 2.0 * x + getattr(before, name)) / h ** 2
        return acceleration + sign * 2.0 * gamma * velocity + x - lam * getattr(here, other)

    for name, other, sign in (('x1', 'x2', 1.0), ('x2', 'x1', 1.0), ('xi1', 'xi2', -1.0), ('xi2', 'xi1', -1.0)):
        assert np.max(np.abs(residual(name, other, sign))) < 1e-5


def test_classicalTrajectory_rejectsOutsideHorizon(coupled, ends):
    with pytest.raises(ValueError):
        modes.classicalTrajectory(coupled, ends, np.array([0.0, 4.0]))


def test_classicalTrajectory_singular(coupled):
    with pytest.raises(SingularTimeError):
        modes.classicalTrajectory(coupled, TrajectoryEndpoints(t=math.pi / coupled.omega1), 0.5)


def test_TrajectoryEndpoints_positiveHorizon():
    with pytest.raises(ValueError):
        TrajectoryEndpoints(t=0.0)


def test_ModeStructure_isDegenerate():
    assert ModeStructure(omega1=1.0, omega2=1.0, delta1=0.1, delta2=0.1).isDegenerate
    assert not ModeStructure(omega1=1.0, omega2=1.2, delta1=0.1, delta2=0.1).isDegenerate
