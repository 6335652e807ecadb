import math
from unittest import mock

import numpy as np
import pytest
from scipy import integrate

from twobath import bath, modes
from twobath.cache import KernelCache
from twobath.interfaces.errors import ParameterDomainError, SingularTimeError
from twobath.kinematics import nmHelpers
from twobath.models.params import QuadratureSpec, SystemParams

# (t, λ̃, γ, ω) points for the closed-form inner integrals
ORACLE_POINTS = [
    (0.8, 0.1, 0.01, 0.3),
    (1.7, 0.3, 0.05, 1.1),
    (2.2, -0.4, 0.1, 0.7),
    (3.1, 0.6, 0.02, 2.4),
    (4.4, 0.05, 0.2, 0.05),
    (0.35, -0.7, 0.01, 3.0),
    (5.2, 0.2, 0.01, 0.95),
    (2.9, 0.45, 0.15, 1.6),
    (1.2, -0.15, 0.08, 0.0),
    (3.7, 0.8, 0.03, 1.3),
]


def _structure(lambdaTilde, gamma):
    return modes.modeStructure(SystemParams(gamma=gamma, lambdaTilde=lambdaTilde))


@pytest.mark.parametrize('t, lambdaTilde, gamma, omega', ORACLE_POINTS)
def test_innerIntegrals_bruteForce(t, lambdaTilde, gamma, omega):
    structure = _structure(lambdaTilde, gamma)
    helpers = nmHelpers(t, structure)
    closed = bath.innerIntegrals(t, omega, structure)

    for row in range(3):
        def integrand(s, tau):
            kernels = bath.kernelCE(tau, s, helpers['m1'], helpers['m2'], structure)
            return float(kernels[row]) * math.cos(omega * (tau - s)) * math.exp(gamma * (tau + s))

        expected, _ = integrate.dblquad(integrand, 0.0, t, 0.0, lambda tau: tau, epsabs=1e-11, epsrel=1e-9)
        scale = max(abs(expected), 1e-8 * float(np.max(np.abs(closed))))
        assert float(closed[row]) == pytest.approx(expected, rel=1e-4, abs=1e-4 * scale)


@pytest.mark.parametrize('lambdaTilde', [0.0, 0.35, -0.6])
def test_kernelCE_factorizes(lambdaTilde):
    structure = _structure(lambdaTilde, 0.02)
    t = 2.6
    helpers = nmHelpers(t, structure)
    m1, m2 = helpers['m1'], helpers['m2']
    rng = np.random.default_rng(7)
    tau = rng.uniform(0.0, t, 50)
    s = rng.uniform(0.0, t, 50)

    def g(x, omega, m):
        return np.cos(omega * x) - 2.0 * m * np.sin(omega * x)

    plusTau = 0.5 * (g(tau, structure.omega1, m1) + g(tau, structure.omega2, m2))
    minusTau = 0.5 * (g(tau, structure.omega1, m1) - g(tau, structure.omega2, m2))
    plusS = 0.5 * (g(s, structure.omega1, m1) + g(s, structure.omega2, m2))
    minusS = 0.5 * (g(s, structure.omega1, m1) - g(s, structure.omega2, m2))

    first, second, cross = bath.kernelCE(tau, s, m1, m2, structure)

    np.testing.assert_allclose(first, plusTau * plusS, atol=1e-12)
    np.testing.assert_allclose(second, minusTau * minusS, atol=1e-12)
    np.testing.assert_allclose(cross, plusTau * minusS + minusTau * plusS, atol=1e-12)


def test_kernelCE_printedReadingBreaksFactorization():
    structure = _structure(0.35, 0.02)
    helpers = nmHelpers(2.6, structure)
    tau, s = 1.3, 0.4

    corrected = bath.kernelCE(tau, s, helpers['m1'], helpers['m2'], structure)
    printed = bath.kernelCE(tau, s, helpers['m1'], helpers['m2'], structure, f14Reading='printed')

    assert printed[0] != pytest.approx(corrected[0], rel=1e-6)
    assert printed[2] != pytest.approx(corrected[2], rel=1e-6)


def test_kernelCE_readingsCoincideAtZeroCoupling():
    structure = _structure(0.0, 0.02)
    helpers = nmHelpers(2.6, structure)

    corrected = bath.kernelCE(1.3, 0.4, helpers['m1'], helpers['m2'], structure)
    printed = bath.kernelCE(1.3, 0.4, helpers['m1'], helpers['m2'], structure, f14Reading='printed')

    np.testing.assert_array_equal(corrected, printed)


def test_kernelBasis_shapeAndReading():
    f = bath.kernelBasis(np.zeros((2, 3)), np.ones((2, 3)), 0.8, 1.2)

    assert f.shape == (17, 2, 3)
    assert np.all(f[0] == 0.0)
    with pytest.raises(ValueError):
        bath.kernelBasis(0.1, 0.2, 0.8, 1.2, f14Reading='guess')


@pytest.mark.parametrize('t, omega', [(1e-3, 0.5), (0.3, 2.0), (12.0, 0.99)])
def test_modalGreen_quadrature(t, omega):
    gamma = 0.03
    modeOmega = 0.97

    def part(tau, which):
        value = np.exp((gamma + 1j * omega) * tau) * math.sin(modeOmega * (t - tau)) / math.sin(modeOmega * t)
        return value.real if which == 'real' else value.imag

    real, _ = integrate.quad(part, 0.0, t, args=('real',), epsabs=1e-14, epsrel=1e-12, limit=200)
    imag, _ = integrate.quad(part, 0.0, t, args=('imag',), epsabs=1e-14, epsrel=1e-12, limit=200)

    green = complex(bath.modalGreen(omega, t, modeOmega, gamma))
    assert green.real == pytest.approx(real, rel=1e-9, abs=1e-14)
    assert green.imag == pytest.approx(imag, rel=1e-9, abs=1e-14)


def test_boundaryParts_recombine():
    t, omega, modeOmega, gamma = 9.0, np.linspace(0.1, 4.0, 9), 1.1, 0.02
    p, q = bath._boundaryParts(omega, t, modeOmega, gamma)

    recombined = math.exp(gamma * t) * np.exp(1j * omega * t) * p + q

    np.testing.assert_allclose(recombined, bath.modalGreen(omega, t, modeOmega, gamma), rtol=1e-10)


@pytest.mark.parametrize(
    'omega, theta, expected',
    [
        (0.0, 3.0, 6.0),
        (2.0, 0.0, 2.0),
        (1000.0, 1.0, 1000.0),
        (1.0, 2.0, 1.0 / math.tanh(0.25)),
    ]
)
def test_thermalWeight(omega, theta, expected):
    assert bath.thermalWeight(omega, theta) == pytest.approx(expected, rel=1e-14)


def test_panelBreakpoints():
    structure = _structure(0.3, 0.02)

    points = bath.panelBreakpoints(structure, QuadratureSpec())

    assert points == sorted(points)
    assert len(points) == 4
    assert points[0] == pytest.approx(min(structure.frequencies) - 0.1)
    assert bath.panelBreakpoints(structure, QuadratureSpec(splitResonances=False)) == []


def test_combineModal_equalModes():
    j = (2.0, 2.0, 2.0)

    c1, c2, e1 = bath.combineModal(j, (5.0, 5.0, 5.0))

    assert c1 == pytest.approx(1.0)
    assert c2 == pytest.approx(2.5)
    assert e1 == 0.0


def test_modalIntegrals_splitMatchesDirect(monkeypatch):
    structure = _structure(0.3, 0.01)
    spec = QuadratureSpec(maxSubdivisions=2000)
    t = 9.3
    assert spec.omegaCutoff * t > bath.DIRECT_LIMIT

    split = bath.modalIntegrals(t, structure, 3.93, 9.16, spec)
    monkeypatch.setattr(bath, 'DIRECT_LIMIT', math.inf)
    direct = bath.modalIntegrals(t, structure, 3.93, 9.16, spec)

    for bathIndex in (0, 1):
        np.testing.assert_allclose(split[bathIndex], direct[bathIndex], rtol=1e-6)


def test_modalIntegrals_equalTemperaturesShareBath():
    structure = _structure(0.3, 0.05)

    j1, j2, _, _ = bath.modalIntegrals(2.0, structure, 2.0, 2.0, QuadratureSpec())

    assert j1 == j2
    # J[11]J[22] ≥ J[12]² (Cauchy–Schwarz on the weighted inner product)
    assert j1[0] * j1[1] >= j1[2] ** 2


def test_bathIntegrals_zeroCoupling(spec):
    hot = SystemParams(gamma=0.01, theta1=3.93, theta2=9.16)
    cold = SystemParams(gamma=0.01, theta1=3.93, theta2=0.5)
    structure = modes.modeStructure(hot)

    kernelsHot = bath.bathIntegrals(4.0, hot, structure, spec)
    kernelsCold = bath.bathIntegrals(4.0, cold, structure, spec)

    assert abs(kernelsHot.e1) < 1e-10 * max(kernelsHot.c1, kernelsHot.c2)
    assert kernelsHot.c1 == pytest.approx(kernelsCold.c1, rel=1e-10)
    assert kernelsHot.c2 > kernelsCold.c2 > 0.0


def test_bathIntegrals_zeroCouplingLimitOfCoupledFormula(spec):
    """The coupled combination itself gives E₁ ≈ 0 at λ = 0"""
    structure = _structure(0.0, 0.01)

    j1, j2, _, _ = bath.modalIntegrals(4.0, structure, 3.93, 9.16, spec, coupled=True)
    c1, c2, e1 = bath.combineModal(j1, j2)

    assert abs(e1) < 1e-10 * max(c1, c2)


@pytest.mark.parametrize('lambdaTilde', [0.1, -0.5, 0.9])
def test_bathIntegrals_positive(spec, lambdaTilde):
    params = SystemParams(gamma=0.01, lambdaTilde=lambdaTilde, theta1=3.93, theta2=9.16)
    structure = modes.modeStructure(params)

    kernels = bath.bathIntegrals(3.0, params, structure, spec)

    assert kernels.c1 > 0.0
    assert kernels.c2 > 0.0
    assert kernels.c1Err < 1e-6 * kernels.c1


def test_bathIntegrals_swapSymmetry(spec):
    """Exchanging the baths exchanges C₁ and C₂ and keeps E₁"""
    params = SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=3.93, theta2=9.16)
    structure = modes.modeStructure(params)

    forward = bath.bathIntegrals(3.0, params, structure, spec)
    backward = bath.bathIntegrals(3.0, params.swapped(), structure, spec)

    assert backward.c1 == pytest.approx(forward.c2, rel=1e-8)
    assert backward.c2 == pytest.approx(forward.c1, rel=1e-8)
    assert backward.e1 == pytest.approx(forward.e1, rel=1e-8)


def test_bathIntegrals_cutoffDomain():
    params = SystemParams(gamma=0.01, lambdaTilde=0.3)
    structure = modes.modeStructure(params)

    with pytest.raises(ParameterDomainError):
        bath.bathIntegrals(1.0, params, structure, QuadratureSpec(omegaCutoff=1.0))


def test_bathIntegrals_singular(spec):
    params = SystemParams(gamma=0.01, lambdaTilde=0.3)
    structure = modes.modeStructure(params)

    with pytest.raises(SingularTimeError):
        bath.bathIntegrals(math.pi / structure.omega1, params, structure, spec)


def test_bathIntegrals_usesCache(monkeypatch, spec):
    params = SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=1.0, theta2=2.0)
    structure = modes.modeStructure(params)
    cache = KernelCache()

    first = bath.bathIntegrals(2.0, params, structure, spec, cache)
    monkeypatch.setattr(bath, 'modalIntegrals', mock.MagicMock(side_effect=AssertionError('not cached')))
    second = bath.bathIntegrals(2.0, params, structure, spec, cache)

    assert second == first
    assert (cache.hits, cache.misses) == (1, 1)


def test_kernelBasis_origin():
    f = bath.kernelBasis(0.0, 0.0, 0.9, 1.1)

    np.testing.assert_array_equal(f[1:5], 0.0)
    np.testing.assert_array_equal(f[5:9], 1.0)
    np.testing.assert_array_equal(f[9:], 0.0)


def test_kernelBasis_symmetries():
    tau, s = 1.7, 0.6
    equal = bath.kernelBasis(tau, s, 1.05, 1.05)

    assert equal[3] == equal[1]
    assert equal[7] == equal[5]
    assert equal[11] == equal[9]

    forward = bath.kernelBasis(tau, s, 0.9, 1.1)
    backward = bath.kernelBasis(s, tau, 0.9, 1.1)
    assert forward[9] == pytest.approx(backward[10])


def test_kernelCE_crossVanishesForEqualModes():
    structure = _structure(0.0, 0.02)
    helpers = nmHelpers(2.6, structure)
    tau = np.linspace(0.0, 2.6, 7)

    _, _, cross = bath.kernelCE(tau, tau[::-1], helpers['m1'], helpers['m2'], structure)

    np.testing.assert_allclose(cross, 0.0, atol=1e-14)


def test_bathIntegrals_logarithmicCutoff():
    """Above the resonances the C integrands fall off as 1/ω, so doubling ω_c adds (γ/π)·ln 2"""
    params = SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=3.93, theta2=9.16)
    structure = modes.modeStructure(params)

    low = bath.bathIntegrals(20.0, params, structure, QuadratureSpec(omegaCutoff=50.0))
    high = bath.bathIntegrals(20.0, params, structure, QuadratureSpec(omegaCutoff=100.0))

    expected = params.gamma / math.pi * math.log(2.0)
    assert high.c1 - low.c1 == pytest.approx(expected, rel=1e-2)
    assert high.c2 - low.c2 == pytest.approx(expected, rel=1e-2)
    assert abs(high.e1 - low.e1) < 1e-2 * expected


def test_bathIntegrals_monotoneInTemperature(spec):
    structure = _structure(0.3, 0.01)
    values = [
        bath.bathIntegrals(3.0, SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=theta, theta2=1.0), structure, spec).c1
        for theta in (0.0, 0.5, 2.0, 8.0)
    ]

    assert values == sorted(values)
    assert len(set(values)) == len(values)


def test_bathIntegrals_shortTimes(spec):
    params = SystemParams(gamma=0.01, lambdaTilde=0.3, theta1=3.93, theta2=9.16)
    structure = modes.modeStructure(params)

    early = bath.bathIntegrals(1e-3, params, structure, spec)
    later = bath.bathIntegrals(2e-3, params, structure, spec)

    assert later.c1 / early.c1 == pytest.approx(4.0, rel=5e-2)
    assert later.c2 / early.c2 == pytest.approx(4.0, rel=5e-2)
