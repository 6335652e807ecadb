"""
Gaussian reduced density matrix of the coupled pair: e/Z/Y intermediates,
β coefficients and second moments, plus independent reference paths.
"""
import math
import typing

import numpy as np

from .bath import modalIntegrals
from .interfaces.errors import DegenerateGaussianError, NonNormalizableStateError, NumericalError
from .kinematics import bTables, checkHorizon, modalCoefficients, sFunctions
from .models.kernels import BathKernels
from .models.kinematics import KinematicSet
from .models.modes import ModeStructure
from .models.moments import Intermediates, MomentPath, MomentState
from .models.params import HBAR, QuadratureSpec
from .modes import checkRegularTime

_Beta = typing.Tuple[float, float, float]


def intermediates(
    kin: KinematicSet, bk: BathKernels, a1: float, a2: float, hbar: float = HBAR
) -> Intermediates:
    """
    e₃…e₆, Z₁, Z₂, Z₃, Z₆, Y₁ and the imaginary parts ŷ₄, ŷ₅ of Y₄, Y₅.

    Raises:
        NonNormalizableStateError: C₂ + ℏa₂, Z₁ or Y₁ is not positive.
    """
    q = bk.c2 + hbar * a2
    if not q > 0.0:
        raise NonNormalizableStateError(f'C₂ + ℏa₂ = {q:.6g} at t = {kin.t:g}')

    b22 = kin.b22
    denominator = 4.0 * hbar * a2 * q + b22 ** 2
    c2Term = bk.c2 / hbar + a2

    e3 = kin.b12 - bk.e1 * b22 / (2.0 * q)
    e4 = kin.b21 * b22 / (2.0 * q)
    e5 = kin.a22 * b22 / (2.0 * q)
    e6 = kin.a21 * b22 / (2.0 * q)

    z1 = (
        bk.c1 / hbar + a1
        - bk.e1 * (bk.e1 / (4.0 * hbar * q))
        + e3 ** 2 * c2Term / denominator
    )
    if not z1 > 0.0:
        raise NonNormalizableStateError(f'Z₁ = {z1:.6g} at t = {kin.t:g}')

    z2 = kin.a11 - bk.e1 * kin.a21 / (2.0 * q) - 2.0 * e3 * e6 * q / denominator
    z3 = kin.a12 - bk.e1 * kin.a22 / (2.0 * q) - 2.0 * e3 * e5 * q / denominator
    z6 = kin.b11 - bk.e1 * kin.b21 / (2.0 * q) - 2.0 * e3 * e4 * q / denominator

    y1 = (
        a1
        + kin.b21 ** 2 / (4.0 * hbar * q)
        - e4 ** 2 * c2Term / denominator
        + z6 * (z6 / (4.0 * hbar ** 2 * z1))
    )
    if not y1 > 0.0:
        raise NonNormalizableStateError(f'Y₁ = {y1:.6g} at t = {kin.t:g}')

    y4Imag = kin.a22 * kin.b21 / (2.0 * q) - 2.0 * e4 * e5 * q / denominator + z3 * z6 / (2.0 * hbar * z1)
    y5Imag = kin.a21 * kin.b21 / (2.0 * q) - 2.0 * e4 * e6 * q / denominator + z2 * z6 / (2.0 * hbar * z1)

    return Intermediates(
        e3=e3, e4=e4, e5=e5, e6=e6,
        z1=z1, z2=z2, z3=z3, z6=z6,
        y1=y1, y4Imag=y4Imag, y5Imag=y5Imag,
        c2Shifted=q, commonDenominator=denominator,
    )


def betaCoefficients(
    im: Intermediates, kin: KinematicSet, bk: BathKernels, a2: float, hbar: float = HBAR
) -> _Beta:
    """
    (β₁₁, β₂₂, β₁₂) of the Gaussian exp[−½β₁₁x₁² − β₁₂x₁x₂ − ½β₂₂x₂²].

    The Y² terms carry i² = −1: Y₅²/ℏ²Y₁ = −ŷ₅²/ℏ²Y₁.
    """
    q = im.c2Shifted
    denominator = im.commonDenominator
    c2Term = bk.c2 / hbar + a2
    a21, a22 = kin.a21, kin.a22

    beta11 = 2.0 * (
        a21 ** 2 / (hbar * q)
        + im.z2 * (im.z2 / (hbar ** 2 * im.z1))
        - 4.0 * im.e6 ** 2 * c2Term / denominator
        - im.y5Imag * (im.y5Imag / (hbar ** 2 * im.y1))
    )
    beta22 = 2.0 * (
        a22 ** 2 / (hbar * q)
        + im.z3 * (im.z3 / (hbar ** 2 * im.z1))
        - 4.0 * im.e5 ** 2 * c2Term / denominator
        - im.y4Imag * (im.y4Imag / (hbar ** 2 * im.y1))
    )
    beta12 = (
        2.0 * a22 * a21 / (hbar * q)
        + 2.0 * im.z2 * (im.z3 / (hbar ** 2 * im.z1))
        - 8.0 * im.e5 * im.e6 * c2Term / denominator
        - 2.0 * im.y4Imag * (im.y5Imag / (hbar ** 2 * im.y1))
    )
    return beta11, beta22, beta12


def complexReferenceBeta(
    kin: KinematicSet, bk: BathKernels, a1: float, a2: float, hbar: float = HBAR
) -> _Beta:
    """β evaluated with complex Y₄, Y₅ throughout, for cross-checking"""
    im = intermediates(kin, bk, a1, a2, hbar)
    q = complex(bk.c2 + hbar * a2)
    denominator = 4.0 * hbar * a2 * q + kin.b22 ** 2
    c2Term = bk.c2 / hbar + a2

    y4 = (
        1j * kin.a22 * kin.b21 / (2.0 * q)
        - 1j * 2.0 * im.e4 * im.e5 * q / denominator
        + 1j * im.z3 * im.z6 / (2.0 * hbar * im.z1)
    )
    y5 = (
        1j * kin.a21 * kin.b21 / (2.0 * q)
        - 1j * 2.0 * im.e4 * im.e6 * q / denominator
        + 1j * im.z2 * im.z6 / (2.0 * hbar * im.z1)
    )

    beta11 = 2.0 * (
        kin.a21 ** 2 / (hbar * q) + im.z2 ** 2 / (hbar ** 2 * im.z1)
        - 4.0 * im.e6 ** 2 * c2Term / denominator + y5 ** 2 / (hbar ** 2 * im.y1)
    )
    beta22 = 2.0 * (
        kin.a22 ** 2 / (hbar * q) + im.z3 ** 2 / (hbar ** 2 * im.z1)
        - 4.0 * im.e5 ** 2 * c2Term / denominator + y4 ** 2 / (hbar ** 2 * im.y1)
    )
    beta12 = (
        2.0 * kin.a22 * kin.a21 / (hbar * q) + 2.0 * im.z2 * im.z3 / (hbar ** 2 * im.z1)
        - 8.0 * im.e5 * im.e6 * c2Term / denominator + 2.0 * y4 * y5 / (hbar ** 2 * im.y1)
    )
    return beta11.real, beta22.real, beta12.real


def matrixBeta(kin: KinematicSet, bk: BathKernels, a1: float, a2: float, hbar: float = HBAR) -> _Beta:
    """
    β from the Gaussian ξ-integral in matrix form,
    β = (2/ℏ²) Aᵀ G⁻¹ A with G = C/ℏ + a + B a⁻¹ Bᵀ/4ℏ².
    """
    a = np.array([[kin.a11, kin.a12], [kin.a21, kin.a22]])
    b = np.array([[kin.b11, kin.b12], [kin.b21, kin.b22]])
    c = np.array([[bk.c1, bk.e1 / 2.0], [bk.e1 / 2.0, bk.c2]])
    initial = np.diag([a1, a2])

    g = c / hbar + initial + b @ np.diag([1.0 / a1, 1.0 / a2]) @ b.T / (4.0 * hbar ** 2)
    beta = 2.0 / hbar ** 2 * a.T @ np.linalg.solve(g, a)
    return float(beta[0, 0]), float(beta[1, 1]), float(beta[0, 1])


_ROTATION = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def modalCovariance(
    t: float, modes: ModeStructure, bk: BathKernels, a1: float, a2: float,
    hbar: float = HBAR, mass: float = 1.0
) -> np.ndarray:
    """
    Position covariance matrix Σ = ⟨xᵢxⱼ⟩ computed in sum/difference mode
    coordinates from the modal bath integrals. No C₁ ≈ C₂ ≈ E₁/2 cancellation
    occurs, so this stays accurate next to the singular times.

    K3 and J enter with e^{γt} and e^{2γt} divided out, so the mode-space
    matrix stays O(1) up to the horizon limit.
    """
    coefficients = modalCoefficients(t, modes, mass)
    decay = math.exp(-modes.delta1 * t)
    k3 = np.array(coefficients.k3) * decay
    k4 = np.diag(coefficients.k4)
    j1 = np.array(bk.j1) * decay ** 2
    j2 = np.array(bk.j2) * decay ** 2

    crossTerm = (j1[2] - j2[2]) / 4.0
    c = np.array([
        [(j1[0] + j2[0]) / 4.0, crossTerm],
        [crossTerm, (j1[1] + j2[1]) / 4.0],
    ])
    initial = 0.5 * np.array([[a1 + a2, a1 - a2], [a1 - a2, a1 + a2]])

    g = c / hbar + (initial + k4 @ np.linalg.solve(initial, k4) / (4.0 * hbar ** 2)) * decay ** 2
    modal = 0.5 * hbar ** 2 * g / np.outer(k3, k3)
    return _ROTATION @ modal @ _ROTATION


def betaFromCovariance(covariance: np.ndarray) -> _Beta:
    beta = np.linalg.inv(covariance)
    return float(beta[0, 0]), float(beta[1, 1]), float(beta[0, 1])


def moments(
    beta: _Beta, t: float = None, strict: bool = True,
    path: str = MomentPath.PRINTED, warnings: typing.Sequence[str] = ()
) -> MomentState:
    """
    σ₁² = β₂₂/det, σ₂² = β₁₁/det and cov = β₁₂/det with det = β₁₁β₂₂ − β₁₂².

    Raises:
        NumericalError: a β entry is not finite, whatever `strict` says.
        DegenerateGaussianError: β is not positive definite and `strict` is
            set; otherwise the state is returned flagged.
    """
    beta11, beta22, beta12 = (float(v) for v in beta)
    if not all(math.isfinite(v) for v in (beta11, beta22, beta12)):
        raise NumericalError(f'non-finite β at t = {t}: ({beta11}, {beta22}, {beta12})')
    determinant = beta11 * beta22 - beta12 ** 2
    positiveDefinite = beta11 > 0.0 and beta22 > 0.0 and determinant > 0.0

    if not positiveDefinite and strict:
        raise DegenerateGaussianError(
            f'β not positive definite at t = {t}: β₁₁={beta11:.6g}, β₂₂={beta22:.6g}, det={determinant:.6g}'
        )

    if determinant == 0.0:
        sigma1Sq = sigma2Sq = cov = math.nan
    else:
        sigma1Sq = beta22 / determinant
        sigma2Sq = beta11 / determinant
        cov = beta12 / determinant

    return MomentState(
        t=t, beta11=beta11, beta22=beta22, beta12=beta12,
        sigma1Sq=sigma1Sq, sigma2Sq=sigma2Sq, cov=cov,
        positiveDefinite=positiveDefinite, path=path, warnings=tuple(warnings),
    )


def uncoupledBoundary(t: float, omega: float, gamma: float, mass: float = 1.0) -> typing.Tuple[float, float]:
    """
    D₃ and D₄ of a single oscillator,

        D₃ = (M/2)[−mn(b₁+b₁₃+b′₁+b′₁₃) + n(b₃+b₁₅+b′₃+b′₁₅)/2]
        D₄ = (M/2)[m²(b₁+b₁₃+b′₁+b′₁₃) − m(b₂+b₃+b₁₄+b₁₅+b′₂+b′₃+b′₁₄+b′₁₅)/2
                   + (b₄+b₁₆+b′₄+b′₁₆)/4]

    with n = e^{γt}/2 sin ωt, m = cot(ωt)/2. They reduce to −MΩn and
    (M/2)(Ω cot Ωt + γ).
    """
    s = sFunctions(t, omega, omega)
    b, bp = bTables(s, omega, omega, gamma)
    sine = math.sin(omega * t)
    n = math.exp(gamma * t) / (2.0 * sine)
    m = math.cos(omega * t) / (2.0 * sine)

    first = b[1] + b[13] + bp[1] + bp[13]
    third = b[3] + b[15] + bp[3] + bp[15]
    second = b[2] + b[14] + bp[2] + bp[14]
    fourth = b[4] + b[16] + bp[4] + bp[16]

    d3 = 0.5 * mass * (-m * n * first + n * third / 2.0)
    d4 = 0.5 * mass * (m ** 2 * first - m * (second + third) / 2.0 + fourth / 4.0)
    return d3, d4


def uncoupledVariance(
    t: float, theta: float, a: float, modes: ModeStructure,
    spec: QuadratureSpec = None, hbar: float = HBAR, mass: float = 1.0
) -> float:
    """
    Closed-form σ²(t) of one oscillator in its own bath (λ = 0), internal units:

        σ² = [D₄² + 4ℏa(C + ℏa)] / (8a·D₃²)

    which is ½{D₃²/ℏ(C+ℏa) · [1 − D₄²/(D₄² + 4ℏa(C+ℏa))]}⁻¹ without the
    1 − x cancellation. C = ½J[11] comes from the same modal integral as the
    coupled pipeline.
    """
    spec = spec or QuadratureSpec()
    checkRegularTime(t, modes)
    checkHorizon(t, modes.delta1)

    omega = modes.omega1
    uncoupled = ModeStructure(omega1=omega, omega2=omega, delta1=modes.delta1, delta2=modes.delta1)
    j, _, _, _ = modalIntegrals(t, uncoupled, theta, theta, spec, coupled=False, mass=mass)
    c = 0.5 * j[0]

    d3, d4 = uncoupledBoundary(t, omega, modes.delta1, mass)
    return (d4 ** 2 + 4.0 * hbar * a * (c + hbar * a)) / (8.0 * a * d3 ** 2)
