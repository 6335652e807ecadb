"""
Static SVG figures of relaxation curves and scans.

Figures are built on `matplotlib.figure.Figure` without pyplot, so no GUI
backend is ever selected. The SVG bytes are reproducible: the hash salt is
fixed and the date metadata is dropped.
"""
import io
import typing

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from .models.moments import MomentState, ScanRow

FIGURE_SIZE = (8, 6)
DPI = 100

_RC = {
    'svg.hashsalt': 'twobath',
    'svg.fonttype': 'path',
    'axes.grid': True,
    'grid.alpha': 0.3,
    'legend.frameon': False,
}


def toSvg(figure: Figure) -> bytes:
    buffer = io.BytesIO()
    with matplotlib.rc_context(_RC):
        figure.savefig(buffer, format='svg', metadata={'Date': None})
    return buffer.getvalue()


def _newFigure():
    with matplotlib.rc_context(_RC):
        figure = Figure(figsize=FIGURE_SIZE, dpi=DPI)
        axes = figure.add_subplot(1, 1, 1)
    return figure, axes


def relaxationFigure(
    states: typing.Sequence[MomentState], fdt1: float, fdt2: float, title: str = None
) -> Figure:
    """Normalized σ₁²(t), σ₂²(t) and covariance against ω₀t"""
    figure, axes = _newFigure()
    t = np.array([state.t for state in states])
    axes.plot(t, [state.sigma1Sq / fdt1 for state in states], '-', label=r'$\sigma_1^2/\sigma_1^2(\mathrm{FDT})$')
    axes.plot(t, [state.sigma2Sq / fdt2 for state in states], '--', label=r'$\sigma_2^2/\sigma_2^2(\mathrm{FDT})$')
    axes.plot(
        t, [state.cov / np.sqrt(fdt1 * fdt2) for state in states], ':',
        label=r'$\beta_{12}^{-1}/\sqrt{\sigma_1^2\sigma_2^2(\mathrm{FDT})}$',
    )
    axes.axhline(1.0, color='grey', linewidth=0.8)
    axes.set_xlabel(r'$\omega_0 t$')
    axes.set_ylabel('normalized second moments')
    if title:
        axes.set_title(title)
    axes.legend(loc='best')
    return figure


def lambdaScanFigure(rows: typing.Sequence[ScanRow], title: str = None) -> Figure:
    """Steady-state curves against λ̃ on a log axis (symlog when λ̃ ≤ 0 occurs)"""
    figure, axes = _newFigure()
    good = [row for row in rows if row.ok]
    lambdas = np.array([row.lambdaTilde for row in good])
    axes.plot(lambdas, [row.steady.sigma1Norm for row in good], 'o-', label=r'$\tilde\sigma_1^2(\infty)$')
    axes.plot(lambdas, [row.steady.sigma2Norm for row in good], 's--', label=r'$\tilde\sigma_2^2(\infty)$')
    axes.plot(lambdas, [row.steady.covNorm for row in good], '^:', label=r'$\tilde\beta_{12}^{-1}(\infty)$')

    unconverged = [row for row in good if not row.steady.converged]
    if unconverged:
        axes.plot(
            [row.lambdaTilde for row in unconverged], [row.steady.sigma1Norm for row in unconverged],
            'x', color='red', label='unconverged',
        )

    if len(lambdas) and np.all(lambdas > 0.0):
        axes.set_xscale('log')
    else:
        axes.set_xscale('symlog', linthresh=1e-3)
    axes.set_xlabel(r'$\tilde\lambda$')
    axes.set_ylabel('normalized steady state')
    if title:
        axes.set_title(title)
    axes.legend(loc='best')
    return figure


def temperatureScanFigure(rows: typing.Sequence[ScanRow], theta1: float, title: str = None) -> Figure:
    """Steady variances against θ₂/θ₁, one pair of curves per λ̃"""
    figure, axes = _newFigure()
    good = [row for row in rows if row.ok]
    styles = ['-', '--', '-.', ':']
    for index, lambdaTilde in enumerate(sorted({row.lambdaTilde for row in good})):
        curve = sorted((row for row in good if row.lambdaTilde == lambdaTilde), key=lambda row: row.theta2)
        ratio = [row.theta2 / theta1 for row in curve]
        style = styles[index % len(styles)]
        axes.plot(ratio, [row.steady.sigma1Norm for row in curve], style, label=rf'$\tilde\sigma_1^2$, $\tilde\lambda$={lambdaTilde:g}')
        axes.plot(ratio, [row.steady.sigma2Norm for row in curve], style, label=rf'$\tilde\sigma_2^2$, $\tilde\lambda$={lambdaTilde:g}')
    axes.axhline(1.0, color='grey', linewidth=0.8)
    axes.set_xlabel(r'$T_2/T_1$')
    axes.set_ylabel('normalized steady state')
    if title:
        axes.set_title(title)
    axes.legend(loc='best')
    return figure
