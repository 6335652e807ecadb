from twobath import plotting
from twobath.fdt import steadyState
from twobath.models.moments import MomentState, ScanRow


def _states():
    return [
        MomentState(t=t, beta11=1.0, beta22=1.0, beta12=0.0, sigma1Sq=1.0 + 1.0 / t, sigma2Sq=2.0, cov=0.01)
        for t in (1.0, 2.0, 3.0, 4.0)
    ]


def _rows():
    rows = []
    for lambdaTilde, theta2 in ((-0.1, 4.0), (0.01, 4.0), (0.1, 8.0), (0.5, 8.0)):
        steady = steadyState(_states(), 1.0, 2.0)
        rows.append(ScanRow(lambdaTilde, 4.0, theta2, steady=steady))
    rows.append(ScanRow(0.9, 4.0, 8.0, failure='QuadratureError: no convergence'))
    return rows


def test_toSvg_reproducible():
    first = plotting.toSvg(plotting.relaxationFigure(_states(), 1.0, 2.0, title='λ̃ = 0.1'))
    second = plotting.toSvg(plotting.relaxationFigure(_states(), 1.0, 2.0, title='λ̃ = 0.1'))

    assert first == second
    assert first.lstrip().startswith(b'<?xml')
    assert b'<dc:date>' not in first


def test_lambdaScanFigure_axis():
    figure = plotting.lambdaScanFigure(_rows())

    axes = figure.axes[0]
    assert axes.get_xscale() == 'symlog'
    labels = [line.get_label() for line in axes.get_lines()]
    assert 'unconverged' in labels

    positive = plotting.lambdaScanFigure([row for row in _rows() if row.lambdaTilde > 0.0])
    assert positive.axes[0].get_xscale() == 'log'


def test_temperatureScanFigure():
    figure = plotting.temperatureScanFigure(_rows(), theta1=4.0)

    curves = figure.axes[0].get_lines()
    # two curves per λ̃ plus the unit line
    assert len(curves) == 2 * 4 + 1
    assert list(curves[0].get_xdata()) == [1.0]
    assert plotting.toSvg(figure)
