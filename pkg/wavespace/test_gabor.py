import cmath
import math

import numpy as np
import pytest

from wavespace.lib.exceptions import DimensionMismatch, InvalidParameter, NonFinitePoint, UnnormalizedWindow
from wavespace.lib.gabor import (QuadratureSpec, TFPoint, Window, gaussian_stft_closed_form, heisenberg_wavelet_eval,
                                 phase_space_energy, point_kernel_eval, stft_eval, stft_grid, tensor_window,
                                 wigner_eval)


GAUSSIAN = Window.gaussian(1)


def test_closed_form_matches_quadrature_on_grid():
    axis = np.linspace(-3, 3, 13)
    points = [TFPoint(x, omega) for x in axis for omega in axis]
    quadrature = stft_grid(GAUSSIAN, GAUSSIAN, points)
    closed = np.array([gaussian_stft_closed_form(1, p) for p in points])
    assert np.max(np.abs(quadrature - closed)) <= 1e-8


@pytest.mark.parametrize(('x', 'omega', 'expected'), [
    (0, 0, 1),
    (1, 0, math.exp(-math.pi / 4)),
    (0, 1, math.exp(-math.pi)),
])
def test_gaussian_closed_form_values(x, omega, expected):
    assert gaussian_stft_closed_form(1, TFPoint(x, omega)) == pytest.approx(expected, abs=1e-15)
    assert stft_eval(GAUSSIAN, GAUSSIAN, TFPoint(x, omega)) == pytest.approx(expected, abs=1e-10)


def test_closed_form_phase():
    value = gaussian_stft_closed_form(1, TFPoint(1, 1))
    assert value == pytest.approx(-math.exp(-1.25 * math.pi), abs=1e-15)


def test_closed_form_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        gaussian_stft_closed_form(2, TFPoint(0, 0))


@pytest.mark.parametrize('order', [0, 1, 2, 5])
def test_hermite_unit_norm(order):
    assert Window.hermite(order).norm_l2 == pytest.approx(1, abs=1e-10)


def test_hermite_is_odd_for_odd_order():
    window = Window.hermite(3)
    t = np.array([0.3, 1.1, 2.0])
    assert np.allclose(window(t), -window(-t))


def test_point_kernel_at_centre_is_norm():
    window = Window.hermite(2)
    centre = TFPoint(0.4, -1.2)
    assert point_kernel_eval(window, centre, centre) == pytest.approx(1, abs=1e-10)


def test_point_kernel_translation_phase():
    centre = TFPoint(1.0, 0.5)
    at = TFPoint(1.5, 1.0)
    expected = cmath.exp(-2j * math.pi * 1.0 * 0.5) * gaussian_stft_closed_form(1, at - centre)
    assert point_kernel_eval(GAUSSIAN, centre, at) == pytest.approx(expected, abs=1e-15)


def test_point_kernel_rejects_unnormalized_window():
    with pytest.raises(UnnormalizedWindow):
        point_kernel_eval(GAUSSIAN.scaled(2), TFPoint(0, 0), TFPoint(1, 1))


def test_wigner_of_gaussian():
    for x, omega in [(0, 0), (0.5, 0.25), (-1, 0.3)]:
        expected = 2 * math.exp(-math.pi * x * x - 4 * math.pi * omega * omega)
        assert wigner_eval(GAUSSIAN, TFPoint(x, omega)) == pytest.approx(expected, abs=1e-14)


def test_wigner_quadrature_agrees_with_closed_form():
    # a derived copy of the gaussian goes through the quadrature path
    copy = GAUSSIAN.scaled(1.0)
    assert not copy.is_gaussian
    for x, omega in [(0.2, 0.1), (-0.7, 0.4)]:
        p = TFPoint(x, omega)
        assert wigner_eval(copy, p) == pytest.approx(wigner_eval(GAUSSIAN, p), abs=1e-8)


def test_tensor_window_factorises():
    g = Window.hermite(1)
    h = GAUSSIAN
    f1 = Window.hermite(2)
    f2 = Window.hermite(1)
    joint = stft_eval(tensor_window(f1, f2), tensor_window(g, h), TFPoint([0.3, -0.2], [0.1, 0.4]))
    separate = stft_eval(f1, g, TFPoint(0.3, 0.1)) * stft_eval(f2, h, TFPoint(-0.2, 0.4))
    assert joint == pytest.approx(separate, abs=1e-8)


def test_gaussian_tensorisation():
    g2 = tensor_window(GAUSSIAN, GAUSSIAN)
    p = TFPoint([0.5, -0.25], [0.2, 0.1])
    assert stft_eval(g2, g2, p) == pytest.approx(gaussian_stft_closed_form(2, p), abs=1e-8)


def test_phase_space_energy_is_norm_product():
    assert phase_space_energy(GAUSSIAN, GAUSSIAN) == pytest.approx(1, abs=1e-6)


def test_heisenberg_wavelet_at_identity():
    assert heisenberg_wavelet_eval(GAUSSIAN, GAUSSIAN, 0, 0, 0.25) == pytest.approx(-1j, abs=1e-10)


@pytest.mark.parametrize('tau', [1.0, -0.1, float('nan')])
def test_heisenberg_wavelet_tau_range(tau):
    with pytest.raises(InvalidParameter):
        heisenberg_wavelet_eval(GAUSSIAN, GAUSSIAN, 0, 0, tau)


def test_points_validate():
    with pytest.raises(NonFinitePoint):
        TFPoint(float('inf'), 0)
    with pytest.raises(DimensionMismatch):
        TFPoint([0, 1], [0])
    with pytest.raises(DimensionMismatch):
        TFPoint.from_array([0, 1, 2])
    with pytest.raises(DimensionMismatch):
        stft_eval(GAUSSIAN, GAUSSIAN, TFPoint([0, 0], [0, 0]))


def test_window_admissible_rescales_small_deviation(caplog):
    nearly = GAUSSIAN.scaled(1.0005)
    assert nearly.admissible().norm_l2 == pytest.approx(1, abs=1e-12)
    assert 'Rescaling' in caplog.text
    with pytest.raises(UnnormalizedWindow):
        GAUSSIAN.scaled(2).admissible()


def test_tabulated_window():
    nodes = np.linspace(-4, 4, 801)
    values = np.exp(-0.5 * math.pi * nodes ** 2)
    window = Window.tabulated(nodes, values)
    assert window(np.array([0.0, 1.0])) == pytest.approx([1, math.exp(-0.5 * math.pi)])
    assert window(np.array([5.0]))[0] == 0
    assert window.norm_l2 == pytest.approx(1, abs=1e-3)
    assert window.identifier.startswith('tabulated(')
    with pytest.raises(InvalidParameter):
        Window.tabulated(nodes[::-1], values)


def test_quadrature_spec():
    coarse = QuadratureSpec(6.0, 101)
    fine = QuadratureSpec(6.0, 2001)
    assert coarse.finer(fine) is fine
    assert fine.finer(None) is fine
    with pytest.raises(InvalidParameter):
        QuadratureSpec(-1.0, 10)


def test_wigner_of_first_hermite_at_origin():
    assert wigner_eval(Window.hermite(1), TFPoint(0, 0)) == pytest.approx(-2, abs=1e-8)


@pytest.mark.parametrize('window', [GAUSSIAN, Window.hermite(2)], ids=['gaussian', 'hermite2'])
def test_wigner_is_real(window):
    for x, omega in [(0, 0), (0.3, -0.7), (-1.2, 0.4), (0.9, 0.9)]:
        assert abs(wigner_eval(window, TFPoint(x, omega)).imag) <= 1e-8


@pytest.mark.parametrize(('f', 'g'), [
    (GAUSSIAN, Window.hermite(1)),
    (Window.hermite(2), GAUSSIAN),
    (Window.hermite(1), Window.hermite(3)),
])
def test_phase_space_energy_for_hermite_pairs(f, g):
    expected = f.norm_l2 ** 2 * g.norm_l2 ** 2
    assert phase_space_energy(f, g) == pytest.approx(expected, rel=1e-6)


@pytest.mark.parametrize(('x', 'omega'), [(0, 0), (0.5, -0.5), (-1.5, 2.0), (3, 0.1)])
def test_stft_bounded_by_norms(x, omega):
    f = Window.hermite(2)
    g = Window.hermite(1)
    assert abs(stft_eval(f, g, TFPoint(x, omega))) <= f.norm_l2 * g.norm_l2 + 1e-8
