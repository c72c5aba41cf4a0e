import numpy as np
import pytest
from scipy import linalg

from wavespace.lib.exceptions import DuplicatePoints, InfeasibleInterpolation, WindowMismatch
from wavespace.lib.gabor import TFPoint, Window
from wavespace.lib.interp import (GramMatrix, GridSpec, PointSet, gram_assemble, interpolant_eval, interpolant_grid,
                                  interpolant_norm_bound, interpolation_feasible, psd_check, solve_minimal_norm,
                                  strictly_positive_definite)


GAUSSIAN = Window.gaussian(1)
THREE_POINTS = [TFPoint(0, 0), TFPoint(1, 0), TFPoint(0, 1)]


@pytest.fixture
def three_point_gram():
    return gram_assemble(GAUSSIAN, THREE_POINTS)


def test_three_point_example_coefficients(three_point_gram):
    interpolant = solve_minimal_norm(three_point_gram, [1, 1, 1], PointSet(THREE_POINTS))
    assert np.allclose(interpolant.coefficients, [0.6218, 0.7360, 0.9876], atol=5e-4)


def test_interpolant_reproduces_values(three_point_gram):
    values = [1, 2j, -0.5]
    interpolant = solve_minimal_norm(three_point_gram, values, PointSet(THREE_POINTS))
    for point, value in zip(THREE_POINTS, values):
        assert interpolant_eval(interpolant, GAUSSIAN, point) == pytest.approx(value, abs=1e-10)


def test_gram_is_hermitian_with_unit_diagonal(three_point_gram):
    assert three_point_gram.hermitian_defect() == 0
    assert np.allclose(three_point_gram.entries.diagonal(), 1)
    check = psd_check(three_point_gram)
    assert check['psd']
    assert check['min_eig'] == pytest.approx(0.5398, abs=5e-4)


def test_gram_entries_are_kernel_values(three_point_gram):
    # K[1, 0] = k_{(0,0)}((1,0)) = V_g g(1, 0)
    assert three_point_gram.entries[1, 0] == pytest.approx(np.exp(-np.pi / 4))
    assert three_point_gram.entries[2, 0] == pytest.approx(np.exp(-np.pi))


def test_zero_values_give_zero_interpolant(three_point_gram):
    interpolant = solve_minimal_norm(three_point_gram, [0, 0, 0], PointSet(THREE_POINTS))
    assert np.all(interpolant.coefficients == 0)
    assert interpolant.norm == 0


def test_single_point():
    gram = gram_assemble(Window.hermite(1), [TFPoint(0.5, 0.5)])
    assert gram.size == 1
    assert gram.min_eig == pytest.approx(1, abs=1e-10)
    assert strictly_positive_definite(gram)


def test_infeasible_values_outside_image():
    gram = GramMatrix([[1, 1], [1, 1]])
    assert not strictly_positive_definite(gram)
    assert interpolation_feasible(gram, [1, 1])
    assert not interpolation_feasible(gram, [1, -1])
    with pytest.raises(InfeasibleInterpolation):
        solve_minimal_norm(gram, [1, -1])


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoints):
        PointSet([TFPoint(0, 0), TFPoint(1, 1), TFPoint(0, 0)])


def test_window_mismatch(three_point_gram):
    interpolant = solve_minimal_norm(three_point_gram, [1, 1, 1], PointSet(THREE_POINTS))
    with pytest.raises(WindowMismatch):
        interpolant_eval(interpolant, Window.hermite(1), TFPoint(0, 0))


def test_phase_space_shift_preserves_spectrum():
    points = PointSet([TFPoint(0, 0), TFPoint(0.7, -0.2), TFPoint(-0.4, 0.9)])
    shifted = points.translated(TFPoint(1.3, -2.1))
    before = gram_assemble(GAUSSIAN, points).eigenvalues
    after = gram_assemble(GAUSSIAN, shifted).eigenvalues
    assert np.allclose(before, after, atol=1e-12)


def test_grid_row_major_and_bounded(three_point_gram):
    interpolant = solve_minimal_norm(three_point_gram, [1, 1, 1], PointSet(THREE_POINTS))
    grid = GridSpec(-2, 3, -2, 3, 0.05)
    assert len(grid.points()) == 10201
    rows = interpolant_grid(interpolant, GAUSSIAN, GridSpec(-1, 1, -1, 1, 1))
    assert [row[:2] for row in rows[:4]] == [(-1, -1), (-1, 0), (-1, 1), (0, -1)]
    bound = interpolant_norm_bound(interpolant)
    assert max(abs(complex(row[2], row[3])) for row in rows) <= bound + 1e-12
    assert rows[4][2] == pytest.approx(1, abs=1e-10)


def test_interpolant_norm_identity(three_point_gram):
    values = np.array([1, 2j, -0.5])
    interpolant = solve_minimal_norm(three_point_gram, values, PointSet(THREE_POINTS))
    expected = np.real(np.vdot(values, linalg.pinv(three_point_gram.entries) @ values))
    assert interpolant.norm ** 2 == pytest.approx(expected, rel=1e-10)


def test_interpolant_has_minimal_norm(three_point_gram):
    # any other combination of four kernels taking the same values on the three points is longer
    values = np.array([1, 2j, -0.5])
    interpolant = solve_minimal_norm(three_point_gram, values, PointSet(THREE_POINTS))
    larger = gram_assemble(GAUSSIAN, THREE_POINTS + [TFPoint(0.5, 0.5)])
    assert np.allclose(larger.entries[:3, :3], three_point_gram.entries)
    (direction,) = linalg.null_space(larger.entries[:3, :]).T
    alpha = linalg.lstsq(larger.entries[:3, :], values)[0]
    for t in (0.0, 0.5, -2.0, 1j):
        beta = alpha + t * direction
        assert np.allclose(larger.entries[:3, :] @ beta, values)
        norm_squared = np.real(np.vdot(beta, larger.entries @ beta))
        assert norm_squared >= interpolant.norm ** 2 - 1e-10
