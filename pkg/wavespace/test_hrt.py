import numpy as np
import pytest

from wavespace.lib.exceptions import DimensionMismatch, SearchExhausted
from wavespace.lib.gabor import TFPoint, Window
from wavespace.lib.hrt import (dominance_check, gaussian_exponents, hrt_gram, hrt_verdict, spacing_radius,
                               translation_kernel_report, verdict_from_gram)
from wavespace.lib.interp import GramMatrix, gram_assemble, strictly_positive_definite


GAUSSIAN = Window.gaussian(1)
THREE_POINTS = [TFPoint(0, 0), TFPoint(1, 0), TFPoint(0, 1)]


def random_point_sets(seed, count, max_size=8, low=-3, high=3):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        size = int(rng.integers(1, max_size + 1))
        yield [TFPoint.from_array(row) for row in rng.uniform(low, high, size=(size, 2))]


def spaced_point_sets(seed, count, m, spacing):
    '''Random subsets of a square lattice of the given spacing, randomly shifted.'''
    rng = np.random.default_rng(seed)
    lattice = np.array([(i, j) for i in range(5) for j in range(5)], dtype=float) * spacing
    for _ in range(count):
        chosen = lattice[rng.choice(len(lattice), size=m, replace=False)] + rng.uniform(-2, 2, size=2)
        yield [TFPoint.from_array(row) for row in chosen]


def test_three_point_example_verdict():
    verdict = hrt_verdict(GAUSSIAN, THREE_POINTS)
    assert verdict.independent
    assert verdict.min_eig == pytest.approx(0.5398, abs=5e-4)
    assert verdict.cond == pytest.approx(verdict.max_eig / verdict.min_eig)


def test_three_point_example_dominance():
    certificate = dominance_check(GAUSSIAN, THREE_POINTS)
    assert certificate.holds
    assert np.allclose(certificate.row_sums, [0.4992, 0.4756, 0.0629], atol=5e-4)


def test_single_point_verdict():
    verdict = hrt_verdict(Window.hermite(2), [TFPoint(0.3, 0.1)])
    assert verdict.independent
    assert verdict.min_eig == pytest.approx(1, abs=1e-10)


def test_gram_matches_interpolation_gram():
    assert np.allclose(hrt_gram(GAUSSIAN, THREE_POINTS).entries, gram_assemble(GAUSSIAN, THREE_POINTS).entries,
                       atol=1e-15)


def test_gaussian_random_sets_independent_and_bridge():
    for points in random_point_sets(seed=1, count=50):
        verdict = hrt_verdict(GAUSSIAN, points)
        assert verdict.independent
        assert verdict.min_eig > 1e-6
        assert verdict.independent == strictly_positive_definite(gram_assemble(GAUSSIAN, points))


def test_dominance_certificate_soundness():
    m = 4
    radius = spacing_radius(GAUSSIAN, m)
    for points in spaced_point_sets(seed=2, count=20, m=m, spacing=radius + 0.01):
        certificate = dominance_check(GAUSSIAN, points)
        assert certificate.holds
        verdict = hrt_verdict(GAUSSIAN, points)
        assert verdict.min_eig >= 1 - certificate.max_row_sum - 1e-9
        assert verdict.independent == strictly_positive_definite(gram_assemble(GAUSSIAN, points))


def test_spacing_radius_grows_with_m():
    assert spacing_radius(GAUSSIAN, 2) <= spacing_radius(GAUSSIAN, 10)


def test_spacing_radius_exhausted():
    with pytest.raises(SearchExhausted):
        spacing_radius(GAUSSIAN, 1000, r_max=1.0)


def test_dependent_explicit_gram():
    verdict = verdict_from_gram(GramMatrix([[2, 2], [2, 2]]))
    assert not verdict.independent
    assert verdict.certificate is None


def test_gaussian_exponents():
    exponents = gaussian_exponents(THREE_POINTS)
    assert exponents['distinct']
    assert exponents['exponents'][1] == (pytest.approx(np.pi / 2),)


def test_translation_kernel_not_positive_type():
    report = translation_kernel_report(GAUSSIAN, [TFPoint(0, 0), TFPoint(0.5, 0.5)])
    assert report['hermitian_defect'] > 0.1


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        hrt_verdict(GAUSSIAN, [TFPoint([0, 0], [0, 0])])


@pytest.mark.parametrize('order', [1, 2, 3, 4])
def test_hermite_spaced_sets_independent(order):
    window = Window.hermite(order)
    for m in (2, 4, 6):
        for points in spaced_point_sets(seed=order, count=3, m=m, spacing=1.0):
            verdict = hrt_verdict(window, points)
            assert verdict.independent
            assert verdict.independent == strictly_positive_definite(gram_assemble(window, points))


def test_near_duplicate_points_are_dependent():
    verdict = hrt_verdict(GAUSSIAN, [TFPoint(0, 0), TFPoint(1e-9, 0)])
    assert not verdict.independent
    assert verdict.certificate is None


def test_spacing_radius_for_ten_points():
    assert spacing_radius(GAUSSIAN, 10) <= 2.0
