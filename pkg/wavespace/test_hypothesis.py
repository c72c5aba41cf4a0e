"""
Property tests: invariants of the kernels and groups, plus fuzzing of the
problem-file parser.
"""
import numpy as np
import pytest
from hypothesis import assume, example, given, settings, strategies as st

from wavespace.lib.api import APIException, parse_problem
from wavespace.lib.exceptions import WavespaceInputDataError
from wavespace.lib.finite import (admissible_rescale, build_group, decompose_regular, positive_type_matrix,
                                  wavelet_transform)
from wavespace.lib.gabor import TFPoint, Window
from wavespace.lib.heisenberg import ReducedHeisenbergPoint, heisenberg_inverse, heisenberg_product
from wavespace.lib.hrt import hrt_verdict
from wavespace.lib.interp import PointSet, gram_assemble, psd_check, strictly_positive_definite


GAUSSIAN = Window.gaussian(1)

coordinate = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
tf_points = st.lists(st.tuples(coordinate, coordinate), min_size=1, max_size=6, unique=True)

general_json = st.recursive(st.floats() | st.integers() | st.booleans() | st.text() | st.none(),
    lambda children: st.lists(children) | st.dictionaries(st.text(), children))


@given(tf_points)
@settings(max_examples=50, deadline=None)
def test_gram_is_hermitian_psd(coordinates):
    points = [TFPoint(x, omega) for x, omega in coordinates]
    gram = gram_assemble(GAUSSIAN, points)
    assert gram.hermitian_defect() == 0
    assert psd_check(gram)['psd']


@given(tf_points)
@example([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
@settings(max_examples=50, deadline=None)
def test_independence_verdict_equals_strict_positive_definiteness(coordinates):
    points = PointSet([TFPoint(x, omega) for x, omega in coordinates])
    assume(points.min_separation() > 0.05)
    assert hrt_verdict(GAUSSIAN, points).independent == strictly_positive_definite(gram_assemble(GAUSSIAN, points))


heisenberg_points = st.builds(ReducedHeisenbergPoint, coordinate, coordinate,
                              st.floats(min_value=0, max_value=0.999, allow_nan=False))


@given(heisenberg_points, heisenberg_points)
def test_heisenberg_inverse_of_product(p, q):
    product = heisenberg_product(p, q)
    expected = heisenberg_product(heisenberg_inverse(q), heisenberg_inverse(p))
    result = heisenberg_inverse(product)
    assert np.allclose(result.x, expected.x) and np.allclose(result.omega, expected.omega)
    gap = abs(result.tau - expected.tau)
    assert min(gap, 1 - gap) <= 1e-9


@pytest.fixture(scope='module')
def d4_plane():
    group = build_group('dihedral 4')
    return group, decompose_regular(group)[-1]


@given(st.lists(st.floats(min_value=-1, max_value=1, allow_nan=False), min_size=4, max_size=4))
@settings(max_examples=30, deadline=None)
def test_wavelet_functions_are_of_positive_type(d4_plane, coefficients):
    group, irrep = d4_plane
    g = np.array(coefficients[:2]) + 1j * np.array(coefficients[2:])
    assume(np.linalg.norm(g) > 1e-3)
    g = admissible_rescale(irrep, g)
    matrix = positive_type_matrix(group, wavelet_transform(irrep, g, g))
    assert np.linalg.eigvalsh(matrix).min() >= -1e-9


@given(general_json)
@settings(max_examples=100, deadline=None)
def test_parse_problem_fuzz(data):
    try:
        parse_problem(data)
    except (APIException, WavespaceInputDataError):
        pass
