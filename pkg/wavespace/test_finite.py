import numpy as np
import pytest

from wavespace.lib.exceptions import GroupTooLarge, InvalidGroupSpec, InvalidParameter, TheoremViolation, ZeroVector
from wavespace.lib.finite import (admissible_rescale, build_group, class_equation, commutant_dimension,
                                  convexity_check, convexity_trials, convolve, decompose_regular, direct_product,
                                  interpolation_failure_demo, isomorphism_check, left_translate, orbit_rank,
                                  orthogonality_deviation, peter_weyl_completeness, positive_type_matrix,
                                  positive_type_trials, regular_representation, reproducing_deviation,
                                  rigidity_check, rigidity_trials, tensor_product_check, wavelet_subspace,
                                  wavelet_transform)
from wavespace.lib.tools import random_complex_vector


@pytest.fixture(scope='module')
def dihedral():
    return build_group('dihedral 4')


@pytest.fixture(scope='module')
def dihedral_irreps(dihedral):
    return decompose_regular(dihedral)


@pytest.fixture(scope='module')
def plane_irrep(dihedral_irreps):
    return dihedral_irreps[-1]


@pytest.mark.parametrize(('spec', 'dims'), [
    ('cyclic 6', [1] * 6),
    ('dihedral 4', [1, 1, 1, 1, 2]),
    ('finite_heisenberg 3', [1] * 9 + [3, 3]),
    ('finite_heisenberg 2', [1, 1, 1, 1, 2]),
])
def test_class_equation(spec, dims):
    group = build_group(spec)
    result = class_equation(group)
    assert result['dims'] == dims
    assert result['sum_of_squares'] == group.order


@pytest.mark.parametrize(('spec', 'order'), [('cyclic 6', 6), ('dihedral 4', 8), ('finite_heisenberg 3', 27)])
def test_peter_weyl_completeness(spec, order):
    result = peter_weyl_completeness(build_group(spec))
    assert result['span_dim'] == order
    assert result['complete']


def test_irreps_are_irreducible_and_inequivalent(dihedral_irreps):
    for irrep in dihedral_irreps:
        assert commutant_dimension(irrep) == 1
    characters = np.array([irrep.character for irrep in dihedral_irreps])
    # characters are orthonormal under probability Haar
    assert np.allclose(characters.conj() @ characters.T / 8, np.eye(len(dihedral_irreps)), atol=1e-10)


def test_regular_representation_is_reducible(dihedral):
    assert commutant_dimension(regular_representation(dihedral)) == 8


@pytest.mark.parametrize('spec', ['octahedral 3', 'cyclic', 'finite_heisenberg 4', 'dihedral two'])
def test_bad_group_spec(spec):
    with pytest.raises(InvalidGroupSpec):
        build_group(spec)


def test_heisenberg_prime_outside_test_bed():
    with pytest.raises(InvalidParameter):
        build_group('finite_heisenberg 7')


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        decompose_regular(build_group('cyclic 65'))


def test_direct_product_index_layout():
    product = direct_product(build_group('cyclic 2'), build_group('cyclic 3'))
    assert product.order == 6
    # (1, 2) * (1, 2) = (0, 1)
    assert product.mul[1 * 3 + 2, 1 * 3 + 2] == 0 * 3 + 1


def test_admissible_rescale(plane_irrep):
    g = admissible_rescale(plane_irrep, [3, 4j])
    assert np.linalg.norm(g) == pytest.approx(np.sqrt(2))
    with pytest.raises(ZeroVector):
        admissible_rescale(plane_irrep, [0, 0])


def test_wavelet_transform_is_isometry(plane_irrep):
    rng = np.random.default_rng(0)
    g = admissible_rescale(plane_irrep, random_complex_vector(rng, 2))
    f = random_complex_vector(rng, 2)
    assert wavelet_transform(plane_irrep, g, f).norm() == pytest.approx(np.linalg.norm(f), abs=1e-12)


def test_orthogonality_relations(plane_irrep):
    rng = np.random.default_rng(1)
    vectors = [random_complex_vector(rng, 2) for _ in range(4)]
    assert orthogonality_deviation(plane_irrep, *vectors) <= 1e-12


def test_reproducing_kernel(plane_irrep):
    rng = np.random.default_rng(2)
    subspace = wavelet_subspace(plane_irrep, admissible_rescale(plane_irrep, random_complex_vector(rng, 2)))
    assert subspace.dim == 2
    assert reproducing_deviation(subspace) <= 1e-12


def test_left_translation_covariance(dihedral, plane_irrep):
    rng = np.random.default_rng(3)
    g, f = random_complex_vector(rng, 2), random_complex_vector(rng, 2)
    for y in range(dihedral.order):
        moved = wavelet_transform(plane_irrep, g, plane_irrep(y) @ f).values
        assert np.allclose(moved, left_translate(wavelet_transform(plane_irrep, g, f).values, dihedral, y))


def test_convolution_identity(dihedral):
    delta = np.zeros(dihedral.order)
    delta[dihedral.identity] = dihedral.order
    values = np.arange(dihedral.order, dtype=float)
    assert np.allclose(convolve(dihedral, values, delta), values)


def test_orbit_rank(plane_irrep):
    assert orbit_rank(plane_irrep, [1, 0]) == 2


def test_isomorphism_is_isometric_but_moves_kernels(plane_irrep):
    result = isomorphism_check(plane_irrep, [1, 0], [1, 1j])
    assert result['isometry_deviation'] <= 1e-12
    assert result['kernel_difference'] > 1e-6


def test_rigidity_colinear_windows(plane_irrep):
    g = admissible_rescale(plane_irrep, [1, 2j])
    phase = np.exp(0.7j)
    result = rigidity_check(plane_irrep, plane_irrep, g, phase * g)
    assert result['intersection_dim'] == 2
    assert result['equal']
    assert np.allclose(result['intertwiner'], phase * np.eye(2), atol=1e-9)


def test_rigidity_different_irreps(dihedral_irreps):
    result = rigidity_check(dihedral_irreps[0], dihedral_irreps[1], [1], [1])
    assert result['intersection_dim'] == 0
    assert not result['equal']


@pytest.mark.parametrize('spec', ['dihedral 4', 'finite_heisenberg 3'])
def test_rigidity_dichotomy(spec):
    result = rigidity_trials(build_group(spec), trials=100, seed=11)
    assert result['intermediate'] == 0
    assert result['full'] > 0
    assert result['max_intertwining_residual'] <= 1e-9


def test_rigidity_trials_count_intermediate_intersections(monkeypatch):
    def intermediate(rep, other, g, h):
        raise TheoremViolation('rigidity', 'intersection of dimension 1 between spaces of dimensions 2 and 2')
    monkeypatch.setattr('wavespace.lib.finite.rigidity_check', intermediate)
    result = rigidity_trials(build_group('dihedral 4'), trials=4, seed=0)
    assert result['intermediate'] == 4
    assert result['zero'] == result['full'] == 0


def test_rigidity_trials_reraise_other_violations(monkeypatch):
    def broken(rep, other, g, h):
        raise TheoremViolation('rigidity', 'intertwiner residual 1e-3')
    monkeypatch.setattr('wavespace.lib.finite.rigidity_check', broken)
    with pytest.raises(TheoremViolation):
        rigidity_trials(build_group('dihedral 4'), trials=4, seed=0)


def test_positive_type_of_wavelet_function(dihedral, plane_irrep):
    g = admissible_rescale(plane_irrep, [1, 1j])
    matrix = positive_type_matrix(dihedral, wavelet_transform(plane_irrep, g, g))
    assert np.linalg.eigvalsh(matrix).min() >= -1e-10


def test_positive_type_corollary():
    result = positive_type_trials(build_group('dihedral 4'), trials=50, seed=5)
    assert result['tested'] > 0
    assert result['failures'] == 0
    assert result['largest_min_eig'] <= -1e-8


def test_convexity_corollary():
    result = convexity_trials(build_group('dihedral 4'), trials=50, seed=7)
    assert result['smallest_generic'] > 1e-6
    assert result['largest_colinear'] <= 1e-10
    assert result['violations'] == 0


def test_convexity_check_weight_range(plane_irrep):
    with pytest.raises(InvalidParameter):
        convexity_check(plane_irrep, [1, 0], [1, 0], [0, 1], 1.5)


def test_tensor_product_identity(dihedral_irreps):
    c3 = decompose_regular(build_group('cyclic 3'))
    rng = np.random.default_rng(9)
    deviation = tensor_product_check(dihedral_irreps[-1], c3[1], random_complex_vector(rng, 2),
                                     random_complex_vector(rng, 1))
    assert deviation <= 1e-12


def test_interpolation_failure(plane_irrep):
    result = interpolation_failure_demo(plane_irrep, 5, seed=0)
    assert result['singular_expected']
    assert abs(result['min_eig']) <= 1e-10
    assert result['gram'].size == 5
    assert len(result['elements']) == 5


def test_interpolation_with_few_elements(plane_irrep):
    result = interpolation_failure_demo(plane_irrep, 2, seed=0)
    assert not result['singular_expected']
