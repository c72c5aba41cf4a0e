'''
Wavelet transforms on finite groups.

Haar measure is the probability measure (weight 1/|G| per element), so for an
irreducible unitary representation pi of dimension d the orthogonality
relations read

    <W_{g1} f1, W_{g2} f2>_{L2(G)} = <f1, f2> conj(<g1, g2>) / d

and a window is admissible when ||g|| = sqrt(d).
'''
import logging
import math
import re

import numpy as np
from cached_property import cached_property
from django.conf import settings
from scipy import linalg

from .exceptions import (DecompositionError, GroupTooLarge, InvalidGroupSpec, TheoremViolation,
                         ZeroVector, raise_dimension_mismatch, raise_invalid_parameter, theorem_check)
from .interp import GramMatrix
from .tools import random_complex_vector, random_unitary


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG

tolerances = config['tolerances']

GROUP_SPEC_RE = re.compile(r'^\s*(cyclic|dihedral|finite_heisenberg)[\s:_-]*(\d+)\s*$')


class FiniteGroup(object):
    '''A finite group given by its multiplication table on element indices.'''

    def __init__(self, mul, name='group', labels=None):
        mul = np.asarray(mul, dtype=int)
        order = mul.shape[0]
        if mul.shape != (order, order) or order < 1:
            raise InvalidGroupSpec(context={'error': 'multiplication table must be square'})
        if mul.min() < 0 or mul.max() >= order:
            raise InvalidGroupSpec(context={'error': 'multiplication table is not closed'})
        self.mul = mul
        self.mul.flags.writeable = False
        self.order = order
        self.name = name
        self.labels = labels or [str(i) for i in range(order)]
        self._check_axioms()

    def _check_axioms(self):
        mul = self.mul
        # associativity on all triples: (ab)c == a(bc)
        left = mul[mul[:, :, None], np.arange(self.order)[None, None, :]]
        right = mul[np.arange(self.order)[:, None, None], mul[None, :, :]]
        if not np.array_equal(left, right):
            raise InvalidGroupSpec(context={'error': '{} is not associative'.format(self.name)})
        identity = self.identity
        for row in mul:
            if len(set(row.tolist())) != self.order:
                raise InvalidGroupSpec(context={'error': '{} has a non-invertible element'.format(self.name)})
        if not (np.array_equal(mul[identity], np.arange(self.order)) and
                np.array_equal(mul[:, identity], np.arange(self.order))):
            raise InvalidGroupSpec(context={'error': '{} has no two-sided identity'.format(self.name)})

    @cached_property
    def identity(self):
        candidates = [e for e in range(self.order) if np.array_equal(self.mul[e], np.arange(self.order))]
        if not candidates:
            raise InvalidGroupSpec(context={'error': '{} has no identity'.format(self.name)})
        return candidates[0]

    @cached_property
    def inv(self):
        inverses = np.argmax(self.mul == self.identity, axis=1)
        inverses.flags.writeable = False
        return inverses

    def __repr__(self):
        return 'FiniteGroup({}, order={})'.format(self.name, self.order)


def cyclic_group(n):
    elements = np.arange(n)
    return FiniteGroup((elements[:, None] + elements[None, :]) % n, name='cyclic {}'.format(n))


def dihedral_group(n):
    '''D_n of order 2n; index k + n e stands for r^k s^e.'''
    labels = []
    mul = np.zeros((2 * n, 2 * n), dtype=int)
    for e1 in range(2):
        for k1 in range(n):
            labels.append('r^{}{}'.format(k1, ' s' if e1 else ''))
            for e2 in range(2):
                for k2 in range(n):
                    k = (k1 + (-1) ** e1 * k2) % n
                    mul[k1 + n * e1, k2 + n * e2] = k + n * ((e1 + e2) % 2)
    return FiniteGroup(mul, name='dihedral {}'.format(n), labels=labels)


def heisenberg_group(p):
    '''Upper unitriangular 3x3 matrices over Z/p; index a + p b + p^2 c for
    [[1, a, c], [0, 1, b], [0, 0, 1]].'''
    order = p ** 3
    elements = [(a, b, c) for c in range(p) for b in range(p) for a in range(p)]
    mul = np.zeros((order, order), dtype=int)
    for i, (a, b, c) in enumerate(elements):
        for j, (a2, b2, c2) in enumerate(elements):
            a3, b3, c3 = (a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p
            mul[i, j] = a3 + p * b3 + p * p * c3
    labels = ['({},{},{})'.format(*element) for element in elements]
    return FiniteGroup(mul, name='finite_heisenberg {}'.format(p), labels=labels)


def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(math.isqrt(p)) + 1))


def build_group(spec):
    '''Build a test-bed group from "cyclic N", "dihedral N" or "finite_heisenberg p"
    (a (family, parameter) pair is accepted too).'''
    if isinstance(spec, (tuple, list)):
        family, parameter = spec
    else:
        match = GROUP_SPEC_RE.match(str(spec))
        if not match:
            raise InvalidGroupSpec(context={'error': 'unrecognised group spec {!r}'.format(spec)})
        family, parameter = match.group(1), match.group(2)
    parameter = int(parameter)
    if family == 'cyclic':
        if parameter < 1:
            raise_invalid_parameter('N', parameter, '>= 1')
        return cyclic_group(parameter)
    if family == 'dihedral':
        if parameter < 1:
            raise_invalid_parameter('N', parameter, '>= 1')
        return dihedral_group(parameter)
    if family == 'finite_heisenberg':
        if not _is_prime(parameter):
            raise InvalidGroupSpec(context={'error': '{} is not prime'.format(parameter)})
        if parameter not in config['groups']['heisenberg_primes']:
            raise_invalid_parameter('p', parameter, 'one of {}'.format(config['groups']['heisenberg_primes']))
        return heisenberg_group(parameter)
    raise InvalidGroupSpec(context={'error': 'unrecognised group family {!r}'.format(family)})


def direct_product(group, other):
    '''G x H with index x * |H| + y for (x, y).'''
    mul = (group.mul[:, None, :, None] * other.order + other.mul[None, :, None, :])
    mul = mul.reshape(group.order * other.order, group.order * other.order)
    labels = ['({},{})'.format(a, b) for a in group.labels for b in other.labels]
    return FiniteGroup(mul, name='{} x {}'.format(group.name, other.name), labels=labels)


class UnitaryRep(object):
    '''A homomorphism from a finite group into d x d unitary matrices.'''

    def __init__(self, group, matrices, name='', check=True):
        matrices = np.asarray(matrices, dtype=complex)
        if matrices.ndim != 3 or matrices.shape[0] != group.order or matrices.shape[1] != matrices.shape[2]:
            raise_dimension_mismatch((group.order, 'd', 'd'), matrices.shape, what='representation shape')
        self.group = group
        self.matrices = matrices
        self.name = name
        if check:
            self.check()

    @property
    def dim(self):
        return self.matrices.shape[1]

    def __call__(self, element):
        return self.matrices[element]

    def check(self):
        '''Homomorphism and unitarity within the representation tolerance.'''
        tol = tolerances['representation'] * max(1, self.dim)
        products = np.einsum('xij,yjk->xyik', self.matrices, self.matrices)
        expected = self.matrices[self.group.mul]
        homomorphism = float(np.max(np.abs(products - expected)))
        gram = np.einsum('xji,xjk->xik', self.matrices.conj(), self.matrices)
        unitarity = float(np.max(np.abs(gram - np.eye(self.dim)[None])))
        if homomorphism > tol or unitarity > tol:
            raise TheoremViolation('unitary representation', 'homomorphism {:.2e}, unitarity {:.2e}'.format(
                homomorphism, unitarity))
        return {'homomorphism': homomorphism, 'unitarity': unitarity}

    @cached_property
    def character(self):
        return np.trace(self.matrices, axis1=1, axis2=2)

    def conjugated(self, unitary):
        '''The equivalent representation U pi(x) U*.'''
        return UnitaryRep(self.group, unitary @ self.matrices @ unitary.conj().T, name=self.name + "'")

    def __repr__(self):
        return 'UnitaryRep({}, {}, dim={})'.format(self.group.name, self.name, self.dim)


def regular_representation(group):
    '''Left regular representation: L(x) e_y = e_{xy}.'''
    matrices = np.zeros((group.order, group.order, group.order))
    for x in range(group.order):
        matrices[x, group.mul[x], np.arange(group.order)] = 1.0
    return UnitaryRep(group, matrices, name='regular')


def commutant_dimension(rep):
    '''Dimension of {X : pi(x) X = X pi(x) for all x}; 1 exactly for irreducibles (Schur).'''
    d = rep.dim
    identity = np.eye(d)
    # row-major vec: vec(A X) = (A kron I) vec X, vec(X A) = (I kron A^T) vec X
    system = np.concatenate([np.kron(m, identity) - np.kron(identity, m.T) for m in rep.matrices])
    return linalg.null_space(system, rcond=1e-9).shape[1]


def _cluster(eigenvalues, tol):
    groups = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i] - eigenvalues[i - 1] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _split_regular(regular, rng):
    '''Eigenspaces of a random commutant element of the regular representation.'''
    order = regular.group.order
    h = rng.standard_normal((order, order)) + 1j * rng.standard_normal((order, order))
    h = h + h.conj().T
    averaged = np.einsum('xij,jk,xlk->il', regular.matrices, h, regular.matrices.conj()) / order
    eigenvalues, vectors = linalg.eigh((averaged + averaged.conj().T) / 2)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    blocks = []
    for cluster in _cluster(eigenvalues, 1e-8 * scale):
        basis = vectors[:, cluster]
        matrices = np.einsum('ia,xij,jb->xab', basis.conj(), regular.matrices, basis)
        blocks.append(UnitaryRep(regular.group, matrices, check=False))
    return blocks


def decompose_regular(group):
    '''
    One irreducible unitary representation per equivalence class, taken from
    the regular representation.

    The eigenspaces of a random Hermitian matrix averaged into the commutant of
    the regular representation are irreducible subspaces; each block is
    certified irreducible by its commutant dimension, and blocks with equal
    characters are identified.
    '''
    if group.order > config['groups']['max_order']:
        raise GroupTooLarge(context={'error': 'order {} exceeds {}'.format(
            group.order, config['groups']['max_order'])})
    regular = regular_representation(group)
    rng = np.random.default_rng(config['groups']['decomposition_seed'])
    for attempt in range(config['groups']['decomposition_attempts']):
        blocks = _split_regular(regular, rng)
        if all(commutant_dimension(block) == 1 for block in blocks):
            break
        logger.warning('Decomposition attempt %s of %s produced a reducible block; retrying',
                       attempt + 1, group.name)
    else:
        raise DecompositionError('could not split the regular representation of {}'.format(group.name))

    irreps = []
    for block in blocks:
        if not any(irrep.dim == block.dim and np.allclose(irrep.character, block.character, atol=1e-8)
                   for irrep in irreps):
            irreps.append(block)
    irreps.sort(key=lambda irrep: irrep.dim)
    for index, irrep in enumerate(irreps):
        irrep.name = 'irrep {} (dim {})'.format(index, irrep.dim)
        irrep.check()
    total = sum(irrep.dim ** 2 for irrep in irreps)
    if total != group.order:
        raise DecompositionError('sum of squared dimensions {} != |G| = {}'.format(total, group.order))
    return irreps


def class_equation(group):
    dims = [irrep.dim for irrep in decompose_regular(group)]
    return {'dims': dims, 'sum_of_squares': sum(d * d for d in dims), 'order': group.order}


def _vector(rep, vector, what='vector'):
    vector = np.asarray(vector, dtype=complex).ravel()
    if vector.size != rep.dim:
        raise_dimension_mismatch(rep.dim, vector.size, what=what)
    return vector


def admissible_rescale(rep, g):
    '''g * sqrt(d) / ||g||, the admissible multiple of g.'''
    g = _vector(rep, g, 'window')
    norm = float(np.linalg.norm(g))
    if norm == 0:
        raise ZeroVector()
    return g * (math.sqrt(rep.dim) / norm)


def is_admissible(rep, g, tol=1e-12):
    return abs(float(np.linalg.norm(g)) - math.sqrt(rep.dim)) <= tol * max(1, math.sqrt(rep.dim))


class WaveletVector(object):
    '''W_g f as a function on the group: values[x] = <f, pi(x) g>.'''

    def __init__(self, values, rep, window, analyzed):
        self.values = values
        self.rep = rep
        self.window = window
        self.analyzed = analyzed

    def norm(self):
        '''L2 norm under probability Haar.'''
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2)) / len(self.values))


def wavelet_transform(rep, g, f):
    g = _vector(rep, g, 'window')
    f = _vector(rep, f, 'analyzed vector')
    orbit = rep.matrices @ g
    return WaveletVector(orbit.conj() @ f, rep, g, f)


def haar_inner(a, b):
    '''<a, b> in L2(G) under probability Haar.'''
    return complex(np.vdot(b, a)) / len(a)


def left_translate(values, group, y):
    '''(L_y F)(x) = F(y^{-1} x).'''
    return np.asarray(values)[group.mul[group.inv[y]]]


def convolve(group, first, second):
    '''(F1 * F2)(x) = (1/|G|) sum_y F1(y) F2(y^{-1} x).'''
    first = np.asarray(first)
    second = np.asarray(second)
    # second[mul[inv[y], x]] laid out as [y, x]
    return first @ second[group.mul[group.inv]] / group.order


class WaveletSubspace(object):
    '''Orthonormal basis (probability Haar) of W_g(H_pi) inside L2(G).'''

    def __init__(self, basis, rep, window):
        self.basis = basis
        self.rep = rep
        self.window = window

    @property
    def dim(self):
        return self.basis.shape[1]


def wavelet_subspace(rep, g):
    g = _vector(rep, g, 'window')
    if not is_admissible(rep, g):
        logger.warning('Window of norm %.6g is not admissible for %s; rescaling to sqrt(%s)',
                       np.linalg.norm(g), rep.name or 'the representation', rep.dim)
        g = admissible_rescale(rep, g)
    columns = np.stack([wavelet_transform(rep, g, e).values for e in np.eye(rep.dim)], axis=1)
    order = rep.group.order
    basis = linalg.orth(columns / math.sqrt(order)) * math.sqrt(order)
    if basis.shape[1] != rep.dim:
        raise TheoremViolation('wavelet transform injectivity', 'rank {} < d = {}'.format(basis.shape[1], rep.dim))
    return WaveletSubspace(basis, rep, g)


def reproducing_deviation(subspace):
    '''max |F * k_e - F| over the basis elements F, k_e = W_g g.'''
    group = subspace.rep.group
    kernel = wavelet_transform(subspace.rep, subspace.window, subspace.window).values
    deviations = [np.max(np.abs(convolve(group, column, kernel) - column)) for column in subspace.basis.T]
    return float(max(deviations))


def orbit_rank(rep, g):
    '''Rank of {pi(x) g}: equals d for every non-zero g when pi is irreducible.'''
    g = _vector(rep, g, 'window')
    return int(np.linalg.matrix_rank(rep.matrices @ g, tol=1e-9))


def orthogonality_deviation(rep, g1, g2, f1, f2):
    '''|<W_{g1} f1, W_{g2} f2> - <f1, f2> conj(<C g1, C g2>)| with C = d^{-1/2} Id.'''
    left = haar_inner(wavelet_transform(rep, g1, f1).values, wavelet_transform(rep, g2, f2).values)
    right = np.vdot(f2, f1) * np.conj(np.vdot(g2, g1)) / rep.dim
    return float(abs(left - right))


def isomorphism_check(rep, g, h):
    '''Psi: W_g f -> W_h f is an isometry between the two wavelet spaces, but it
    does not in general carry the reproducing kernel of one to the other.'''
    g = admissible_rescale(rep, g)
    h = admissible_rescale(rep, h)
    isometry = 0.0
    for f in np.eye(rep.dim):
        isometry = max(isometry, abs(wavelet_transform(rep, g, f).norm() - wavelet_transform(rep, h, f).norm()))
    kernel_g = wavelet_transform(rep, g, g).values
    kernel_h = wavelet_transform(rep, h, h).values
    return {'isometry_deviation': float(isometry), 'kernel_difference': float(np.max(np.abs(kernel_g - kernel_h)))}


def _principal_cosines(first, second):
    order = first.basis.shape[0]
    overlap = first.basis.conj().T @ second.basis / order
    return linalg.svdvals(overlap)


@theorem_check('rigidity')
def rigidity_check(rep, other, g, h):
    '''
    Intersection of W_g(H_pi) and W_h(H_rho) via principal angles. A non-zero
    intersection forces the spaces to coincide and yields a unitary T with
    T g = h intertwining pi and rho; T is built from pi(x) g -> rho(x) h.
    '''
    if rep.group is not other.group and not np.array_equal(rep.group.mul, other.group.mul):
        raise_invalid_parameter('representations', (rep, other), 'on the same group')
    first = wavelet_subspace(rep, g)
    second = wavelet_subspace(other, h)
    cosines = _principal_cosines(first, second)
    threshold = 1 - tolerances['principal_angle']
    intersection_dim = int(np.sum(cosines >= threshold))
    result = {
        'intersection_dim': intersection_dim,
        'equal': False,
        'intertwiner': None,
        'intertwining_residual': None,
        'cosines': cosines.tolist(),
    }
    if intersection_dim == 0:
        return result
    if not (intersection_dim == first.dim == second.dim):
        raise TheoremViolation('rigidity', 'intersection of dimension {} between spaces of dimensions {} and {}'.format(
            intersection_dim, first.dim, second.dim))

    source = (rep.matrices @ first.window).T
    target = (other.matrices @ second.window).T
    intertwiner = target @ linalg.pinv(source)
    residual = max(
        float(np.max(np.abs(intertwiner @ rep.matrices - other.matrices @ intertwiner))),
        float(np.max(np.abs(intertwiner @ first.window - second.window))),
        float(np.max(np.abs(intertwiner.conj().T @ intertwiner - np.eye(rep.dim)))),
    )
    if residual > tolerances['intertwiner']:
        raise TheoremViolation('rigidity', 'intertwiner residual {:.3e}'.format(residual))
    result.update({'equal': True, 'intertwiner': intertwiner, 'intertwining_residual': residual})
    return result


def positive_type_matrix(group, phi):
    '''{phi(x_j^{-1} x_i)}_{i, j} over all of G.'''
    values = phi.values if isinstance(phi, WaveletVector) else np.asarray(phi, dtype=complex)
    if values.size != group.order:
        raise_dimension_mismatch(group.order, values.size, what='function length')
    # [i, j] -> inv[j] * i
    return values[group.mul[group.inv[None, :], np.arange(group.order)[:, None]]]


def convexity_check(rep, g, g1, g2, t):
    '''
    Can t W_{g1} g1 + (1 - t) W_{g2} g2 equal W_g g?

    The combination is the wavelet function of D = t g1 g1* + (1 - t) g2 g2*,
    and equals some W_g g only when D has rank one. ``is_extreme_violation``
    flags the impossible case of the combination matching W_g g while D has
    rank two or more.
    '''
    t = float(t)
    if not 0 <= t <= 1:
        raise_invalid_parameter('t', t, 'in [0, 1]')
    g, g1, g2 = (admissible_rescale(rep, v) for v in (g, g1, g2))
    operator = t * np.outer(g1, g1.conj()) + (1 - t) * np.outer(g2, g2.conj())
    singular_values = linalg.svdvals(operator)
    second = float(singular_values[1]) if len(singular_values) > 1 else 0.0
    combination = (t * wavelet_transform(rep, g1, g1).values +
                   (1 - t) * wavelet_transform(rep, g2, g2).values)
    deviation = float(np.max(np.abs(combination - wavelet_transform(rep, g, g).values)))
    tol = tolerances['rank_one']
    return {
        'second_singular_value': second,
        'rank_one': second <= tol,
        'deviation': deviation,
        'is_extreme_violation': deviation <= tol and second > tol,
    }


def tensor_product_check(rep, other, g, h):
    '''max |W_{g x h}(g x h)(x, y) - W_g g(x) W_h h(y)| over G x H.'''
    order = rep.group.order * other.group.order
    if order > config['groups']['max_product_order']:
        raise GroupTooLarge(context={'error': '|G||H| = {} exceeds {}'.format(
            order, config['groups']['max_product_order'])})
    g = _vector(rep, g, 'window')
    h = _vector(other, h, 'window')
    product = direct_product(rep.group, other.group)
    matrices = np.einsum('xij,ykl->xyikjl', rep.matrices, other.matrices).reshape(
        order, rep.dim * other.dim, rep.dim * other.dim)
    tensor = UnitaryRep(product, matrices, name='{} x {}'.format(rep.name, other.name))
    window = np.kron(g, h)
    joint = wavelet_transform(tensor, window, window).values
    separate = np.outer(wavelet_transform(rep, g, g).values, wavelet_transform(other, h, h).values).ravel()
    return float(np.max(np.abs(joint - separate)))


def peter_weyl_completeness(group):
    '''Span of all W_{e_j} e_i over every irreducible; complete when it is L2(G).'''
    rows = []
    for irrep in decompose_regular(group):
        basis = np.eye(irrep.dim)
        for g in basis:
            for f in basis:
                rows.append(wavelet_transform(irrep, g, f).values)
    span_dim = int(np.linalg.matrix_rank(np.array(rows), tol=1e-9))
    return {'span_dim': span_dim, 'order': group.order, 'complete': span_dim == group.order}


def kernel_gram(rep, g, elements):
    '''K[i, j] = <pi(x_j) g, pi(x_i) g> for the listed group elements.'''
    orbit = rep.matrices[list(elements)] @ _vector(rep, g, 'window')
    return orbit.conj() @ orbit.T


def interpolation_failure_demo(rep, m, g=None, seed=0):
    '''
    Gram matrix of m > d point kernels; its rank is at most d so the smallest
    eigenvalue vanishes and the wavelet space is not fully interpolating.
    '''
    order = rep.group.order
    if int(m) != m or m < 1:
        raise_invalid_parameter('m', m, 'a positive integer')
    if m > order:
        raise_invalid_parameter('m', m, '<= |G| = {}'.format(order))
    rng = np.random.default_rng(seed)
    if g is None:
        g = random_complex_vector(rng, rep.dim)
    g = admissible_rescale(rep, g)
    elements = sorted(rng.choice(order, size=int(m), replace=False).tolist())
    entries = kernel_gram(rep, g, elements)
    entries = (entries + entries.conj().T) / 2
    gram = GramMatrix(entries, window_id='finite:{}'.format(rep.name),
                      points_id='elements({})'.format(','.join(map(str, elements))))
    min_eig = gram.min_eig
    singular_expected = m > rep.dim
    if singular_expected and abs(min_eig) > tolerances['verdict']:
        raise TheoremViolation('interpolation failure', 'min_eig {:.3e} with m={} > d={}'.format(
            min_eig, m, rep.dim))
    return {'min_eig': min_eig, 'elements': elements, 'gram': gram, 'window': g,
            'singular_expected': singular_expected}


def _random_admissible(rng, rep):
    return admissible_rescale(rep, random_complex_vector(rng, rep.dim))


def rigidity_trials(group, trials, seed):
    '''Random rigidity checks over the irreducibles of ``group``.

    Each trial picks an irreducible pi and admissible g, then one of: an
    unrelated h for the same pi, a phase multiple e^{i theta} g, or the pair
    (U pi U*, U g) for a random unitary U, or a different irreducible.
    '''
    rng = np.random.default_rng(seed)
    irreps = decompose_regular(group)
    counts = {'zero': 0, 'full': 0, 'intermediate': 0, 'trials': trials}
    max_residual = 0.0
    for trial in range(trials):
        rep = irreps[rng.integers(len(irreps))]
        g = _random_admissible(rng, rep)
        mode = trial % 4
        if mode == 0:
            other, h = rep, _random_admissible(rng, rep)
        elif mode == 1:
            other, h = rep, np.exp(1j * rng.uniform(0, 2 * np.pi)) * g
        elif mode == 2:
            unitary = random_unitary(rng, rep.dim)
            other, h = rep.conjugated(unitary), unitary @ g
        else:
            other = irreps[rng.integers(len(irreps))]
            h = _random_admissible(rng, other)
        try:
            result = rigidity_check(rep, other, g, h)
        except TheoremViolation as err:
            if not err.detail.startswith('intersection'):
                raise
            counts['intermediate'] += 1
            continue
        dim = result['intersection_dim']
        if dim == 0:
            counts['zero'] += 1
        else:
            counts['full'] += 1
            max_residual = max(max_residual, result['intertwining_residual'])
    counts['max_intertwining_residual'] = max_residual
    return counts


def positive_type_trials(group, trials, seed):
    '''Differences W_g g - W_h h over random admissible pairs: each non-zero one
    must have a negative eigenvalue in its positive-type matrix.'''
    rng = np.random.default_rng(seed)
    irreps = decompose_regular(group)
    tested = failures = 0
    worst = -math.inf
    for _ in range(trials):
        rep = irreps[rng.integers(len(irreps))]
        g, h = _random_admissible(rng, rep), _random_admissible(rng, rep)
        difference = wavelet_transform(rep, g, g).values - wavelet_transform(rep, h, h).values
        if np.max(np.abs(difference)) <= 1e-6:
            continue
        tested += 1
        matrix = positive_type_matrix(group, difference)
        min_eig = float(linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
        worst = max(worst, min_eig)
        if min_eig > -1e-8:
            failures += 1
    return {'trials': trials, 'tested': tested, 'failures': failures, 'largest_min_eig': worst}


def convexity_trials(group, trials, seed, t=0.5):
    '''Second singular values of t g1 g1* + (1 - t) g2 g2* for random pairs on
    irreducibles of dimension >= 2, and for colinear pairs g2 = e^{i theta} g1.'''
    rng = np.random.default_rng(seed)
    irreps = [irrep for irrep in decompose_regular(group) if irrep.dim >= 2]
    if not irreps:
        raise_invalid_parameter('group', group.name, 'a group with an irreducible of dimension >= 2')
    smallest_generic = math.inf
    largest_colinear = 0.0
    violations = 0
    for _ in range(trials):
        rep = irreps[rng.integers(len(irreps))]
        g1, g2 = _random_admissible(rng, rep), _random_admissible(rng, rep)
        if abs(np.vdot(g1, g2)) >= 0.99 * np.linalg.norm(g1) * np.linalg.norm(g2):
            continue
        generic = convexity_check(rep, g1, g1, g2, t)
        smallest_generic = min(smallest_generic, generic['second_singular_value'])
        colinear = convexity_check(rep, g1, g1, np.exp(1j * rng.uniform(0, 2 * np.pi)) * g1, t)
        largest_colinear = max(largest_colinear, colinear['second_singular_value'])
        violations += generic['is_extreme_violation'] + colinear['is_extreme_violation']
    return {'trials': trials, 'smallest_generic': smallest_generic,
            'largest_colinear': largest_colinear, 'violations': violations}
