'''
Interpolation in Gabor spaces through their reproducing kernel.

An interpolation problem (points, values) is solvable in the Gabor space of
an admissible window exactly when the values lie in the image of the Gram
matrix of the point kernels; the minimal-norm solution is the pseudo-inverse
solution.
'''
import logging
import math

import numpy as np
from cached_property import cached_property
from django.conf import settings
from scipy import linalg

from .exceptions import (DuplicatePoints, InfeasibleInterpolation, NonFinitePoint, WindowMismatch,
                         raise_dimension_mismatch, raise_invalid_parameter)
from .gabor import TFPoint, point_kernel_values
from .tools import relative_psd, trapezoid_axis


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG


class PointSet(object):
    '''Ordered, pairwise distinct phase-space points of a common dimension.'''

    def __init__(self, points):
        points = [p if isinstance(p, TFPoint) else TFPoint.from_array(p) for p in points]
        if not points:
            raise_invalid_parameter('points', points, 'a non-empty list')
        dimension = points[0].dimension
        for point in points:
            if point.dimension != dimension:
                raise_dimension_mismatch(dimension, point.dimension)
        seen = {}
        for index, point in enumerate(points):
            if point in seen:
                raise DuplicatePoints(context={
                    'error': 'points {} and {} are both {}'.format(seen[point], index, point)})
            seen[point] = index
        self.points = points
        self.dimension = dimension

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index):
        return self.points[index]

    def translated(self, offset):
        return PointSet([point + offset for point in self.points])

    @cached_property
    def identifier(self):
        return 'points({})'.format(';'.join(
            ','.join(repr(v) for v in point.x + point.omega) for point in self.points))

    def min_separation(self):
        if len(self.points) < 2:
            return math.inf
        return min(p.distance(q) for i, p in enumerate(self.points) for q in self.points[i + 1:])


class GramMatrix(object):
    '''Hermitian matrix of kernel values; rows are evaluation points, columns kernel centres.'''

    def __init__(self, entries, window_id='', points_id=''):
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise_dimension_mismatch('square matrix', entries.shape, what='Gram shape')
        if not np.all(np.isfinite(entries)):
            # overflow from far-apart points ends up here as inf or nan
            raise NonFinitePoint(context={'error': 'non-finite Gram matrix entries'})
        self.entries = entries
        self.window_id = window_id
        self.points_id = points_id

    @property
    def size(self):
        return self.entries.shape[0]

    @cached_property
    def eigh(self):
        return linalg.eigh(self.entries)

    @property
    def eigenvalues(self):
        return self.eigh[0]

    @property
    def min_eig(self):
        return float(self.eigenvalues[0])

    @property
    def max_eig(self):
        return float(self.eigenvalues[-1])

    def hermitian_defect(self):
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))


def gram_assemble(g, omega):
    '''K[i, j] = k_{x_j}(x_i): the point kernel centred at x_j evaluated at x_i.

    Only the upper triangle is computed; the lower one is its mirror image so
    the result is Hermitian exactly.
    '''
    g = g.admissible()
    if not isinstance(omega, PointSet):
        omega = PointSet(omega)
    if omega.dimension != g.dimension:
        raise_dimension_mismatch(g.dimension, omega.dimension)
    m = len(omega)
    entries = np.zeros((m, m), dtype=complex)
    for j, center in enumerate(omega):
        column = point_kernel_values(g, center, omega.points[:j + 1])
        entries[:j + 1, j] = column
    upper = np.triu(entries, 1)
    entries = upper + upper.conj().T + np.diag(entries.diagonal().real)
    return GramMatrix(entries, window_id=g.identifier, points_id=omega.identifier)


def psd_check(gram, tol=None):
    '''Smallest eigenvalue and positive semi-definiteness at relative tolerance.'''
    tol = config['tolerances']['verdict'] if tol is None else tol
    eigenvalues = gram.eigenvalues
    return {
        'min_eig': float(eigenvalues[0]),
        'max_eig': float(eigenvalues[-1]),
        'psd': relative_psd(eigenvalues, tol),
    }


def strictly_positive_definite(gram, tol=None):
    '''The fully-interpolating verdict for one point set: min_eig > tol * max_eig.'''
    tol = config['tolerances']['verdict'] if tol is None else tol
    return gram.min_eig > tol * gram.max_eig


def _values_vector(gram, values):
    values = np.asarray(values, dtype=complex).ravel()
    if values.size != gram.size:
        raise_dimension_mismatch(gram.size, values.size, what='number of values')
    return values


def pseudo_inverse_solve(gram, values):
    '''Minimal-norm least-squares solution of K alpha = values via the Hermitian
    eigendecomposition, dropping eigenvalues below pinv_tol * max_eig.'''
    eigenvalues, vectors = gram.eigh
    cutoff = config['tolerances']['pinv'] * max(float(eigenvalues[-1]), 0.0)
    keep = eigenvalues > cutoff
    coefficients = vectors[:, keep].conj().T @ values
    return vectors[:, keep] @ (coefficients / eigenvalues[keep])


def interpolation_feasible(gram, values):
    values = _values_vector(gram, values)
    alpha = pseudo_inverse_solve(gram, values)
    residual = float(np.linalg.norm(gram.entries @ alpha - values))
    bound = config['tolerances']['feasibility'] * max(1.0, float(np.linalg.norm(values)))
    return residual <= bound


class Interpolant(object):
    '''F = sum_k alpha_k k_{x_k} for a window and point set.'''

    def __init__(self, coefficients, points, window_id, norm, values=None):
        self.coefficients = np.asarray(coefficients, dtype=complex)
        self.points = points
        self.window_id = window_id
        self.norm = norm
        self.values = values


def solve_minimal_norm(gram, values, points=None):
    values = _values_vector(gram, values)
    if not interpolation_feasible(gram, values):
        raise InfeasibleInterpolation(context={
            'error': 'values are outside the image of the {}x{} Gram matrix (min_eig {:.3e})'.format(
                gram.size, gram.size, gram.min_eig)})
    alpha = pseudo_inverse_solve(gram, values)
    norm_squared = float(np.real(np.vdot(alpha, gram.entries @ alpha)))
    return Interpolant(alpha, points, gram.window_id, math.sqrt(max(norm_squared, 0.0)), values=values)


def _check_window(interpolant, g):
    if interpolant.points is None:
        raise WindowMismatch(context={'error': 'interpolant has no point set to evaluate kernels at'})
    if g.identifier != interpolant.window_id and g.admissible().identifier != interpolant.window_id:
        raise WindowMismatch(context={
            'error': 'interpolant built from {}, evaluated with {}'.format(interpolant.window_id, g.identifier)})
    return g.admissible()


def interpolant_values(interpolant, g, ats):
    g = _check_window(interpolant, g)
    ats = list(ats)
    total = np.zeros(len(ats), dtype=complex)
    for alpha, center in zip(interpolant.coefficients, interpolant.points):
        if alpha != 0:
            total += alpha * point_kernel_values(g, center, ats)
    return total


def interpolant_eval(interpolant, g, at):
    return complex(interpolant_values(interpolant, g, [at])[0])


def interpolant_norm_bound(interpolant):
    '''Uniform bound |F(q)| <= ||k_q|| ||F|| = ||F|| for unit-norm windows.'''
    return interpolant.norm


class GridSpec(object):
    '''Rectangular (x, omega) grid for one-dimensional windows.'''

    def __init__(self, xmin, xmax, omega_min, omega_max, step):
        bounds = {'xmin': xmin, 'xmax': xmax, 'omega_min': omega_min, 'omega_max': omega_max, 'step': step}
        for name, value in bounds.items():
            if not math.isfinite(value):
                raise_invalid_parameter('grid.' + name, value, 'a finite number')
        if not step > 0:
            raise_invalid_parameter('step', step, 'positive')
        if xmax < xmin or omega_max < omega_min:
            raise_invalid_parameter('grid ranges', (xmin, xmax, omega_min, omega_max), 'non-empty')
        self.xmin, self.xmax = float(xmin), float(xmax)
        self.omega_min, self.omega_max = float(omega_min), float(omega_max)
        self.step = float(step)
        rows = self.row_count()
        if rows > config['max_grid_rows']:
            raise_invalid_parameter('grid', '{} rows'.format(rows), 'at most {} rows'.format(config['max_grid_rows']))

    def row_count(self):
        counts = [(high - low) / self.step for low, high in
                  ((self.xmin, self.xmax), (self.omega_min, self.omega_max))]
        if not all(math.isfinite(count) for count in counts):
            return math.inf
        return (int(round(counts[0])) + 1) * (int(round(counts[1])) + 1)

    def axes(self):
        xs, _ = trapezoid_axis(self.xmin, self.xmax, self.step)
        omegas, _ = trapezoid_axis(self.omega_min, self.omega_max, self.step)
        return xs, omegas

    def points(self):
        '''Row-major: x is the outer loop, omega the inner one.'''
        xs, omegas = self.axes()
        return [TFPoint(x, omega) for x in xs for omega in omegas]

    def as_dict(self):
        return {'xmin': self.xmin, 'xmax': self.xmax, 'omega_min': self.omega_min,
                'omega_max': self.omega_max, 'step': self.step}


def interpolant_grid(interpolant, g, grid):
    '''Rows (x, omega, Re F, Im F) over the grid, row-major.'''
    if g.dimension != 1:
        raise_dimension_mismatch(1, g.dimension, what='grid window dimension')
    points = grid.points()
    if not points:
        raise_invalid_parameter('grid', grid.as_dict(), 'non-empty')
    values = interpolant_values(interpolant, g, points)
    return [(p.x[0], p.omega[0], v.real, v.imag) for p, v in zip(points, values)]
