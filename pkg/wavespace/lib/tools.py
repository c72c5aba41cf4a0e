from functools import lru_cache, wraps  # use this to preserve function signatures and docstrings
import logging
import time

import numpy as np
from scipy import linalg


logger = logging.getLogger(__name__)


@lru_cache(maxsize=32)
def quadrature_grid(half_width, nodes, dimension):
    '''Nodes and weights of the composite trapezoid rule on [-T, T]^n.

    Points are returned in lexicographic order (last axis fastest), shape
    (nodes ** dimension, dimension). The arrays are read-only since they are
    shared through the cache.
    '''
    axis = np.linspace(-half_width, half_width, nodes)
    step = axis[1] - axis[0]
    axis_weights = np.full(nodes, step)
    axis_weights[0] = axis_weights[-1] = step / 2

    mesh = np.meshgrid(*([axis] * dimension), indexing='ij')
    points = np.stack([m.ravel() for m in mesh], axis=-1)
    weight_mesh = np.meshgrid(*([axis_weights] * dimension), indexing='ij')
    weights = np.prod(np.stack([m.ravel() for m in weight_mesh], axis=-1), axis=-1)

    points.flags.writeable = False
    weights.flags.writeable = False
    return points, weights


def trapezoid_axis(low, high, step):
    '''Equispaced nodes covering [low, high] and their trapezoid weights.'''
    count = int(round((high - low) / step)) + 1
    if count < 2:
        return np.array([float(low)]), np.array([1.0])
    axis = np.linspace(low, high, count)
    h = axis[1] - axis[0]
    weights = np.full(count, h)
    weights[0] = weights[-1] = h / 2
    return axis, weights


def relative_psd(eigenvalues, tol):
    '''True when the smallest eigenvalue is not below -tol * largest.'''
    min_eig = float(eigenvalues[0])
    max_eig = float(eigenvalues[-1])
    return min_eig >= -tol * max(max_eig, 0.0)


def random_complex_vector(rng, dimension):
    return rng.standard_normal(dimension) + 1j * rng.standard_normal(dimension)


def random_unitary(rng, dimension):
    '''Haar-random unitary via QR of a complex Ginibre matrix.'''
    z = rng.standard_normal((dimension, dimension)) + 1j * rng.standard_normal((dimension, dimension))
    q, r = linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def complex_pair(value):
    '''[re, im] pair for JSON output.'''
    value = complex(value)
    return [value.real, value.imag]


def from_complex_pair(pair):
    if isinstance(pair, (int, float)):
        return complex(pair)
    re, im = pair
    return complex(re, im)


def format_number(value, digits=17):
    return '{:.{}g}'.format(float(value), digits)


def timed(func):
    '''Log the wall time of a command phase at DEBUG level.'''
    @wraps(func)
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            logger.debug('%s took %.3fs', func.__name__, time.perf_counter() - start)
    return wrapper
