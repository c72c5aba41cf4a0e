'''
Windows on R^n, the short-time Fourier transform by quadrature, and the
closed-form Gaussian kernels.

Conventions:

    V_g f(x, w) = int f(t) conj(g(t - x)) exp(-2 pi i t.w) dt

and the point kernel of the Gabor space centred at c = (x_c, w_c), evaluated
at a = (x_a, w_a), is

    k_c(a) = exp(-2 pi i x_c.(w_a - w_c)) V_g g(x_a - x_c, w_a - w_c).
'''
import hashlib
import logging
import math

import numpy as np
from cached_property import cached_property
from django.conf import settings
from scipy.interpolate import RegularGridInterpolator

from .exceptions import (DimensionMismatch, NonFinitePoint, UnnormalizedWindow, ZeroVector,
                         raise_dimension_mismatch, raise_invalid_parameter)
from .tools import quadrature_grid, trapezoid_axis


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG

WINDOW_KINDS = ('gaussian', 'hermite', 'tabulated', 'derived')


class TFPoint(object):
    '''A point (x, omega) of phase space R^{2n}.'''
    __slots__ = ('x', 'omega')

    def __init__(self, x, omega):
        x = tuple(float(v) for v in np.atleast_1d(x))
        omega = tuple(float(v) for v in np.atleast_1d(omega))
        if len(x) != len(omega) or not x:
            raise_dimension_mismatch(len(x), len(omega), what='x/omega length')
        if not all(math.isfinite(v) for v in x + omega):
            raise NonFinitePoint(context={'error': 'non-finite coordinate in ({}, {})'.format(x, omega)})
        self.x = x
        self.omega = omega

    @classmethod
    def from_array(cls, coordinates):
        '''Split a flat [x..., omega...] array into a point.'''
        coordinates = np.asarray(coordinates, dtype=float).ravel()
        if coordinates.size == 0 or coordinates.size % 2:
            raise DimensionMismatch(context={
                'error': 'point arrays need 2n coordinates, got {}'.format(coordinates.size)})
        n = coordinates.size // 2
        return cls(coordinates[:n], coordinates[n:])

    @property
    def dimension(self):
        return len(self.x)

    def as_array(self):
        return np.array(self.x + self.omega)

    def __sub__(self, other):
        self._check_compatible(other)
        return TFPoint(np.subtract(self.x, other.x), np.subtract(self.omega, other.omega))

    def __add__(self, other):
        self._check_compatible(other)
        return TFPoint(np.add(self.x, other.x), np.add(self.omega, other.omega))

    def __eq__(self, other):
        return isinstance(other, TFPoint) and self.x == other.x and self.omega == other.omega

    def __hash__(self):
        return hash((self.x, self.omega))

    def __repr__(self):
        return 'TFPoint(x={}, omega={})'.format(list(self.x), list(self.omega))

    def distance(self, other):
        self._check_compatible(other)
        return float(np.linalg.norm(self.as_array() - other.as_array()))

    def _check_compatible(self, other):
        if self.dimension != other.dimension:
            raise_dimension_mismatch(self.dimension, other.dimension)


def default_nodes(dimension):
    nodes = config['quadrature']['nodes']
    return nodes.get(dimension, nodes['nd'])


class QuadratureSpec(object):
    '''Composite trapezoid rule on [-T, T]^n with N nodes per axis.'''

    def __init__(self, half_width=None, nodes=None, dimension=1):
        if half_width is None:
            half_width = config['quadrature']['half_width']
        if nodes is None:
            nodes = default_nodes(dimension)
        if not (math.isfinite(half_width) and half_width > 0):
            raise_invalid_parameter('half_width', half_width, 'a positive number')
        if int(nodes) != nodes or nodes < 2:
            raise_invalid_parameter('nodes', nodes, 'an integer >= 2')
        self.half_width = float(half_width)
        self.nodes = int(nodes)

    @property
    def step(self):
        return 2 * self.half_width / (self.nodes - 1)

    def finer(self, other):
        '''The spec with the smaller node spacing; ties go to the wider box.'''
        if other is None:
            return self
        key = (self.step, -self.half_width)
        other_key = (other.step, -other.half_width)
        return self if key <= other_key else other

    def grid(self, dimension):
        return quadrature_grid(self.half_width, self.nodes, dimension)

    def __eq__(self, other):
        return (isinstance(other, QuadratureSpec) and self.half_width == other.half_width and
                self.nodes == other.nodes)

    def __hash__(self):
        return hash((self.half_width, self.nodes))

    def __repr__(self):
        return 'QuadratureSpec(half_width={}, nodes={})'.format(self.half_width, self.nodes)


def _gaussian_values(t):
    return np.exp(-0.5 * np.pi * np.sum(t * t, axis=-1)).astype(complex)


def _hermite_function(order, t):
    '''Hermite function of the given order, normalised so order 0 is
    exp(-pi t^2 / 2) and every order has unit L2 norm.'''
    u = math.sqrt(math.pi) * t
    previous = np.zeros_like(u)
    current = np.exp(-0.5 * u * u)
    for j in range(order):
        current, previous = (math.sqrt(2.0 / (j + 1)) * u * current -
                             math.sqrt(j / (j + 1.0)) * previous), current
    return current


class Window(object):
    '''
    An evaluable square integrable function on R^n.

    Calling a window with an array of shape (M, n) returns the complex values
    at those M points. Use the constructors ``gaussian``, ``hermite`` and
    ``tabulated``; transformations (``scaled``, ``reflected``, ``tensor_window``)
    produce windows of kind ``derived``.
    '''

    def __init__(self, kind, dimension, evaluator, quadrature=None, params=None):
        if kind not in WINDOW_KINDS:
            raise_invalid_parameter('kind', kind, 'one of {}'.format(WINDOW_KINDS))
        if int(dimension) != dimension or dimension < 1:
            raise_invalid_parameter('dimension', dimension, 'an integer >= 1')
        self.kind = kind
        self.dimension = int(dimension)
        self.evaluator = evaluator
        self.quadrature = quadrature or QuadratureSpec(dimension=self.dimension)
        self.params = params or {}

    @classmethod
    def gaussian(cls, dimension=1, quadrature=None):
        return cls('gaussian', dimension, _gaussian_values, quadrature)

    @classmethod
    def hermite(cls, order, dimension=1, quadrature=None):
        '''Tensor product of the order-k Hermite function on every axis.'''
        if int(order) != order or order < 0:
            raise_invalid_parameter('order', order, 'an integer >= 0')
        order = int(order)
        if order == 0:
            return cls.gaussian(dimension, quadrature)

        def evaluator(t):
            return np.prod(_hermite_function(order, t), axis=-1).astype(complex)

        window = cls('hermite', dimension, evaluator, quadrature, params={'order': order})
        if abs(window.norm_l2 - 1) > config['tolerances']['normalization']:
            logger.warning('hermite(%s) has quadrature norm %.3e; the rule is too coarse for this order',
                           order, window.norm_l2)
        return window

    @classmethod
    def tabulated(cls, nodes, values, quadrature=None):
        '''Linear interpolation of a table, extended by zero outside it.

        ``nodes`` is one increasing array per axis; ``values`` has shape
        ``tuple(len(a) for a in nodes)``.
        '''
        if isinstance(nodes, np.ndarray) and nodes.ndim == 1:
            nodes = [nodes]
        axes = tuple(np.asarray(axis, dtype=float) for axis in nodes)
        values = np.asarray(values, dtype=complex)
        shape = tuple(len(axis) for axis in axes)
        if values.shape != shape:
            raise_dimension_mismatch(shape, values.shape, what='table shape')
        for axis in axes:
            if len(axis) < 2 or np.any(np.diff(axis) <= 0) or not np.all(np.isfinite(axis)):
                raise_invalid_parameter('nodes', axis, 'strictly increasing finite axes of length >= 2')
        if not np.all(np.isfinite(values)):
            raise NonFinitePoint(context={'error': 'non-finite tabulated window value'})

        real = RegularGridInterpolator(axes, values.real, bounds_error=False, fill_value=0.0)
        imag = RegularGridInterpolator(axes, values.imag, bounds_error=False, fill_value=0.0)

        def evaluator(t):
            return real(t) + 1j * imag(t)

        digest = hashlib.sha1()
        for axis in axes:
            digest.update(axis.tobytes())
        digest.update(values.tobytes())
        return cls('tabulated', len(axes), evaluator, quadrature, params={
            'nodes': axes, 'values': values, 'digest': digest.hexdigest()[:12]})

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if t.ndim == 1 and self.dimension == 1:
            t = t[:, None]
        if t.shape[-1] != self.dimension:
            raise_dimension_mismatch(self.dimension, t.shape[-1])
        flat = t.reshape(-1, self.dimension)
        return np.asarray(self.evaluator(flat), dtype=complex).reshape(t.shape[:-1])

    @property
    def is_gaussian(self):
        return self.kind == 'gaussian'

    @cached_property
    def norm_l2(self):
        points, weights = self.quadrature.grid(self.dimension)
        values = self(points)
        return math.sqrt(float(np.sum(weights * (values.real ** 2 + values.imag ** 2))))

    @cached_property
    def identifier(self):
        if self.kind == 'gaussian':
            return 'gaussian(n={})'.format(self.dimension)
        if self.kind == 'hermite':
            return 'hermite(k={},n={})'.format(self.params['order'], self.dimension)
        if self.kind == 'tabulated':
            return 'tabulated({},n={})'.format(self.params['digest'], self.dimension)
        return self.params.get('label', 'derived(n={})'.format(self.dimension))

    def __repr__(self):
        return 'Window({})'.format(self.identifier)

    def scaled(self, factor):
        factor = complex(factor)
        base = self.evaluator
        return Window('derived', self.dimension, lambda t: factor * base(t), self.quadrature,
                      params={'label': '{}*{}'.format(_short(factor), self.identifier)})

    def reflected(self):
        '''The window t -> g(-t).'''
        if self.is_gaussian:
            return self
        base = self.evaluator
        return Window('derived', self.dimension, lambda t: base(-t), self.quadrature,
                      params={'label': 'reflect({})'.format(self.identifier)})

    def normalized(self):
        norm = self.norm_l2
        if norm == 0:
            raise ZeroVector(context={'error': '{} has zero norm'.format(self.identifier)})
        if abs(norm - 1) <= config['tolerances']['normalization']:
            return self
        return self.scaled(1.0 / norm)

    def admissible(self):
        '''This window if normalised, a rescaled copy if nearly so, else an error.'''
        deviation = abs(self.norm_l2 - 1)
        if deviation <= config['tolerances']['normalization']:
            return self
        if deviation <= config['tolerances']['rescale']:
            logger.warning('Rescaling %s (norm %.10f) to unit norm', self.identifier, self.norm_l2)
            return self.normalized()
        raise UnnormalizedWindow(context={
            'error': '{} has norm {:.6g}'.format(self.identifier, self.norm_l2)})


def _short(value):
    return '{:.6g}'.format(value.real) if value.imag == 0 else '{:.6g}'.format(value)


def tensor_window(g, h):
    '''The product window (g x h)(s, t) = g(s) h(t) on R^{n1 + n2}.'''
    n1 = g.dimension

    def evaluator(t):
        return g.evaluator(t[:, :n1]) * h.evaluator(t[:, n1:])

    half_width = max(g.quadrature.half_width, h.quadrature.half_width)
    quadrature = QuadratureSpec(half_width, dimension=n1 + h.dimension)
    return Window('derived', n1 + h.dimension, evaluator, quadrature,
                  params={'label': '({})x({})'.format(g.identifier, h.identifier)})


def require_normalized(g):
    if abs(g.norm_l2 - 1) > config['tolerances']['normalization']:
        raise UnnormalizedWindow(context={
            'error': '{} has norm {:.12g}'.format(g.identifier, g.norm_l2)})


def _coordinates(points, dimension):
    '''(P, n) arrays of x and omega for a sequence of TFPoints.'''
    points = list(points)
    for point in points:
        if point.dimension != dimension:
            raise_dimension_mismatch(dimension, point.dimension)
    xs = np.array([point.x for point in points], dtype=float).reshape(-1, dimension)
    omegas = np.array([point.omega for point in points], dtype=float).reshape(-1, dimension)
    return xs, omegas


def stft_values(f, g, xs, omegas, quadrature=None):
    '''V_g f at the rows of xs, omegas (arrays of shape (P, n)).'''
    if f.dimension != g.dimension:
        raise_dimension_mismatch(f.dimension, g.dimension)
    n = f.dimension
    quadrature = quadrature or f.quadrature.finer(g.quadrature)
    t, weights = quadrature.grid(n)
    weighted_f = f(t) * weights

    count = len(xs)
    values = np.empty(count, dtype=complex)
    batch = max(1, config['quadrature']['chunk_elements'] // len(t))
    for start in range(0, count, batch):
        stop = min(start + batch, count)
        shifted = t[None, :, :] - xs[start:stop, None, :]
        window_values = g(shifted)
        phase = np.exp(-2j * np.pi * (omegas[start:stop] @ t.T))
        # fixed reduction order: numpy pairwise summation along the node axis
        values[start:stop] = np.sum(np.conj(window_values) * phase * weighted_f[None, :], axis=1)
    return values


def stft_grid(f, g, points, quadrature=None):
    '''V_g f at each TFPoint of ``points``.'''
    xs, omegas = _coordinates(points, f.dimension)
    return stft_values(f, g, xs, omegas, quadrature)


def stft_eval(f, g, p):
    '''Short-time Fourier transform V_g f(x, omega) by the trapezoid rule.'''
    if f.dimension != g.dimension:
        raise_dimension_mismatch(f.dimension, g.dimension)
    return complex(stft_grid(f, g, [p])[0])


def gaussian_kernel_values(xs, omegas):
    '''Closed form of V_g g for the Gaussian at rows of xs, omegas.'''
    xs = np.asarray(xs, dtype=float)
    omegas = np.asarray(omegas, dtype=float)
    return (np.exp(-1j * np.pi * np.sum(xs * omegas, axis=-1)) *
            np.exp(-0.25 * np.pi * np.sum(xs * xs, axis=-1)) *
            np.exp(-np.pi * np.sum(omegas * omegas, axis=-1)))


def gaussian_stft_closed_form(n, p):
    '''V_{g_n} g_n(x, omega) = exp(-pi i x.omega) exp(-pi/4 |x|^2) exp(-pi |omega|^2).'''
    if p.dimension != n:
        raise_dimension_mismatch(n, p.dimension)
    return complex(gaussian_kernel_values(np.array(p.x), np.array(p.omega)))


def ambiguity_values(g, xs, omegas):
    '''V_g g at the rows of xs, omegas; closed form for the Gaussian.'''
    if g.is_gaussian:
        return gaussian_kernel_values(xs, omegas)
    return stft_values(g, g, xs, omegas)


def point_kernel_values(g, center, ats):
    '''The point kernel centred at ``center`` evaluated at each point of ``ats``.'''
    require_normalized(g)
    if center.dimension != g.dimension:
        raise_dimension_mismatch(g.dimension, center.dimension)
    xs, omegas = _coordinates(ats, g.dimension)
    x_c = np.array(center.x)
    omega_c = np.array(center.omega)
    delta_omega = omegas - omega_c
    phase = np.exp(-2j * np.pi * (delta_omega @ x_c))
    return phase * ambiguity_values(g, xs - x_c, delta_omega)


def point_kernel_eval(g, center, at):
    '''k_center(at) = exp(-2 pi i x_c.(w_a - w_c)) V_g g(x_a - x_c, w_a - w_c).'''
    return complex(point_kernel_values(g, center, [at])[0])


def wigner_eval(g, p):
    '''Wigner distribution Wg(x, w) = 2^n exp(4 pi i x.w) V_{Ig} g(2x, 2w), Ig(t) = g(-t).'''
    if p.dimension != g.dimension:
        raise_dimension_mismatch(g.dimension, p.dimension)
    n = g.dimension
    x = np.array(p.x)
    omega = np.array(p.omega)
    doubled = TFPoint(2 * x, 2 * omega)
    if g.is_gaussian:
        value = gaussian_stft_closed_form(n, doubled)
    else:
        value = stft_eval(g, g.reflected(), doubled)
    return complex(2 ** n * np.exp(4j * np.pi * float(x @ omega)) * value)


def heisenberg_wavelet_eval(g, f, x, omega, tau):
    '''Wavelet transform of the reduced Heisenberg group through the STFT:
    W_g f(x, w, e^{2 pi i tau}) = exp(-2 pi i tau) exp(pi i x.w) V_g f(x, w).'''
    tau = float(tau)
    if not (math.isfinite(tau) and 0 <= tau < 1):
        raise_invalid_parameter('tau', tau, 'in [0, 1)')
    p = TFPoint(x, omega)
    phase = np.exp(-2j * np.pi * tau) * np.exp(1j * np.pi * float(np.dot(p.x, p.omega)))
    return complex(phase * stft_eval(f, g, p))


def phase_space_energy(f, g, half_width=None, step=None):
    '''Trapezoid integral of |V_g f|^2 over [-L, L]^{2n}.

    For windows of unit norm this approximates ||f||^2 ||g||^2 (the
    orthogonality relation of the STFT).
    '''
    half_width = half_width or config['phase_space']['half_width']
    step = step or config['phase_space']['step']
    n = f.dimension
    axis, axis_weights = trapezoid_axis(-half_width, half_width, step)
    mesh = np.meshgrid(*([axis] * 2 * n), indexing='ij')
    coordinates = np.stack([m.ravel() for m in mesh], axis=-1)
    weight_mesh = np.meshgrid(*([axis_weights] * 2 * n), indexing='ij')
    weights = np.prod(np.stack([m.ravel() for m in weight_mesh], axis=-1), axis=-1)
    values = stft_values(f, g, coordinates[:, :n], coordinates[:, n:])
    return float(np.sum(weights * np.abs(values) ** 2))
