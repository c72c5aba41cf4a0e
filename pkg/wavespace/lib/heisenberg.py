'''
The reduced Heisenberg group R^n x R^n x T and its dilated Schrodinger
representations

    rho_m(x, w, e^{2 pi i tau}) = e^{2 pi i m tau} e^{pi i m x.w} T_{mx} M_w,    m != 0,

whose wavelet transforms are

    W_g f(x, w, tau) = <f, rho_m(x, w, tau) g> = e^{-2 pi i m tau} e^{pi i m x.w} V_g f(mx, w).

Every such function has a factor e^{-2 pi i m tau}, so anything constant in tau
is orthogonal to all of them and the group is not wavelet complete.
'''
import logging
import math

import numpy as np
from django.conf import settings

from .exceptions import NonFinitePoint, raise_dimension_mismatch, raise_invalid_parameter
from .gabor import Window, gaussian_kernel_values, stft_values
from .tools import trapezoid_axis


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG

PROFILES = ('constant', 'gaussian', 'tau-control')


def _reduce_tau(tau):
    tau = float(tau) % 1.0
    # float modulo of a tiny negative number rounds to 1.0
    return 0.0 if tau >= 1.0 else tau


class ReducedHeisenbergPoint(object):
    '''(x, w, e^{2 pi i tau}) with tau in [0, 1).'''
    __slots__ = ('x', 'omega', 'tau')

    def __init__(self, x, omega, tau=0.0):
        x = tuple(float(v) for v in np.atleast_1d(x))
        omega = tuple(float(v) for v in np.atleast_1d(omega))
        tau = float(tau)
        if len(x) != len(omega) or not x:
            raise_dimension_mismatch(len(x), len(omega), what='x/omega length')
        if not all(math.isfinite(v) for v in x + omega + (tau,)):
            raise NonFinitePoint(context={'error': 'non-finite coordinate in ({}, {}, {})'.format(x, omega, tau)})
        if not 0 <= tau < 1:
            raise_invalid_parameter('tau', tau, 'in [0, 1)')
        self.x = x
        self.omega = omega
        self.tau = tau

    @property
    def dimension(self):
        return len(self.x)

    def __eq__(self, other):
        return (isinstance(other, ReducedHeisenbergPoint) and
                (self.x, self.omega, self.tau) == (other.x, other.omega, other.tau))

    def __hash__(self):
        return hash((self.x, self.omega, self.tau))

    def __repr__(self):
        return 'ReducedHeisenbergPoint(x={}, omega={}, tau={})'.format(list(self.x), list(self.omega), self.tau)


def heisenberg_product(p, q):
    '''(x, w, tau)(x', w', tau') = (x + x', w + w', tau + tau' + (x'.w - x.w') / 2 mod 1).'''
    if p.dimension != q.dimension:
        raise_dimension_mismatch(p.dimension, q.dimension)
    twist = 0.5 * (float(np.dot(q.x, p.omega)) - float(np.dot(p.x, q.omega)))
    return ReducedHeisenbergPoint(np.add(p.x, q.x), np.add(p.omega, q.omega), _reduce_tau(p.tau + q.tau + twist))


def heisenberg_inverse(p):
    return ReducedHeisenbergPoint(np.negative(p.x), np.negative(p.omega), _reduce_tau(-p.tau))


class DilatedSchrodingerRep(object):

    def __init__(self, m):
        if int(m) != m or m == 0:
            raise_invalid_parameter('m', m, 'a non-zero integer')
        self.m = int(m)

    def act(self, p, f):
        '''The window rho_m(p) f.'''
        if p.dimension != f.dimension:
            raise_dimension_mismatch(f.dimension, p.dimension)
        m = self.m
        x = np.array(p.x)
        omega = np.array(p.omega)
        constant = np.exp(2j * np.pi * m * p.tau) * np.exp(1j * np.pi * m * float(x @ omega))
        base = f.evaluator

        def evaluator(t):
            shifted = t - m * x
            return constant * np.exp(2j * np.pi * (shifted @ omega)) * base(shifted)

        return Window('derived', f.dimension, evaluator, f.quadrature,
                      params={'label': 'rho_{}({!r}){}'.format(m, p, f.identifier)})

    def __repr__(self):
        return 'DilatedSchrodingerRep(m={})'.format(self.m)


def _rep(rep):
    return rep if isinstance(rep, DilatedSchrodingerRep) else DilatedSchrodingerRep(rep)


def _stft(g, f, xs, omegas):
    if f.is_gaussian and g.is_gaussian:
        return gaussian_kernel_values(xs, omegas)
    return stft_values(f, g, xs, omegas)


def _dilated_values(rep, g, f, xs, omegas):
    '''e^{pi i m x.w} V_g f(mx, w) on rows of xs, omegas: the wavelet transform without its tau factor.'''
    m = rep.m
    return np.exp(1j * np.pi * m * np.sum(xs * omegas, axis=-1)) * _stft(g, f, m * xs, omegas)


def dilated_wavelet_eval(rep, g, f, p):
    rep = _rep(rep)
    if not (f.dimension == g.dimension == p.dimension):
        raise_dimension_mismatch(g.dimension, (f.dimension, p.dimension))
    xs = np.array([p.x])
    omegas = np.array([p.omega])
    value = _dilated_values(rep, g, f, xs, omegas)[0]
    return complex(np.exp(-2j * np.pi * rep.m * p.tau) * value)


def covariance_deviation(rep, g, f, q, p):
    '''|W_g(rho(q) f)(p) - W_g f(q^{-1} p)|; zero up to quadrature error.'''
    rep = _rep(rep)
    translated = dilated_wavelet_eval(rep, g, rep.act(q, f), p)
    shifted = dilated_wavelet_eval(rep, g, f, heisenberg_product(heisenberg_inverse(q), p))
    return abs(translated - shifted)


def tau_nodes(m):
    '''Equispaced nodes k / K on [0, 1) with K = nodes_per_m * |m|.'''
    count = config['heisenberg']['tau_nodes_per_m'] * abs(int(m))
    return np.arange(count) / count


def tau_character_mean(m, nodes):
    '''|mean of e^{2 pi i m tau}| over ``nodes`` equispaced taus; zero when |m| < nodes.'''
    nodes = int(nodes)
    if nodes < 1:
        raise_invalid_parameter('nodes', nodes, 'a positive integer')
    return float(abs(np.mean(np.exp(2j * np.pi * m * np.arange(nodes) / nodes))))


def profile_function(name, m):
    '''Test functions h(x, w, tau) for the orthogonality demonstration.'''
    if name == 'constant':
        return lambda xs, omegas, tau: np.ones(len(xs), dtype=complex)
    if name == 'gaussian':
        return lambda xs, omegas, tau: np.exp(-np.sum(xs * xs, axis=-1) - np.sum(omegas * omegas, axis=-1)) + 0j
    if name == 'tau-control':
        return lambda xs, omegas, tau: np.full(len(xs), np.exp(-2j * np.pi * m * tau))
    raise_invalid_parameter('profile', name, 'one of {}'.format(PROFILES))


def tau_independent_orthogonality(rep, h, g, f, half_width=None, step=None):
    '''
    |<h, W_g f>| on [-L, L]^{2n} x [0, 1): trapezoid rule in phase space and
    the equispaced rule in tau, which integrates e^{2 pi i m tau} exactly.

    ``h`` is called as h(xs, omegas, tau) with (P, n) arrays and a scalar tau.
    The result carries the relative bound against which orthogonality is judged.
    '''
    rep = _rep(rep)
    if f.dimension != g.dimension:
        raise_dimension_mismatch(g.dimension, f.dimension)
    half_width = half_width or config['phase_space']['half_width']
    step = step or config['phase_space']['step']
    n = g.dimension
    axis, axis_weights = trapezoid_axis(-half_width, half_width, step)
    mesh = np.meshgrid(*([axis] * 2 * n), indexing='ij')
    coordinates = np.stack([c.ravel() for c in mesh], axis=-1)
    weight_mesh = np.meshgrid(*([axis_weights] * 2 * n), indexing='ij')
    weights = np.prod(np.stack([w.ravel() for w in weight_mesh], axis=-1), axis=-1)
    xs, omegas = coordinates[:, :n], coordinates[:, n:]

    spatial = np.conj(_dilated_values(rep, g, f, xs, omegas))
    taus = tau_nodes(rep.m)
    total = 0j
    h_norm_squared = 0.0
    for tau in taus:
        h_values = np.asarray(h(xs, omegas, tau), dtype=complex)
        # conj(W) = e^{2 pi i m tau} conj(e^{pi i m x.w} V_g f(mx, w))
        total += np.exp(2j * np.pi * rep.m * tau) * np.sum(weights * h_values * spatial)
        h_norm_squared += float(np.sum(weights * np.abs(h_values) ** 2))
    total /= len(taus)
    h_norm = math.sqrt(h_norm_squared / len(taus))

    magnitude = float(abs(total))
    bound = config['tolerances']['heisenberg_relative'] * h_norm * f.norm_l2 * g.norm_l2
    logger.info('m=%s: |<h, W_g f>| = %.3e against bound %.3e', rep.m, magnitude, bound)
    return {'magnitude': magnitude, 'h_norm': h_norm, 'bound': bound, 'orthogonal': magnitude <= bound,
            'tau_nodes': len(taus)}
