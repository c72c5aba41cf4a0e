'''
Linear independence of finite sets of time-frequency shifts {M_w T_x g},
tested through the time-frequency Grammian

    G[i, j] = <M_{w_j} T_{x_j} g, M_{w_i} T_{x_i} g>
            = exp(-2 pi i x_j.(w_i - w_j)) V_g g(x_i - x_j, w_i - w_j),

which is strictly positive definite exactly when the shifts are independent.
'''
import logging
import math

import numpy as np
from django.conf import settings

from .exceptions import SearchExhausted, raise_dimension_mismatch, raise_invalid_parameter
from .gabor import ambiguity_values
from .interp import GramMatrix, PointSet


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG


class DominanceCertificate(object):
    '''Off-diagonal absolute row sums of a Grammian, each divided by its diagonal entry.'''

    def __init__(self, row_sums):
        self.row_sums = np.asarray(row_sums, dtype=float)
        self.max_row_sum = float(self.row_sums.max()) if self.row_sums.size else 0.0
        self.holds = self.max_row_sum < 1

    def as_dict(self):
        return {'row_sums': self.row_sums.tolist(), 'max_row_sum': self.max_row_sum, 'holds': self.holds}


class HrtVerdict(object):

    def __init__(self, eigenvalues, tol, certificate=None):
        self.min_eig = float(eigenvalues[0])
        self.max_eig = float(eigenvalues[-1])
        self.tol = tol
        self.independent = self.min_eig > tol * self.max_eig
        self.cond = self.max_eig / self.min_eig if self.min_eig > 0 else math.inf
        self.certificate = certificate
        # within a decade of the threshold either way
        threshold = tol * self.max_eig
        self.near_threshold = threshold / 10 < abs(self.min_eig) < threshold * 10
        if self.near_threshold:
            logger.warning('Verdict near threshold: min_eig %.3e against %.3e', self.min_eig, threshold)

    def as_dict(self):
        return {
            'min_eig': self.min_eig,
            'max_eig': self.max_eig,
            'cond': self.cond,
            'independent': self.independent,
            'near_threshold': self.near_threshold,
            'tolerance': self.tol,
            'certificate': self.certificate.as_dict() if self.certificate else None,
        }


def _prepare(g, omega):
    # normalising g does not change independence of its shifts
    g = g.normalized()
    if not isinstance(omega, PointSet):
        omega = PointSet(omega)
    if omega.dimension != g.dimension:
        raise_dimension_mismatch(g.dimension, omega.dimension)
    return g, omega


def _differences(omega):
    xs = np.array([p.x for p in omega], dtype=float)
    omegas = np.array([p.omega for p in omega], dtype=float)
    # [i, j] -> q_i - q_j
    return xs[:, None, :] - xs[None, :, :], omegas[:, None, :] - omegas[None, :, :], xs


def _ambiguity_matrix(g, omega):
    '''V_g g(q_i - q_j) for all pairs, computed on the upper triangle and mirrored.'''
    dx, domega, _ = _differences(omega)
    m = len(omega)
    rows, cols = np.triu_indices(m, 1)
    values = np.ones((m, m), dtype=complex)
    np.fill_diagonal(values, ambiguity_values(g, np.zeros((1, g.dimension)), np.zeros((1, g.dimension)))[0])
    if rows.size:
        upper = ambiguity_values(g, dx[rows, cols], domega[rows, cols])
        values[rows, cols] = upper
        # V_g g(-q) = exp(-2 pi i x.w) conj(V_g g(q))
        phase = np.exp(-2j * np.pi * np.sum(dx[rows, cols] * domega[rows, cols], axis=-1))
        values[cols, rows] = phase * np.conj(upper)
    return values


def hrt_gram(g, omega):
    g, omega = _prepare(g, omega)
    dx, domega, xs = _differences(omega)
    phase = np.exp(-2j * np.pi * np.einsum('jk,ijk->ij', xs, domega))
    entries = phase * _ambiguity_matrix(g, omega)
    entries = np.triu(entries, 1) + np.triu(entries, 1).conj().T + np.diag(entries.diagonal().real)
    return GramMatrix(entries, window_id=g.identifier, points_id=omega.identifier)


def _certificate(gram):
    magnitudes = np.abs(gram.entries)
    diagonal = np.real(gram.entries.diagonal()).copy()
    np.fill_diagonal(magnitudes, 0.0)
    diagonal[diagonal <= 0] = np.nan
    return DominanceCertificate(np.nan_to_num(magnitudes.sum(axis=1) / diagonal, nan=np.inf))


def verdict_from_gram(gram, tol=None):
    '''Independence verdict for a precomputed unit-diagonal Gram matrix.'''
    tol = config['tolerances']['verdict'] if tol is None else tol
    certificate = _certificate(gram)
    return HrtVerdict(gram.eigenvalues, tol, certificate if certificate.holds else None)


def hrt_verdict(g, omega, tol=None):
    return verdict_from_gram(hrt_gram(g, omega), tol)


def dominance_check(g, omega):
    '''Gershgorin certificate: every off-diagonal row sum below 1 makes the
    Grammian diagonally dominant, hence invertible.'''
    return _certificate(hrt_gram(g, omega))


def _ring_maxima(g, radii, angular_step):
    '''max |V_g g| over each ring of the search, in every (x_k, w_k) plane.'''
    angles = np.arange(0.0, 2 * np.pi, angular_step)
    n = g.dimension
    maxima = np.zeros(len(radii))
    for axis in range(n):
        xs = np.zeros((len(radii), len(angles), n))
        omegas = np.zeros((len(radii), len(angles), n))
        xs[:, :, axis] = radii[:, None] * np.cos(angles)[None, :]
        omegas[:, :, axis] = radii[:, None] * np.sin(angles)[None, :]
        values = np.abs(ambiguity_values(g, xs.reshape(-1, n), omegas.reshape(-1, n)))
        maxima = np.maximum(maxima, values.reshape(len(radii), len(angles)).max(axis=1))
    return maxima


def spacing_radius(g, m, r_max=None, step=None):
    '''
    Smallest sampled radius R with (m - 1) * sup_{|q| >= R} |V_g g(q)| < 1.

    The sup is estimated from rings of radius step, 2 step, ..., r_max
    (angular step from settings). Any point set whose pairwise phase-space
    distances all exceed R then passes ``dominance_check``, up to the
    resolution of the sampling.
    '''
    search = config['spacing_search']
    r_max = search['r_max'] if r_max is None else r_max
    step = search['step'] if step is None else step
    if int(m) != m or m < 2:
        raise_invalid_parameter('m', m, 'an integer >= 2')
    if not (step > 0 and r_max >= step):
        raise_invalid_parameter('search', (r_max, step), 'r_max >= step > 0')
    g = g.normalized()
    radii = step * np.arange(0, int(round(r_max / step)) + 1)
    maxima = _ring_maxima(g, radii, search['angular_step'])
    tail = np.maximum.accumulate(maxima[::-1])[::-1]
    passing = np.nonzero((m - 1) * tail < 1)[0]
    if not passing.size:
        raise SearchExhausted(context={
            'error': '(m - 1) * |V_g g| >= 1 out to r_max={} for {}'.format(r_max, g.identifier)})
    radius = float(radii[passing[0]])
    logger.info('spacing radius for %s, m=%s: %.4f (step %.4f)', g.identifier, m, radius, step)
    return radius


def gaussian_exponents(omega):
    '''Exponents lambda_k = (pi/2) x_k + i w_k (one per coordinate).

    For the Gaussian window, a dependence among the point kernels reduces to a
    vanishing exponential sum sum_k beta_k exp(x . lambda_k); distinct
    exponents rule it out, so distinctness certifies independence.
    '''
    if not isinstance(omega, PointSet):
        omega = PointSet(omega)
    exponents = [tuple(0.5 * math.pi * x + 1j * w for x, w in zip(p.x, p.omega)) for p in omega]
    return {'exponents': exponents, 'distinct': len(set(exponents)) == len(exponents)}


def translation_kernel_report(g, omega):
    '''
    V_g g on its own is not a function of positive type on R^{2n}: the matrix
    {V_g g(q_i - q_j)} (without the phase factor of the point kernels) is in
    general not even Hermitian.
    '''
    g, omega = _prepare(g, omega)
    values = _ambiguity_matrix(g, omega)
    hermitian_part = (values + values.conj().T) / 2
    return {
        'hermitian_defect': float(np.max(np.abs(values - values.conj().T))),
        'min_eig_hermitian_part': float(np.linalg.eigvalsh(hermitian_part)[0]),
    }
