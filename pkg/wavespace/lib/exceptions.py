import functools
import logging

from django.utils.translation import gettext_lazy as _


logger = logging.getLogger(__name__)


class WavespaceInputDataError(Exception):
    """
    An error that we think is due to the data supplied by the user (a window,
    a point set, a group spec), rather than a bug in the application.
    """
    context = {
        'sub_title': _("Sorry, we can't process that data"),
        'msg': _('The supplied data could not be processed.'),
        'error': 'input data error',
    }

    def __init__(self, context=None):
        if context:
            self.context = dict(self.context, **context)
        super().__init__(str(self.context.get('error', '')))

    def __str__(self):
        return '{}: {}'.format(self.context['sub_title'], self.context['msg'])


class DimensionMismatch(WavespaceInputDataError):
    context = {
        'sub_title': _('Dimension mismatch'),
        'msg': _('The windows, points or vectors involved do not share a dimension.'),
        'error': 'dimension mismatch',
    }


class NonFinitePoint(WavespaceInputDataError):
    context = {
        'sub_title': _('Non-finite coordinates'),
        'msg': _('Point coordinates must be finite numbers.'),
        'error': 'non-finite coordinates',
    }


class DuplicatePoints(WavespaceInputDataError):
    context = {
        'sub_title': _('Duplicate points'),
        'msg': _('Interpolation points must be pairwise distinct.'),
        'error': 'duplicate points',
    }


class UnnormalizedWindow(WavespaceInputDataError):
    context = {
        'sub_title': _('Window is not admissible'),
        'msg': _('The window must have unit L2 norm for its point kernels to be a reproducing kernel.'),
        'error': 'unnormalized window',
    }


class InfeasibleInterpolation(WavespaceInputDataError):
    context = {
        'sub_title': _('Interpolation problem has no solution'),
        'msg': _('The values are not in the image of the Gram matrix of the points.'),
        'error': 'infeasible interpolation',
    }


class WindowMismatch(WavespaceInputDataError):
    context = {
        'sub_title': _('Window mismatch'),
        'msg': _('The interpolant was built from a different window.'),
        'error': 'window mismatch',
    }


class InvalidGroupSpec(WavespaceInputDataError):
    context = {
        'sub_title': _('Unrecognised group'),
        'msg': _('Groups are given as "cyclic N", "dihedral N" or "finite_heisenberg p".'),
        'error': 'invalid group spec',
    }


class GroupTooLarge(WavespaceInputDataError):
    context = {
        'sub_title': _('Group too large'),
        'msg': _('The group exceeds the configured size limit for this operation.'),
        'error': 'group too large',
    }


class ZeroVector(WavespaceInputDataError):
    context = {
        'sub_title': _('Zero vector'),
        'msg': _('A non-zero window vector is required.'),
        'error': 'zero vector',
    }


class SearchExhausted(WavespaceInputDataError):
    context = {
        'sub_title': _('Spacing search exhausted'),
        'msg': _('The window kernel decays too slowly for the requested search radius.'),
        'error': 'search exhausted',
    }


class InvalidParameter(WavespaceInputDataError):
    context = {
        'sub_title': _('Invalid parameter'),
        'msg': _('A parameter is outside its allowed range.'),
        'error': 'invalid parameter',
    }


class TheoremViolation(Exception):
    """
    A structural invariant that must always hold has failed. This is a bug (or
    a numerical breakdown), never a problem with the user's data.
    """
    def __init__(self, check, detail=''):
        self.check = check
        self.detail = detail
        super().__init__('{} failed: {}'.format(check, detail))


class DecompositionError(Exception):
    pass


def raise_dimension_mismatch(expected, found, what='dimension'):
    raise DimensionMismatch(context={
        'msg': _('Expected {} {}, found {}.'.format(what, expected, found)),
        'error': '{} mismatch: {} != {}'.format(what, expected, found),
    })


def raise_invalid_parameter(name, value, allowed):
    raise InvalidParameter(context={
        'msg': _('{} must be {}; got {}.'.format(name, allowed, value)),
        'error': '{}={!r} not {}'.format(name, value, allowed),
    })


def theorem_check(check):
    """Log and re-raise TheoremViolation with the name of the failing check."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except TheoremViolation as err:
                logger.error('%s: %s', check, err)
                raise
        return wrapper
    return decorator
