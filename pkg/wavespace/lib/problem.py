'''
Problem files: one JSON document per problem, validated against a Draft-4
schema. A problem carries either a window and a point set, or an explicit
Gram matrix. Complex numbers are written as [re, im] pairs.
'''
import copy
import csv
import logging

import numpy as np
from django.conf import settings
from jsonschema.validators import Draft4Validator as validator

from .exceptions import raise_dimension_mismatch, raise_invalid_parameter
from .gabor import Window
from .interp import GramMatrix, GridSpec, PointSet, gram_assemble
from .tools import complex_pair, format_number, from_complex_pair


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG

CSV_HEADER = ('x', 'omega', 're', 'im')

_number = {'type': 'number'}
_complex = {'oneOf': [_number, {'type': 'array', 'items': _number, 'minItems': 2, 'maxItems': 2}]}

PROBLEM_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-04/schema#',
    'title': 'Wavespace problem',
    'type': 'object',
    'properties': {
        'window': {
            'type': 'object',
            'properties': {
                'kind': {'enum': ['gaussian', 'hermite', 'tabulated']},
                'dimension': {'type': 'integer', 'minimum': 1, 'maximum': 3},
                'params': {'type': 'object'},
            },
            'required': ['kind'],
            'additionalProperties': False,
        },
        'points': {
            'type': 'array',
            'minItems': 1,
            'items': {'type': 'array', 'items': _number, 'minItems': 2},
        },
        'values': {'type': 'array', 'items': _complex},
        'gram': {
            'type': 'array',
            'minItems': 1,
            'items': {'type': 'array', 'items': _complex},
        },
        'grid': {
            'type': 'object',
            'properties': {key: _number for key in ('xmin', 'xmax', 'omega_min', 'omega_max', 'step')},
            'required': ['xmin', 'xmax', 'omega_min', 'omega_max', 'step'],
            'additionalProperties': False,
        },
        'description': {'type': 'string'},
    },
    'anyOf': [{'required': ['window', 'points']}, {'required': ['gram']}],
    'additionalProperties': False,
}

TEMPLATE = {
    'description': 'Gaussian window, three points, unit values',
    'window': {'kind': 'gaussian', 'dimension': 1, 'params': {}},
    'points': [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
    'values': [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]],
    'grid': {'xmin': -2.0, 'xmax': 3.0, 'omega_min': -2.0, 'omega_max': 3.0, 'step': 0.05},
}


def schema_errors(data):
    '''Human readable schema errors, sorted by location.'''
    errors = []
    for error in sorted(validator(PROBLEM_SCHEMA).iter_errors(data), key=lambda e: list(map(str, e.path))):
        path = '/'.join(str(part) for part in error.path) or '(root)'
        errors.append('{}: {}'.format(path, error.message))
    return errors


def window_from_spec(spec):
    kind = spec['kind']
    dimension = spec.get('dimension', 1)
    params = spec.get('params', {})
    if kind == 'gaussian':
        return Window.gaussian(dimension)
    if kind == 'hermite':
        if 'order' not in params:
            raise_invalid_parameter('window.params.order', None, 'an integer >= 0')
        if not isinstance(params['order'], int) or not 0 <= params['order'] <= 40:
            raise_invalid_parameter('window.params.order', params['order'], 'an integer in [0, 40]')
        return Window.hermite(params['order'], dimension)
    nodes = params.get('nodes')
    values = params.get('values')
    if nodes is None or values is None:
        raise_invalid_parameter('window.params', sorted(params), 'nodes and values for a tabulated window')
    try:
        table = np.asarray(values, dtype=float)
        axes = [np.asarray(axis, dtype=float) for axis in nodes]
    except (TypeError, ValueError) as err:
        raise_invalid_parameter('window.params', str(err), 'numeric nodes and values arrays')
    if any(axis.ndim != 1 for axis in axes):
        raise_invalid_parameter('window.params.nodes', nodes, 'one list of numbers per axis')
    if len(axes) != dimension:
        raise_dimension_mismatch(dimension, len(axes), what='tabulated window dimension')
    table = table[..., 0] + 1j * table[..., 1] if table.shape[-1:] == (2,) and table.ndim > len(axes) else table
    return Window.tabulated(axes, table)


class Problem(object):
    '''A parsed problem file.'''

    def __init__(self, window_spec=None, points=None, values=None, gram=None, grid=None, description=''):
        if gram is not None and any(len(row) != len(gram) for row in gram):
            raise_dimension_mismatch(len(gram), [len(row) for row in gram], what='Gram row lengths')
        self.window_spec = window_spec
        self.window = window_from_spec(window_spec) if window_spec else None
        self.points = PointSet(points) if points is not None else None
        self.values = np.array([from_complex_pair(v) for v in values]) if values is not None else None
        self.explicit_gram = (GramMatrix(np.array([[from_complex_pair(v) for v in row] for row in gram]),
                                         window_id='explicit', points_id='explicit')
                              if gram is not None else None)
        self.grid = GridSpec(**grid) if grid is not None else None
        self.description = description
        self._check()

    def _check(self):
        if self.points is not None and self.window is not None and self.points.dimension != self.window.dimension:
            raise_dimension_mismatch(self.window.dimension, self.points.dimension, what='point dimension')
        if self.explicit_gram is not None and self.explicit_gram.hermitian_defect() > 1e-12 * max(
                1.0, float(np.max(np.abs(self.explicit_gram.entries)))):
            raise_invalid_parameter('gram', 'non-Hermitian matrix', 'Hermitian')
        if self.values is not None and len(self.values) != self.size:
            raise_dimension_mismatch(self.size, len(self.values), what='number of values')

    @property
    def size(self):
        if self.explicit_gram is not None:
            return self.explicit_gram.size
        return len(self.points)

    def gram_matrix(self):
        if self.explicit_gram is not None:
            return self.explicit_gram
        return gram_assemble(self.window, self.points)

    def as_dict(self):
        data = {}
        if self.description:
            data['description'] = self.description
        if self.window_spec is not None:
            data['window'] = copy.deepcopy(self.window_spec)
        if self.points is not None:
            data['points'] = [list(point.x + point.omega) for point in self.points]
        if self.values is not None:
            data['values'] = [complex_pair(v) for v in self.values]
        if self.explicit_gram is not None:
            data['gram'] = [[complex_pair(v) for v in row] for row in self.explicit_gram.entries]
        if self.grid is not None:
            data['grid'] = self.grid.as_dict()
        return data


def problem_from_data(data):
    '''Build a Problem from data already checked by ``schema_errors``.'''
    window_spec = None
    if 'window' in data:
        window_spec = {'kind': data['window']['kind'], 'dimension': data['window'].get('dimension', 1),
                       'params': data['window'].get('params', {})}
    return Problem(window_spec=window_spec, points=data.get('points'), values=data.get('values'),
                   gram=data.get('gram'), grid=data.get('grid'), description=data.get('description', ''))


def emit_template():
    return copy.deepcopy(TEMPLATE)


def gram_problem(gram, values=None, description=''):
    '''Problem file data for an explicit Gram matrix.'''
    data = {'gram': [[complex_pair(v) for v in row] for row in np.asarray(gram.entries)]}
    if values is not None:
        data['values'] = [complex_pair(v) for v in values]
    if description:
        data['description'] = description
    return data


def write_grid_csv(path, rows):
    '''Rows of (x, omega, re, im) with enough digits to round-trip.'''
    digits = config['csv_digits']
    with open(path, 'w', newline='') as fp:
        writer = csv.writer(fp)
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([format_number(value, digits) for value in row])
    return len(rows)
