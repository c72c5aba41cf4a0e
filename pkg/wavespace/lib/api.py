import json
import logging
import math
import os

import numpy as np
from django.conf import settings

from .exceptions import InfeasibleInterpolation, TheoremViolation, raise_dimension_mismatch, raise_invalid_parameter
from .finite import (build_group, class_equation, convexity_trials, decompose_regular,
                     interpolation_failure_demo, peter_weyl_completeness, positive_type_trials, rigidity_trials,
                     tensor_product_check)
from .gabor import TFPoint, Window, point_kernel_values
from .heisenberg import (DilatedSchrodingerRep, profile_function, tau_character_mean, tau_independent_orthogonality,
                         tau_nodes)
from .hrt import gaussian_exponents, hrt_gram, verdict_from_gram
from .interp import (gram_assemble, interpolant_grid, interpolant_norm_bound, psd_check, solve_minimal_norm,
                     strictly_positive_definite)
from .problem import gram_problem, problem_from_data, schema_errors, write_grid_csv
from .tools import complex_pair, format_number, random_complex_vector, timed


logger = logging.getLogger(__name__)

config = settings.WAVESPACE_CONFIG

FINITE_DEMOS = ('rigidity', 'positive-type', 'convexity', 'class-equation', 'completeness', 'tensor',
                'interpolation-failure')
SEEDED_DEMOS = ('rigidity', 'positive-type', 'convexity', 'tensor', 'interpolation-failure')


class APIException(Exception):
    pass


def parse_problem(data):
    errors = schema_errors(data)
    if errors:
        raise APIException('The problem file does not match the schema:\n  ' + '\n  '.join(errors))
    try:
        return problem_from_data(data)
    except OverflowError as err:
        raise APIException('The problem file has a number out of floating point range: {}'.format(err))


def load_problem(path):
    try:
        with open(path, encoding='utf-8') as fp:
            data = json.load(fp)
    except FileNotFoundError:
        raise APIException('Problem file {} does not exist'.format(path))
    except ValueError as err:
        raise APIException('The problem file looks like invalid json: {}'.format(err))
    return parse_problem(data)


def _fmt(value):
    return format_number(value, 10)


def _complex_text(value):
    return '{} {} {}i'.format(_fmt(value.real), '-' if value.imag < 0 else '+', _fmt(abs(value.imag)))


def _source(problem):
    if problem.explicit_gram is not None:
        return 'explicit Gram matrix ({0}x{0})'.format(problem.size)
    return '{}, {} points'.format(problem.window.identifier, problem.size)


@timed
def interpolate_output(problem, output_dir=None, tol=None):
    if problem.values is None:
        raise APIException('interpolate needs "values" in the problem file')
    gram = problem.gram_matrix()
    check = psd_check(gram, tol)
    context = {
        'command': 'interpolate',
        'source': _source(problem),
        'gram': check,
        'values': [complex_pair(v) for v in problem.values],
    }
    report = ['source: {}'.format(context['source']),
              'gram min_eig: {}  max_eig: {}'.format(_fmt(check['min_eig']), _fmt(check['max_eig']))]
    try:
        interpolant = solve_minimal_norm(gram, problem.values, problem.points)
    except InfeasibleInterpolation as err:
        context.update({'feasible': False, 'error': err.context['error']})
        context['report'] = report + ['INFEASIBLE: {}'.format(err.context['error'])]
        return context

    context.update({
        'feasible': True,
        'coefficients': [complex_pair(alpha) for alpha in interpolant.coefficients],
        'norm': interpolant.norm,
    })
    report += ['alpha[{}] = {}'.format(k, _complex_text(alpha)) for k, alpha in enumerate(interpolant.coefficients)]
    report.append('interpolant norm: {}'.format(_fmt(interpolant.norm)))

    if problem.grid is not None and problem.window is not None and output_dir:
        rows = interpolant_grid(interpolant, problem.window, problem.grid)
        write_grid_csv(os.path.join(output_dir, 'grid.csv'), rows)
        max_abs = max(math.hypot(row[2], row[3]) for row in rows)
        bound = interpolant_norm_bound(interpolant)
        if max_abs > bound * (1 + 1e-8) + 1e-12:
            raise TheoremViolation('evaluation bound', 'max |F| {:.6e} above ||F|| {:.6e}'.format(max_abs, bound))
        context['grid'] = dict(problem.grid.as_dict(), rows=len(rows), file='grid.csv', max_abs=max_abs,
                               norm_bound=bound)
        report.append('grid: {} rows, max |F| {} <= {}'.format(len(rows), _fmt(max_abs), _fmt(bound)))
    context['report'] = report + ['FEASIBLE']
    return context


@timed
def hrt_output(problem, tol=None):
    '''Independence verdict, plus the strict positive definiteness of the kernel
    Gram matrix so the two verdicts can be compared.'''
    tol = config['tolerances']['verdict'] if tol is None else tol
    if problem.explicit_gram is not None:
        grammian = kernel_gram = problem.explicit_gram
    else:
        # scaling g does not change independence, so both verdicts use the unit-norm copy
        window = problem.window.normalized()
        grammian = hrt_gram(window, problem.points)
        kernel_gram = gram_assemble(window, problem.points)
    verdict = verdict_from_gram(grammian, tol)
    context = {
        'command': 'hrt',
        'source': _source(problem),
        'verdict': verdict.as_dict(),
        'fully_interpolating': strictly_positive_definite(kernel_gram, tol),
    }
    report = [
        'source: {}'.format(context['source']),
        'min_eig: {}'.format(_fmt(verdict.min_eig)),
        'condition number: {}'.format(_fmt(verdict.cond)),
    ]
    if verdict.certificate is not None:
        report.append('diagonally dominant: max row sum {}'.format(_fmt(verdict.certificate.max_row_sum)))
    if problem.window is not None and problem.window.is_gaussian:
        exponents = gaussian_exponents(problem.points)
        context['distinct_exponents'] = exponents['distinct']
        report.append('distinct gaussian exponents: {}'.format(exponents['distinct']))
    if verdict.near_threshold:
        report.append('near threshold: verdict is sensitive to --tol')
    report.append('INDEPENDENT' if verdict.independent else 'DEPENDENT at tolerance {}'.format(tol))
    context['report'] = report
    return context


@timed
def kernel_grid_output(problem, output_dir, center=None):
    '''The point kernel centred at point ``center`` of the problem (the origin when None) over its grid.'''
    if problem.window is None or problem.grid is None:
        raise APIException('kernel_grid needs "window" and "grid" in the problem file')
    window = problem.window.admissible()
    if window.dimension != 1:
        raise_dimension_mismatch(1, window.dimension, what='grid window dimension')
    if center is None:
        centre = TFPoint(np.zeros(window.dimension), np.zeros(window.dimension))
    else:
        if problem.points is None or not 0 <= center < len(problem.points):
            raise_invalid_parameter('center', center, 'an index into the problem points')
        centre = problem.points[center]
    points = problem.grid.points()
    values = point_kernel_values(window, centre, points)
    rows = [(p.x[0], p.omega[0], v.real, v.imag) for p, v in zip(points, values)]
    write_grid_csv(os.path.join(output_dir, 'grid.csv'), rows)
    context = {
        'command': 'kernel_grid',
        'window': window.identifier,
        'center': list(centre.x + centre.omega),
        'grid': dict(problem.grid.as_dict(), rows=len(rows), file='grid.csv'),
        'max_abs': float(np.max(np.abs(values))),
    }
    context['report'] = ['kernel of {} centred at {}'.format(window.identifier, context['center']),
                         'grid: {} rows, max |k| {}'.format(len(rows), _fmt(context['max_abs']))]
    return context


def _largest_irrep(group):
    return max(decompose_regular(group), key=lambda irrep: irrep.dim)


def _class_equation(group, options):
    result = class_equation(group)
    passed = result['sum_of_squares'] == group.order
    line = '{} ; {} = {}'.format(','.join(map(str, result['dims'])), result['sum_of_squares'], group.order)
    return result, passed, line


def _completeness(group, options):
    result = peter_weyl_completeness(group)
    return result, result['complete'], 'span {}/{}'.format(result['span_dim'], result['order'])


def _rigidity(group, options):
    result = rigidity_trials(group, options['trials'], options['seed'])
    passed = result['intermediate'] == 0 and result['max_intertwining_residual'] <= config['tolerances']['intertwiner']
    line = '{} intermediate intersections ({} zero, {} full, residual {})'.format(
        result['intermediate'], result['zero'], result['full'], _fmt(result['max_intertwining_residual']))
    return result, passed, line


def _positive_type(group, options):
    result = positive_type_trials(group, options['trials'], options['seed'])
    line = '{} of {} differences of positive type (largest min_eig {})'.format(
        result['failures'], result['tested'], _fmt(result['largest_min_eig']))
    return result, result['failures'] == 0, line


def _convexity(group, options):
    result = convexity_trials(group, options['trials'], options['seed'], options['t'])
    passed = (result['smallest_generic'] > 1e-6 and result['largest_colinear'] <= config['tolerances']['rank_one']
              and result['violations'] == 0)
    line = 'second singular value: generic >= {}, colinear <= {}'.format(
        _fmt(result['smallest_generic']), _fmt(result['largest_colinear']))
    return result, passed, line


def _tensor(group, options):
    other = build_group(options['other_group'])
    rng = np.random.default_rng(options['seed'])
    rep, other_rep = _largest_irrep(group), _largest_irrep(other)
    deviation = tensor_product_check(rep, other_rep, random_complex_vector(rng, rep.dim),
                                     random_complex_vector(rng, other_rep.dim))
    result = {'other_group': other.name, 'deviation': deviation}
    return result, deviation <= 1e-12, 'deviation on {} x {}: {}'.format(group.name, other.name, _fmt(deviation))


def _interpolation_failure(group, options):
    rep = _largest_irrep(group)
    m = options['m'] or min(rep.dim + 3, group.order)
    demo = interpolation_failure_demo(rep, m, seed=options['seed'])
    gram = demo['gram']
    result = {'dim': rep.dim, 'm': m, 'elements': demo['elements'], 'min_eig': demo['min_eig'],
              'singular_expected': demo['singular_expected']}
    if options['output_dir']:
        # values in the zero eigenspace lie outside the image of the Gram matrix
        values = gram.eigh[1][:, 0]
        data = gram_problem(gram, values, description='{}: {} kernels of a {}-dimensional irreducible'.format(
            group.name, m, rep.dim))
        with open(os.path.join(options['output_dir'], 'problem.json'), 'w') as fp:
            json.dump(data, fp, indent=2)
        result['problem_file'] = 'problem.json'
    passed = abs(demo['min_eig']) <= config['tolerances']['verdict'] or not demo['singular_expected']
    return result, passed, 'm={} > d={}: min_eig {}'.format(m, rep.dim, _fmt(demo['min_eig']))


FINITE_HANDLERS = {
    'class-equation': _class_equation,
    'completeness': _completeness,
    'rigidity': _rigidity,
    'positive-type': _positive_type,
    'convexity': _convexity,
    'tensor': _tensor,
    'interpolation-failure': _interpolation_failure,
}


@timed
def finite_output(group_spec, demo, seed=None, trials=100, m=None, t=0.5, other_group='cyclic 3', output_dir=None):
    if demo not in FINITE_HANDLERS:
        raise_invalid_parameter('demo', demo, 'one of {}'.format(', '.join(FINITE_DEMOS)))
    if demo in SEEDED_DEMOS and seed is None:
        raise APIException('The {} demo is randomised and needs an explicit --seed'.format(demo))
    group = build_group(group_spec)
    options = {'seed': seed, 'trials': trials, 'm': m, 't': t, 'other_group': other_group, 'output_dir': output_dir}
    result, passed, line = FINITE_HANDLERS[demo](group, options)
    context = {'command': 'finite', 'group': group.name, 'demo': demo, 'seed': seed, 'result': result,
               'passed': bool(passed)}
    report = ['group: {} (order {})'.format(group.name, group.order), 'demo: {}'.format(demo)]
    if seed is not None:
        report.append('seed: {}'.format(seed))
    context['report'] = report + ['{} {}'.format(line, 'PASS' if passed else 'FAIL')]
    return context


@timed
def heisenberg_output(m, profile='constant', order=0):
    if m not in config['heisenberg']['allowed_m']:
        raise_invalid_parameter('m', m, 'one of {}'.format(config['heisenberg']['allowed_m']))
    rep = DilatedSchrodingerRep(m)
    window = Window.hermite(order)
    result = tau_independent_orthogonality(rep, profile_function(profile, m), window, window)
    count = len(tau_nodes(m))
    control = profile == 'tau-control'
    if control:
        passed = result['magnitude'] > 1e-3
        label = 'CONTROL' if passed else 'FAIL'
    else:
        passed = result['orthogonal']
        label = 'PASS' if passed else 'FAIL'
    context = {
        'command': 'heisenberg',
        'm': m,
        'profile': profile,
        'window': window.identifier,
        'result': result,
        'tau_character_mean': tau_character_mean(m, count),
        'passed': passed,
        'label': label,
    }
    context['report'] = [
        'm: {}  profile: {}  window: {}'.format(m, profile, window.identifier),
        '|<h, W_g f>|: {}  (bound {}, {} tau nodes)'.format(_fmt(result['magnitude']), _fmt(result['bound']), count),
        label,
    ]
    return context
