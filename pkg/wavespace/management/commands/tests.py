import csv
import json
import os
import uuid

import numpy as np
import pytest
from django.core.management import call_command

from wavespace.lib.api import load_problem


FIXTURES = os.path.join('wavespace', 'fixtures')


@pytest.fixture
def output_dir(tmpdir):
    return str(tmpdir.join(str(uuid.uuid4())))


def read_results(output_dir):
    with open(os.path.join(output_dir, 'results.json')) as fp:
        return json.load(fp)


def read_report(output_dir):
    with open(os.path.join(output_dir, 'report.txt')) as fp:
        return fp.read()


def exit_code(*args, **options):
    with pytest.raises(SystemExit) as excinfo:
        call_command(*args, **options)
    return excinfo.value.code


def test_interpolate_three_point_example(output_dir):
    call_command('interpolate', problem=os.path.join(FIXTURES, 'three_points.json'), out=output_dir)
    assert sorted(os.listdir(output_dir)) == ['report.txt', 'results.json']
    results = read_results(output_dir)
    assert results['feasible']
    coefficients = [complex(*pair) for pair in results['coefficients']]
    assert np.allclose(coefficients, [0.6218, 0.7360, 0.9876], atol=5e-4)
    report = read_report(output_dir)
    assert 'alpha[0] = 0.621' in report
    assert 'FEASIBLE' in report


def test_interpolate_grid_csv(output_dir):
    call_command('interpolate', problem=os.path.join(FIXTURES, 'three_points_grid.json'), out=output_dir)
    assert sorted(os.listdir(output_dir)) == ['grid.csv', 'report.txt', 'results.json']
    with open(os.path.join(output_dir, 'grid.csv')) as fp:
        rows = list(csv.reader(fp))
    assert rows[0] == ['x', 'omega', 're', 'im']
    assert len(rows) == 10202
    assert rows[1][:2] == ['-2', '-2']
    assert float(rows[2][0]) == -2 and float(rows[2][1]) == pytest.approx(-1.95)
    results = read_results(output_dir)
    assert results['grid']['max_abs'] <= results['grid']['norm_bound']


def test_interpolate_zero_values(output_dir):
    call_command('interpolate', problem=os.path.join(FIXTURES, 'zero_values.json'), out=output_dir)
    results = read_results(output_dir)
    assert results['feasible']
    assert results['coefficients'] == [[0.0, 0.0]] * 3


def test_interpolate_without_out_prints_report(capsys):
    call_command('interpolate', problem=os.path.join(FIXTURES, 'three_points.json'))
    assert 'FEASIBLE' in capsys.readouterr().out


@pytest.mark.parametrize('file_name', ['bad_schema.json', 'invalid_json.json', 'duplicate_points.json',
                                       'single_point.json', 'does_not_exist.json'])
def test_interpolate_malformed(file_name):
    # single_point.json has no values to interpolate
    assert exit_code('interpolate', problem=os.path.join(FIXTURES, file_name)) == 1


def test_missing_problem_flag():
    assert exit_code('hrt') == 1


def test_hrt_three_point_example(output_dir):
    call_command('hrt', problem=os.path.join(FIXTURES, 'three_points.json'), out=output_dir)
    results = read_results(output_dir)
    assert results['verdict']['independent']
    assert results['verdict']['min_eig'] == pytest.approx(0.5398, abs=5e-4)
    assert results['verdict']['certificate']['holds']
    assert results['fully_interpolating']
    assert results['distinct_exponents']
    assert 'INDEPENDENT' in read_report(output_dir)


def test_hrt_single_point(output_dir):
    call_command('hrt', problem=os.path.join(FIXTURES, 'single_point.json'), out=output_dir)
    assert read_results(output_dir)['verdict']['min_eig'] == pytest.approx(1, abs=1e-10)


def test_hrt_tolerance_override():
    # min_eig / max_eig is about 0.3 for the three-point example
    assert exit_code('hrt', problem=os.path.join(FIXTURES, 'three_points.json'), tol=0.5) == 3


def test_finite_group_gram_is_dependent_and_not_interpolating(tmpdir):
    demo_dir = str(tmpdir.join('demo'))
    call_command('finite', group='dihedral 4', demo='interpolation-failure', m=5, seed=3, out=demo_dir)
    results = read_results(demo_dir)
    assert results['passed']
    assert results['result']['dim'] == 2
    assert abs(results['result']['min_eig']) <= 1e-10
    problem_file = os.path.join(demo_dir, 'problem.json')
    assert load_problem(problem_file).size == 5

    assert exit_code('hrt', problem=problem_file) == 3
    assert exit_code('interpolate', problem=problem_file, out=str(tmpdir.join('interp'))) == 2
    assert not read_results(str(tmpdir.join('interp')))['feasible']


@pytest.mark.parametrize(('group', 'demo', 'expected'), [
    ('dihedral 4', 'class-equation', '1,1,1,1,2 ; 8 = 8 PASS'),
    ('cyclic 6', 'class-equation', '1,1,1,1,1,1 ; 6 = 6 PASS'),
    ('finite_heisenberg 3', 'completeness', 'span 27/27 PASS'),
    ('dihedral 4', 'completeness', 'span 8/8 PASS'),
])
def test_finite_exact_demos(output_dir, group, demo, expected):
    call_command('finite', group=group, demo=demo, out=output_dir)
    assert expected in read_report(output_dir)


@pytest.mark.parametrize('demo', ['rigidity', 'positive-type', 'convexity', 'tensor'])
def test_finite_seeded_demos(output_dir, demo):
    call_command('finite', group='dihedral 4', demo=demo, seed=42, trials=40, out=output_dir)
    results = read_results(output_dir)
    assert results['passed']
    assert results['seed'] == 42
    report = read_report(output_dir)
    assert 'seed: 42' in report
    assert report.rstrip().endswith('PASS')


def test_finite_rigidity_report(output_dir):
    call_command('finite', group='dihedral 4', demo='rigidity', seed=1, out=output_dir)
    assert '0 intermediate intersections' in read_report(output_dir)


def test_finite_randomised_demo_needs_seed():
    assert exit_code('finite', group='dihedral 4', demo='rigidity') == 1


@pytest.mark.parametrize(('group', 'demo'), [
    ('icosahedral 5', 'class-equation'),
    ('dihedral 4', 'no-such-demo'),
    ('cyclic 200', 'completeness'),
])
def test_finite_bad_input(group, demo):
    assert exit_code('finite', group=group, demo=demo, seed=0) == 1


def test_heisenberg_constant(output_dir):
    call_command('heisenberg', m=1, out=output_dir)
    results = read_results(output_dir)
    assert results['label'] == 'PASS'
    assert results['result']['magnitude'] <= 1e-10


def test_heisenberg_gaussian_profile(output_dir):
    call_command('heisenberg', m=2, profile='gaussian', out=output_dir)
    assert read_results(output_dir)['label'] == 'PASS'


def test_heisenberg_control(output_dir):
    call_command('heisenberg', m=1, profile='tau-control', out=output_dir)
    results = read_results(output_dir)
    assert results['label'] == 'CONTROL'
    assert results['result']['magnitude'] > 1e-3


@pytest.mark.parametrize('m', [0, 9])
def test_heisenberg_bad_m(m):
    assert exit_code('heisenberg', m=m) == 1


def test_kernel_grid(output_dir):
    call_command('kernel_grid', problem=os.path.join(FIXTURES, 'kernel_grid.json'), out=output_dir)
    with open(os.path.join(output_dir, 'grid.csv')) as fp:
        rows = list(csv.DictReader(fp))
    assert len(rows) == 25
    origin = [row for row in rows if float(row['x']) == 0 and float(row['omega']) == 0][0]
    assert float(origin['re']) == pytest.approx(1)
    assert float(origin['im']) == pytest.approx(0)


def test_kernel_grid_centred(output_dir):
    call_command('kernel_grid', problem=os.path.join(FIXTURES, 'kernel_grid.json'), out=output_dir, center=1)
    assert read_results(output_dir)['center'] == [1.0, 0.0]


def test_kernel_grid_needs_out():
    assert exit_code('kernel_grid', problem=os.path.join(FIXTURES, 'kernel_grid.json')) == 1


def test_emit_template_round_trip(output_dir):
    call_command('interpolate', emit_template=True, out=output_dir)
    with open(os.path.join(output_dir, 'problem.json')) as fp:
        template = json.load(fp)
    assert load_problem(os.path.join(output_dir, 'problem.json')).as_dict() == template


def test_output_dir_exists_and_delete(output_dir):
    problem = os.path.join(FIXTURES, 'three_points.json')
    call_command('hrt', problem=problem, out=output_dir)
    assert exit_code('hrt', problem=problem, out=output_dir) == 1
    call_command('hrt', problem=problem, out=output_dir, delete=True)
    assert sorted(os.listdir(output_dir)) == ['report.txt', 'results.json']


def write_problem(tmpdir, data):
    path = str(tmpdir.join('problem.json'))
    with open(path, 'w') as fp:
        json.dump(data, fp)
    return path


def test_hrt_unnormalized_tabulated_window(tmpdir, output_dir):
    nodes = np.linspace(-6, 6, 1201)
    problem = write_problem(tmpdir, {
        'window': {'kind': 'tabulated', 'params': {'nodes': [nodes.tolist()],
                                                   'values': (2 * np.exp(-0.5 * np.pi * nodes ** 2)).tolist()}},
        'points': [[0, 0], [1, 0], [0, 1]],
    })
    call_command('hrt', problem=problem, out=output_dir)
    results = read_results(output_dir)
    assert results['verdict']['independent']
    assert results['fully_interpolating']
    assert results['verdict']['min_eig'] == pytest.approx(0.5398, abs=5e-3)


def test_non_finite_grid_is_malformed(tmpdir):
    problem = write_problem(tmpdir, {
        'window': {'kind': 'gaussian'},
        'points': [[0, 0]],
        'values': [1],
        'grid': {'xmin': float('nan'), 'xmax': 1.0, 'omega_min': -1.0, 'omega_max': 1.0, 'step': 0.5},
    })
    assert exit_code('interpolate', problem=problem) == 1


def test_oversized_grid_is_malformed(tmpdir):
    problem = write_problem(tmpdir, {
        'window': {'kind': 'gaussian'},
        'points': [[0, 0]],
        'values': [1],
        'grid': {'xmin': -1e6, 'xmax': 1e6, 'omega_min': -1e6, 'omega_max': 1e6, 'step': 1e-6},
    })
    assert exit_code('interpolate', problem=problem) == 1


@pytest.mark.parametrize('command', ['hrt', 'interpolate'])
def test_overflowing_points_are_malformed(tmpdir, command):
    problem = write_problem(tmpdir, {
        'window': {'kind': 'gaussian'},
        'points': [[1e308, 0], [-1e308, 0]],
        'values': [1, 1],
    })
    assert exit_code(command, problem=problem) == 1
