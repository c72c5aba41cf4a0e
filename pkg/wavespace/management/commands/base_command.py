import json
import logging
import os
import shutil
import sys

import numpy as np
from django.core.management.base import BaseCommand

from wavespace.lib.api import APIException, load_problem
from wavespace.lib.exceptions import DecompositionError, TheoremViolation, WavespaceInputDataError
from wavespace.lib.interp import GramMatrix
from wavespace.lib.problem import emit_template


logger = logging.getLogger(__name__)

EXIT_MALFORMED = 1
EXIT_INFEASIBLE = 2
EXIT_DEPENDENT = 3
EXIT_THEOREM_VIOLATION = 4


class WavespaceEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, set):
            return sorted(obj)
        if isinstance(obj, complex):
            return [obj.real, obj.imag]
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        if isinstance(obj, GramMatrix):
            return obj.entries.tolist()
        return json.JSONEncoder.default(self, obj)


class WavespaceBaseCommand(BaseCommand):
    '''
    Shared flags and the exit-code contract of every command: 1 for malformed
    input, 4 for a failed structural check, otherwise whatever ``exit_code``
    returns for the finished run.
    '''

    def __init__(self, *args, **kwargs):
        self.output_dir = ''
        super(WavespaceBaseCommand, self).__init__(*args, **kwargs)

    def add_arguments(self, parser):
        parser.add_argument('--out', '-o', default='',
                            help='Directory where report.txt, results.json and any grid.csv are written')
        parser.add_argument('--delete', '-d', action='store_true', help='Delete existing directory if it exits')
        parser.add_argument('--seed', type=int, default=None, help='Seed for randomised demos, echoed in the report')
        parser.add_argument('--tol', type=float, default=None, help='Override the default verdict tolerance')

    def prepare_output_dir(self, output_dir, delete):
        if os.path.exists(output_dir):
            if delete:
                shutil.rmtree(output_dir)
            else:
                self.stdout.write('Directory {} already exists'.format(output_dir))
                sys.exit(EXIT_MALFORMED)
        os.makedirs(output_dir)
        self.output_dir = output_dir

    def handle(self, *args, **options):
        self.output_dir = ''
        if options.get('out'):
            self.prepare_output_dir(options['out'], options.get('delete'))

        try:
            context = self.run(**options)
        except (APIException, WavespaceInputDataError) as err:
            self.stdout.write(str(err))
            sys.exit(EXIT_MALFORMED)
        except (TheoremViolation, DecompositionError) as err:
            logger.error('%s: %s', self.__module__, err)
            self.stdout.write('FAIL: {}'.format(err))
            sys.exit(EXIT_THEOREM_VIOLATION)

        if context is None:
            return
        self.write_results(context)
        code = self.exit_code(context)
        if code:
            sys.exit(code)

    def write_results(self, context):
        report = '\n'.join(context.get('report', []))
        self.stdout.write(report)
        if not self.output_dir:
            return
        with open(os.path.join(self.output_dir, 'report.txt'), 'w') as report_file:
            report_file.write(report + '\n')
        with open(os.path.join(self.output_dir, 'results.json'), 'w+') as result_file:
            json.dump(context, result_file, indent=2, sort_keys=True, cls=WavespaceEncoder)

    def run(self, **options):
        raise NotImplementedError

    def exit_code(self, context):
        return 0


class ProblemCommand(WavespaceBaseCommand):
    '''A command that reads one problem file.'''

    def add_arguments(self, parser):
        parser.add_argument('--problem', '-p', default='', help='Problem file (JSON)')
        parser.add_argument('--emit-template', action='store_true',
                            help='Print a problem template (and write it to --out) instead of running')
        super(ProblemCommand, self).add_arguments(parser)

    def run(self, **options):
        if options.get('emit_template'):
            template = json.dumps(emit_template(), indent=2)
            self.stdout.write(template)
            if self.output_dir:
                with open(os.path.join(self.output_dir, 'problem.json'), 'w') as fp:
                    fp.write(template + '\n')
            return None
        if not options.get('problem'):
            raise APIException('--problem is required (or use --emit-template)')
        problem = load_problem(options['problem'])
        rest = {key: value for key, value in options.items() if key != 'problem'}
        return self.run_problem(problem, **rest)

    def run_problem(self, problem, **options):
        raise NotImplementedError
