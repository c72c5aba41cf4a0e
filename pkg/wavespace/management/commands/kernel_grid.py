from wavespace.lib.api import APIException, kernel_grid_output

from .base_command import ProblemCommand


class Command(ProblemCommand):
    help = 'Write a point kernel of the problem window over the problem grid as CSV'

    def add_arguments(self, parser):
        parser.add_argument('--center', '-c', type=int, default=None,
                            help='Index of the problem point to centre the kernel at (default: the origin)')
        super(Command, self).add_arguments(parser)

    def run_problem(self, problem, **options):
        if not self.output_dir:
            raise APIException('kernel_grid writes grid.csv and needs --out')
        return kernel_grid_output(problem, self.output_dir, options.get('center'))
