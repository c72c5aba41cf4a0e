from wavespace.lib.api import interpolate_output

from .base_command import EXIT_INFEASIBLE, ProblemCommand


class Command(ProblemCommand):
    help = 'Solve a minimal-norm interpolation problem in a Gabor space (or for an explicit Gram matrix)'

    def run_problem(self, problem, **options):
        return interpolate_output(problem, self.output_dir, options.get('tol'))

    def exit_code(self, context):
        return 0 if context['feasible'] else EXIT_INFEASIBLE
