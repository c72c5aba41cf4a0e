from wavespace.lib.api import hrt_output

from .base_command import EXIT_DEPENDENT, ProblemCommand


class Command(ProblemCommand):
    help = 'Test linear independence of the time-frequency shifts of a window'

    def run_problem(self, problem, **options):
        return hrt_output(problem, options.get('tol'))

    def exit_code(self, context):
        return 0 if context['verdict']['independent'] else EXIT_DEPENDENT
