from wavespace.lib.api import APIException, heisenberg_output
from wavespace.lib.heisenberg import PROFILES

from .base_command import EXIT_THEOREM_VIOLATION, WavespaceBaseCommand


class Command(WavespaceBaseCommand):
    help = 'Show that tau-independent functions are orthogonal to the wavelet spaces of the reduced Heisenberg group'

    def add_arguments(self, parser):
        parser.add_argument('--m', type=int, default=None, help='Dilation of the Schrodinger representation (non-zero)')
        parser.add_argument('--profile', default='constant', help='Test function: {}'.format(', '.join(PROFILES)))
        parser.add_argument('--order', type=int, default=0, help='Hermite order of the windows f and g')
        super(Command, self).add_arguments(parser)

    def run(self, **options):
        if options.get('m') is None:
            raise APIException('--m is required')
        return heisenberg_output(options['m'], options.get('profile', 'constant'), options.get('order', 0))

    def exit_code(self, context):
        return 0 if context['passed'] else EXIT_THEOREM_VIOLATION
