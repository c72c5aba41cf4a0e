from wavespace.lib.api import FINITE_DEMOS, APIException, finite_output

from .base_command import EXIT_THEOREM_VIOLATION, WavespaceBaseCommand


class Command(WavespaceBaseCommand):
    help = 'Run an exact check on a finite group ({})'.format(', '.join(FINITE_DEMOS))

    def add_arguments(self, parser):
        parser.add_argument('--group', '-g', default='', help='"cyclic N", "dihedral N" or "finite_heisenberg p"')
        parser.add_argument('--demo', default='', help='One of {}'.format(', '.join(FINITE_DEMOS)))
        parser.add_argument('--trials', type=int, default=100, help='Number of random trials')
        parser.add_argument('--m', type=int, default=None, help='Number of group elements (interpolation-failure)')
        parser.add_argument('--t', type=float, default=0.5, help='Convex combination weight (convexity)')
        parser.add_argument('--other-group', default='cyclic 3', help='Second factor for the tensor demo')
        super(Command, self).add_arguments(parser)

    def run(self, **options):
        if not options.get('group') or not options.get('demo'):
            raise APIException('--group and --demo are required')
        return finite_output(options['group'], options['demo'], seed=options.get('seed'),
                             trials=options.get('trials', 100), m=options.get('m'), t=options.get('t', 0.5),
                             other_group=options.get('other_group', 'cyclic 3'), output_dir=self.output_dir)

    def exit_code(self, context):
        return 0 if context['passed'] else EXIT_THEOREM_VIOLATION
