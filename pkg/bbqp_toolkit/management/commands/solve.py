from django.core.management.base import CommandError

from bbqp_toolkit import cli, heuristics
from bbqp_toolkit.management.base import BBQPCommand

RXOY = 'rxoy'
RYOX = 'ryox'
ALT_X = 'alt-x'
ALT_Y = 'alt-y'
GUARANTEED_ALT = 'guaranteed-alt'
GUARANTEED_ROUND = 'guaranteed-round'
LOCAL = 'local'

ALGORITHMS = (RXOY, RYOX, ALT_X, ALT_Y, GUARANTEED_ALT, GUARANTEED_ROUND, LOCAL)


class Command(BBQPCommand):
    help = 'Runs one heuristic on an instance file and prints the solution found.'

    def add_arguments(self, parser):
        parser.add_argument('instance', help='instance file')
        parser.add_argument('--algo', choices=ALGORITHMS, default=RYOX)
        parser.add_argument('--start', choices=cli.STARTS, default=cli.HALF,
                            help='fractional start of the rounding schemes')
        parser.add_argument('--start-file', help='fractional solution for --start file')
        parser.add_argument('--seed', type=int, default=0, help='seed for type1/type2 starts')
        parser.add_argument('--initial', metavar='SOLUTION',
                            help='start solution "x:<bits> y:<bits>" for alt-x, alt-y and local; '
                                 'defaults to the RyOx rounding of the fractional start')
        parser.add_argument('--max-iters', type=int)
        self.add_neighborhood_arguments(parser)

    def handle(self, *args, **options):
        instance = self.load_instance(options['instance'])
        algo = options['algo']
        if algo == GUARANTEED_ALT:
            self.stdout.write(str(heuristics.guaranteed_alternating(instance)))
            return
        if algo == GUARANTEED_ROUND:
            self.stdout.write(str(heuristics.guaranteed_rounding(instance)))
            return
        if algo == LOCAL:
            spec = self.neighborhood(options)
        point = cli.fractional_start(instance, options['start'], options['seed'],
                                     options['start_file'])
        if algo == RXOY:
            self.stdout.write(str(heuristics.round_x_optimize_y(instance, point)))
            return
        if algo == RYOX:
            self.stdout.write(str(heuristics.round_y_optimize_x(instance, point)))
            return
        if options['initial']:
            start = self.load_solution(options['initial'], instance)
        else:
            start = heuristics.round_y_optimize_x(instance, point)
        if algo == LOCAL:
            result = heuristics.local_search(instance, start, spec, options['max_iters'])
        elif algo in (ALT_X, ALT_Y):
            first = heuristics.X_FIRST if algo == ALT_X else heuristics.Y_FIRST
            result = heuristics.alternating(instance, start, first, options['max_iters'])
        else:
            raise CommandError('unknown algorithm %r' % algo)
        self.stdout.write(str(result.solution))
        self.stdout.write('iterations: %d converged: %s'
                          % (result.iterations, 'yes' if result.converged else 'no'))
