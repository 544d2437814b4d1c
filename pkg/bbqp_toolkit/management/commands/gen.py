import numpy as np
from django.core.management.base import CommandError

from bbqp_toolkit import constructions, generators, rng
from bbqp_toolkit.core import write_instance
from bbqp_toolkit.management.base import BBQPCommand

TIGHT = 'tight'
ALTERNATING_TRAP = 'alternating-trap'
LOCAL_SEARCH_TRAP = 'local-search-trap'
PARTITION_MEDIAN = 'partition-median'
BQP = 'bqp'
PAD = 'pad'

CONSTRUCTIONS = (TIGHT, ALTERNATING_TRAP, LOCAL_SEARCH_TRAP, PARTITION_MEDIAN, BQP, PAD)


def _weights(text):
    try:
        return [int(v) for v in text.split(',')]
    except ValueError:
        raise CommandError('weights must be comma separated integers, got %r' % text)


class Command(BBQPCommand):
    help = 'Writes a generated or constructed instance; provenance goes into "#" comments.'

    def add_arguments(self, parser):
        parser.add_argument('family', choices=generators.FAMILIES + CONSTRUCTIONS)
        parser.add_argument('-m', type=int, default=None, help='rows')
        parser.add_argument('-n', type=int, default=None, help='columns')
        parser.add_argument('--low', type=int, default=-100)
        parser.add_argument('--high', type=int, default=100)
        parser.add_argument('--density', type=float, default=0.5)
        parser.add_argument('--penalty', type=int)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--big-m', type=int, help='M of alternating-trap and bqp')
        parser.add_argument('--weights', help='PARTITION weights, e.g. 1,1,2')
        parser.add_argument('--scale', type=int, default=1000,
                            help='inverse of epsilon for partition-median')
        parser.add_argument('--source', help='instance file for pad, square BQP data for bqp')
        parser.add_argument('--pad-a', type=int, default=2)
        parser.add_argument('--pad-b', type=int, default=1)
        self.add_output_argument(parser)

    def handle(self, *args, **options):
        instance, comments = self.build(options['family'], options)
        self.write_output(options, lambda out: write_instance(instance, out, comments))

    def build(self, family, options):
        m, n = options['m'], options['n']
        if family in generators.FAMILIES:
            config = generators.GeneratorConfig(
                family, m or 4, n or m or 4, low=options['low'], high=options['high'],
                density=options['density'], penalty=options['penalty'], seed=options['seed'])
            return generators.generate(config), [config.describe()]
        if family == TIGHT:
            m, n = m or 2, n or m or 2
            return constructions.tight_instance(m, n), ['tight m=%d n=%d' % (m, n)]
        if family == ALTERNATING_TRAP:
            size, big = n or 2, options['big_m'] or 10
            instance, start = constructions.alternating_trap(size, big)
            return instance, ['alternating-trap n=%d M=%d' % (size, big), 'start %s' % start]
        if family == LOCAL_SEARCH_TRAP:
            size = n or 10
            instance, start, alpha = constructions.local_search_trap(size)
            return instance, ['local-search-trap n=%d alpha=%d' % (size, alpha),
                              'start %s' % start]
        if family == PARTITION_MEDIAN:
            if not options['weights']:
                raise CommandError('partition-median needs --weights')
            weights = _weights(options['weights'])
            instance = constructions.partition_median_instance(weights, options['scale'])
            return instance, ['partition-median weights=%s scale=%d'
                              % (options['weights'], options['scale'])]
        if family == BQP:
            return self.build_bqp(options)
        if family == PAD:
            if not options['source']:
                raise CommandError('pad needs --source')
            padded = constructions.pad_instance(self.load_instance(options['source']),
                                                options['pad_a'], options['pad_b'])
            return padded.inner, ['pad source=%s a=%d b=%d original=%dx%d'
                                  % (options['source'], padded.a, padded.b,
                                     padded.original_m, padded.original_n)]
        raise CommandError('unknown family %r' % family)

    def build_bqp(self, options):
        """Q' and c' come from a square --source instance, or are drawn like the random family."""
        if options['source']:
            source = self.load_instance(options['source'])
            if source.m != source.n:
                raise CommandError('a BQP source must be square, got %dx%d' % (source.m, source.n))
            Qp, cp = source.Q, source.c
            origin = 'source=%s' % options['source']
        else:
            size = options['n'] or options['m'] or 3
            generator = rng.make_generator(options['seed'])
            Qp = generator.integers(options['low'], options['high'], size=(size, size),
                                    endpoint=True, dtype=np.int64)
            cp = generator.integers(options['low'], options['high'], size=size,
                                    endpoint=True, dtype=np.int64)
            origin = 'n=%d range=[%d,%d] seed=%d' % (size, options['low'], options['high'],
                                                      options['seed'])
        big = options['big_m'] or constructions.bqp_threshold(Qp, cp)
        return constructions.bqp_to_bbqp(Qp, cp, big), ['bqp %s M=%d' % (origin, big)]
