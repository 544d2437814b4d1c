import logging

from django.core.management.base import BaseCommand, CommandError

from bbqp_toolkit import cli
from bbqp_toolkit.core import parse_solution
from bbqp_toolkit.exceptions import BBQPError
from bbqp_toolkit.heuristics import NeighborhoodSpec


class BBQPCommand(BaseCommand):
    """
        Base for the toolkit's commands: library errors and unreadable files
        become CommandError, and ``--verbosity 3`` turns on debug logging for
        the ``bbqp_toolkit`` loggers.
    """

    def execute(self, *args, **options):
        if options.get('verbosity', 1) >= 3:
            logging.getLogger('bbqp_toolkit').setLevel(logging.DEBUG)
        try:
            return super().execute(*args, **options)
        except (BBQPError, OSError) as e:
            raise CommandError(str(e))

    def add_output_argument(self, parser, help='write to this file instead of stdout'):
        parser.add_argument('-o', '--output', help=help)

    def add_neighborhood_arguments(self, parser):
        group = parser.add_mutually_exclusive_group()
        group.add_argument('--hk', nargs=2, type=int, metavar=('H', 'K'),
                           help='the N^{h,k} neighborhood')
        group.add_argument('--alpha', type=int, help='the N^alpha neighborhood')

    def neighborhood(self, options, required=True):
        if options.get('hk'):
            return NeighborhoodSpec.for_hk(*options['hk'])
        if options.get('alpha') is not None:
            return NeighborhoodSpec.for_alpha(options['alpha'])
        if required:
            raise CommandError('give a neighborhood with --hk H K or --alpha A')
        return None

    def load_instance(self, path):
        return cli.load_instance(path)

    def load_solution(self, text, instance):
        return parse_solution(text, instance)

    def write_output(self, options, render):
        """Calls render(stream) on the --output file, or on stdout when none is given."""
        if options.get('output'):
            with open(options['output'], 'w') as f:
                return render(f)
        return render(self.stdout)
