from django.template.loader import render_to_string

from bbqp_toolkit.core import (average_nontrivial, average_upper_bound, average_value,
    best_corner_solution, best_trivial_solution)
from bbqp_toolkit.management.base import BBQPCommand


class Command(BBQPCommand):
    help = 'Prints A, the nontrivial average, Avg+ and the best corner and trivial solutions.'

    def add_arguments(self, parser):
        parser.add_argument('instance', help='instance file')

    def handle(self, *args, **options):
        instance = self.load_instance(options['instance'])
        self.stdout.write(render_to_string('bbqp_toolkit/avg.txt', {
            'instance': instance,
            'average': average_value(instance),
            'nontrivial': average_nontrivial(instance),
            'upper': average_upper_bound(instance),
            'corner': best_corner_solution(instance),
            'trivial': best_trivial_solution(instance),
        }), ending='')
