import csv
import io

from django.core.management.base import CommandError
from django.template.loader import render_to_string

from bbqp_toolkit import oracle
from bbqp_toolkit.heuristics import neighborhood_size
from bbqp_toolkit.management.base import BBQPCommand


class Command(BBQPCommand):
    help = ('Enumerates every solution of a small instance and reports the optimum, '
            'medians and dominance counts.')

    def add_arguments(self, parser):
        parser.add_argument('instance', help='instance file')
        parser.add_argument('--dominance', metavar='SOLUTION',
                            help='count the solutions "x:<bits> y:<bits>" dominates')
        parser.add_argument('--local-opt', metavar='SOLUTION',
                            help='check local optimality for --alpha A or --hk H K')
        self.add_neighborhood_arguments(parser)
        parser.add_argument('--csv', action='store_true',
                            help='write "key,value" rows instead of the text report')

    def handle(self, *args, **options):
        instance = self.load_instance(options['instance'])
        report = oracle.enumerate_stats(instance)
        context = {'instance': instance, 'report': report, 'rows': report.as_rows()}
        if options['dominance']:
            solution = self.load_solution(options['dominance'], instance)
            context['dominance'] = {
                'solution': solution,
                'count': oracle.dominance_count(instance, solution),
                'ratio': oracle.dominance_ratio(instance, solution),
                'average_floor': oracle.dominance_floor(instance.m, instance.n),
                'alternating_floor': oracle.alternating_dominance_floor(instance.m, instance.n),
            }
        if options['local_opt']:
            spec = self.neighborhood(options)
            solution = self.load_solution(options['local_opt'], instance)
            context['local'] = {
                'solution': solution,
                'spec': spec,
                'size': neighborhood_size(spec, instance.m, instance.n),
                'optimal': oracle.is_local_optimum(instance, solution, spec),
            }
        elif options['hk'] or options['alpha'] is not None:
            raise CommandError('--hk and --alpha go with --local-opt')
        if options['csv']:
            self.write_csv(context)
        else:
            self.stdout.write(render_to_string('bbqp_toolkit/report.txt', context), ending='')

    def write_csv(self, context):
        rows = [('instance', context['instance'].name)] + context['rows']
        if 'dominance' in context:
            dominance = context['dominance']
            rows += [('dominance_solution', str(dominance['solution'])),
                     ('dominance_count', dominance['count']),
                     ('dominance_ratio', dominance['ratio'])]
        if 'local' in context:
            local = context['local']
            rows += [('neighborhood', local['spec']),
                     ('local_optimum', int(local['optimal']))]
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(('key', 'value'))
        writer.writerows(rows)
        self.stdout.write(out.getvalue(), ending='')
