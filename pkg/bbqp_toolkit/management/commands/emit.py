from bbqp_toolkit import ilp
from bbqp_toolkit.management.base import BBQPCommand


class Command(BBQPCommand):
    help = 'Writes the ILP1 or ILP2 linearization of an instance in LP format.'

    def add_arguments(self, parser):
        parser.add_argument('formulation', choices=('ilp1', 'ilp2'))
        parser.add_argument('instance', help='instance file')
        self.add_output_argument(parser, help='model file; the model goes to stdout without it')

    def handle(self, *args, **options):
        instance = self.load_instance(options['instance'])
        stats = self.write_output(options, lambda out: ilp.emit(instance, options['formulation'], out))
        summary = '%s: variables=%d constraints=%d binaries=%d' % (
            stats.formulation, stats.variable_count, stats.constraint_count, stats.binary_count)
        if options['output']:
            self.stdout.write(summary)
        else:
            self.stderr.write(summary)
