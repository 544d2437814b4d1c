from django.conf import settings
from django.core.management.base import CommandError

from bbqp_toolkit import cli
from bbqp_toolkit.management.base import BBQPCommand


class Command(BBQPCommand):
    help = 'Runs both rounding schemes over every instance of a manifest and writes a CSV table.'

    def add_arguments(self, parser):
        parser.add_argument('manifest', help='file listing one instance path per line')
        self.add_output_argument(parser, help='CSV file; stdout without it')
        parser.add_argument('--start', choices=cli.STARTS, default=cli.HALF)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--enum-cap', type=int,
                            default=getattr(settings, 'BBQP_ENUM_CAP', 24),
                            help='fill the best column by enumeration when m+n is at most this')
        parser.add_argument('--no-timings', action='store_true',
                            help='leave the timing columns empty')
        parser.add_argument('--workers', type=int, default=1)

    def handle(self, *args, **options):
        entries = cli.read_manifest(options['manifest'])
        rows = self.write_output(options, lambda out: cli.run_experiment(
            entries, start=options['start'], seed=options['seed'], out=out,
            enum_cap=options['enum_cap'], timings=not options['no_timings'],
            workers=options['workers']))
        failed = [row for row in rows if row.failed]
        for row in failed:
            self.stderr.write('%s: %s' % (row.instance_name, row.error))
        if failed:
            raise CommandError('%d of %d instances failed' % (len(failed), len(rows)))
