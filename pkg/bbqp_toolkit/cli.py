"""
Experiment runner behind ``bbqp experiment`` and the ``bbqp`` entry point.

A manifest lists one instance file per line, optionally annotated::

    instances/a.txt best=120 lp=131.5
    instances/b.txt frac=fractional/b.sol   # used with --start file

Relative paths are resolved against the manifest's directory.
"""
import csv
import io
import logging
import os
import shlex
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from django.conf import settings

from bbqp_toolkit import heuristics, ilp, oracle
from bbqp_toolkit.core import (average_upper_bound, average_value, decimal_string,
    evaluate_fractional, read_instance)
from bbqp_toolkit.exceptions import BBQPError, InstanceFormatError

logger = logging.getLogger(__name__)

HALF = 'half'
TYPE1 = 'type1'
TYPE2 = 'type2'
FILE = 'file'
STARTS = (HALF, TYPE1, TYPE2, FILE)

COLUMNS = ('instance', 'best', 'lp_obj', 'frac_obj', 'yx', 'xy', 'avg_plus', 'avg',
           't_start_ms', 't_yx_ms', 't_xy_ms', 'avg_exact', 'error')


@dataclass
class ManifestEntry:
    path: str
    best: int = None
    lp: float = None
    frac: str = None


@dataclass
class ExperimentRow:
    instance_name: str
    best_known: int = None
    lp_obj: float = None
    frac_obj: float = None
    yx_obj: int = None
    xy_obj: int = None
    avg_plus: int = None
    avg: Fraction = None
    t_start_ms: float = None
    t_yx_ms: float = None
    t_xy_ms: float = None
    error: str = None

    @property
    def failed(self):
        return self.error is not None

    def as_csv(self, timings=True):
        def text(value, render=str):
            return '' if value is None else render(value)

        def real(value):
            # adding 0.0 turns -0.0 into 0.0
            return '%.12g' % (value + 0.0)

        def millis(value):
            return '%.3f' % value if timings else ''

        return [
            self.instance_name,
            text(self.best_known),
            text(self.lp_obj, real),
            text(self.frac_obj, real),
            text(self.yx_obj),
            text(self.xy_obj),
            text(self.avg_plus),
            text(self.avg, decimal_string),
            text(self.t_start_ms, millis),
            text(self.t_yx_ms, millis),
            text(self.t_xy_ms, millis),
            text(self.avg),
            text(self.error),
        ]


def parse_manifest(source, base_dir=''):
    if isinstance(source, str):
        source = io.StringIO(source)
    entries = []
    for lineno, raw in enumerate(source, 1):
        tokens = shlex.split(raw, comments=True)
        if not tokens:
            continue
        entry = ManifestEntry(os.path.join(base_dir, tokens[0]))
        for token in tokens[1:]:
            key, sep, value = token.partition('=')
            if not sep or key not in ('best', 'lp', 'frac'):
                raise InstanceFormatError('unknown annotation %r' % token, lineno)
            try:
                if key == 'best':
                    entry.best = int(value)
                elif key == 'lp':
                    entry.lp = float(value)
                else:
                    entry.frac = os.path.join(base_dir, value)
            except ValueError:
                raise InstanceFormatError('bad value in %r' % token, lineno)
        entries.append(entry)
    return entries


def read_manifest(path):
    try:
        with open(path, encoding='utf-8') as f:
            return parse_manifest(f, os.path.dirname(path))
    except UnicodeDecodeError:
        raise InstanceFormatError('%s: not UTF-8 text' % path)


def instance_name(path):
    return os.path.splitext(os.path.basename(path))[0]


def load_instance(path):
    try:
        with open(path, encoding='utf-8') as f:
            return read_instance(f, name=instance_name(path))
    except UnicodeDecodeError:
        raise InstanceFormatError('not UTF-8 text')


def fractional_start(instance, start, seed, frac_path=None):
    if start == HALF:
        return heuristics.half_start(instance.m, instance.n)
    if start == TYPE1:
        return heuristics.type1_start(instance, seed)
    if start == TYPE2:
        return heuristics.type2_start(instance, seed)
    if start == FILE:
        if frac_path is None:
            raise InstanceFormatError('start=file needs a frac=<path> annotation')
        try:
            with open(frac_path, encoding='utf-8') as f:
                return ilp.read_fractional_solution(instance, f)
        except UnicodeDecodeError:
            raise InstanceFormatError('%s: not UTF-8 text' % frac_path)
    raise ValueError('unknown start %r' % start)


def _elapsed_ms(began):
    return (time.perf_counter() - began) * 1000.0


def run_row(entry, start, seed, enum_cap):
    row = ExperimentRow(instance_name(entry.path), best_known=entry.best, lp_obj=entry.lp)
    try:
        instance = load_instance(entry.path)
        began = time.perf_counter()
        point = fractional_start(instance, start, seed, entry.frac)
        row.t_start_ms = _elapsed_ms(began)
        row.frac_obj = evaluate_fractional(instance, point)
        began = time.perf_counter()
        row.yx_obj = heuristics.round_y_optimize_x(instance, point).value
        row.t_yx_ms = _elapsed_ms(began)
        began = time.perf_counter()
        row.xy_obj = heuristics.round_x_optimize_y(instance, point).value
        row.t_xy_ms = _elapsed_ms(began)
        row.avg_plus = average_upper_bound(instance)
        row.avg = average_value(instance)
        if row.best_known is None and instance.m + instance.n <= enum_cap:
            row.best_known = oracle.optimum(instance).value
    except (BBQPError, OSError) as e:
        logger.warning('%s: %s', entry.path, e)
        row.error = str(e)
    return row


def run_experiment(instances, start=HALF, seed=0, out=None, enum_cap=None, timings=True,
                   workers=1):
    """
    Rounds every instance from the chosen start with both schemes and writes
    one CSV row per instance, in input order. ``instances`` holds manifest
    entries or plain paths.
    """
    if start not in STARTS:
        raise ValueError('start must be one of %s' % ', '.join(STARTS))
    if enum_cap is None:
        enum_cap = getattr(settings, 'BBQP_ENUM_CAP', 24)
    entries = [entry if isinstance(entry, ManifestEntry) else ManifestEntry(entry)
               for entry in instances]

    def work(entry):
        return run_row(entry, start, seed, enum_cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(work, entries))
    else:
        rows = [work(entry) for entry in entries]
    if out is not None:
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow(row.as_csv(timings))
    return rows


def main(argv=None):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'bbqp_toolkit.settings')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv or sys.argv)
