"""Parameter sweeps of the Bell value and their CSV output."""
import csv
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .elements import DomainError, gain_param
from .bell import BellConfig, CLASSICAL_BOUND, bell_value

_logger = logging.getLogger(__name__)

CSV_HEADER = ('r1', 'r2', 'G3', 'bell_analytic', 'bell_engine', 'violated')

SweepRow = namedtuple(
    'SweepRow', ('r1', 'r2', 'g3', 'bell_analytic', 'bell_engine', 'violated'))


class SweepRange(object):
    """An inclusive, evenly spaced range of values.

    Args:
        start: The first value.
        stop: The last value. Must not be smaller than start.
        count: The number of values (>= 1). A count of 1 yields only start.
    """
    __slots__ = ('_start', '_stop', '_count')

    def __init__(self, start, stop, count):
        start, stop, count = float(start), float(stop), int(count)
        if count < 1:
            raise DomainError('Range count must be >= 1. Got {}.'.format(count))
        if start > stop:
            raise DomainError(
                'Range start {} is greater than stop {}.'.format(start, stop))
        self._start, self._stop, self._count = start, stop, count

    @classmethod
    def from_string(cls, text):
        """Create a range from text formatted as start:stop:count."""
        parts = text.split(':')
        if len(parts) != 3:
            raise ValueError(
                'Range "{}" must be formatted as start:stop:count.'.format(text))
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except (TypeError, ValueError) as e:
            if isinstance(e, DomainError):
                raise
            raise ValueError('Range "{}" is not numeric.'.format(text))

    @property
    def start(self):
        return self._start

    @property
    def stop(self):
        return self._stop

    @property
    def count(self):
        return self._count

    @property
    def values(self):
        """Get a tuple of the values of the range."""
        if self._count == 1:
            return (self._start,)
        return tuple(float(v) for v in np.linspace(self._start, self._stop, self._count))

    def to_string(self):
        return '{}:{}:{}'.format(self._start, self._stop, self._count)

    def __len__(self):
        return self._count

    def __repr__(self):
        return 'SweepRange: {}'.format(self.to_string())


class SweepSpec(object):
    """The grid and output path of a Bell-value sweep.

    Args:
        r1_range: A SweepRange for r1. Its start must be greater than zero.
        r2_range: A SweepRange for r2.
        g3: The gain of Bob's amplifiers.
        output: Optional path to the CSV file. (Default: None).
    """

    def __init__(self, r1_range, r2_range, g3, output=None):
        if r1_range.start <= 0:
            raise DomainError('r1 range must start above 0. Got {}.'.format(
                r1_range.start))
        self._r1_range = r1_range
        self._r2_range = r2_range
        self._g3 = gain_param(g3, 'G3')
        self._output = output

    @property
    def r1_range(self):
        return self._r1_range

    @property
    def r2_range(self):
        return self._r2_range

    @property
    def g3(self):
        return self._g3

    @property
    def output(self):
        return self._output

    @property
    def points(self):
        """Get a list of (r1, r2) pairs in row-major order with r1 outermost."""
        return [(r1, r2) for r1 in self._r1_range.values
                for r2 in self._r2_range.values]

    def __repr__(self):
        return 'SweepSpec: r1={} r2={} G3={}'.format(
            self._r1_range.to_string(), self._r2_range.to_string(), self._g3)


def _evaluate_point(point):
    """Evaluate one grid point; a module-level function so that it can be pickled."""
    r1, r2, g3 = point
    config = BellConfig(r1, r2, g3)
    analytic = bell_value(config, 'analytic')
    engine = bell_value(config, 'engine')
    return SweepRow(r1, r2, g3, analytic, engine, analytic > CLASSICAL_BOUND)


def sweep_bell(spec, workers=1):
    """Evaluate the Bell value over the grid of a SweepSpec.

    Args:
        spec: A SweepSpec.
        workers: Number of worker processes. Rows are returned in grid order
            whatever the number of workers. (Default: 1).

    Returns:
        A list of SweepRow with one row per grid point, r1 outermost.
    """
    points = [(r1, r2, spec.g3) for r1, r2 in spec.points]
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_evaluate_point, points))
    else:
        rows = [_evaluate_point(pt) for pt in points]
    _logger.info('Swept %d points for %r; %d violate the bound.',
                 len(rows), spec, sum(1 for row in rows if row.violated))
    return rows


def _format_real(value):
    return '{:.12g}'.format(value)


def write_sweep_csv(rows, file_obj):
    """Write sweep rows to an open text file as CSV."""
    writer = csv.writer(file_obj, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow((
            _format_real(row.r1), _format_real(row.r2), _format_real(row.g3),
            _format_real(row.bell_analytic), _format_real(row.bell_engine),
            1 if row.violated else 0))


def emit_sweep_csv(spec, workers=1):
    """Run a sweep and write it to the output path of the SweepSpec.

    Returns:
        The path of the written CSV file.
    """
    if spec.output is None:
        raise ValueError('The SweepSpec has no output path.')
    rows = sweep_bell(spec, workers)
    try:
        with open(spec.output, 'w', newline='') as out_file:
            write_sweep_csv(rows, out_file)
    except (IOError, OSError) as e:
        raise ValueError('Failed to write sweep CSV to {}.\n{}'.format(spec.output, e))
    return spec.output
