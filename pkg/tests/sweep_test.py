"""Test the Bell-value sweeps and their CSV output."""
import os
import io

import pytest

from cvchain.elements import DomainError
from cvchain.sweep import CSV_HEADER, SweepRange, SweepSpec, sweep_bell, \
    write_sweep_csv, emit_sweep_csv


def test_sweep_range():
    """Test the parsing and values of a sweep range."""
    rng = SweepRange.from_string('0.1:0.5:3')
    assert rng.values == pytest.approx((0.1, 0.3, 0.5))
    assert len(rng) == 3
    assert SweepRange(2, 2, 1).values == (2.0,)
    assert SweepRange.from_string(rng.to_string()).values == rng.values
    with pytest.raises(ValueError):
        SweepRange.from_string('0.1:0.5')
    with pytest.raises(ValueError):
        SweepRange.from_string('a:b:c')
    with pytest.raises(DomainError):
        SweepRange(1, 0, 3)
    with pytest.raises(DomainError):
        SweepRange(0, 1, 0)


def test_sweep_spec():
    """Test the row-major grid of a sweep."""
    spec = SweepSpec(SweepRange(0.1, 0.2, 2), SweepRange(1, 3, 3), 8)
    assert spec.points[:3] == [(0.1, 1.0), (0.1, 2.0), (0.1, 3.0)]
    assert spec.points[3][0] == 0.2
    with pytest.raises(DomainError):
        SweepSpec(SweepRange(0, 1, 2), SweepRange(1, 3, 3), 8)
    with pytest.raises(DomainError):
        SweepSpec(SweepRange(0.1, 1, 2), SweepRange(1, 3, 3), 0.5)


def test_sweep_bell():
    """Test the rows of a 3x3 sweep."""
    spec = SweepSpec(SweepRange(0.1, 1.1, 3), SweepRange(1, 2, 3), 8)
    rows = sweep_bell(spec)
    assert len(rows) == 9
    assert [(row.r1, row.r2) for row in rows] == spec.points
    for row in rows:
        assert abs(row.bell_analytic - row.bell_engine) <= 1e-10
        assert row.violated == (row.bell_analytic > 2)
    row = rows[2]
    assert (row.r1, row.r2, row.g3) == (0.1, 2, 8)
    assert row.bell_analytic == pytest.approx(2.68964, abs=1e-4)
    assert row.violated


def test_write_sweep_csv():
    """Test the CSV layout of a sweep."""
    spec = SweepSpec(SweepRange(0.1, 1.1, 3), SweepRange(1, 2, 3), 8)
    out = io.StringIO()
    write_sweep_csv(sweep_bell(spec), out)
    lines = out.getvalue().split('\n')
    assert lines[0] == ','.join(CSV_HEADER) == 'r1,r2,G3,bell_analytic,bell_engine,violated'
    assert lines[-1] == ''
    assert len(lines) == 11
    cells = lines[3].split(',')
    assert cells[:3] == ['0.1', '2', '8']
    assert cells[3].startswith('2.6896')
    assert len(cells[3].replace('.', '')) <= 12
    assert cells[5] == '1'


def test_sweep_workers_identical():
    """Test that the CSV does not depend on the number of workers."""
    spec = SweepSpec(SweepRange(0.05, 2, 4), SweepRange(0.25, 3, 4), 8)
    single, multi = io.StringIO(), io.StringIO()
    write_sweep_csv(sweep_bell(spec, workers=1), single)
    write_sweep_csv(sweep_bell(spec, workers=2), multi)
    assert single.getvalue() == multi.getvalue()


def test_emit_sweep_csv(tmp_path):
    """Test that a sweep is written to its output path."""
    output = str(tmp_path / 'sweep.csv')
    spec = SweepSpec(SweepRange(0.1, 0.2, 2), SweepRange(1, 2, 2), 8, output)
    assert emit_sweep_csv(spec) == output
    assert os.path.isfile(output)
    with open(output) as inf:
        first = inf.read()
    emit_sweep_csv(spec)
    with open(output) as inf:
        assert inf.read() == first
    bad = SweepSpec(SweepRange(0.1, 0.2, 2), SweepRange(1, 2, 2), 8,
                    str(tmp_path / 'missing' / 'sweep.csv'))
    with pytest.raises(ValueError):
        emit_sweep_csv(bad)
