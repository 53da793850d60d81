"""cvchain commands."""
import click
import sys
import logging
import json

from cvchain.quadrature import SeedRegistry, VACUUM_VARIANCE, second_moment, \
    variance
from cvchain.elements import electro_optic_equivalence
from cvchain.separability import correlation_block, duan_margin, lemma1_pairs, \
    lemma1_sign, epr_variance_sum
from cvchain.chain import build_aoes_chain, build_bell_network, swap_residual
from cvchain.bell import DEFAULT_THETAS, DEFAULT_VARTHETAS, DEFAULT_G3, \
    CLASSICAL_BOUND, BellConfig, bell_value, correlator_table
from cvchain.sweep import SweepRange, SweepSpec, sweep_bell, write_sweep_csv, \
    emit_sweep_csv
from cvchain.hybrid import HybridScenario, hybrid_bound_table
from cvchain.oracle import DEFAULT_CHUNK_SIZE, SampleConfig, sampled_bell, \
    oracle_checks
from cvchain.circuit import parse_circuit, execute_circuit

_logger = logging.getLogger(__name__)


class _RangeType(click.ParamType):
    """A start:stop:count range option."""
    name = 'start:stop:count'

    def convert(self, value, param, ctx):
        if isinstance(value, SweepRange):
            return value
        try:
            return SweepRange.from_string(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


class _PairType(click.ParamType):
    """A comma-separated pair of mode identifiers."""
    name = 'a,b'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        names = tuple(v.strip() for v in value.split(','))
        if len(names) != 2 or not all(names):
            self.fail('Pair "{}" must be formatted as a,b.'.format(value), param, ctx)
        return names


RANGE = _RangeType()
PAIR = _PairType()


def _num(value):
    """Format a real number with 10 significant digits."""
    return '{:.10g}'.format(value)


def _write(output_file, output_format, data, lines):
    """Write a command result as JSON or as lines of text."""
    if output_format == 'json':
        output_file.write(json.dumps(data, indent=2))
        output_file.write('\n')
    else:
        for line in lines:
            output_file.write('{}\n'.format(line))


def _format_option(func):
    func = click.option(
        '--output-format', '-f', help='Text for the format of the output. Choose '
        'from: text, json.', type=click.Choice(['text', 'json'], case_sensitive=False),
        default='text', show_default=True)(func)
    return click.option(
        '--output-file', '-o', help='Optional file to output the result. By default '
        'it will be printed out to stdout.', type=click.File('w'), default='-',
        show_default=True)(func)


# command group for all cvchain commands.
@click.group(help='Commands for simulating continuous-variable swapping networks.')
@click.version_option()
def main():
    pass


@main.command('run')
@click.argument('circuit-file', type=click.Path(
    exists=True, file_okay=True, dir_okay=False, resolve_path=True))
@click.option(
    '--report', '-r', help='Text for the report to compute from the circuit. '
    'Choose from: moments, covariance, duan. The covariance and duan reports '
    'require the --pair option.', type=click.Choice(
        ['moments', 'covariance', 'duan'], case_sensitive=False),
    default='moments', show_default=True)
@click.option(
    '--pair', '-p', help='Two mode identifiers of the circuit separated by a comma '
    '(eg. a1,a2p). With the moments report, the cross moments of the pair are '
    'added to the output.', type=PAIR, default=None)
@_format_option
def run_circuit(circuit_file, report, pair, output_format, output_file):
    """Execute a circuit file and report the moments of its modes.

    \b
    Args:
        circuit_file: Path to a circuit description file.
    """
    report = report.lower()
    if report != 'moments' and pair is None:
        raise click.UsageError('--pair is required for the {} report.'.format(report))
    try:
        with open(circuit_file) as inf:
            ast = parse_circuit(inf.read())
        modes = execute_circuit(ast)
        for name in pair or ():
            if name not in modes:
                raise ValueError('Mode "{}" is not defined in the circuit.'.format(name))
        lines = []
        if report == 'moments':
            rows = []
            for name, mode in modes.items():
                x2, p2 = variance(mode.x), variance(mode.p)
                n = x2 + p2 - 2 * VACUUM_VARIANCE
                rows.append({'mode': name, 'x2': x2, 'p2': p2, 'n': n})
                lines.append('{} {} {} {}'.format(name, _num(x2), _num(p2), _num(n)))
            data = {'moments': rows}
            if pair:
                mode_a, mode_b = modes[pair[0]], modes[pair[1]]
                xx = second_moment(mode_a.x, mode_b.x)
                pp = second_moment(mode_a.p, mode_b.p)
                data['pair'] = {'modes': list(pair), 'xx': xx, 'pp': pp}
                lines.append('{},{} {} {}'.format(pair[0], pair[1], _num(xx), _num(pp)))
        else:
            block = correlation_block(modes[pair[0]], modes[pair[1]])
            result = block if report == 'covariance' else duan_margin(block)
            data = result.to_dict()
            lines = ['{} {}'.format(k, _num(v) if not isinstance(v, bool)
                                    else str(v).lower()) for k, v in data.items()]
        _write(output_file, output_format, data, lines)
    except Exception as e:
        _logger.exception('Failed to run circuit.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('bell')
@click.option('--r1', help='Squeezing parameter of the sources shared by Alice and '
              'Bob.', type=float, required=True)
@click.option('--r2', help='Squeezing parameter of the sources shared by Bob and '
              'Charlie.', type=float, default=2.0, show_default=True)
@click.option('--g3', help='Gain of Bob\'s parametric amplifiers.', type=float,
              default=DEFAULT_G3, show_default=True)
@click.option(
    '--method', '-m', help='Text for the evaluation method. Choose from: analytic, '
    'engine, mc. The mc method samples the seed quadratures and also reports a '
    'standard error.', type=click.Choice(['analytic', 'engine', 'mc'],
                                         case_sensitive=False),
    default='analytic', show_default=True)
@click.option('--theta0', help='Alice\'s mixing angle for setting 0 in radians.',
              type=float, default=DEFAULT_THETAS[0], show_default=True)
@click.option('--theta1', help='Alice\'s mixing angle for setting 1 in radians.',
              type=float, default=DEFAULT_THETAS[1], show_default=True)
@click.option('--phi0', help='Charlie\'s mixing angle for setting 0 in radians.',
              type=float, default=DEFAULT_VARTHETAS[0], show_default=True)
@click.option('--phi1', help='Charlie\'s mixing angle for setting 1 in radians.',
              type=float, default=DEFAULT_VARTHETAS[1], show_default=True)
@click.option('--samples', help='Number of samples for the mc method.',
              type=click.IntRange(min=1), default=1000000, show_default=True)
@click.option('--seed', help='Random seed for the mc method.',
              type=click.IntRange(min=0), default=0, show_default=True)
@click.option('--workers', help='Number of threads for the mc method.',
              type=click.IntRange(min=1), default=1, show_default=True)
@_format_option
def bell(r1, r2, g3, method, theta0, theta1, phi0, phi1, samples, seed, workers,
         output_format, output_file):
    """Get the one-way Bell value of the two-chain swapping network."""
    try:
        method = method.lower()
        config = BellConfig(r1, r2, g3, (theta0, theta1), (phi0, phi1))
        std_error = None
        data = {'config': config.to_dict(), 'method': method}
        if method == 'mc':
            net = build_bell_network(None, config)
            estimate = sampled_bell(net, SampleConfig(samples, seed, workers=workers))
            value, std_error = estimate.mean, estimate.std_error
            data['std_error'] = std_error
        elif method == 'engine':
            table = correlator_table(build_bell_network(None, config))
            value = table.bell
            data['correlators'] = table.to_dict()['correlators']
        else:
            value = bell_value(config, method)
        data['bell'] = value
        data['violated'] = value > CLASSICAL_BOUND
        lines = [_num(value)]
        if std_error is not None:
            lines.append('std_error {}'.format(_num(std_error)))
        _write(output_file, output_format, data, lines)
    except Exception as e:
        _logger.exception('Failed to compute the Bell value.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('sweep')
@click.option('--r1', 'r1_range', help='Range of r1 values as start:stop:count. '
              'The start must be greater than 0.', type=RANGE, required=True)
@click.option('--r2', 'r2_range', help='Range of r2 values as start:stop:count.',
              type=RANGE, required=True)
@click.option('--g3', help='Gain of Bob\'s parametric amplifiers.', type=float,
              default=DEFAULT_G3, show_default=True)
@click.option('--out', help='Optional path to the output CSV file. By default the '
              'CSV will be printed out to stdout.', type=click.Path(
                  file_okay=True, dir_okay=False, resolve_path=True), default=None)
@click.option('--workers', help='Number of worker processes. The CSV does not '
              'depend on this number.', type=click.IntRange(min=1), default=1,
              show_default=True)
def sweep(r1_range, r2_range, g3, out, workers):
    """Sweep the Bell value over a grid of squeezing parameters and write a CSV."""
    try:
        spec = SweepSpec(r1_range, r2_range, g3, out)
        if out is None:
            write_sweep_csv(sweep_bell(spec, workers), sys.stdout)
        else:
            emit_sweep_csv(spec, workers)
    except Exception as e:
        _logger.exception('Failed to sweep the Bell value.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('bound')
@click.option('--scenario', '-s', help='Text for the classical source. Choose from: '
              'ab, bc.', type=click.Choice(['ab', 'bc'], case_sensitive=False),
              default='ab', show_default=True)
@click.option('--b-alphabet', '-b', help='Number of Bob\'s outcomes.',
              type=click.IntRange(min=1), default=2, show_default=True)
@click.option('--method', '-m', help='Text for the solution method. Choose from: '
              'vertex, lp.', type=click.Choice(['vertex', 'lp'], case_sensitive=False),
              default='vertex', show_default=True)
@_format_option
def bound(scenario, b_alphabet, method, output_format, output_file):
    """Get the maximal Bell value of the hybrid classical no-signaling models."""
    try:
        hybrid = HybridScenario(scenario, b_alphabet)
        table = hybrid_bound_table(hybrid, method)
        value = max(table)
        data = {'scenario': hybrid.which_side_classical, 'b_alphabet': b_alphabet,
                'method': method.lower(), 'table': table, 'bound': value}
        _write(output_file, output_format, data, [_num(value)])
    except Exception as e:
        _logger.exception('Failed to compute the hybrid bound.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('oracle')
@click.option('--samples', help='Number of Monte Carlo samples.',
              type=click.IntRange(min=1), default=1000000, show_default=True)
@click.option('--seed', help='Random seed of the sampler.',
              type=click.IntRange(min=0), default=0, show_default=True)
@click.option('--workers', help='Number of threads evaluating sample chunks.',
              type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--chunk-size', help='Number of samples per chunk.',
              type=click.IntRange(min=1), default=DEFAULT_CHUNK_SIZE, show_default=True)
@click.option('--r1', type=float, default=0.1, show_default=True,
              help='Squeezing parameter of the Alice-Bob sources.')
@click.option('--r2', type=float, default=2.0, show_default=True,
              help='Squeezing parameter of the Bob-Charlie sources.')
@click.option('--g3', type=float, default=DEFAULT_G3, show_default=True,
              help='Gain of Bob\'s parametric amplifiers.')
@_format_option
def oracle(samples, seed, workers, chunk_size, r1, r2, g3, output_format,
           output_file):
    """Validate the analytic moments against Monte Carlo estimates.

    The command fails when any estimate lies more than 5 standard errors away
    from its analytic value.
    """
    try:
        config = BellConfig(r1, r2, g3)
        checks = oracle_checks(config, SampleConfig(samples, seed, chunk_size, workers))
        data = {'config': config.to_dict(), 'samples': samples, 'seed': seed,
                'checks': [ch._asdict() for ch in checks]}
        lines = ['{} {} {} {} {}'.format(
            ch.name, _num(ch.analytic), _num(ch.estimate), _num(ch.std_error),
            'pass' if ch.passed else 'FAIL') for ch in checks]
        _write(output_file, output_format, data, lines)
        failed = [ch.name for ch in checks if not ch.passed]
        if failed:
            raise ValueError('Monte Carlo estimates disagree with: {}'.format(
                ', '.join(failed)))
    except Exception as e:
        _logger.exception('Oracle validation failed.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('duan')
@click.option('--r1', type=float, default=0.5, show_default=True,
              help='Squeezing parameter of the source of a1 and a2.')
@click.option('--r2', type=float, default=0.5, show_default=True,
              help='Squeezing parameter of the source of a3 and a4.')
@click.option('--g3', type=float, default=DEFAULT_G3, show_default=True,
              help='Gain of the amplifier acting on a2 and a3.')
@_format_option
def duan(r1, r2, g3, output_format, output_file):
    """Evaluate the Duan criterion around Bob's amplifier and across the swap."""
    try:
        first, second = lemma1_pairs(r1, r2, g3)
        chain = build_aoes_chain(SeedRegistry('duan'), r1, r2, g3)
        epr_value, inseparable = epr_variance_sum(chain.a1, chain.a4_out)
        swap = duan_margin(correlation_block(chain.a1, chain.a4_out))
        data = {
            'a1_a2amp': first.to_dict(), 'a2amp_a4': second.to_dict(),
            'sign': lemma1_sign(r1, r2, g3), 'swap': swap.to_dict(),
            'epr_variance_sum': epr_value, 'inseparable': inseparable,
            'swap_residual': swap_residual(r2, g3)
        }
        lines = [
            'a1,a2_amp {}'.format(_num(first.margin)),
            'a2_amp,a4 {}'.format(_num(second.margin)),
            'a1,a4_out {}'.format(_num(swap.margin)),
            'epr_variance_sum {}'.format(_num(epr_value)),
            'swap_residual {}'.format(_num(data['swap_residual']))
        ]
        _write(output_file, output_format, data, lines)
    except Exception as e:
        _logger.exception('Failed to evaluate the Duan criterion.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)


@main.command('equivalence')
@click.option('--g3', type=float, default=DEFAULT_G3, show_default=True,
              help='Gain of the amplifier. Must be greater than 1.')
@_format_option
def equivalence(g3, output_format, output_file):
    """Compare the amplifier output with the electro-optic feed-forward signal."""
    try:
        report = electro_optic_equivalence(g3)
        lines = [
            'amplifier {} {}'.format(*[_num(v) for v in report.amplifier_coefficients]),
            'electro_optic {} {}'.format(
                *[_num(v) for v in report.electro_optic_coefficients]),
            'deviation {}'.format(_num(report.deviation))
        ]
        _write(output_file, output_format, report.to_dict(), lines)
    except Exception as e:
        _logger.exception('Failed to compare the amplifier.\n{}'.format(e))
        sys.exit(1)
    else:
        sys.exit(0)
