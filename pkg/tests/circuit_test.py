"""Test the circuit description parser and executor."""
import os
import re
import math

import pytest

from cvchain.quadrature import SeedRegistry, second_moment, variance, commutator_norm
from cvchain.separability import correlation_block, duan_margin, lemma1_pairs
from cvchain.chain import build_bell_network
from cvchain.bell import BellConfig, photon_pair_rate
from cvchain.circuit import CircuitParseError, Statement, CircuitAst, parse_circuit, \
    serialize_circuit, execute_circuit

CIRCUIT_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'circuits')
VALID_DIR = os.path.join(CIRCUIT_DIR, 'valid')
INVALID_DIR = os.path.join(CIRCUIT_DIR, 'invalid')


def _read(path):
    with open(path) as inf:
        return inf.read()


def _fixtures(folder):
    return sorted(os.path.join(folder, f) for f in os.listdir(folder)
                  if f.endswith('.cir'))


def test_fixture_corpus_size():
    """Test that the fixture corpus holds enough circuits."""
    assert len(_fixtures(VALID_DIR)) >= 10
    assert len(_fixtures(INVALID_DIR)) >= 10


def test_parse_squeeze():
    """Test parsing a single squeezer."""
    ast = parse_circuit('squeeze r=0.5 out=a1,a2')
    assert len(ast) == 1
    statement = ast.statements[0]
    assert statement.kind == 'squeeze'
    assert statement.params == (('r', 0.5),)
    assert statement.inputs == ()
    assert statement.outputs == ('a1', 'a2')
    assert statement.line == 1
    assert ast.identifiers == ['a1', 'a2']


def test_parse_gain_domain():
    """Test that a gain below 1 is reported with its line."""
    with pytest.raises(CircuitParseError, match='gain must be >= 1') as err:
        parse_circuit('pa gain=0.5 in=a2,a3 out=a2p')
    assert err.value.line == 1
    assert err.value.column == 4


def test_parse_error_position():
    """Test the line and column of an undefined input."""
    text = 'squeeze r=0.5 out=a1,a2\n\n  pa gain=2 in=a2,a9 out=b\n'
    with pytest.raises(CircuitParseError) as err:
        parse_circuit(text)
    assert (err.value.line, err.value.column) == (3, 13)
    assert 'a9' in err.value.message
    assert str(err.value).startswith('line 3, column 13:')


def test_parse_repeated_input():
    """Test that one mode cannot feed both ports of an element."""
    with pytest.raises(CircuitParseError, match='Repeated input') as err:
        parse_circuit('vacuum out=u\nbs t=0.5 in=u,u out=o\n')
    assert (err.value.line, err.value.column) == (2, 10)
    text = 'squeeze r=0.5 out=h,v\n' \
        'polrot angle=0.3 in=h,v out=p,m\n' \
        'polrot angle=0.9 in=h,v out=q,n\n'
    modes = execute_circuit(parse_circuit(text))
    for mode in modes.values():
        assert commutator_norm(mode) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize('path', _fixtures(VALID_DIR))
def test_valid_fixture(path):
    """Test that a valid fixture parses, round-trips and executes."""
    ast = parse_circuit(_read(path))
    assert len(ast) > 0
    text = serialize_circuit(ast)
    assert parse_circuit(text) == ast
    assert serialize_circuit(parse_circuit(text)) == text
    modes = execute_circuit(ast)
    assert list(modes) == ast.identifiers
    for mode in modes.values():
        assert commutator_norm(mode) == pytest.approx(1, abs=1e-9)


@pytest.mark.parametrize('path', _fixtures(INVALID_DIR))
def test_invalid_fixture(path):
    """Test that an invalid fixture is rejected at its expected line."""
    text = _read(path)
    expected = int(re.match(r'# expect-error: line (\d+)', text).group(1))
    with pytest.raises(CircuitParseError) as err:
        parse_circuit(text)
    assert err.value.line == expected
    assert err.value.column >= 1


def test_statement_equality():
    """Test that statement equality ignores the source line."""
    first = Statement('bs', [('t', 0.5)], ['a', 'b'], ['c'], line=3)
    second = Statement('bs', [('t', 0.5)], ['a', 'b'], ['c'], line=9)
    assert first == second
    assert hash(first) == hash(second)
    assert first != Statement('bs', [('t', 0.25)], ['a', 'b'], ['c'])
    assert first.to_string() == 'bs t=0.5 in=a,b out=c'
    assert CircuitAst([first]) == CircuitAst([second])


def test_serialize_circuit():
    """Test the canonical text of a parsed circuit."""
    ast = parse_circuit('# comment\nvacuum   out=v\nsqueeze out=a,b r=2 # inline\n')
    assert serialize_circuit(ast) == 'vacuum out=v\nsqueeze r=2.0 out=a,b\n'


def test_execute_lemma1():
    """Test that an executed circuit reproduces the amplifier study."""
    modes = execute_circuit(parse_circuit(_read(os.path.join(VALID_DIR, 'lemma1.cir'))))
    report = duan_margin(correlation_block(modes['a1'], modes['a2p']))
    first, _ = lemma1_pairs(0.5, 0.5, 8)
    assert report.margin == pytest.approx(first.margin, abs=1e-12)
    assert variance(modes['a2p'].x) == pytest.approx(5.786552, abs=1e-6)


def test_execute_bell_network():
    """Test that the circuit of the Bell network matches the built-in network."""
    registry = SeedRegistry('dsl')
    modes = execute_circuit(
        parse_circuit(_read(os.path.join(VALID_DIR, 'bell_network.cir'))), registry)
    assert registry.count == 8
    net = build_bell_network(None, BellConfig(0.1, 2, 8))
    for x in (0, 1):
        for z in (0, 1):
            ap, cp = modes['ap{}'.format(x)], modes['cp{}'.format(z)]
            ref_a, _, ref_c, _ = net.measured_modes(x, z)
            assert second_moment(ap.x, cp.x) == \
                pytest.approx(second_moment(ref_a.x, ref_c.x), abs=1e-12)
            assert variance(cp.p) == pytest.approx(variance(ref_c.p), abs=1e-12)
    mode_a, mode_c = modes['ap0'], modes['cp0']
    rate = 2 * second_moment(mode_a.x, mode_c.x) ** 2 + \
        2 * second_moment(mode_a.p, mode_c.p) ** 2 + \
        (variance(mode_a.x) + variance(mode_a.p) - 0.5) * \
        (variance(mode_c.x) + variance(mode_c.p) - 0.5)
    assert rate == pytest.approx(photon_pair_rate(net, 1, 1, 0, 0), abs=1e-12)


def test_execute_edges():
    """Test the beam splitter and polarization edge cases of the executor."""
    modes = execute_circuit(parse_circuit(_read(os.path.join(VALID_DIR, 'bs_edges.cir'))))
    assert modes['transmitted'].x.coefficients == modes['u'].x.coefficients
    assert modes['reflected'].x.coefficients == (-modes['w'].x).coefficients
    modes = execute_circuit(
        parse_circuit(_read(os.path.join(VALID_DIR, 'polrot_angles.cir'))))
    assert modes['p0'].x.coefficients == modes['h'].x.coefficients
    assert modes['p1'].x.coefficients == pytest.approx(modes['v'].x.coefficients)
    assert modes['p2'].name == 'p2'
    # h and v are the correlated halves of one squeezed pair
    expected = 0.25 * (math.cosh(0.8) + math.sin(-1) * math.sinh(0.8))
    assert variance(modes['p2'].x) == pytest.approx(expected, abs=1e-12)
    assert variance(modes['p2'].x) == pytest.approx(0.147530, abs=1e-6)
