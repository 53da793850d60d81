"""Parse, serialize and execute line-oriented circuit descriptions.

Each non-empty line holds one statement of the form::

    kind key=value ... in=a,b out=c,d

where ``#`` starts a comment. The supported kinds are the following:

* vacuum out=v
* squeeze r=<r> out=a,b
* pa gain=<G> in=signal,idler out=o
* bs t=<transmission> in=a,b out=o
* polrot angle=<radians> in=h,v out=plus,minus
"""
import re
import math
import logging
from collections import OrderedDict

from .quadrature import SeedRegistry, vacuum_mode
from .elements import DomainError, gain_param, squeeze_param, transmission_param, \
    two_mode_squeeze, parametric_amplify, beam_split, polarization_combine

_logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')


def _angle_param(value, input_name='angle'):
    if not math.isfinite(value):
        raise DomainError('{} must be finite. Got {}.'.format(input_name, value))
    return value


# kind: (((parameter, validator), ...), number of inputs, number of outputs)
ELEMENTS = OrderedDict([
    ('vacuum', ((), 0, 1)),
    ('squeeze', ((('r', squeeze_param),), 0, 2)),
    ('pa', ((('gain', gain_param),), 2, 1)),
    ('bs', ((('t', transmission_param),), 2, 1)),
    ('polrot', ((('angle', _angle_param),), 2, 2))
])


class CircuitParseError(ValueError):
    """Raised when a circuit description cannot be parsed.

    Args:
        message: Text describing the error.
        line: The 1-based line number of the error.
        column: The 1-based column of the offending token.
    """

    def __init__(self, message, line, column=1):
        self.message = message
        self.line = line
        self.column = column
        ValueError.__init__(
            self, 'line {}, column {}: {}'.format(line, column, message))


class Statement(object):
    """A single element of a circuit.

    Args:
        kind: Text for the element kind.
        params: A tuple of (name, value) tuples in the canonical order of the kind.
        inputs: A tuple of input mode identifiers.
        outputs: A tuple of output mode identifiers.
        line: The line number of the statement in its source. Not part of
            statement equality. (Default: None).
    """
    __slots__ = ('_kind', '_params', '_inputs', '_outputs', '_line')

    def __init__(self, kind, params, inputs, outputs, line=None):
        self._kind = kind
        self._params = tuple((str(k), float(v)) for k, v in params)
        self._inputs = tuple(inputs)
        self._outputs = tuple(outputs)
        self._line = line

    @property
    def kind(self):
        return self._kind

    @property
    def params(self):
        return self._params

    @property
    def inputs(self):
        return self._inputs

    @property
    def outputs(self):
        return self._outputs

    @property
    def line(self):
        return self._line

    def param(self, name):
        """Get the value of a parameter by name."""
        return dict(self._params)[name]

    def to_string(self):
        """Get the statement as a line of circuit text."""
        tokens = [self._kind]
        tokens.extend('{}={!r}'.format(k, v) for k, v in self._params)
        if self._inputs:
            tokens.append('in={}'.format(','.join(self._inputs)))
        tokens.append('out={}'.format(','.join(self._outputs)))
        return ' '.join(tokens)

    def __key(self):
        return (self._kind, self._params, self._inputs, self._outputs)

    def __eq__(self, other):
        return isinstance(other, Statement) and self.__key() == other.__key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.__key())

    def __repr__(self):
        return 'Statement: {}'.format(self.to_string())


class CircuitAst(object):
    """An ordered list of circuit statements.

    Args:
        statements: A list of Statement objects.
    """

    def __init__(self, statements):
        self._statements = tuple(statements)

    @property
    def statements(self):
        return self._statements

    @property
    def identifiers(self):
        """Get a list of every mode identifier in order of definition."""
        return [name for st in self._statements for name in st.outputs]

    def __len__(self):
        return len(self._statements)

    def __iter__(self):
        return iter(self._statements)

    def __eq__(self, other):
        return isinstance(other, CircuitAst) and \
            self._statements == other._statements

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'CircuitAst: {} statements'.format(len(self._statements))


def _tokenize(text):
    """Yield (token, column) pairs of a comment-free line."""
    for match in re.finditer(r'\S+', text):
        yield match.group(0), match.start() + 1


def _identifiers(value, expected, key, line, column):
    names = value.split(',') if value else []
    if len(names) != expected:
        raise CircuitParseError(
            '"{}" expects {} identifier(s). Got {}.'.format(key, expected, len(names)),
            line, column)
    for name in names:
        if not IDENTIFIER.match(name):
            raise CircuitParseError(
                'Invalid mode identifier "{}".'.format(name), line, column)
    return names


def _parse_line(text, line, defined):
    tokens = list(_tokenize(text))
    kind, kind_col = tokens[0]
    try:
        param_spec, n_in, n_out = ELEMENTS[kind]
    except KeyError:
        raise CircuitParseError(
            'Unrecognized element kind "{}". Choose from: {}.'.format(
                kind, ', '.join(ELEMENTS)), line, kind_col)
    validators = dict(param_spec)
    values, columns = {}, {}
    for token, col in tokens[1:]:
        key, sep, value = token.partition('=')
        if not sep:
            raise CircuitParseError(
                'Expected key=value. Got "{}".'.format(token), line, col)
        if key in values:
            raise CircuitParseError('Duplicate key "{}".'.format(key), line, col)
        if key not in validators and key not in ('in', 'out') or \
                (key == 'in' and n_in == 0):
            raise CircuitParseError(
                'Unrecognized key "{}" for element "{}".'.format(key, kind), line, col)
        values[key], columns[key] = value, col

    params = []
    for name, validator in param_spec:
        if name not in values:
            raise CircuitParseError(
                'Missing parameter "{}" for element "{}".'.format(name, kind),
                line, kind_col)
        try:
            number = float(values[name])
        except ValueError:
            raise CircuitParseError(
                'Parameter "{}" is not numeric. Got "{}".'.format(name, values[name]),
                line, columns[name])
        try:
            params.append((name, validator(number, name)))
        except DomainError as e:
            raise CircuitParseError(str(e), line, columns[name])

    inputs = []
    if n_in:
        if 'in' not in values:
            raise CircuitParseError(
                'Missing "in" for element "{}".'.format(kind), line, kind_col)
        inputs = _identifiers(values['in'], n_in, 'in', line, columns['in'])
        if len(set(inputs)) != len(inputs):
            raise CircuitParseError(
                'Repeated input identifier in "{}".'.format(values['in']),
                line, columns['in'])
        for name in inputs:
            if name not in defined:
                raise CircuitParseError(
                    'Undefined input identifier "{}".'.format(name),
                    line, columns['in'])
    if 'out' not in values:
        raise CircuitParseError(
            'Missing "out" for element "{}".'.format(kind), line, kind_col)
    outputs = _identifiers(values['out'], n_out, 'out', line, columns['out'])
    seen = set()
    for name in outputs:
        if name in defined or name in seen:
            raise CircuitParseError(
                'Duplicate output identifier "{}".'.format(name),
                line, columns['out'])
        seen.add(name)
    return Statement(kind, params, inputs, outputs, line)


def parse_circuit(text):
    """Parse circuit text into a CircuitAst.

    Args:
        text: The circuit description.

    Returns:
        A CircuitAst. The first error found is raised as a CircuitParseError
        carrying its line and column.
    """
    statements, defined = [], set()
    for line, raw in enumerate(text.splitlines(), 1):
        content = raw.split('#', 1)[0]
        if not content.strip():
            continue
        statement = _parse_line(content, line, defined)
        defined.update(statement.outputs)
        statements.append(statement)
    _logger.debug('Parsed %d circuit statements.', len(statements))
    return CircuitAst(statements)


def serialize_circuit(ast):
    """Get the circuit text of a CircuitAst, one statement per line."""
    return ''.join('{}\n'.format(st.to_string()) for st in ast)


def execute_circuit(ast, registry=None):
    """Evaluate a CircuitAst into named optical modes.

    Args:
        ast: A CircuitAst.
        registry: Optional SeedRegistry for the vacuum seeds of the circuit.
            If None, a new registry is created.

    Returns:
        An OrderedDict mapping every identifier to its OpticalMode, in order
        of definition.
    """
    registry = registry if registry is not None else SeedRegistry('circuit')
    modes = OrderedDict()
    for st in ast:
        ins = [modes[name] for name in st.inputs]
        if st.kind == 'vacuum':
            outs = (vacuum_mode(registry, st.outputs[0]),)
        elif st.kind == 'squeeze':
            outs = two_mode_squeeze(registry, st.param('r'), st.outputs)
        elif st.kind == 'pa':
            outs = (parametric_amplify(ins[0], ins[1], st.param('gain'),
                                       st.outputs[0]),)
        elif st.kind == 'bs':
            outs = (beam_split(ins[0], ins[1], st.param('t'), st.outputs[0]),)
        elif st.kind == 'polrot':
            outs = polarization_combine(ins[0], ins[1], st.param('angle'),
                                        st.outputs)
        else:
            raise ValueError('Unrecognized element kind "{}".'.format(st.kind))
        for name, mode in zip(st.outputs, outs):
            modes[name] = mode
    return modes
