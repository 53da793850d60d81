"""Photon-pair rates, conditional correlators and the one-way Bell value."""
import math
import logging

from .quadrature import VACUUM_VARIANCE, second_moment, variance
from .elements import DomainError, gain_param, squeeze_param
from .chain import build_bell_network

_logger = logging.getLogger(__name__)

DEFAULT_THETAS = (3 * math.pi / 8, math.pi / 8)
DEFAULT_VARTHETAS = (math.pi / 4, 0.0)
DEFAULT_G3 = 8.0
CLASSICAL_BOUND = 2.0
QUANTUM_BOUND = 2 * math.sqrt(2)
SIGNS = (1, -1)
SETTINGS = ((0, 0), (0, 1), (1, 0), (1, 1))
METHODS = ('analytic', 'engine')


class NoDetectionError(DomainError):
    """Raised when every photon-pair rate vanishes and correlators are undefined."""


def chsh_sign(x, z):
    """Get the sign of the (x, z) term in the Bell combination."""
    return -1 if (x, z) == (1, 1) else 1


class BellConfig(object):
    """Source, gain and angle settings of a Bell test on the swapping network.

    Args:
        r1: Squeezing parameter of the sources shared by Alice and Bob.
        r2: Squeezing parameter of the sources shared by Bob and Charlie.
        g3: Gain of Bob's amplifiers. (Default: 8).
        thetas: A tuple with Alice's two mixing angles in radians.
            (Default: (3pi/8, pi/8)).
        varthetas: A tuple with Charlie's two mixing angles in radians.
            (Default: (pi/4, 0)).
    """

    def __init__(self, r1, r2, g3=DEFAULT_G3, thetas=DEFAULT_THETAS,
                 varthetas=DEFAULT_VARTHETAS):
        self.r1 = r1
        self.r2 = r2
        self.g3 = g3
        self.thetas = thetas
        self.varthetas = varthetas

    @property
    def r1(self):
        """Get or set the squeezing parameter of the Alice-Bob sources."""
        return self._r1

    @r1.setter
    def r1(self, value):
        self._r1 = squeeze_param(value, 'r1')

    @property
    def r2(self):
        """Get or set the squeezing parameter of the Bob-Charlie sources."""
        return self._r2

    @r2.setter
    def r2(self, value):
        self._r2 = squeeze_param(value, 'r2')

    @property
    def g3(self):
        """Get or set the gain of Bob's amplifiers."""
        return self._g3

    @g3.setter
    def g3(self, value):
        self._g3 = gain_param(value, 'G3')

    @property
    def thetas(self):
        """Get or set a tuple of Alice's two mixing angles."""
        return self._thetas

    @thetas.setter
    def thetas(self, values):
        self._thetas = self._check_angles(values, 'thetas')

    @property
    def varthetas(self):
        """Get or set a tuple of Charlie's two mixing angles."""
        return self._varthetas

    @varthetas.setter
    def varthetas(self, values):
        self._varthetas = self._check_angles(values, 'varthetas')

    def angle_sum(self, x, z):
        """Get theta_x + vartheta_z for a setting pair."""
        return self._thetas[x] + self._varthetas[z]

    def duplicate(self):
        """Get a copy of this object."""
        return BellConfig(self._r1, self._r2, self._g3,
                          self._thetas, self._varthetas)

    def to_dict(self):
        return {'r1': self._r1, 'r2': self._r2, 'g3': self._g3,
                'thetas': list(self._thetas), 'varthetas': list(self._varthetas)}

    @staticmethod
    def _check_angles(values, input_name):
        values = tuple(float(v) for v in values)
        if len(values) != 2:
            raise DomainError(
                '{} must contain two angles. Got {}.'.format(input_name, len(values)))
        if not all(math.isfinite(v) for v in values):
            raise DomainError('{} must be finite. Got {}.'.format(input_name, values))
        return values

    def __repr__(self):
        return 'BellConfig: r1={} r2={} G3={}'.format(self._r1, self._r2, self._g3)


class ClosedFormInputs(object):
    """The closed-form quantities Gamma1, Gamma2 and s of a configuration.

    Args:
        r1: Squeezing parameter of the Alice-Bob sources.
        r2: Squeezing parameter of the Bob-Charlie sources.
        g3: Gain of Bob's amplifiers.
    """
    __slots__ = ('_gamma1', '_gamma2', '_s')

    def __init__(self, r1, r2, g3):
        r1, r2 = squeeze_param(r1, 'r1'), squeeze_param(r2, 'r2')
        g3 = gain_param(g3, 'G3')
        cosh = math.cosh(2 * r1)
        self._gamma1 = cosh - 1
        self._gamma2 = cosh + (2 * g3 - 2) / g3 * math.exp(-2 * r2) - 1
        self._s = math.sinh(2 * r1) ** 2

    @property
    def gamma1(self):
        return self._gamma1

    @property
    def gamma2(self):
        return self._gamma2

    @property
    def s(self):
        return self._s

    def __repr__(self):
        return 'ClosedFormInputs: Gamma1={:.6g} Gamma2={:.6g} s={:.6g}'.format(
            self._gamma1, self._gamma2, self._s)


def closed_form_inputs(r1, r2, g3):
    """Get the ClosedFormInputs of a source, gain configuration."""
    return ClosedFormInputs(r1, r2, g3)


def closed_form_rate(inputs, angle_sum, same_sign):
    """Get the closed-form photon-pair rate for a total mixing angle.

    Args:
        inputs: A ClosedFormInputs object.
        angle_sum: theta + vartheta in radians.
        same_sign: Boolean for equal outcome signs (++ or --) as opposed to (+-, -+).
    """
    trig = math.sin(angle_sum) if same_sign else math.cos(angle_sum)
    return 0.25 * (trig ** 2 * inputs.s + inputs.gamma1 * inputs.gamma2)


def closed_form_correlator(inputs, angle_sum):
    """Get the closed-form conditional correlator for a total mixing angle."""
    denominator = inputs.s + 2 * inputs.gamma1 * inputs.gamma2
    if denominator == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    return -math.cos(2 * angle_sum) * inputs.s / denominator


def closed_form_bell(inputs):
    """Get the closed-form Bell value 2 sqrt(2) s / (s + 2 Gamma1 Gamma2)."""
    denominator = inputs.s + 2 * inputs.gamma1 * inputs.gamma2
    if denominator == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    return QUANTUM_BOUND * inputs.s / denominator


def photon_pair_rate(net, a, c, x, z):
    """Get the photon-pair rate of Alice's outcome a and Charlie's outcome c.

    Fourth moments are reduced to second moments of the Gaussian quadratures,
    with the vacuum contribution of each photon-number measurement subtracted.

    Args:
        net: A BellNetwork.
        a: Alice's outcome sign (+1 or -1).
        c: Charlie's outcome sign (+1 or -1).
        x: Alice's setting (0 or 1).
        z: Charlie's setting (0 or 1).
    """
    mode_a, mode_c = net.alice_mode(a, x), net.charlie_mode(c, z)
    cross = (second_moment(mode_a.x, mode_c.x) ** 2 +
             second_moment(mode_a.p, mode_c.p) ** 2 +
             second_moment(mode_a.x, mode_c.p) ** 2 +
             second_moment(mode_a.p, mode_c.x) ** 2)
    vac = 2 * VACUUM_VARIANCE
    alice_n = variance(mode_a.x) + variance(mode_a.p) - vac
    charlie_n = variance(mode_c.x) + variance(mode_c.p) - vac
    return 2 * cross + alice_n * charlie_n


def _correlator_from_rates(rates):
    total = sum(rates.values())
    if total <= 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    return sum(a * c * rate for (a, c), rate in rates.items()) / total


def conditional_correlator(net, x, z):
    """Get Alice and Charlie's correlator conditional on Bob's outcome.

    Args:
        net: A BellNetwork.
        x: Alice's setting (0 or 1).
        z: Charlie's setting (0 or 1).
    """
    if net.config.r1 == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    rates = {(a, c): photon_pair_rate(net, a, c, x, z) for a in SIGNS for c in SIGNS}
    return _correlator_from_rates(rates)


class CorrelatorTable(object):
    """Photon-pair rates, conditional correlators and the Bell value of a network.

    Args:
        rates: A dictionary mapping (a, c, x, z) to the photon-pair rate.
    """

    def __init__(self, rates):
        self._rates = dict(rates)
        self._correlators = {}
        for x, z in SETTINGS:
            sub = {(a, c): self._rates[(a, c, x, z)] for a in SIGNS for c in SIGNS}
            self._correlators[(x, z)] = _correlator_from_rates(sub)

    @property
    def rates(self):
        """Get a dictionary of the rates keyed by (a, c, x, z)."""
        return dict(self._rates)

    @property
    def correlators(self):
        """Get a dictionary of the conditional correlators keyed by (x, z)."""
        return dict(self._correlators)

    @property
    def bell(self):
        """Get E00 + E01 + E10 - E11."""
        return sum(chsh_sign(x, z) * self._correlators[(x, z)] for x, z in SETTINGS)

    @property
    def violated(self):
        """Get a boolean noting whether the Bell value strictly exceeds 2."""
        return self.bell > CLASSICAL_BOUND

    def to_dict(self):
        return {
            'rates': [{'a': a, 'c': c, 'x': x, 'z': z, 'rate': v}
                      for (a, c, x, z), v in sorted(self._rates.items())],
            'correlators': [{'x': x, 'z': z, 'value': self._correlators[(x, z)]}
                            for x, z in SETTINGS],
            'bell': self.bell
        }

    def __repr__(self):
        return 'CorrelatorTable: bell={:.10g}'.format(self.bell)


def correlator_table(net):
    """Get the CorrelatorTable of every rate and setting of a BellNetwork."""
    if net.config.r1 == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    rates = {(a, c, x, z): photon_pair_rate(net, a, c, x, z)
             for x, z in SETTINGS for a in SIGNS for c in SIGNS}
    return CorrelatorTable(rates)


def bell_value(config, method='analytic'):
    """Get the one-way Bell value of a configuration.

    Args:
        config: A BellConfig. Its r1 must be greater than zero.
        method: Text for the evaluation method. Choose from the following:

            * analytic
            * engine

    Returns:
        The Bell value. Values above 2 violate the hybrid bound.
    """
    method = method.lower()
    if method not in METHODS:
        raise ValueError('Unrecognized method "{}". Choose from: {}.'.format(
            method, ', '.join(METHODS)))
    if config.r1 == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')
    if method == 'analytic':
        inputs = closed_form_inputs(config.r1, config.r2, config.g3)
        angles = [config.angle_sum(x, z) for x, z in SETTINGS]
        value = sum(chsh_sign(x, z) * closed_form_correlator(inputs, ang)
                    for (x, z), ang in zip(SETTINGS, angles))
    else:
        value = correlator_table(build_bell_network(None, config)).bell
    _logger.debug('Bell value %s at %r', value, config)
    return value
