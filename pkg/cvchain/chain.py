"""Assemble the all-optical entanglement swapping chain and the Bell network."""
import math

from .quadrature import SeedRegistry, VACUUM_VARIANCE
from .elements import DomainError, gain_param, squeeze_param, two_mode_squeeze, \
    parametric_amplify, beam_split, polarization_combine


class ChainModes(object):
    """The beams of one all-optical entanglement swapping chain.

    Args:
        a1: Alice's beam from the first source.
        a2: Bob's beam from the first source.
        a3: Bob's beam from the second source.
        a4: Charlie's beam from the second source.
        a2_amp: The amplifier output sent from Bob to Charlie.
        a4_out: Charlie's beam after coupling a2_amp with a4.
    """
    __slots__ = ('_a1', '_a2', '_a3', '_a4', '_a2_amp', '_a4_out')

    def __init__(self, a1, a2, a3, a4, a2_amp, a4_out):
        self._a1, self._a2, self._a3, self._a4 = a1, a2, a3, a4
        self._a2_amp, self._a4_out = a2_amp, a4_out

    @property
    def a1(self):
        return self._a1

    @property
    def a2(self):
        return self._a2

    @property
    def a3(self):
        return self._a3

    @property
    def a4(self):
        return self._a4

    @property
    def a2_amp(self):
        return self._a2_amp

    @property
    def a4_out(self):
        return self._a4_out

    @property
    def modes(self):
        """Get a tuple of all six modes of the chain."""
        return (self._a1, self._a2, self._a3, self._a4, self._a2_amp, self._a4_out)

    @property
    def seeds(self):
        """Get a frozenset of every seed referenced by the chain."""
        seeds = set()
        for mode in self.modes:
            seeds.update(mode.x.seeds)
            seeds.update(mode.p.seeds)
        return frozenset(seeds)

    def __repr__(self):
        return 'ChainModes: {}'.format(self._a1.registry)


def build_aoes_chain(registry, r1, r2, g3, prefix='a'):
    """Build one all-optical entanglement swapping chain.

    The first source (r1) gives a1 to Alice and a2 to Bob, the second (r2) gives
    a3 to Bob and a4 to Charlie. Bob amplifies a2 with a3 as idler and sends the
    output to Charlie, who couples it with a4 on a beam splitter of transmission
    1/G3. No large-gain approximation is taken on the second source.

    Args:
        registry: The SeedRegistry that supplies the four vacuum seeds.
        r1: Squeezing parameter of the first source.
        r2: Squeezing parameter of the second source.
        g3: Gain of Bob's amplifier. Must be greater than 1.
        prefix: Text used as the prefix of the mode names. (Default: a).

    Returns:
        A ChainModes object.
    """
    g3 = gain_param(g3, 'G3')
    if g3 <= 1:
        raise DomainError('G3 must be > 1 to build the swapping chain. Got {}.'
                          .format(g3))
    a1, a2 = two_mode_squeeze(
        registry, r1, ('{}1'.format(prefix), '{}2'.format(prefix)))
    a3, a4 = two_mode_squeeze(
        registry, r2, ('{}3'.format(prefix), '{}4'.format(prefix)))
    a2_amp = parametric_amplify(a2, a3, g3, '{}2_amp'.format(prefix))
    a4_out = beam_split(a2_amp, a4, 1 / g3, '{}4_out'.format(prefix))
    return ChainModes(a1, a2, a3, a4, a2_amp, a4_out)


def swap_residual(r2, g3):
    """Get the excess quadrature variance of a4_out over a2.

    This is the term dropped when the second source is taken in the large-gain
    limit. It vanishes as r2 grows.
    """
    r2, g3 = squeeze_param(r2, 'r2'), gain_param(g3, 'G3')
    return VACUUM_VARIANCE * (g3 - 1) / g3 * 2 * math.exp(-2 * r2)


class BellNetwork(object):
    """Two swapping chains with the polarization mixing of Alice and Charlie.

    Alice holds b1 (horizontal) and a1 (vertical); Charlie holds a4_out
    (horizontal) and b4_out (vertical). For each setting the mixed modes are
    stored as (plus, minus) pairs.

    Args:
        chain_a: The ChainModes of the first chain.
        chain_b: The ChainModes of the second chain.
        config: The BellConfig with the angles of the measurement settings.
    """

    def __init__(self, chain_a, chain_b, config):
        self._chain_a = chain_a
        self._chain_b = chain_b
        self._config = config
        self._alice = tuple(
            polarization_combine(chain_b.a1, chain_a.a1, theta,
                                 ('aPlus{}'.format(x), 'aMinus{}'.format(x)))
            for x, theta in enumerate(config.thetas))
        self._charlie = tuple(
            polarization_combine(chain_a.a4_out, chain_b.a4_out, vartheta,
                                 ('cPlus{}'.format(z), 'cMinus{}'.format(z)))
            for z, vartheta in enumerate(config.varthetas))

    @property
    def chain_a(self):
        return self._chain_a

    @property
    def chain_b(self):
        return self._chain_b

    @property
    def config(self):
        return self._config

    @property
    def registry(self):
        return self._chain_a.a1.registry

    def alice_modes(self, x):
        """Get Alice's (plus, minus) modes for setting x."""
        return self._alice[x]

    def charlie_modes(self, z):
        """Get Charlie's (plus, minus) modes for setting z."""
        return self._charlie[z]

    def measured_modes(self, x, z):
        """Get the four measured modes (aPlus, aMinus, cPlus, cMinus) of a setting."""
        return self._alice[x] + self._charlie[z]

    def alice_mode(self, a, x):
        """Get Alice's mode for outcome sign a (+1 or -1) and setting x."""
        return self._alice[x][0 if a > 0 else 1]

    def charlie_mode(self, c, z):
        """Get Charlie's mode for outcome sign c (+1 or -1) and setting z."""
        return self._charlie[z][0 if c > 0 else 1]

    @property
    def aPlus(self):
        return self._alice[0][0]

    @property
    def aMinus(self):
        return self._alice[0][1]

    @property
    def cPlus(self):
        return self._charlie[0][0]

    @property
    def cMinus(self):
        return self._charlie[0][1]

    def __repr__(self):
        return 'BellNetwork: {}'.format(self._config)


def build_bell_network(registry, config):
    """Build the two-chain Bell network for a BellConfig.

    Args:
        registry: A SeedRegistry for the eight vacuum seeds. If None, a new
            registry is created.
        config: A BellConfig with the source, gain and angle settings.

    Returns:
        A BellNetwork.
    """
    registry = registry if registry is not None else SeedRegistry('bell')
    chain_a = build_aoes_chain(registry, config.r1, config.r2, config.g3, 'a')
    chain_b = build_aoes_chain(registry, config.r1, config.r2, config.g3, 'b')
    return BellNetwork(chain_a, chain_b, config)
