"""Optical elements as linear maps on OpticalModes."""
import math

from .quadrature import OpticalMode, QuadratureForm


class DomainError(ValueError):
    """Raised when an element parameter lies outside of its domain."""


def gain_param(value, input_name='gain'):
    """Check that a value is a valid intensity gain (a finite real >= 1).

    Returns:
        The value as a float.
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError('{} must be a number. Got {}.'.format(input_name, value))
    if not math.isfinite(value) or value < 1:
        raise DomainError('{} must be >= 1. Got {}.'.format(input_name, value))
    return value


def squeeze_param(value, input_name='r'):
    """Check that a value is a valid squeezing parameter (a finite real >= 0).

    Returns:
        The value as a float.
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError('{} must be a number. Got {}.'.format(input_name, value))
    if not math.isfinite(value) or value < 0:
        raise DomainError('{} must be >= 0. Got {}.'.format(input_name, value))
    return value


def transmission_param(value, input_name='transmission'):
    """Check that a value is a valid beam splitter transmission in [0, 1]."""
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError('{} must be a number. Got {}.'.format(input_name, value))
    if not 0 <= value <= 1:
        raise DomainError(
            '{} must be between 0 and 1. Got {}.'.format(input_name, value))
    return value


def two_mode_squeeze(registry, r, names=(None, None)):
    """Produce the signal and idler beams of a four-wave mixing source.

    Two fresh seeds (s, v) are allocated and combined as
    x1 = (e^r xs + e^-r xv)/sqrt(2), p1 = (e^-r ps + e^r pv)/sqrt(2),
    x2 = (e^r xs - e^-r xv)/sqrt(2), p2 = (e^-r ps - e^r pv)/sqrt(2).
    At r = 0 the outputs are not the seeds themselves but have vacuum statistics.

    Args:
        registry: The SeedRegistry from which the two seeds are allocated.
        r: The squeezing parameter (gamma * tau), a finite real >= 0.
        names: Optional tuple with the names of the two output modes.

    Returns:
        A tuple with the two output OpticalModes.
    """
    r = squeeze_param(r)
    s, v = registry.allocate(), registry.allocate()
    grow, shrink = math.exp(r) / math.sqrt(2), math.exp(-r) / math.sqrt(2)
    first = OpticalMode(
        QuadratureForm(registry, 'x', {s: grow, v: shrink}),
        QuadratureForm(registry, 'p', {s: shrink, v: grow}), names[0])
    second = OpticalMode(
        QuadratureForm(registry, 'x', {s: grow, v: -shrink}),
        QuadratureForm(registry, 'p', {s: shrink, v: -grow}), names[1])
    return first, second


def parametric_amplify(signal, idler, g3, name=None):
    """Amplify a signal beam with a low-noise phase-insensitive amplifier.

    The output is sqrt(G) a_signal + sqrt(G - 1) a_idler^dagger, so the idler
    enters phase conjugated. The second output port of the amplifier is discarded.

    Args:
        signal: The OpticalMode that is amplified.
        idler: The OpticalMode entering the idler port.
        g3: The intensity gain of the amplifier (>= 1).
        name: Optional text for the name of the output mode.

    Returns:
        The amplified OpticalMode.
    """
    g3 = gain_param(g3, 'gain')
    amp, noise = math.sqrt(g3), math.sqrt(g3 - 1)
    return OpticalMode(amp * signal.x + noise * idler.x,
                       amp * signal.p - noise * idler.p, name)


def beam_split(in1, in2, transmission, name=None):
    """Couple two beams on a beam splitter and keep one output port.

    Args:
        in1: The transmitted OpticalMode.
        in2: The reflected OpticalMode.
        transmission: The intensity transmission epsilon between 0 and 1.
        name: Optional text for the name of the output mode.

    Returns:
        The OpticalMode sqrt(epsilon) in1 - sqrt(1 - epsilon) in2.
    """
    eps = transmission_param(transmission)
    t, rf = math.sqrt(eps), math.sqrt(1 - eps)
    return OpticalMode(t * in1.x - rf * in2.x, t * in1.p - rf * in2.p, name)


def polarization_combine(mh, mv, angle, names=(None, None)):
    """Mix the horizontal and vertical beams of a half-wave plate and PBS.

    Args:
        mh: The horizontally polarized OpticalMode.
        mv: The vertically polarized OpticalMode.
        angle: The mixing angle in radians.
        names: Optional tuple with the names of the (+) and (-) outputs.

    Returns:
        A tuple of two OpticalModes (plus, minus) where
        plus = cos(angle) mh + sin(angle) mv and
        minus = -sin(angle) mh + cos(angle) mv.
    """
    angle = float(angle)
    if not math.isfinite(angle):
        raise DomainError('angle must be finite. Got {}.'.format(angle))
    cos, sin = math.cos(angle), math.sin(angle)
    plus = OpticalMode(cos * mh.x + sin * mv.x, cos * mh.p + sin * mv.p, names[0])
    minus = OpticalMode(-sin * mh.x + cos * mv.x, -sin * mh.p + cos * mv.p, names[1])
    return plus, minus


class EquivalenceReport(object):
    """Coefficients of the amplifier output against the electro-optic signal.

    Args:
        g3: The intensity gain of the amplifier.
    """

    def __init__(self, g3):
        self._g3 = g3

    @property
    def g3(self):
        """Get the amplifier gain."""
        return self._g3

    @property
    def amplifier_coefficients(self):
        """Get the (signal, idler) coefficients sqrt(G3), sqrt(G3 - 1)."""
        return math.sqrt(self._g3), math.sqrt(self._g3 - 1)

    @property
    def electro_optic_coefficients(self):
        """Get the (K, K) coefficients of the homodyne signal with K = sqrt(G3)."""
        k = math.sqrt(self._g3)
        return k, k

    @property
    def deviation(self):
        """Get the ratio of the idler coefficients sqrt(G3 - 1) / sqrt(G3)."""
        return math.sqrt(self._g3 - 1) / math.sqrt(self._g3)

    def to_dict(self):
        return {
            'g3': self._g3,
            'amplifier_coefficients': list(self.amplifier_coefficients),
            'electro_optic_coefficients': list(self.electro_optic_coefficients),
            'deviation': self.deviation
        }

    def __repr__(self):
        return 'EquivalenceReport: G3={} [deviation: {:.6f}]'.format(
            self._g3, self.deviation)


def electro_optic_equivalence(g3):
    """Compare the amplifier output with the combined homodyne currents.

    Args:
        g3: The intensity gain of the amplifier. Must be greater than 1.

    Returns:
        An EquivalenceReport. Its deviation tends to 1 as G3 grows.
    """
    g3 = gain_param(g3, 'G3')
    if g3 == 1:
        raise DomainError('G3 must be > 1 for the electro-optic comparison.')
    return EquivalenceReport(g3)
