"""Linear quadrature forms over independent vacuum seeds.

Every beam is carried as the Heisenberg representation of its two quadratures,
each one a real linear combination of vacuum seed quadratures. Seeds are
zero-mean, mutually uncorrelated and have variance ``VACUUM_VARIANCE``, so all
second moments reduce to coefficient inner products.
"""
import math

import numpy as np

VACUUM_VARIANCE = 0.25
SECTORS = ('x', 'p')


class RegistryMismatchError(ValueError):
    """Raised when forms built on different SeedRegistries are combined."""


class SeedRegistry(object):
    """Allocator of independent vacuum seeds.

    Args:
        name: Optional text to identify the registry in messages. (Default: None).
    """
    __slots__ = ('_name', '_count')

    def __init__(self, name=None):
        self._name = name
        self._count = 0

    @property
    def name(self):
        """Get the name of the registry."""
        return self._name

    @property
    def count(self):
        """Get the number of seeds allocated so far."""
        return self._count

    def allocate(self):
        """Allocate a fresh seed and return its integer identifier."""
        seed = self._count
        self._count += 1
        return seed

    def __len__(self):
        return self._count

    def __repr__(self):
        return 'SeedRegistry: {} [seeds: {}]'.format(self._name, self._count)


class QuadratureForm(object):
    """A linear form over the x or p quadratures of the seeds of a registry.

    Args:
        registry: The SeedRegistry that owns the seeds referenced by the form.
        sector: Text for the quadrature sector of the form. Either 'x' or 'p'.
        coefficients: A dictionary mapping seed identifiers to real coefficients.
            Absent seeds have a coefficient of zero.
    """
    __slots__ = ('_registry', '_sector', '_coefficients')

    def __init__(self, registry, sector, coefficients=None):
        assert sector in SECTORS, \
            'Invalid quadrature sector "{}". Choose from: x, p.'.format(sector)
        self._registry = registry
        self._sector = sector
        coeffs = {}
        for seed, value in (coefficients or {}).items():
            value = float(value)
            if not math.isfinite(value):
                raise ValueError(
                    'Coefficient of seed {} is not finite: {}.'.format(seed, value))
            if not 0 <= seed < registry.count:
                raise ValueError(
                    'Seed {} is not allocated in {}.'.format(seed, registry))
            if value != 0:
                coeffs[seed] = value
        self._coefficients = coeffs

    @property
    def registry(self):
        """Get the SeedRegistry of this form."""
        return self._registry

    @property
    def sector(self):
        """Get the quadrature sector of this form ('x' or 'p')."""
        return self._sector

    @property
    def coefficients(self):
        """Get a copy of the dictionary of non-zero seed coefficients."""
        return dict(self._coefficients)

    @property
    def seeds(self):
        """Get a sorted tuple of the seeds with a non-zero coefficient."""
        return tuple(sorted(self._coefficients))

    def coefficient(self, seed):
        """Get the coefficient of a seed (zero if the seed is absent)."""
        return self._coefficients.get(seed, 0.0)

    def to_array(self, size=None):
        """Get the coefficients as a dense numpy array indexed by seed.

        Args:
            size: Optional length of the output. (Default: the registry count).
        """
        size = self._registry.count if size is None else size
        values = np.zeros(size)
        for seed, value in self._coefficients.items():
            values[seed] = value
        return values

    def _check_compatible(self, other):
        if not isinstance(other, QuadratureForm):
            raise TypeError(
                'Expected QuadratureForm. Got {}.'.format(type(other).__name__))
        if other._registry is not self._registry:
            raise RegistryMismatchError(
                'Quadrature forms belong to different seed registries.')
        if other._sector != self._sector:
            raise ValueError(
                'Cannot add an {}-form to a {}-form.'.format(
                    other._sector, self._sector))

    def __add__(self, other):
        self._check_compatible(other)
        coeffs = dict(self._coefficients)
        for seed, value in other._coefficients.items():
            coeffs[seed] = coeffs.get(seed, 0.0) + value
        return QuadratureForm(self._registry, self._sector, coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self * -1.0

    def __mul__(self, scalar):
        scalar = float(scalar)
        coeffs = {s: v * scalar for s, v in self._coefficients.items()}
        return QuadratureForm(self._registry, self._sector, coeffs)

    __rmul__ = __mul__

    def __repr__(self):
        terms = ' '.join('{:+.6g}*{}{}'.format(v, self._sector, s)
                         for s, v in sorted(self._coefficients.items()))
        return 'QuadratureForm: {}'.format(terms or '0')


class OpticalMode(object):
    """One optical beam as a pair of x and p quadrature forms.

    Args:
        x: The QuadratureForm of the amplitude quadrature (sector 'x').
        p: The QuadratureForm of the phase quadrature (sector 'p').
        name: Optional text for the name of the mode. (Default: None).
    """
    __slots__ = ('_x', '_p', '_name')

    def __init__(self, x, p, name=None):
        assert x.sector == 'x' and p.sector == 'p', \
            'OpticalMode requires an x-form and a p-form.'
        if x.registry is not p.registry:
            raise RegistryMismatchError(
                'The x and p forms of a mode must share one seed registry.')
        self._x = x
        self._p = p
        self._name = name

    @property
    def x(self):
        """Get the amplitude quadrature form."""
        return self._x

    @property
    def p(self):
        """Get the phase quadrature form."""
        return self._p

    @property
    def name(self):
        """Get the name of the mode."""
        return self._name

    @property
    def registry(self):
        """Get the SeedRegistry of the mode."""
        return self._x.registry

    def rename(self, name):
        """Get a copy of this mode with a new name."""
        return OpticalMode(self._x, self._p, name)

    def scale(self, x_factor, p_factor=None):
        """Get this mode with each sector multiplied by a real factor.

        Args:
            x_factor: Factor applied to the x sector.
            p_factor: Factor applied to the p sector. (Default: x_factor).
        """
        p_factor = x_factor if p_factor is None else p_factor
        return OpticalMode(self._x * x_factor, self._p * p_factor, self._name)

    def __add__(self, other):
        return OpticalMode(self._x + other._x, self._p + other._p)

    def __sub__(self, other):
        return OpticalMode(self._x - other._x, self._p - other._p)

    def __neg__(self):
        return OpticalMode(-self._x, -self._p, self._name)

    def __mul__(self, scalar):
        return OpticalMode(self._x * scalar, self._p * scalar, self._name)

    __rmul__ = __mul__

    def __repr__(self):
        return 'OpticalMode: {}'.format(self._name or '<unnamed>')


def vacuum_mode(registry, name=None):
    """Allocate a fresh vacuum mode on a registry.

    Args:
        registry: The SeedRegistry from which the seed is allocated.
        name: Optional text for the name of the mode.

    Returns:
        An OpticalMode whose x and p each reference the new seed with coefficient 1.
    """
    seed = registry.allocate()
    return OpticalMode(QuadratureForm(registry, 'x', {seed: 1.0}),
                       QuadratureForm(registry, 'p', {seed: 1.0}), name)


def second_moment(f, g, same_sector=None):
    """Get the symmetrized second moment of two quadrature forms.

    Args:
        f: A QuadratureForm.
        g: A QuadratureForm on the same registry.
        same_sector: Optional boolean stating whether the two forms share a
            sector. It must agree with the sector tags of the forms. When
            None, the tags alone decide.

    Returns:
        VACUUM_VARIANCE times the coefficient inner product of the forms when
        they share a sector. Zero for an x-form with a p-form.
    """
    if f.registry is not g.registry:
        raise RegistryMismatchError(
            'Cannot take a moment of forms from different seed registries.')
    tagged = f.sector == g.sector
    if same_sector is not None and bool(same_sector) != tagged:
        raise ValueError(
            'same_sector={} contradicts the sectors of the forms ({}, {}).'.format(
                same_sector, f.sector, g.sector))
    if not tagged:
        return 0.0
    return VACUUM_VARIANCE * float(np.dot(f.to_array(), g.to_array()))


def variance(form):
    """Get the second moment of a quadrature form with itself."""
    return second_moment(form, form)


def commutator_norm(mode):
    """Get the canonical-commutation normalization of a mode.

    This is the sum over seeds of the x coefficient times the p coefficient,
    which equals one for every physical mode.
    """
    x_coeffs, p_coeffs = mode.x._coefficients, mode.p._coefficients
    return math.fsum(value * p_coeffs.get(seed, 0.0)
                     for seed, value in x_coeffs.items())
