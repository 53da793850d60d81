"""Two-mode correlation blocks and the Duan separability criterion."""
import math

import numpy as np

from .quadrature import VACUUM_VARIANCE, SeedRegistry, second_moment, variance
from .elements import DomainError, gain_param, squeeze_param, two_mode_squeeze, \
    parametric_amplify

SEPARABILITY_TOLERANCE = 1e-12


class CriterionUndefinedError(DomainError):
    """Raised when the Duan weight cannot be computed for a correlation block."""


class CovarianceBlock(object):
    """The 4x4 correlation matrix of two modes A and B in vacuum units of 1/4.

    The matrix is ordered (x_A, p_A, x_B, p_B) and only the diagonal and the
    x-x and p-p cross terms are non-zero.

    Args:
        n1: Variance of x_A.
        n2: Variance of p_A.
        m1: Variance of x_B.
        m2: Variance of p_B.
        c1: Covariance of x_A with x_B.
        c2: Covariance of p_A with p_B.
    """
    __slots__ = ('_n1', '_n2', '_m1', '_m2', '_c1', '_c2')

    def __init__(self, n1, n2, m1, m2, c1, c2):
        self._n1, self._n2 = float(n1), float(n2)
        self._m1, self._m2 = float(m1), float(m2)
        self._c1, self._c2 = float(c1), float(c2)

    @property
    def n1(self):
        return self._n1

    @property
    def n2(self):
        return self._n2

    @property
    def m1(self):
        return self._m1

    @property
    def m2(self):
        return self._m2

    @property
    def c1(self):
        return self._c1

    @property
    def c2(self):
        return self._c2

    @property
    def matrix(self):
        """Get the block as a 4x4 numpy array in (x_A, p_A, x_B, p_B) order."""
        return np.array([
            (self._n1, 0.0, self._c1, 0.0),
            (0.0, self._n2, 0.0, self._c2),
            (self._c1, 0.0, self._m1, 0.0),
            (0.0, self._c2, 0.0, self._m2)
        ])

    def swap_sectors(self):
        """Get the block with the roles of the x and p sectors exchanged."""
        return CovarianceBlock(
            self._n2, self._n1, self._m2, self._m1, self._c2, self._c1)

    def to_dict(self):
        return {'n1': self._n1, 'n2': self._n2, 'm1': self._m1,
                'm2': self._m2, 'c1': self._c1, 'c2': self._c2}

    def __repr__(self):
        return 'CovarianceBlock: n=({:.6g}, {:.6g}) m=({:.6g}, {:.6g}) ' \
            'c=({:.6g}, {:.6g})'.format(self._n1, self._n2, self._m1, self._m2,
                                        self._c1, self._c2)


class DuanReport(object):
    """Result of the Duan criterion for one correlation block.

    Args:
        a_sq: The weight a^2 of the EPR-like operators.
        u_var: Variance of u = a x_A - sign(c1) x_B / a.
        v_var: Variance of v = a p_A - sign(c2) p_B / a.
    """
    __slots__ = ('_a_sq', '_u_var', '_v_var')

    def __init__(self, a_sq, u_var, v_var):
        self._a_sq = a_sq
        self._u_var = u_var
        self._v_var = v_var

    @property
    def a_sq(self):
        return self._a_sq

    @property
    def u_var(self):
        return self._u_var

    @property
    def v_var(self):
        return self._v_var

    @property
    def bound(self):
        """Get the separable bound a^2 / 2 + 1 / (2 a^2)."""
        return self._a_sq / 2 + 1 / (2 * self._a_sq)

    @property
    def margin(self):
        """Get u_var + v_var - bound."""
        return self._u_var + self._v_var - self.bound

    @property
    def separable(self):
        """Get a boolean noting whether the pair satisfies the criterion."""
        return self.margin >= -SEPARABILITY_TOLERANCE

    def to_dict(self):
        return {'a_sq': self._a_sq, 'u_var': self._u_var, 'v_var': self._v_var,
                'bound': self.bound, 'margin': self.margin,
                'separable': self.separable}

    def __repr__(self):
        return 'DuanReport: margin={:.6g} [{}]'.format(
            self.margin, 'separable' if self.separable else 'entangled')


def correlation_block(mode_a, mode_b):
    """Get the CovarianceBlock of two modes from their engine moments."""
    return CovarianceBlock(
        variance(mode_a.x), variance(mode_a.p),
        variance(mode_b.x), variance(mode_b.p),
        second_moment(mode_a.x, mode_b.x), second_moment(mode_a.p, mode_b.p))


def duan_margin(block):
    """Evaluate the Duan criterion on a correlation block.

    Args:
        block: A CovarianceBlock with n1 and m1 above the vacuum variance.

    Returns:
        A DuanReport.
    """
    n_ex, m_ex = block.n1 - VACUUM_VARIANCE, block.m1 - VACUUM_VARIANCE
    if n_ex <= 0 or m_ex <= 0:
        raise CriterionUndefinedError(
            'criterion-undefined: n1={} and m1={} must exceed {}.'.format(
                block.n1, block.m1, VACUUM_VARIANCE))
    a_sq = math.sqrt(m_ex / n_ex)
    s1 = -1.0 if block.c1 < 0 else 1.0
    s2 = -1.0 if block.c2 < 0 else 1.0
    u_var = a_sq * block.n1 + block.m1 / a_sq - 2 * s1 * block.c1
    v_var = a_sq * block.n2 + block.m2 / a_sq - 2 * s2 * block.c2
    return DuanReport(a_sq, u_var, v_var)


def lemma1_sign(r1, r2, g3):
    """Get the factored sign expression for the separability of a1 and a2'.

    Its sign matches the sign of the Duan margin of (a1, a2'); the magnitudes differ.
    """
    c1, c2 = math.cosh(2 * squeeze_param(r1, 'r1')), \
        math.cosh(2 * squeeze_param(r2, 'r2'))
    return (c1 - 1) * (gain_param(g3, 'G3') * (c2 - 1) - (c2 + 1))


def lemma1_pairs(r1, r2, g3):
    """Get the Duan reports of the two pairs shared around Bob's amplifier.

    Args:
        r1: Squeezing parameter of the source of a1 and a2.
        r2: Squeezing parameter of the source of a3 and a4.
        g3: Gain of the amplifier acting on (a2, a3).

    Returns:
        A tuple of two DuanReports for (a1, a2') and (a2', a4).
    """
    registry = SeedRegistry('lemma1')
    a1, a2 = two_mode_squeeze(registry, r1, ('a1', 'a2'))
    a3, a4 = two_mode_squeeze(registry, r2, ('a3', 'a4'))
    a2_amp = parametric_amplify(a2, a3, g3, 'a2_amp')
    return (duan_margin(correlation_block(a1, a2_amp)),
            duan_margin(correlation_block(a2_amp, a4)))


def epr_variance_sum(mode_a, mode_b):
    """Get the quadrature-difference plus quadrature-sum variance of two modes.

    Returns:
        A tuple with the value of <(x_A - x_B)^2> + <(p_A + p_B)^2> and a boolean
        noting whether it is below the vacuum level of 1 (inseparable).
    """
    diff = mode_a.x - mode_b.x
    total = mode_a.p + mode_b.p
    value = variance(diff) + variance(total)
    return value, value < 4 * VACUUM_VARIANCE
