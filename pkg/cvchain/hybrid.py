"""Certification of the bound 2 over hybrid classical / no-signaling models.

One source of the chain is a classical variable lambda and the other is only
constrained by no-signaling, while Bob's outcome b may be communicated one way.
The party attached only to the classical source is reduced to its four
deterministic strategies; the no-signaling party ranges over the polytope of
behaviors conditioned on b.
"""
import itertools
import logging

import numpy as np
from scipy.optimize import linprog

from .bell import chsh_sign

_logger = logging.getLogger(__name__)

SCENARIOS = ('AB', 'BC')
OUTCOMES = (1, -1)
NS_TOLERANCE = 1e-12
NORMALIZATION_TOLERANCE = 1e-9


class BehaviorValidationError(ValueError):
    """Raised for malformed no-signaling behaviors or hybrid models."""


class DeterministicStrategy(object):
    """A deterministic response of a party to its two settings.

    Args:
        outputs: A tuple with the +1 / -1 output for setting 0 and setting 1.
    """
    __slots__ = ('_outputs',)

    def __init__(self, outputs):
        outputs = tuple(int(o) for o in outputs)
        if len(outputs) != 2 or any(o not in OUTCOMES for o in outputs):
            raise BehaviorValidationError(
                'Strategy outputs must be two values of +1 or -1. Got {}.'.format(
                    outputs))
        self._outputs = outputs

    @property
    def outputs(self):
        return self._outputs

    def __call__(self, setting):
        return self._outputs[setting]

    def __eq__(self, other):
        return isinstance(other, DeterministicStrategy) and \
            other._outputs == self._outputs

    def __hash__(self):
        return hash(self._outputs)

    def __repr__(self):
        return 'DeterministicStrategy: {}'.format(self._outputs)


def deterministic_strategies():
    """Get the four deterministic strategies of a party with two settings."""
    return [DeterministicStrategy(o) for o in itertools.product(OUTCOMES, repeat=2)]


class NSBehavior(object):
    """A joint behavior P(b, o | s) of Bob and a party with setting s.

    Bob has no setting, so no-signaling requires that his marginal P(b | s)
    does not depend on s.

    Args:
        probs: An array-like of shape (B, 2, 2) indexed [b, o, s] where o = 0
            is outcome +1 and o = 1 is outcome -1.
    """
    __slots__ = ('_probs',)

    def __init__(self, probs):
        probs = np.array(probs, dtype=float)
        if probs.ndim != 3 or probs.shape[1:] != (2, 2) or probs.shape[0] < 1:
            raise BehaviorValidationError(
                'Behavior must have shape (B, 2, 2). Got {}.'.format(probs.shape))
        if not np.all(np.isfinite(probs)) or np.any(probs < 0):
            raise BehaviorValidationError('Behavior probabilities must be >= 0.')
        totals = probs.sum(axis=(0, 1))
        if np.any(np.abs(totals - 1) > NORMALIZATION_TOLERANCE):
            raise BehaviorValidationError(
                'Behavior is not normalized for every setting: {}.'.format(totals))
        bob = probs.sum(axis=1)
        if np.any(np.abs(bob[:, 0] - bob[:, 1]) > NS_TOLERANCE):
            raise BehaviorValidationError(
                'Behavior signals: the marginal of b depends on the setting.')
        probs.setflags(write=False)
        self._probs = probs

    @classmethod
    def from_conditionals(cls, p_b, p_plus):
        """Create a behavior from Bob's marginal and conditional responses.

        Args:
            p_b: A list of B probabilities for Bob's outcomes.
            p_plus: An array-like of shape (B, 2) with P(o = +1 | s, b).
        """
        p_b = np.asarray(p_b, dtype=float)
        p_plus = np.asarray(p_plus, dtype=float)
        probs = np.stack([p_b[:, None] * p_plus, p_b[:, None] * (1 - p_plus)], axis=1)
        return cls(probs)

    @property
    def probs(self):
        """Get the read-only array of probabilities indexed [b, o, s]."""
        return self._probs

    @property
    def b_alphabet(self):
        return self._probs.shape[0]

    def bob_marginal(self):
        """Get Bob's marginal P(b) as an array."""
        return self._probs[:, :, 0].sum(axis=1)

    def party_marginal(self):
        """Get the other party's marginal P(o | s) as an array indexed [o, s]."""
        return self._probs.sum(axis=0)

    def expectation(self, setting):
        """Get the unconditioned expectation of the party's output for a setting."""
        marg = self.party_marginal()
        return float(marg[0, setting] - marg[1, setting])

    def conditional_expectations(self, b):
        """Get the party's expectation for each setting conditioned on outcome b."""
        p_b = self.bob_marginal()[b]
        if p_b <= 0:
            raise BehaviorValidationError('Outcome b={} has zero probability.'.format(b))
        sub = self._probs[b]
        return tuple(float((sub[0, s] - sub[1, s]) / p_b) for s in (0, 1))

    def relabel(self, permutation):
        """Get the behavior with Bob's outcomes permuted."""
        return NSBehavior(self._probs[list(permutation)])

    def __repr__(self):
        return 'NSBehavior: B={}'.format(self.b_alphabet)


class HybridScenario(object):
    """Which source of the chain is classical, and the size of Bob's alphabet.

    Args:
        which_side_classical: Text for the classical source. Choose from:

            * AB - Alice and Bob share lambda; Charlie is on the no-signaling source.
            * BC - Bob and Charlie share lambda; Alice is on the no-signaling source.

        b_alphabet: Integer for the number of Bob's outcomes (>= 1). (Default: 2).
    """

    def __init__(self, which_side_classical='AB', b_alphabet=2):
        self.which_side_classical = which_side_classical
        self.b_alphabet = b_alphabet

    @property
    def which_side_classical(self):
        return self._side

    @which_side_classical.setter
    def which_side_classical(self, value):
        value = str(value).upper()
        if value not in SCENARIOS:
            raise ValueError('Unrecognized scenario "{}". Choose from: ab, bc.'
                             .format(value))
        self._side = value

    @property
    def b_alphabet(self):
        return self._b_alphabet

    @b_alphabet.setter
    def b_alphabet(self, value):
        if isinstance(value, bool) or not float(value).is_integer():
            raise ValueError(
                'b_alphabet must be an integer. Got {}.'.format(value))
        value = int(value)
        if value < 1:
            raise ValueError('b_alphabet must be >= 1. Got {}.'.format(value))
        self._b_alphabet = value

    def weights(self, strategy):
        """Get the Bell coefficients of the no-signaling party's two settings.

        Args:
            strategy: The DeterministicStrategy of the classical-only party.
        """
        if self._side == 'AB':
            return tuple(sum(chsh_sign(x, s) * strategy(x) for x in (0, 1))
                         for s in (0, 1))
        return tuple(sum(chsh_sign(s, z) * strategy(z) for z in (0, 1))
                     for s in (0, 1))

    def __repr__(self):
        return 'HybridScenario: {} classical [B={}]'.format(
            self._side, self._b_alphabet)


def conditional_bell(scenario, strategy, behavior, b):
    """Get the Bell value conditioned on b for one hybrid model instance."""
    w = scenario.weights(strategy)
    expectations = behavior.conditional_expectations(b)
    return sum(w_s * e_s for w_s, e_s in zip(w, expectations))


def _vertex_max(weights):
    """Maximize over the deterministic vertices of the conditional polytope."""
    return max(sum(w * o for w, o in zip(weights, outs))
               for outs in itertools.product(OUTCOMES, repeat=2))


def _lp_max(weights, b_alphabet, target_b):
    """Maximize the conditional Bell value with a linear program.

    The ratio to P(b) is linearized by scaling every probability with
    t = 1 / P(target_b). Variables are y[b, o, s] followed by t.
    """
    n_y = b_alphabet * 4

    def idx(b, o, s):
        return b * 4 + o * 2 + s

    cost = np.zeros(n_y + 1)
    for s in (0, 1):
        for o, sign in enumerate(OUTCOMES):
            cost[idx(target_b, o, s)] = -weights[s] * sign
    a_eq, b_eq = [], []
    for s in (0, 1):  # normalization, scaled by t
        row = np.zeros(n_y + 1)
        for b in range(b_alphabet):
            for o in (0, 1):
                row[idx(b, o, s)] = 1
        row[-1] = -1
        a_eq.append(row)
        b_eq.append(0)
    for b in range(b_alphabet):  # no-signaling of Bob's marginal
        row = np.zeros(n_y + 1)
        for o in (0, 1):
            row[idx(b, o, 0)] = 1
            row[idx(b, o, 1)] = -1
        a_eq.append(row)
        b_eq.append(0)
    row = np.zeros(n_y + 1)
    for o in (0, 1):
        row[idx(target_b, o, 0)] = 1
    a_eq.append(row)
    b_eq.append(1)
    result = linprog(cost, A_eq=np.array(a_eq), b_eq=np.array(b_eq),
                     bounds=[(0, None)] * (n_y + 1), method='highs')
    if not result.success:
        raise RuntimeError('Hybrid bound LP failed: {} (status {}).'.format(
            result.message, result.status))
    return -result.fun


def hybrid_bound_table(scenario, method='vertex'):
    """Get the maximal conditional Bell value for each of Bob's outcomes.

    Args:
        scenario: A HybridScenario.
        method: Text for the solution method. Choose from: vertex, lp.

    Returns:
        A list with one maximum per outcome b.
    """
    method = method.lower()
    if method not in ('vertex', 'lp'):
        raise ValueError('Unrecognized method "{}". Choose from: vertex, lp.'
                         .format(method))
    table = []
    for b in range(scenario.b_alphabet):
        best = None
        for strategy in deterministic_strategies():
            w = scenario.weights(strategy)
            value = _vertex_max(w) if method == 'vertex' else \
                _lp_max(w, scenario.b_alphabet, b)
            best = value if best is None else max(best, value)
        table.append(best)
    _logger.debug('Hybrid bound table for %r: %s', scenario, table)
    return table


def max_bell_hybrid(scenario, method='vertex'):
    """Get the maximal Bell value over hybrid models of a scenario.

    Args:
        scenario: A HybridScenario.
        method: Text for the solution method. Choose from: vertex, lp.

    Returns:
        The maximum over strategies, behaviors and outcomes b, which is 2.
    """
    return max(hybrid_bound_table(scenario, method))


class IndependenceReport(object):
    """Alice-Charlie correlators against the product of their expectations.

    Args:
        joint: Array of <A_x C_z> indexed [x, z].
        product: Array of <A_x><C_z> indexed [x, z].
    """

    def __init__(self, joint, product):
        self._joint = np.asarray(joint)
        self._product = np.asarray(product)

    @property
    def joint(self):
        return self._joint

    @property
    def product(self):
        return self._product

    @property
    def max_deviation(self):
        return float(np.max(np.abs(self._joint - self._product)))

    def to_dict(self):
        return {'joint': self._joint.tolist(), 'product': self._product.tolist(),
                'max_deviation': self.max_deviation}

    def __repr__(self):
        return 'IndependenceReport: max deviation {:.3g}'.format(self.max_deviation)


def independence_check(mu, alice, behaviors):
    """Check that Alice and Charlie factorize in the Alice-Bob classical model.

    Args:
        mu: A list with the probability of each value of lambda.
        alice: An array-like of shape (2, L) with P(a = +1 | x, lambda).
        behaviors: An NSBehavior of Bob and Charlie, or a list with one
            NSBehavior per value of lambda. Per-lambda behaviors must leave
            Charlie's marginal unchanged.

    Returns:
        An IndependenceReport.
    """
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or np.any(mu < 0) or abs(mu.sum() - 1) > NORMALIZATION_TOLERANCE:
        raise BehaviorValidationError('mu must be a normalized 1D distribution.')
    alice = np.asarray(alice, dtype=float)
    if alice.shape != (2, mu.size) or np.any(alice < 0) or np.any(alice > 1):
        raise BehaviorValidationError(
            'alice must hold probabilities of shape (2, {}). Got {}.'.format(
                mu.size, alice.shape))
    if isinstance(behaviors, NSBehavior):
        behaviors = [behaviors] * mu.size
    behaviors = list(behaviors)
    if len(behaviors) != mu.size:
        raise BehaviorValidationError(
            'Expected {} behaviors. Got {}.'.format(mu.size, len(behaviors)))
    ref = behaviors[0].party_marginal()
    for beh in behaviors[1:]:
        if np.any(np.abs(beh.party_marginal() - ref) > NS_TOLERANCE):
            raise BehaviorValidationError(
                'Charlie\'s marginal depends on lambda, which signals from Bob.')

    e_alice = 2 * alice - 1  # [x, lambda]
    e_charlie = np.array([[beh.expectation(z) for beh in behaviors]
                          for z in (0, 1)])  # [z, lambda]
    joint = np.einsum('l,xl,zl->xz', mu, e_alice, e_charlie)
    product = np.outer(e_alice @ mu, e_charlie @ mu)
    return IndependenceReport(joint, product)


def hybrid_gap(quantum_value, scenario=None):
    """Get how far a quantum Bell value exceeds the hybrid maximum."""
    scenario = scenario or HybridScenario()
    return quantum_value - max_bell_hybrid(scenario)

