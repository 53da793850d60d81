"""Test the hybrid classical / no-signaling bound."""
import itertools

import numpy as np
import pytest

from cvchain.bell import BellConfig, bell_value
from cvchain.hybrid import BehaviorValidationError, DeterministicStrategy, \
    deterministic_strategies, NSBehavior, HybridScenario, conditional_bell, \
    hybrid_bound_table, max_bell_hybrid, independence_check, hybrid_gap


def _random_behavior(rng, b_alphabet):
    p_b = rng.dirichlet(np.ones(b_alphabet))
    p_plus = rng.uniform(0, 1, size=(b_alphabet, 2))
    return NSBehavior.from_conditionals(p_b, p_plus)


def test_deterministic_strategies():
    """Test the four deterministic strategies."""
    strategies = deterministic_strategies()
    assert len(strategies) == len(set(strategies)) == 4
    assert DeterministicStrategy((1, -1))(1) == -1
    with pytest.raises(BehaviorValidationError):
        DeterministicStrategy((1, 0))


def test_ns_behavior_validation():
    """Test that malformed or signaling behaviors are rejected."""
    with pytest.raises(BehaviorValidationError):
        NSBehavior(np.full((2, 2, 3), 1 / 6))
    with pytest.raises(BehaviorValidationError):
        NSBehavior([[[0.5, 0.5], [0.6, 0.5]]])
    with pytest.raises(BehaviorValidationError):
        NSBehavior([[[-0.1, 0.5], [1.1, 0.5]]])
    signaling = [[[0.5, 0.2], [0.0, 0.0]], [[0.0, 0.3], [0.5, 0.5]]]
    with pytest.raises(BehaviorValidationError):
        NSBehavior(signaling)


def test_ns_behavior_marginals():
    """Test that accepted behaviors keep Bob's marginal independent of the setting."""
    rng = np.random.default_rng(7)
    for b_alphabet in (1, 2, 3, 4):
        behavior = _random_behavior(rng, b_alphabet)
        bob = behavior.probs.sum(axis=1)
        assert np.max(np.abs(bob[:, 0] - bob[:, 1])) <= 1e-12
        assert behavior.bob_marginal().sum() == pytest.approx(1)
        assert behavior.b_alphabet == b_alphabet


def test_conditional_bell_vertex():
    """Test the optimum of a constant strategy."""
    scenario = HybridScenario('AB')
    strategy = DeterministicStrategy((1, 1))
    behavior = NSBehavior.from_conditionals([0.5, 0.5], [[1, 1], [0, 0]])
    assert behavior.conditional_expectations(0) == (1, 1)
    assert conditional_bell(scenario, strategy, behavior, 0) == pytest.approx(2)
    assert conditional_bell(scenario, strategy, behavior, 1) == pytest.approx(-2)


def test_max_bell_hybrid():
    """Test that the hybrid maximum is 2 for both scenarios and both methods."""
    for side in ('AB', 'BC'):
        for b_alphabet in (1, 2, 3, 4):
            scenario = HybridScenario(side, b_alphabet)
            for method in ('vertex', 'lp'):
                assert max_bell_hybrid(scenario, method) == pytest.approx(2, abs=1e-9)


def test_hybrid_bound_table():
    """Test that every outcome of Bob reaches the same maximum."""
    scenario = HybridScenario('bc', 3)
    assert scenario.which_side_classical == 'BC'
    for method in ('vertex', 'lp'):
        table = hybrid_bound_table(scenario, method)
        assert len(table) == 3
        assert table == pytest.approx([2, 2, 2], abs=1e-9)
    with pytest.raises(ValueError):
        hybrid_bound_table(scenario, 'simplex')
    with pytest.raises(ValueError):
        HybridScenario('AC')
    with pytest.raises(ValueError):
        HybridScenario('AB', 0)
    with pytest.raises(ValueError, match='must be an integer'):
        HybridScenario('AB', 2.7)
    with pytest.raises(ValueError):
        HybridScenario('BC', True)
    assert HybridScenario('AB', 3.0).b_alphabet == 3


def test_random_models_below_bound():
    """Test that sampled hybrid models never exceed the bound."""
    rng = np.random.default_rng(11)
    for side in ('AB', 'BC'):
        scenario = HybridScenario(side, 3)
        for _ in range(50):
            behavior = _random_behavior(rng, 3)
            for strategy in deterministic_strategies():
                for b in range(3):
                    assert conditional_bell(scenario, strategy, behavior, b) <= 2 + 1e-12


def test_relabel_invariance():
    """Test that relabeling Bob's outcomes permutes the conditional values."""
    rng = np.random.default_rng(3)
    scenario = HybridScenario('AB', 3)
    behavior = _random_behavior(rng, 3)
    strategy = DeterministicStrategy((1, -1))
    perm = (2, 0, 1)
    relabeled = behavior.relabel(perm)
    for new_b, old_b in enumerate(perm):
        assert conditional_bell(scenario, strategy, relabeled, new_b) == \
            pytest.approx(conditional_bell(scenario, strategy, behavior, old_b))
    assert max(hybrid_bound_table(scenario)) == max_bell_hybrid(scenario)


def test_independence_balanced():
    """Test a balanced Alice strategy gives vanishing correlators."""
    behavior = NSBehavior.from_conditionals([0.3, 0.7], [[0.9, 0.2], [0.4, 0.6]])
    report = independence_check([0.5, 0.5], [[1, 0], [1, 0]], behavior)
    assert np.allclose(report.joint, 0, atol=1e-15)
    assert np.allclose(report.product, 0, atol=1e-15)
    assert report.max_deviation <= 1e-15


def test_independence_deterministic_lambda():
    """Test that a point mass on lambda factorizes exactly."""
    behavior = NSBehavior.from_conditionals([1.0], [[0.8, 0.1]])
    report = independence_check([0, 1, 0], [[0.2, 1, 0.5], [0.7, 0, 0.5]], behavior)
    assert report.max_deviation <= 1e-12
    assert report.to_dict()['max_deviation'] == report.max_deviation


def test_independence_random_models():
    """Test factorization over random hybrid model instances."""
    rng = np.random.default_rng(5)
    for n_lambda, b_alphabet in itertools.product((1, 2, 5), (1, 2, 4)):
        mu = rng.dirichlet(np.ones(n_lambda))
        alice = rng.uniform(0, 1, size=(2, n_lambda))
        behavior = _random_behavior(rng, b_alphabet)
        report = independence_check(mu, alice, behavior)
        assert report.max_deviation <= 1e-12
        per_lambda = [behavior.relabel(np.roll(range(b_alphabet), k))
                      for k in range(n_lambda)]
        assert independence_check(mu, alice, per_lambda).max_deviation <= 1e-12


def test_independence_validation():
    """Test the validation of hybrid model instances."""
    behavior = NSBehavior.from_conditionals([1.0], [[0.8, 0.1]])
    other = NSBehavior.from_conditionals([1.0], [[0.3, 0.1]])
    with pytest.raises(BehaviorValidationError):
        independence_check([0.5, 0.6], [[1, 0], [1, 0]], behavior)
    with pytest.raises(BehaviorValidationError):
        independence_check([0.5, 0.5], [[1, 0]], behavior)
    with pytest.raises(BehaviorValidationError):
        independence_check([0.5, 0.5], [[1, 0], [1, 0]], [behavior])
    with pytest.raises(BehaviorValidationError):
        independence_check([0.5, 0.5], [[1, 0], [1, 0]], [behavior, other])


def test_hybrid_gap():
    """Test the gap between the quantum value and the hybrid maximum."""
    quantum = bell_value(BellConfig(0.1, 2, 8))
    assert hybrid_gap(quantum) == pytest.approx(0.68964, abs=1e-4)
    assert hybrid_gap(quantum, HybridScenario('BC', 4)) > 0
