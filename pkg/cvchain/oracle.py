"""Monte Carlo validation of the Gaussian moment calculus.

Seed quadratures are drawn as independent classical Gaussians of variance 1/4
and the linear forms are evaluated sample by sample, so every fourth moment is
estimated directly from the sampled products without any Wick reduction.
Samples are drawn in fixed-size chunks whose generators are spawned from one
seed sequence, which makes the results independent of the number of workers.
"""
import math
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .quadrature import VACUUM_VARIANCE, RegistryMismatchError, second_moment, \
    variance
from .bell import SETTINGS, SIGNS, NoDetectionError, chsh_sign, photon_pair_rate, \
    bell_value
from .chain import build_bell_network

_logger = logging.getLogger(__name__)

ACCEPTANCE_SIGMA = 5.0
DEFAULT_CHUNK_SIZE = 65536

OracleCheck = namedtuple(
    'OracleCheck', ('name', 'analytic', 'estimate', 'std_error', 'passed'))


class SampleConfig(object):
    """Sampling settings of the Monte Carlo oracle.

    Args:
        n_samples: Integer for the number of samples (>= 1).
        rng_seed: Integer seed of the random generator.
        chunk_size: Integer for the samples drawn per chunk. (Default: 65536).
        workers: Integer for the number of threads evaluating chunks. The
            estimates do not depend on this number. (Default: 1).
    """

    def __init__(self, n_samples, rng_seed=0, chunk_size=DEFAULT_CHUNK_SIZE,
                 workers=1):
        self.n_samples = n_samples
        self.rng_seed = rng_seed
        self.chunk_size = chunk_size
        self.workers = workers

    @property
    def n_samples(self):
        return self._n_samples

    @n_samples.setter
    def n_samples(self, value):
        value = int(value)
        if value < 1:
            raise ValueError('n_samples must be >= 1. Got {}.'.format(value))
        self._n_samples = value

    @property
    def rng_seed(self):
        return self._rng_seed

    @rng_seed.setter
    def rng_seed(self, value):
        value = int(value)
        if not 0 <= value < 2 ** 64:
            raise ValueError('rng_seed must be a 64-bit unsigned integer.')
        self._rng_seed = value

    @property
    def chunk_size(self):
        return self._chunk_size

    @chunk_size.setter
    def chunk_size(self, value):
        value = int(value)
        if value < 1:
            raise ValueError('chunk_size must be >= 1. Got {}.'.format(value))
        self._chunk_size = value

    @property
    def workers(self):
        return self._workers

    @workers.setter
    def workers(self, value):
        self._workers = max(1, int(value))

    @property
    def chunks(self):
        """Get a list of the number of samples in each chunk."""
        full, rest = divmod(self._n_samples, self._chunk_size)
        return [self._chunk_size] * full + ([rest] if rest else [])

    def __repr__(self):
        return 'SampleConfig: N={} seed={}'.format(self._n_samples, self._rng_seed)


class MomentEstimate(object):
    """A sampled mean with its standard error.

    Args:
        mean: The sample mean.
        std_error: The standard error of the mean (>= 0).
    """
    __slots__ = ('_mean', '_std_error')

    def __init__(self, mean, std_error):
        assert std_error >= 0, 'std_error must be >= 0. Got {}.'.format(std_error)
        self._mean = float(mean)
        self._std_error = float(std_error)

    @property
    def mean(self):
        return self._mean

    @property
    def std_error(self):
        return self._std_error

    def z_score(self, target):
        """Get the distance to a target value in units of the standard error."""
        diff = abs(self._mean - target)
        if self._std_error == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / self._std_error

    def agrees(self, target, sigma=ACCEPTANCE_SIGMA):
        """Get a boolean noting whether a target lies within sigma standard errors."""
        return self.z_score(target) <= sigma

    def __eq__(self, other):
        return isinstance(other, MomentEstimate) and \
            (self._mean, self._std_error) == (other._mean, other._std_error)

    def __repr__(self):
        return 'MomentEstimate: {:.8g} +/- {:.3g}'.format(self._mean, self._std_error)


def _chunk_statistics(registry, statistic, size, seed_seq):
    """Draw one chunk of seeds and return the sums and outer sums of a statistic."""
    rng = np.random.default_rng(seed_seq)
    scale = math.sqrt(VACUUM_VARIANCE)
    samples = {
        'x': rng.normal(0.0, scale, size=(registry.count, size)),
        'p': rng.normal(0.0, scale, size=(registry.count, size))
    }

    def evaluate(form):
        if form.registry is not registry:
            raise RegistryMismatchError('Form is not on the sampled seed registry.')
        return np.einsum('s,sm->m', form.to_array(registry.count),
                         samples[form.sector])

    values = np.atleast_2d(statistic(evaluate))
    return values.sum(axis=1), np.einsum('km,lm->kl', values, values)


def sample_statistics(registry, statistic, cfg):
    """Estimate the means and covariance of per-sample statistics.

    Args:
        registry: The SeedRegistry whose seeds are sampled.
        statistic: A function that receives an evaluate(form) function returning
            the sampled values of a QuadratureForm and returns an array of shape
            (k, m) with k statistics for the m samples of a chunk.
        cfg: A SampleConfig.

    Returns:
        A tuple with an array of the k means and the (k, k) covariance matrix
        of the per-sample statistics.
    """
    sizes = cfg.chunks
    children = np.random.SeedSequence(cfg.rng_seed).spawn(len(sizes))
    jobs = list(zip(sizes, children))

    def run(job):
        return _chunk_statistics(registry, statistic, job[0], job[1])

    if cfg.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            results = list(executor.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    total, outer = results[0]
    for sums, prods in results[1:]:  # reduced in chunk order
        total = total + sums
        outer = outer + prods
    n = cfg.n_samples
    mean = total / n
    if n > 1:
        cov = (outer - n * np.outer(mean, mean)) / (n - 1)
    else:
        cov = np.zeros_like(outer)
    _logger.debug('Sampled %d statistics over %d chunks.', mean.size, len(jobs))
    return mean, cov


def _estimates(mean, cov, n):
    return [MomentEstimate(m, math.sqrt(max(v, 0.0) / n))
            for m, v in zip(mean, np.diag(cov))]


def _shared_registry(forms):
    registry = forms[0].registry
    for form in forms[1:]:
        if form.registry is not registry:
            raise RegistryMismatchError(
                'All sampled forms must share one seed registry.')
    return registry


def sample_moments(pairs, cfg):
    """Estimate second moments of pairs of quadrature forms.

    Args:
        pairs: A list of (f, g) QuadratureForm tuples on one registry.
        cfg: A SampleConfig.

    Returns:
        A list with one MomentEstimate of <f g> per pair.
    """
    pairs = list(pairs)
    registry = _shared_registry([f for pair in pairs for f in pair])

    def statistic(evaluate):
        return np.array([evaluate(f) * evaluate(g) for f, g in pairs])

    mean, cov = sample_statistics(registry, statistic, cfg)
    return _estimates(mean, cov, cfg.n_samples)


def _number_statistic(evaluate, mode):
    return evaluate(mode.x) ** 2 + evaluate(mode.p) ** 2 - 2 * VACUUM_VARIANCE


class WickReport(object):
    """Sampled photon-pair rates against the Wick-reduced rates.

    Args:
        rows: A list of (x, z, a, c, analytic, MomentEstimate) tuples.
    """

    def __init__(self, rows):
        self._rows = list(rows)

    @property
    def rows(self):
        return list(self._rows)

    @property
    def max_z_score(self):
        return max(est.z_score(ana) for _, _, _, _, ana, est in self._rows)

    @property
    def passed(self):
        return self.max_z_score <= ACCEPTANCE_SIGMA

    def __repr__(self):
        return 'WickReport: {} rates [max z: {:.3g}]'.format(
            len(self._rows), self.max_z_score)


def validate_wick(net, cfg, settings=SETTINGS):
    """Estimate photon-pair rates from raw sampled products.

    Each rate is the sampled mean of (x_a^2 + p_a^2 - 1/2)(x_c^2 + p_c^2 - 1/2)
    and is compared with photon_pair_rate.

    Args:
        net: A BellNetwork.
        cfg: A SampleConfig.
        settings: A list of (x, z) setting pairs. (Default: all four).

    Returns:
        A WickReport.
    """
    keys = [(x, z, a, c) for x, z in settings for a in SIGNS for c in SIGNS]

    def statistic(evaluate):
        return np.array([
            _number_statistic(evaluate, net.alice_mode(a, x)) *
            _number_statistic(evaluate, net.charlie_mode(c, z))
            for x, z, a, c in keys])

    mean, cov = sample_statistics(net.registry, statistic, cfg)
    estimates = _estimates(mean, cov, cfg.n_samples)
    rows = [(x, z, a, c, photon_pair_rate(net, a, c, x, z), est)
            for (x, z, a, c), est in zip(keys, estimates)]
    return WickReport(rows)


def sampled_bell(net, cfg):
    """Assemble the Bell value from sampled photon-pair rates.

    The standard error follows from the covariance of the numerator and
    denominator of the four correlators.

    Returns:
        A MomentEstimate of the Bell value.
    """
    if net.config.r1 == 0:
        raise NoDetectionError('no-detection: r1=0 gives vanishing rates')

    def statistic(evaluate):
        rows = []
        for x, z in SETTINGS:
            prods = {(a, c): _number_statistic(evaluate, net.alice_mode(a, x)) *
                     _number_statistic(evaluate, net.charlie_mode(c, z))
                     for a in SIGNS for c in SIGNS}
            rows.append(sum(a * c * v for (a, c), v in prods.items()))
            rows.append(sum(prods.values()))
        return np.array(rows)

    mean, cov = sample_statistics(net.registry, statistic, cfg)
    value, grad = 0.0, np.zeros(mean.size)
    for i, (x, z) in enumerate(SETTINGS):
        num, den = mean[2 * i], mean[2 * i + 1]
        sign = chsh_sign(x, z)
        value += sign * num / den
        grad[2 * i] = sign / den
        grad[2 * i + 1] = -sign * num / den ** 2
    var = float(grad @ cov @ grad) / cfg.n_samples
    return MomentEstimate(value, math.sqrt(max(var, 0.0)))


def wick_identity_check(f, g, cfg):
    """Compare the sampled <f^2 g^2> with <f^2><g^2> + 2<f g>^2.

    Returns:
        A tuple with the MomentEstimate and the reduced analytic value.
    """
    registry = _shared_registry([f, g])

    def statistic(evaluate):
        return np.array([evaluate(f) ** 2 * evaluate(g) ** 2])

    mean, cov = sample_statistics(registry, statistic, cfg)
    analytic = variance(f) * variance(g) + 2 * second_moment(f, g) ** 2
    return _estimates(mean, cov, cfg.n_samples)[0], analytic


def oracle_checks(config, cfg):
    """Run every oracle check for a BellConfig.

    Args:
        config: A BellConfig with r1 > 0.
        cfg: A SampleConfig.

    Returns:
        A list of OracleCheck for the chain moments, the sixteen photon-pair
        rates and the assembled Bell value.
    """
    net = build_bell_network(None, config)
    chain = net.chain_a
    named = [
        ('<x_a1 x_a1>', chain.a1.x, chain.a1.x),
        ('<p_a1 p_a1>', chain.a1.p, chain.a1.p),
        ('<x_a1 p_a1>', chain.a1.x, chain.a1.p),
        ('<x_a1 x_a4out>', chain.a1.x, chain.a4_out.x),
        ('<p_a1 p_a4out>', chain.a1.p, chain.a4_out.p),
        ('<x_a4out x_a4out>', chain.a4_out.x, chain.a4_out.x),
        ('<x_a1 x_a2amp>', chain.a1.x, chain.a2_amp.x),
        ('<x_a2amp x_a2amp>', chain.a2_amp.x, chain.a2_amp.x),
        ('<x_a1 x_b4out>', chain.a1.x, net.chain_b.a4_out.x)
    ]
    checks = []
    estimates = sample_moments([(f, g) for _, f, g in named], cfg)
    for (name, f, g), est in zip(named, estimates):
        ana = second_moment(f, g)
        checks.append(OracleCheck(name, ana, est.mean, est.std_error, est.agrees(ana)))
    for x, z, a, c, ana, est in validate_wick(net, cfg).rows:
        name = 'R[{:+d},{:+d}|{},{}]'.format(a, c, x, z)
        checks.append(OracleCheck(name, ana, est.mean, est.std_error, est.agrees(ana)))
    est = sampled_bell(net, cfg)
    ana = bell_value(config, 'engine')
    checks.append(OracleCheck('bell', ana, est.mean, est.std_error, est.agrees(ana)))
    _logger.info('Oracle: %d of %d checks within %g standard errors.',
                 sum(1 for ch in checks if ch.passed), len(checks), ACCEPTANCE_SIGMA)
    return checks
