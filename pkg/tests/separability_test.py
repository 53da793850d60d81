"""Test the two-mode correlation blocks and the Duan criterion."""
import math

import numpy as np
import pytest

from cvchain.quadrature import SeedRegistry, vacuum_mode
from cvchain.elements import two_mode_squeeze, parametric_amplify
from cvchain.separability import CriterionUndefinedError, CovarianceBlock, \
    correlation_block, duan_margin, lemma1_sign, lemma1_pairs, epr_variance_sum
from cvchain.chain import build_aoes_chain

GRID_GAINS = (2, 4, 8, 16)
GRID_SQUEEZE = tuple(0.25 * i for i in range(1, 9))


def _amplified_pair(r1, r2, g3):
    registry = SeedRegistry()
    a1, a2 = two_mode_squeeze(registry, r1)
    a3, a4 = two_mode_squeeze(registry, r2)
    return a1, parametric_amplify(a2, a3, g3), a4


def test_correlation_block():
    """Test the correlation block of a1 and the amplified a2."""
    a1, a2_amp, _ = _amplified_pair(0.5, 0.5, 8)
    block = correlation_block(a1, a2_amp)
    assert block.n1 == pytest.approx(0.385770, abs=1e-6)
    assert block.n2 == pytest.approx(block.n1, abs=1e-12)
    assert block.m1 == pytest.approx(5.786552, abs=1e-6)
    assert block.m2 == pytest.approx(block.m1, abs=1e-12)
    assert block.c1 == pytest.approx(0.830992, abs=1e-6)
    assert block.c2 == pytest.approx(-block.c1, abs=1e-12)
    assert block.matrix[0][2] == block.c1
    assert block.matrix[0][1] == 0
    assert block.matrix.shape == (4, 4)
    assert np.allclose(block.matrix, block.matrix.T)
    assert np.linalg.eigvalsh(block.matrix).min() > 0
    assert block.to_dict()['m1'] == block.m1


def test_correlation_block_unsqueezed():
    """Test that an unsqueezed source gives no correlations."""
    a1, a2_amp, _ = _amplified_pair(0, 0.5, 8)
    block = correlation_block(a1, a2_amp)
    assert block.c1 == pytest.approx(0, abs=1e-15)
    assert block.c2 == pytest.approx(0, abs=1e-15)


def test_duan_margin():
    """Test the Duan criterion of a1 and the amplified a2 at G3 = 8."""
    a1, a2_amp, _ = _amplified_pair(0.5, 0.5, 8)
    block = correlation_block(a1, a2_amp)
    report = duan_margin(block)
    n_ex, m_ex = block.n1 - 0.25, block.m1 - 0.25
    assert report.a_sq == pytest.approx(math.sqrt(m_ex / n_ex), rel=1e-12)
    assert report.a_sq == pytest.approx(6.38583, abs=1e-4)
    assert report.u_var == pytest.approx(report.v_var, abs=1e-12)
    assert report.bound == pytest.approx(report.a_sq / 2 + 1 / (2 * report.a_sq))
    assert report.margin == pytest.approx(report.u_var + report.v_var - report.bound)
    assert report.margin == \
        pytest.approx(4 * (math.sqrt(m_ex * n_ex) - abs(block.c1)), abs=1e-12)
    assert report.margin == pytest.approx(0.144051, abs=1e-5)
    assert report.separable
    assert report.to_dict()['separable'] is True


def test_duan_margin_unit_gain():
    """Test that the unamplified EPR pair is entangled."""
    a1, a2_amp, _ = _amplified_pair(0.5, 0.5, 1)
    report = duan_margin(correlation_block(a1, a2_amp))
    assert report.a_sq == pytest.approx(1, abs=1e-12)
    assert report.margin == pytest.approx(-0.632120, abs=1e-6)
    assert report.margin == pytest.approx(math.exp(-1) - 1, abs=1e-12)
    assert not report.separable


def test_duan_margin_product_state():
    """Test that an uncorrelated block is separable."""
    report = duan_margin(CovarianceBlock(0.3, 0.3, 0.3, 0.3, 0, 0))
    assert report.a_sq == 1
    assert report.margin == pytest.approx(0.2, abs=1e-12)
    assert report.separable


def test_duan_margin_undefined():
    """Test that a vacuum-level block has no criterion weight."""
    with pytest.raises(CriterionUndefinedError, match='criterion-undefined'):
        duan_margin(CovarianceBlock(0.25, 0.25, 1, 1, 0, 0))
    with pytest.raises(CriterionUndefinedError):
        duan_margin(CovarianceBlock(1, 1, 0.25, 0.25, 0, 0))


def test_lemma1_sign():
    """Test the factored sign expression."""
    c = math.cosh(1)
    assert lemma1_sign(0.5, 0.5, 8) == pytest.approx((c - 1) * (8 * (c - 1) - (c + 1)))
    assert lemma1_sign(0.5, 0.5, 8) == pytest.approx(0.978395, abs=1e-5)
    assert lemma1_sign(0.5, 0.7, 1) == pytest.approx(-2 * (c - 1))
    assert lemma1_sign(0, 0.5, 8) == 0


def test_lemma1_sign_agreement():
    """Test that the Duan margin and the factored expression share their sign."""
    for g3 in GRID_GAINS:
        for r1 in GRID_SQUEEZE:
            for r2 in GRID_SQUEEZE:
                first, second = lemma1_pairs(r1, r2, g3)
                sign = lemma1_sign(r1, r2, g3)
                assert sign != 0
                assert (first.margin > 0) == (sign > 0), (g3, r1, r2)
                assert second.separable, (g3, r1, r2)
                if sign > 0:
                    assert first.separable, (g3, r1, r2)


def test_lemma1_small_r2_entangled():
    """Test that a weakly squeezed idler leaves a1 and a2' entangled at low gain."""
    first, _ = lemma1_pairs(0.5, 0.25, 2)
    assert lemma1_sign(0.5, 0.25, 2) < 0
    assert not first.separable


def test_duan_sector_swap():
    """Test that the margin is unchanged when the x and p sectors are exchanged."""
    for r1, r2, g3 in ((0.5, 0.5, 8), (1.25, 0.75, 2), (0.25, 2, 16)):
        a1, a2_amp, a4 = _amplified_pair(r1, r2, g3)
        for block in (correlation_block(a1, a2_amp), correlation_block(a2_amp, a4)):
            assert duan_margin(block.swap_sectors()).margin == \
                pytest.approx(duan_margin(block).margin, abs=1e-12)


def test_swap_witness():
    """Test that swapping entangles Alice's and Charlie's beams."""
    chain = build_aoes_chain(SeedRegistry(), 0.5, 3, 8)
    report = duan_margin(correlation_block(chain.a1, chain.a4_out))
    assert report.margin < 0
    assert not report.separable


def test_epr_variance_sum():
    """Test the EPR variance sum of the swapped pair and of two vacua."""
    chain = build_aoes_chain(SeedRegistry(), 0.5, 3, 8)
    value, inseparable = epr_variance_sum(chain.a1, chain.a4_out)
    assert value == pytest.approx(math.exp(-1) + 0.875 * math.exp(-6), abs=1e-12)
    assert value == pytest.approx(0.370048, abs=1e-6)
    assert inseparable
    registry = SeedRegistry()
    value, inseparable = epr_variance_sum(vacuum_mode(registry), vacuum_mode(registry))
    assert value == pytest.approx(1, abs=1e-15)
    assert not inseparable
