# Copyright 2026 The urdiv developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""urdiv.reliability_metrics unit tests.
"""

import math
import pickle

import numpy as np
import pytest

from urdiv.channel_model import GainDistribution, gain_quantile
from urdiv.channel_spec import ChannelSpec
from urdiv.errors import DomainError, PrecisionLossError
from urdiv.reliability_metrics import (DkwBound, dkw_epsilon, fading_margin,
                                       local_diversity,
                                       local_diversity_at_probability,
                                       local_diversity_marcum,
                                       slope_db_per_decade,
                                       tail_approximation_cdf,
                                       tail_approximation_log_cdf)


def _dist(k, m, p_dif=1.0):
    return GainDistribution(ChannelSpec.uniform(k, m, p_dif=p_dif))


@pytest.fixture
def rayleigh():
    return _dist(0.0, 1)


def test_local_diversity_rayleigh(rayleigh):
    assert local_diversity(rayleigh, 1e-9) == pytest.approx(1.0, abs=1e-6)
    # q f / F of the exponential law at q = 1
    expected = math.exp(-1) / (1 - math.exp(-1))
    assert local_diversity(rayleigh, 1.0) == pytest.approx(expected,
                                                           rel=1e-12)


def test_local_diversity_domain(rayleigh):
    with pytest.raises(DomainError):
        local_diversity(rayleigh, 0)
    with pytest.raises(DomainError):
        local_diversity(rayleigh, -1)


def test_local_diversity_rician_superelevated():
    dist = _dist(10.0, 4)
    q = gain_quantile(dist, 1e-6)
    assert local_diversity(dist, q) == pytest.approx(4 * 3.07, abs=4 * 0.01)


def test_local_diversity_at_probability():
    point = local_diversity_at_probability(_dist(0.0, 1), 1e-3)
    assert point.p == 1e-3
    assert point.d == pytest.approx(1.0, abs=1e-3)
    assert point.d_norm == point.d

    point = local_diversity_at_probability(_dist(10.0, 128), 1e-6)
    assert point.d_norm == pytest.approx(0.96, abs=0.01)
    assert point.d == pytest.approx(128 * point.d_norm, rel=1e-15)

    point = local_diversity_at_probability(_dist(10.0, 1), 1e-6)
    assert point.d_norm == pytest.approx(1.09, abs=0.01)


def test_local_diversity_marcum_examples():
    dist = _dist(0.0, 2)
    assert local_diversity_marcum(dist, 1.0) == pytest.approx(
        local_diversity(dist, 1.0), rel=1e-6)

    dist = _dist(0.0, 16)
    q = gain_quantile(dist, 1e-6)
    assert local_diversity_marcum(dist, q) == pytest.approx(16 * 0.80,
                                                            abs=16 * 0.01)

    dist = _dist(100.0, 2)
    q = gain_quantile(dist, 1e-6)
    assert local_diversity_marcum(dist, q) == pytest.approx(2 * 19.02,
                                                            abs=2 * 0.01)


def test_local_diversity_marcum_requires_two_antennas(rayleigh):
    with pytest.raises(DomainError):
        local_diversity_marcum(rayleigh, 1.0)


def test_local_diversity_marcum_precision_loss():
    # P_1 and P_2 are both 1 to double precision this far up
    with pytest.raises(PrecisionLossError):
        local_diversity_marcum(_dist(0.0, 2), 1000.0)


def test_local_diversity_paths_agree():
    checked = 0
    for m in (2, 4, 16):
        for k in (0.0, 1.0, 10.0):
            dist = _dist(k, m)
            for p in np.logspace(-9, math.log10(0.5), 11):
                q = gain_quantile(dist, float(p))
                try:
                    marcum = local_diversity_marcum(dist, q)
                except PrecisionLossError:
                    continue
                assert marcum == pytest.approx(local_diversity(dist, q),
                                               rel=1e-6), (m, k, p)
                checked += 1
    assert checked >= 90


def test_local_diversity_scale_invariant():
    for k, m in ((0.0, 1), (3.0, 8), (10.0, 64)):
        base = _dist(k, m)
        scaled = _dist(k, m, p_dif=7.5)
        q = gain_quantile(base, 1e-5)
        assert local_diversity(scaled, 7.5 * q) == pytest.approx(
            local_diversity(base, q), rel=1e-9)
        assert fading_margin(scaled, 1e-5) == pytest.approx(
            fading_margin(base, 1e-5), rel=1e-9)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("k", [0.0, 10.0])
def test_local_diversity_approaches_classic_diversity(m, k):
    dist = _dist(k, m)
    deep = local_diversity_at_probability(dist, 1e-12).d
    shallow = local_diversity_at_probability(dist, 1e-6).d
    assert abs(deep - m) < abs(shallow - m) or deep == pytest.approx(
        m, rel=1e-6)
    if k == 0.0 or m == 1:
        assert deep == pytest.approx(m, rel=0.02)


def test_local_diversity_approaches_classic_diversity_four_antennas():
    dist = _dist(10.0, 4)
    deep = local_diversity_at_probability(dist, 1e-12).d
    shallow = local_diversity_at_probability(dist, 1e-6).d
    assert abs(deep - 4) < abs(shallow - 4)


def test_dual_slope():
    dist = _dist(10.0, 1)
    body = [local_diversity_at_probability(dist, float(p)).d
            for p in np.logspace(-6, math.log10(0.5), 40)]
    assert max(body) > 1.09
    assert local_diversity_at_probability(dist, 1e-8).d < 1.02
    assert local_diversity_at_probability(dist, 1e-8).d < 1.01


def test_fading_margin_rayleigh(rayleigh):
    expected = 10 * math.log10(math.log(2) / -math.log1p(-1e-6))
    assert fading_margin(rayleigh, 1e-6) == pytest.approx(expected,
                                                          rel=1e-9)
    assert fading_margin(rayleigh, 1e-6) == pytest.approx(58.4, abs=0.1)


@pytest.mark.parametrize("k, m, expected", [
    (100.0, 128, 0.3),
    (10 ** 0.6, 32, 2.5),
    (1.0, 64, 2.5),
    (4.0, 32, 2.5),
])
def test_fading_margin_examples(k, m, expected):
    assert fading_margin(_dist(k, m), 1e-6) == pytest.approx(expected,
                                                             abs=0.1)


def test_fading_margin_vanishes_at_median():
    dist = _dist(3.0, 8)
    assert fading_margin(dist, 0.5 - 1e-9) == pytest.approx(0.0, abs=1e-6)


def test_fading_margin_domain(rayleigh):
    for p in (0.5, 0.7, 0, -1):
        with pytest.raises(DomainError):
            fading_margin(rayleigh, p)


def test_fading_margin_monotone():
    ms = (1, 4, 16, 64)
    ks = (0.0, 2.0, 10.0, 100.0)
    margins = {(k, m): fading_margin(_dist(k, m), 1e-6)
               for k in ks for m in ms}
    for k in ks:
        row = [margins[k, m] for m in ms]
        assert all(a > b for a, b in zip(row, row[1:]))
    for m in ms:
        column = [margins[k, m] for k in ks]
        assert all(a > b for a, b in zip(column, column[1:]))


def test_dkw_epsilon():
    assert dkw_epsilon(10 ** 6, 0.99) == pytest.approx(1.628e-3, abs=1e-6)
    assert dkw_epsilon(10 ** 6, 0.99) == pytest.approx(
        math.sqrt(math.log(200) / 2e6), rel=1e-15)


def test_dkw_epsilon_scaling():
    assert dkw_epsilon(4 * 10 ** 5, 0.9) / dkw_epsilon(10 ** 5, 0.9) == (
        pytest.approx(0.5, rel=1e-14))


def test_dkw_epsilon_ultra_reliable_sample_size():
    assert dkw_epsilon(1e13, 0.999999) < 1e-6
    assert dkw_epsilon(1e12, 0.999999) > 1e-6


def test_dkw_bound():
    bound = DkwBound(1000, 0.95)
    assert bound.r == 1000
    assert bound.xi == 0.95
    assert bound.epsilon == dkw_epsilon(1000, 0.95)
    assert pickle.loads(pickle.dumps(bound)) == bound


@pytest.mark.parametrize("r, xi", [(0, 0.99), (10, 1.0), (10, 0.0),
                                   (2.5, 0.9)])
def test_dkw_bound_domain(r, xi):
    with pytest.raises(DomainError):
        DkwBound(r, xi)


def test_tail_approximation():
    assert tail_approximation_cdf(_dist(0.0, 1), 1e-6) == pytest.approx(
        1e-6, rel=1e-13)
    dist = _dist(2.0, 3, p_dif=0.5)
    expected = math.exp(-6.0) * (1e-4 / 0.5) ** 3 / 6
    assert tail_approximation_cdf(dist, 1e-4) == pytest.approx(expected,
                                                               rel=1e-12)
    assert tail_approximation_log_cdf(dist, 1e-4) == pytest.approx(
        math.log(expected), rel=1e-12)
    # the exact tail converges to the approximation
    assert dist.cdf(1e-4) == pytest.approx(expected, rel=1e-3)


def test_slope_db_per_decade():
    assert slope_db_per_decade(1) == 10.0
    assert slope_db_per_decade(0.1) == pytest.approx(100.0)
    with pytest.raises(DomainError):
        slope_db_per_decade(0)
