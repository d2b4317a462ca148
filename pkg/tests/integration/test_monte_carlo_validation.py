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

"""Monte Carlo validation of the analytic gain distribution.
"""

import math

import numpy as np
import pytest
from scipy import stats

from urdiv.channel_model import GainDistribution, gain_variance, mean_gain
from urdiv.channel_spec import ChannelSpec
from urdiv.monte_carlo import (SamplerConfig, dkw_band, ecdf_sup_deviation,
                               sample_effective_gains)
from urdiv.special_functions import marcum_p


def _vector_cdf(spec, q):
    """Gain CDF through the non-central chi-square law,
    P_M(x, y) = ncx2.cdf(2 y, 2 M, 2 x)."""
    return stats.ncx2.cdf(2.0 * q / spec.p_dif, 2 * spec.m, 2.0 * spec.k_sum)


def test_vector_cdf_agrees_with_marcum():
    spec = ChannelSpec.uniform(10.0, 4)
    for q in (10.0, 40.0, 80.0):
        assert _vector_cdf(spec, q) == pytest.approx(
            marcum_p(4, 40.0, q), rel=1e-6)


@pytest.mark.slow
def test_ecdf_within_dkw_band_at_every_sample():
    spec = ChannelSpec.uniform(10.0, 4)
    n = 10 ** 7
    ecdf = sample_effective_gains(
        SamplerConfig(spec=spec, seed=42, n_samples=n, n_streams=4))
    band = dkw_band(ecdf, 0.99)

    gains = ecdf.sorted_gains
    analytic = _vector_cdf(spec, gains)
    # ECDF jumps at every sample: check both sides of each step
    above = np.arange(1, n + 1) / n
    below = np.arange(0, n) / n
    deviation = max(np.max(np.abs(above - analytic)),
                    np.max(np.abs(below - analytic)))
    assert deviation <= band.epsilon

    se = math.sqrt(gain_variance(spec) / n)
    assert abs(ecdf.mean() - mean_gain(spec)) <= 5 * se


def test_ecdf_within_dkw_band_at_probes():
    spec = ChannelSpec(p_dif=2.0, k_factors=[1.0] * 4)
    ecdf = sample_effective_gains(
        SamplerConfig(spec=spec, seed=42, n_samples=10 ** 6))
    band = dkw_band(ecdf, 0.99)
    dist = GainDistribution(spec)
    assert ecdf_sup_deviation(ecdf, dist.cdf, n_probes=500) <= band.epsilon
    assert abs(ecdf.evaluate(3.0) - dist.cdf(3.0)) <= band.epsilon
