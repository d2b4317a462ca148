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

"""Reliability metrics: local diversity, fading margin and DKW error term.

The local diversity at gain Q is the slope of the CDF on a log-log scale,

    D(Q) = Q f(Q) / F(Q),

normalised so that a single Rayleigh antenna has D = 1 in the lower tail
(10 dB per decade of outage probability).  As Q -> 0 it tends to the
classic diversity order M.
"""

import collections
import math

from .channel_model import GainDistribution, gain_quantile
from .errors import (DomainError, PrecisionLossError, check_count,
                     check_probability, check_real)
from .special_functions import marcum_p_log

__all__ = (
    "LocalDiversityPoint", "DkwBound",
    "local_diversity", "local_diversity_marcum",
    "local_diversity_at_probability", "fading_margin", "dkw_epsilon",
    "tail_approximation_cdf", "tail_approximation_log_cdf",
    "slope_db_per_decade",
)

# The Marcum-ratio path refuses log ratios below this; the subtraction
# P_(M-1)/P_M - 1 would amplify the Marcum error beyond 1e-6 relative.
_MIN_LOG_RATIO = 1e-6


class LocalDiversityPoint(collections.namedtuple(
        "Base", ("q", "p", "d", "d_norm"))):
    """Local diversity `d` and its per-antenna value `d_norm` at gain `q`
    with CDF value `p`."""

    __slots__ = ()


class DkwBound(collections.namedtuple("Base", ("r", "xi", "epsilon"))):
    """Dvoretzky-Kiefer-Wolfowitz band half-width for an `r`-sample ECDF.

    With confidence `xi` the ECDF stays within `epsilon` of the true CDF
    everywhere, ``epsilon = sqrt(ln(2 / (1 - xi)) / (2 r))``.
    """

    __slots__ = ()

    def __new__(cls, r, xi):
        r = check_count("r", r)
        xi = check_probability("xi", xi)
        epsilon = math.sqrt(math.log(2.0 / (1.0 - xi)) / (2.0 * r))
        return super().__new__(cls, r=r, xi=xi, epsilon=epsilon)

    def __getnewargs__(self):
        return (self.r, self.xi)


def _check_positive_gain(q):
    return check_real("q", q, minimum=0.0, strict=True)


def local_diversity(dist, q):
    """Local diversity ``q f(q) / F(q)`` at gain `q`.

    Computed from the log-domain density and CDF, so it stays accurate
    arbitrarily deep in the lower tail.
    """
    q = _check_positive_gain(q)
    return q * math.exp(dist.log_pdf(q) - dist.log_cdf(q))


def local_diversity_marcum(dist, q):
    """Local diversity from the Marcum-Q ratio

        D = (q / P_dif) (P_(M-1)(x, q/P_dif) / P_M(x, q/P_dif) - 1).

    Requires M >= 2.  Kept as an independent cross-check of
    `local_diversity`; raises `PrecisionLossError` where the two Marcum
    values are too close for the subtraction to be meaningful.
    """
    q = _check_positive_gain(q)
    if not isinstance(dist, GainDistribution) or dist.m < 2:
        raise DomainError(
            "'dist' must be a GainDistribution with at least 2 antennas, "
            "got '{!r}'".format(dist))
    t = q / dist.p_dif
    log_ratio = (marcum_p_log(dist.m - 1, dist.k_sum, t) -
                 marcum_p_log(dist.m, dist.k_sum, t))
    if log_ratio < _MIN_LOG_RATIO:
        raise PrecisionLossError(
            "Marcum ratio at q={!r} is {!r} away from one, too close to "
            "resolve".format(q, log_ratio))
    return t * math.expm1(log_ratio)


def local_diversity_at_probability(dist, p):
    """Local diversity at the gain where the CDF equals `p`."""
    q = gain_quantile(dist, p)
    d = local_diversity(dist, q)
    return LocalDiversityPoint(q=q, p=p, d=d, d_norm=d / dist.diversity)


def fading_margin(dist, p_target):
    """Gap in dB between the median gain and the `p_target` quantile.

    Only defined below the median.
    """
    p_target = check_probability("p_target", p_target, upper=0.5)
    median = gain_quantile(dist, 0.5)
    return 10.0 * math.log10(median / gain_quantile(dist, p_target))


def dkw_epsilon(r, xi):
    """Half-width of the DKW band for `r` samples at confidence `xi`."""
    return DkwBound(r, xi).epsilon


def tail_approximation_log_cdf(dist, q):
    """Log of the classic lower-tail approximation of the gain CDF,

        F(q) ~ e^(-sum K_m) (q / P_dif)^M / M!,

    which has a constant local diversity of M.
    """
    q = _check_positive_gain(q)
    if not isinstance(dist, GainDistribution):
        raise DomainError(
            "'dist' must be GainDistribution, got '{!r}'".format(dist))
    m = dist.m
    return (-dist.k_sum + m * math.log(q / dist.p_dif) -
            math.lgamma(m + 1.0))


def tail_approximation_cdf(dist, q):
    return math.exp(tail_approximation_log_cdf(dist, q))


def slope_db_per_decade(d):
    """CDF slope in dB of gain per decade of probability for diversity `d`.
    """
    return 10.0 / check_real("d", d, minimum=0.0, strict=True)
