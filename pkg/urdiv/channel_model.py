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

"""Effective power gain distribution of a multi-antenna Rician channel.

With maximum ratio combining the effective gain is ``Q = sum_m |h_m|^2``,
a non-central gamma variable of index M, scale P_dif and non-centrality
``sum_m K_m``.  Its CDF is the complementary Marcum-Q function
``P_M(sum K_m, Q / P_dif)``.
"""

import collections
import logging
import math

from scipy import optimize

from .abc import AbstractGainDistribution
from .channel_spec import ChannelSpec
from .errors import (ConvergenceError, DomainError, check_count,
                     check_probability, check_real)
from .special_functions import log_bessel_i, marcum_p, marcum_p_log

__all__ = (
    "GainDistribution", "SelectionCombiningDistribution",
    "gain_cdf", "gain_log_cdf", "gain_pdf", "gain_log_pdf",
    "gain_quantile", "gain_median", "mean_gain", "gain_variance",
    "normalize_unit_mean",
    "selection_combining", "sc_cdf", "sc_element_probability",
)

logger = logging.getLogger(__name__)

# Quantile search limits, both in log10(q).
_MAX_ITERATIONS = 200
_XTOL = 1e-15
_RTOL = 4 * 2.220446049250313e-16


def _check_gain(q):
    return check_real("q", q, minimum=0.0, finite=False)


class GainDistribution(AbstractGainDistribution, collections.namedtuple(
        "Base", ("spec", "k_sum"))):
    """MRC effective power gain law of a `ChannelSpec`."""

    __slots__ = ()

    def __new__(cls, spec):
        if not isinstance(spec, ChannelSpec):
            raise DomainError(
                "'spec' must be ChannelSpec instance, "
                "got '{!r}'".format(spec))
        return super().__new__(cls, spec=spec, k_sum=spec.k_sum)

    def __getnewargs__(self):
        return (self.spec,)

    @property
    def m(self):
        return self.spec.m

    @property
    def p_dif(self):
        return self.spec.p_dif

    @property
    def diversity(self):
        return self.spec.m

    def scale_hint(self):
        return mean_gain(self.spec)

    def log_cdf(self, q):
        q = _check_gain(q)
        return marcum_p_log(self.m, self.k_sum, q / self.p_dif)

    def cdf(self, q):
        q = _check_gain(q)
        return marcum_p(self.m, self.k_sum, q / self.p_dif)

    def log_pdf(self, q):
        """Log of the non-central gamma density.

        Evaluated directly rather than as the difference
        ``P_(M-1) - P_M``, which cancels in the lower tail.
        """
        q = _check_gain(q)
        if math.isinf(q):
            return -math.inf

        m = self.m
        x = self.k_sum
        t = q / self.p_dif
        log_scale = -math.log(self.p_dif)

        if t == 0.0:
            return log_scale - x if m == 1 else -math.inf
        if x == 0.0:
            return log_scale + (m - 1) * math.log(t) - t - math.lgamma(m)
        return (log_scale - t - x +
                0.5 * (m - 1) * (math.log(t) - math.log(x)) +
                log_bessel_i(m - 1, 2.0 * math.sqrt(x * t)))


class SelectionCombiningDistribution(AbstractGainDistribution,
                                     collections.namedtuple(
                                         "Base", ("element", "m_branches"))):
    """Gain of the strongest of `m_branches` i.i.d. single-antenna branches.

    Its CDF, the element CDF to the power `m_branches`, bounds the MRC
    outage from above.
    """

    __slots__ = ()

    def __new__(cls, element, m_branches):
        if not isinstance(element, GainDistribution) or element.m != 1:
            raise DomainError(
                "'element' must be a single-antenna GainDistribution, "
                "got '{!r}'".format(element))
        return super().__new__(
            cls, element=element,
            m_branches=check_count("m_branches", m_branches))

    @property
    def diversity(self):
        return self.m_branches

    def scale_hint(self):
        return self.element.scale_hint()

    def log_cdf(self, q):
        return self.m_branches * self.element.log_cdf(q)

    def log_pdf(self, q):
        log_pdf = self.element.log_pdf(q)
        if self.m_branches == 1:
            return log_pdf
        return (math.log(self.m_branches) +
                (self.m_branches - 1) * self.element.log_cdf(q) + log_pdf)


def gain_cdf(dist, q):
    """Probability that the effective gain does not exceed `q`."""
    return dist.cdf(q)


def gain_log_cdf(dist, q):
    return dist.log_cdf(q)


def gain_pdf(dist, q):
    """Density of the effective gain per unit gain."""
    return dist.pdf(q)


def gain_log_pdf(dist, q):
    return dist.log_pdf(q)


def _bracket(objective, start):
    """Expand by decades from `start` until `objective` changes sign.

    Stops early once a decade brings no progress, which happens when the
    log CDF has saturated within rounding of its limit.
    """
    value = objective(start)
    step = 1.0 if value < 0.0 else -1.0
    lower = upper = start
    for _ in range(_MAX_ITERATIONS):
        if step > 0.0:
            lower, upper = upper, upper + step
            current = objective(upper)
            if current >= 0.0:
                return lower, upper
            stalled = math.isfinite(value) and current <= value
        else:
            lower, upper = lower + step, lower
            current = objective(lower)
            if current <= 0.0:
                return lower, upper
            stalled = current >= value
        if stalled:
            raise ConvergenceError(
                "could not bracket quantile: the CDF stops moving between "
                "10^{:g} and 10^{:g}".format(lower, upper))
        value = current
    raise ConvergenceError(
        "could not bracket quantile within {} decades of 10^{:g}".format(
            _MAX_ITERATIONS, start))


def gain_quantile(dist, p):
    """Gain `q` with ``gain_cdf(dist, q) == p``.

    Works on log10(q) and the log CDF so that probabilities down to the
    ultra-reliable regime keep their relative accuracy.  The bracket starts
    at ``mean * p^(1/M)``, where the lower tail would put it.
    """
    p = check_probability("p", p)
    log_p = math.log(p)

    def objective(log10_q):
        return dist.log_cdf(10.0 ** log10_q) - log_p

    start = (math.log10(dist.scale_hint()) +
             math.log10(p) / dist.diversity)
    lower, upper = _bracket(objective, start)
    logger.debug("quantile p=%g bracketed in 10^[%g, %g]", p, lower, upper)

    root, result = optimize.brentq(
        objective, lower, upper, xtol=_XTOL, rtol=_RTOL,
        maxiter=_MAX_ITERATIONS, full_output=True, disp=False)
    if not result.converged:
        raise ConvergenceError(
            "quantile search for p={!r} did not converge after {} "
            "iterations: {}".format(p, result.iterations, result.flag))
    logger.debug("quantile p=%g found after %d iterations",
                 p, result.iterations)
    return 10.0 ** root


def gain_median(dist):
    return gain_quantile(dist, 0.5)


def mean_gain(spec):
    """Mean effective gain ``sum_m (K_m + 1) P_dif``."""
    return math.fsum(k + 1.0 for k in spec.k_factors) * spec.p_dif


def gain_variance(spec):
    """Variance of the effective gain ``sum_m (2 K_m + 1) P_dif^2``."""
    return math.fsum(2.0 * k + 1.0 for k in spec.k_factors) * spec.p_dif ** 2


def normalize_unit_mean(dist):
    """Rescale the diffuse power so that the mean gain is one."""
    spec = dist.spec
    return GainDistribution(spec.with_p_dif(spec.p_dif / mean_gain(spec)))


def selection_combining(element_dist, m_branches):
    return SelectionCombiningDistribution(element_dist, m_branches)


def sc_cdf(element_dist, m_branches, q):
    """Selection-combining outage, the element CDF to the M-th power."""
    return selection_combining(element_dist, m_branches).cdf(q)


def sc_element_probability(p_target, m_branches):
    """Element outage probability an SC array needs to reach `p_target`.

    Element statistics only have to be reliable down to this level, the
    `m_branches`-th root of the target.
    """
    p_target = check_probability("p_target", p_target)
    return p_target ** (1.0 / check_count("m_branches", m_branches))
