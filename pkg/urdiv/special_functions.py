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

"""Scalar special-function kernels.

The complementary Marcum-Q function uses the convention

    P_mu(x, y) = x^((1-mu)/2) * Int_0^y t^((mu-1)/2) e^(-t-x)
                 * I_(mu-1)(2 sqrt(x t)) dt,

i.e. the CDF at `y` of a non-central gamma law with index `mu`, unit scale
and non-centrality `x`.  Numeric environments usually ship the Marcum Q
function of the amplitude arguments instead; the two are related by
``P_mu(x, y) = 1 - Q_mu(sqrt(2 x), sqrt(2 y))``.
"""

import collections
import logging
import math

from scipy import special

from .errors import DomainError, check_real

__all__ = (
    "MarcumArgs",
    "bessel_i", "log_bessel_i",
    "reg_lower_gamma", "log_reg_lower_gamma",
    "marcum_p", "marcum_p_log",
)

logger = logging.getLogger(__name__)

# Series and mixture terms below this fraction of the running sum are
# dropped.
_TRUNCATION = 1e-17
_LOG_TRUNCATION = math.log(_TRUNCATION)

# Library results below this are recomputed from a log-domain series.
_LINEAR_FLOOR = 1e-280

_MAX_SERIES_TERMS = 100000


def _log_add(a, b):
    """Return log(exp(a) + exp(b)) without leaving the log domain."""
    if a < b:
        a, b = b, a
    if b == -math.inf:
        return a
    return a + math.log1p(math.exp(b - a))


def _log_series(log_ratio):
    """Return log(1 + r_1 + r_1 r_2 + ...) for term ratios r_n.

    `log_ratio(n)` gives log r_n.  The ratios must eventually stay below
    one, which holds for every caller in this module.
    """
    log_term = 0.0
    log_sum = 0.0
    for n in range(1, _MAX_SERIES_TERMS):
        log_term += log_ratio(n)
        log_sum = _log_add(log_sum, log_term)
        if log_term - log_sum < _LOG_TRUNCATION and log_ratio(n + 1) < 0.0:
            return log_sum
    raise DomainError("series did not converge within {} terms".format(
        _MAX_SERIES_TERMS))


class MarcumArgs(collections.namedtuple("Base", ("mu", "x", "y"))):
    """Validated arguments of the complementary Marcum-Q function.

    :param mu:
        Order, the antenna count in channel use.
    :param x:
        Non-centrality, the sum of the per-antenna K-factors.  Zero is the
        Rayleigh case and is accepted exactly.
    :param y:
        Gain scaled by the diffuse power.  ``+inf`` is accepted.
    """

    __slots__ = ()

    def __new__(cls, mu, x, y):
        return super().__new__(
            cls,
            mu=check_real("mu", mu, minimum=0.0, strict=True),
            x=check_real("x", x, minimum=0.0),
            y=check_real("y", y, minimum=0.0, finite=False))


def bessel_i(nu, z):
    """Modified Bessel function of the first kind, I_nu(z).

    Overflows to ``inf`` for large `z`; use `log_bessel_i` there.
    """
    nu = check_real("nu", nu, minimum=0.0)
    z = check_real("z", z, minimum=0.0)
    return float(special.iv(nu, z))


def log_bessel_i(nu, z):
    """Natural log of I_nu(z), finite wherever I_nu(z) > 0.

    Uses the exponentially scaled function ``ive`` and falls back to the
    power series when the scaled value underflows, which happens for
    `z` small against `nu`.
    """
    nu = check_real("nu", nu, minimum=0.0)
    z = check_real("z", z, minimum=0.0)
    if z == 0.0:
        return 0.0 if nu == 0.0 else -math.inf

    scaled = float(special.ive(nu, z))
    if scaled > _LINEAR_FLOOR:
        return math.log(scaled) + z

    # I_nu(z) = (z/2)^nu / Gamma(nu+1) * sum_k (z^2/4)^k / (k! (nu+1)_k)
    log_quarter_z2 = 2.0 * math.log(0.5 * z)
    lead = nu * math.log(0.5 * z) - math.lgamma(nu + 1.0)
    return lead + _log_series(
        lambda n: log_quarter_z2 - math.log(n) - math.log(nu + n))


def reg_lower_gamma(mu, y):
    """Regularized lower incomplete gamma function gamma(mu, y) / Gamma(mu).
    """
    mu = check_real("mu", mu, minimum=0.0, strict=True)
    y = check_real("y", y, minimum=0.0, finite=False)
    return float(special.gammainc(mu, y))


def log_reg_lower_gamma(mu, y):
    """Natural log of `reg_lower_gamma`, finite for every y > 0.

    Below the double range the series

        P(mu, y) = y^mu e^-y / Gamma(mu+1)
                   * sum_n y^n / ((mu+1) ... (mu+n))

    is summed in log domain; it converges quickly there because tiny
    results imply y < mu.
    """
    mu = check_real("mu", mu, minimum=0.0, strict=True)
    y = check_real("y", y, minimum=0.0, finite=False)
    if y == 0.0:
        return -math.inf

    value = float(special.gammainc(mu, y))
    if value > _LINEAR_FLOOR:
        return math.log(value)

    log_y = math.log(y)
    lead = mu * log_y - y - math.lgamma(mu + 1.0)
    return lead + _log_series(lambda n: log_y - math.log(mu + n))


def _log_poisson_gamma_mixture(mu, x, y):
    """log P_mu(x, y) for x > 0 and 0 < y < inf.

    Evaluates

        P_mu(x, y) = sum_k e^-x x^k / k! * P(mu + k, y)

    around the Poisson mode k* = floor(x).  The gamma terms are anchored
    once at the top of the window and recurred downwards with

        P(a - 1, y) = P(a, y) + y^(a-1) e^-y / Gamma(a),

    which only adds positive numbers.  Terms above the mode are bounded by
    their Poisson weight, terms below it are summed until they decrease and
    fall below the truncation threshold.
    """
    log_x = math.log(x)
    log_y = math.log(y)
    mode = math.floor(x)

    top = mode
    drop = 0.0
    while drop > _LOG_TRUNCATION:
        top += 1
        drop += log_x - math.log(top)

    log_weight = top * log_x - x - math.lgamma(top + 1.0)
    log_gamma = log_reg_lower_gamma(mu + top, y)
    # log of y^a e^-y / Gamma(a + 1) for a = mu + top - 1
    log_increment = (mu + top - 1.0) * log_y - y - math.lgamma(mu + top)

    log_total = -math.inf
    previous = -math.inf
    k = top
    while True:
        log_term = log_weight + log_gamma
        log_total = _log_add(log_total, log_term)
        if k == 0:
            break
        if (k <= mode and log_term < previous and
                log_term - log_total < _LOG_TRUNCATION):
            break
        previous = log_term

        log_gamma = _log_add(log_gamma, log_increment)
        log_weight += math.log(k) - log_x
        k -= 1
        log_increment += math.log(mu + k) - log_y

    logger.debug("Marcum mixture mu=%g x=%g y=%g used k in [%d, %d]",
                 mu, x, y, k, top)
    return min(log_total, 0.0)


def marcum_p_log(mu, x, y):
    """Natural log of the complementary Marcum-Q function P_mu(x, y).

    Returns ``-inf`` for y = 0 and stays finite for every y > 0, far below
    the smallest representable probability.
    """
    mu, x, y = MarcumArgs(mu, x, y)
    if y == 0.0:
        return -math.inf
    if x == 0.0:
        return log_reg_lower_gamma(mu, y)
    if math.isinf(y):
        return 0.0
    return _log_poisson_gamma_mixture(mu, x, y)


def marcum_p(mu, x, y):
    """Complementary Marcum-Q function P_mu(x, y).

    For x = 0 this is exactly `reg_lower_gamma` (mu, y).
    """
    mu, x, y = MarcumArgs(mu, x, y)
    if x == 0.0:
        return reg_lower_gamma(mu, y)
    if y == 0.0:
        return 0.0
    return math.exp(marcum_p_log(mu, x, y))
