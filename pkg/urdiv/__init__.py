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

"""Ultra-reliability statistics of multi-antenna Rician fading channels.
"""

from .__about__ import (
    __title__, __version__, __author__, __email__, __summary__, __uri__,
    __license__, __copyright__,
)
from .channel_model import (
    GainDistribution, SelectionCombiningDistribution,
    gain_cdf, gain_log_cdf, gain_pdf, gain_log_pdf, gain_quantile,
    gain_median, mean_gain, gain_variance, normalize_unit_mean,
    selection_combining, sc_cdf, sc_element_probability,
)
from .channel_spec import ChannelSpec, db_to_linear, linear_to_db
from .errors import (
    UrdivError, DomainError, ConvergenceError, PrecisionLossError,
    SampleCapError, ConfigError, DumpFormatError,
)
from .monte_carlo import (
    SamplerConfig, EcdfResult, DkwBand, sample_effective_gains,
    ecdf_evaluate, dkw_band, ecdf_sup_deviation, phase_invariance_check,
    dump_gains, load_gains,
)
from .reliability_metrics import (
    LocalDiversityPoint, DkwBound, local_diversity, local_diversity_marcum,
    local_diversity_at_probability, fading_margin, dkw_epsilon,
    tail_approximation_cdf, slope_db_per_decade,
)
from .scenario_config import (
    Deployment, ScenarioSpec, DEFAULT_SCENARIO, parse_scenario_options,
    load_scenario,
)
from .special_functions import marcum_p, marcum_p_log

__all__ = (
    "__title__", "__version__", "__author__", "__email__", "__summary__",
    "__uri__", "__license__", "__copyright__",
    "channel",
    "ChannelSpec", "db_to_linear", "linear_to_db",
    "GainDistribution", "SelectionCombiningDistribution",
    "gain_cdf", "gain_log_cdf", "gain_pdf", "gain_log_pdf", "gain_quantile",
    "gain_median", "mean_gain", "gain_variance", "normalize_unit_mean",
    "selection_combining", "sc_cdf", "sc_element_probability",
    "LocalDiversityPoint", "DkwBound", "local_diversity",
    "local_diversity_marcum", "local_diversity_at_probability",
    "fading_margin", "dkw_epsilon", "tail_approximation_cdf",
    "slope_db_per_decade",
    "SamplerConfig", "EcdfResult", "DkwBand", "sample_effective_gains",
    "ecdf_evaluate", "dkw_band", "ecdf_sup_deviation",
    "phase_invariance_check", "dump_gains", "load_gains",
    "Deployment", "ScenarioSpec", "DEFAULT_SCENARIO",
    "parse_scenario_options", "load_scenario",
    "marcum_p", "marcum_p_log",
    "UrdivError", "DomainError", "ConvergenceError", "PrecisionLossError",
    "SampleCapError", "ConfigError", "DumpFormatError",
)


def channel(k_db, m, *, p_dif=1.0) -> GainDistribution:
    """Effective gain law of an M-antenna array with a uniform K-factor.

    Shortcut for the common case::

        dist = urdiv.channel(10, 4)
        q = urdiv.gain_quantile(dist, 1e-6)
        urdiv.local_diversity(dist, q) / dist.m  # ~3.07

    :param k_db:
        Rician K-factor in dB, ``-math.inf`` for Rayleigh fading.
    :param m:
        Antenna count.
    :param p_dif:
        Diffuse power gain per antenna.
    """
    return GainDistribution(ChannelSpec.from_db(k_db, m, p_dif=p_dif))
