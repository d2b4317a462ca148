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


"""Abstract base classes.
"""

import math
from abc import ABCMeta, abstractmethod


__all__ = ("AbstractGainDistribution",)


class AbstractGainDistribution(metaclass=ABCMeta):
    """Law of a non-negative effective power gain.

    Gains of interest for ultra-reliable links sit deep in the lower tail,
    where linear-domain probabilities underflow long before the physics
    becomes irrelevant.  Implementations therefore provide the CDF and the
    density in log domain only; linear values are derived here.

    Two combining schemes are implemented on top of this interface:
    maximum ratio combining (`channel_model.GainDistribution`) and the
    selection-combining bound (`channel_model.SelectionCombiningDistribution`).
    Every metric in `reliability_metrics` accepts either.
    """

    __slots__ = ()

    @property
    @abstractmethod
    def diversity(self) -> int:
        """Classic diversity order, the log-log CDF slope as gain -> 0."""

    @abstractmethod
    def log_cdf(self, q: float) -> float:
        """Natural log of the CDF at gain `q`.

        Should raise `DomainError` for negative `q` and return ``-inf``
        at zero.
        """

    @abstractmethod
    def log_pdf(self, q: float) -> float:
        """Natural log of the density (per unit gain) at `q`."""

    @abstractmethod
    def scale_hint(self) -> float:
        """A typical gain (the mean where known) to start searches from."""

    def cdf(self, q: float) -> float:
        return math.exp(self.log_cdf(q))

    def pdf(self, q: float) -> float:
        return math.exp(self.log_pdf(q))
