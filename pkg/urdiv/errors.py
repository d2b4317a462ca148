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

"""Exceptions raised by urdiv.
"""

import math
import numbers

__all__ = (
    "UrdivError", "DomainError", "ConvergenceError", "PrecisionLossError",
    "SampleCapError", "ConfigError", "DumpFormatError",
)


class UrdivError(Exception):
    """Base class for all errors raised deliberately by urdiv."""


class DomainError(UrdivError, ValueError):
    """Argument outside the domain of a function."""


class ConvergenceError(UrdivError, ArithmeticError):
    """Iterative search failed to reach the requested tolerance."""


class PrecisionLossError(UrdivError, ArithmeticError):
    """Result would be dominated by cancellation error."""


class SampleCapError(UrdivError, MemoryError):
    """Monte Carlo request exceeds the in-memory sample cap."""


class ConfigError(UrdivError, ValueError):
    """Malformed scenario configuration."""


class DumpFormatError(UrdivError, ValueError):
    """Malformed binary gain dump."""


def check_real(name, value, *, minimum=None, strict=False, finite=True):
    """Validate a real argument and return it as float.

    Raises `DomainError` if `value` is not a real number, is NaN, is
    infinite while `finite` is set, or lies below `minimum` (at or below
    when `strict`).
    """
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(
            "'{}' must be a real number, got '{!r}'".format(name, value))
    value = float(value)
    if math.isnan(value) or (finite and math.isinf(value)):
        raise DomainError(
            "'{}' must be finite, got '{!r}'".format(name, value))
    if minimum is not None:
        if value < minimum or (strict and value == minimum):
            raise DomainError(
                "'{}' must be {} {}, got '{!r}'".format(
                    name, ">" if strict else ">=", minimum, value))
    return value


def check_probability(name, value, *, upper=1.0):
    """Validate a probability in the open interval (0, `upper`)."""
    value = check_real(name, value)
    if not 0.0 < value < upper:
        raise DomainError(
            "'{}' must lie in (0, {}), got '{!r}'".format(name, upper, value))
    return value


def check_count(name, value, *, minimum=1):
    """Validate an integral count, accepting integer-valued floats."""
    if isinstance(value, bool):
        raise DomainError(
            "'{}' must be an integer, got '{!r}'".format(name, value))
    if isinstance(value, numbers.Integral):
        value = int(value)
    elif isinstance(value, numbers.Real) and float(value).is_integer():
        value = int(value)
    else:
        raise DomainError(
            "'{}' must be an integer, got '{!r}'".format(name, value))
    if value < minimum:
        raise DomainError(
            "'{}' must be >= {}, got '{!r}'".format(name, minimum, value))
    return value
