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

"""Deployment scenario definition and configuration file parsing.
"""

import collections
import collections.abc
import json
import os
from typing import Any, Mapping, Union

from .channel_spec import ChannelSpec, db_to_linear
from .errors import ConfigError, DomainError, check_probability

__all__ = (
    "Deployment", "ScenarioSpec", "DEFAULT_SCENARIO",
    "parse_scenario_options", "load_scenario", "parse_k_db",
)

_DEPLOYMENT_KEYS = frozenset({"name", "m", "k_db", "k_factors_db", "p_dif"})
_SCENARIO_KEYS = frozenset({"p_target", "deployments"})


def parse_k_db(value):
    """Parse a K-factor in dB, accepting the spelling ``"-inf"``."""
    if isinstance(value, str):
        try:
            value = float(value)
        except ValueError:
            raise DomainError(
                "K-factor must be a number of dB or '-inf', "
                "got '{}'".format(value)) from None
    return value


class Deployment(collections.namedtuple("Base", ("name", "spec"))):
    """Named fading environment of one base station deployment."""

    __slots__ = ()

    def __new__(cls, *, name, spec):
        if not isinstance(name, str) or not name:
            raise DomainError(
                "'name' must be non-empty string, got '{!r}'".format(name))
        if not isinstance(spec, ChannelSpec):
            raise DomainError(
                "'spec' must be ChannelSpec instance, "
                "got '{!r}'".format(spec))
        return super().__new__(cls, name=name, spec=spec)


class ScenarioSpec(collections.namedtuple(
        "Base", ("deployments", "p_target"))):
    """Deployments compared at a common target outage probability."""

    __slots__ = ()

    def __new__(cls, *, deployments, p_target=1e-6):
        _deployments = tuple(deployments)
        if not _deployments:
            raise DomainError("'deployments' must not be empty")
        for deployment in _deployments:
            if not isinstance(deployment, Deployment):
                raise DomainError(
                    "'deployments' must hold Deployment instances, "
                    "got '{!r}'".format(deployment))
        names = [deployment.name for deployment in _deployments]
        if len(set(names)) != len(names):
            raise DomainError(
                "deployment names must be unique, got {}".format(names))
        return super().__new__(
            cls, deployments=_deployments,
            p_target=check_probability("p_target", p_target, upper=0.5))


# Co-located 64 antennas at K = 0 dB against the closest distributed
# 32-antenna station at K = 4.
DEFAULT_SCENARIO = ScenarioSpec(
    deployments=(
        Deployment(name="co-located", spec=ChannelSpec.from_db(0.0, 64)),
        Deployment(name="distributed", spec=ChannelSpec.uniform(4.0, 32)),
    ),
    p_target=1e-6)


def _parse_deployment(options):
    if isinstance(options, Deployment):
        return options

    if not isinstance(options, collections.abc.Mapping):
        raise ConfigError(
            "Deployment must be either urdiv.Deployment instance or "
            "mapping, got '{}'".format(options))

    unexpected_args = frozenset(options.keys()) - _DEPLOYMENT_KEYS
    if unexpected_args:
        raise ConfigError(
            "Unexpected keywords in deployment: {}".format(
                ",".join(sorted(map(str, unexpected_args)))))

    if "name" not in options or "m" not in options:
        raise ConfigError(
            "Deployment needs 'name' and 'm', got '{}'".format(options))

    try:
        p_dif = options.get("p_dif", 1.0)
        if "k_factors_db" in options:
            k_factors = [db_to_linear(parse_k_db(k))
                         for k in options["k_factors_db"]]
            spec = ChannelSpec(p_dif=p_dif, k_factors=k_factors,
                               m=options["m"])
        else:
            spec = ChannelSpec.from_db(
                parse_k_db(options.get("k_db", "-inf")), options["m"],
                p_dif=p_dif)
        return Deployment(name=options["name"], spec=spec)
    except (DomainError, TypeError) as exc:
        raise ConfigError(
            "Invalid deployment '{}': {}".format(
                options.get("name"), exc)) from exc


def parse_scenario_options(
        config: Mapping[str, Any]=None) -> ScenarioSpec:
    """Parse a scenario configuration mapping.

    :param config:
        Mapping with optional ``p_target`` and a ``deployments`` list.
        Each deployment is either a `Deployment` instance or a mapping with
        ``name``, ``m`` and optionally ``k_db`` (default ``"-inf"``),
        ``k_factors_db`` (per-antenna list, overrides ``k_db``) and
        ``p_dif`` (default 1).  ``None`` gives `DEFAULT_SCENARIO`.

    Raises `ConfigError` if configuration is not correct.
    """

    if config is None:
        return DEFAULT_SCENARIO

    if not isinstance(config, collections.abc.Mapping):
        raise ConfigError(
            "Config must be mapping, got '{}'".format(config))

    unexpected_args = frozenset(config.keys()) - _SCENARIO_KEYS
    if unexpected_args:
        raise ConfigError(
            "Unexpected keywords in scenario: {}".format(
                ",".join(sorted(map(str, unexpected_args)))))

    deployments = config.get("deployments")
    if (not isinstance(deployments, collections.abc.Sequence) or
            isinstance(deployments, str)):
        raise ConfigError(
            "'deployments' must be a list, got '{}'".format(deployments))

    parsed = [_parse_deployment(options) for options in deployments]
    try:
        return ScenarioSpec(
            deployments=parsed,
            p_target=config.get("p_target", DEFAULT_SCENARIO.p_target))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def load_scenario(path: Union[str, os.PathLike]) -> ScenarioSpec:
    """Read a JSON scenario file."""
    try:
        with open(path, encoding="utf-8") as f:
            config = json.load(f)
    except ValueError as exc:
        raise ConfigError(
            "'{}' is not valid JSON: {}".format(path, exc)) from exc
    return parse_scenario_options(config)
