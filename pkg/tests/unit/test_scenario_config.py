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

"""urdiv.scenario_config unit tests.
"""

import json
import math

import pytest

from urdiv.channel_spec import ChannelSpec
from urdiv.errors import ConfigError, DomainError
from urdiv.scenario_config import (DEFAULT_SCENARIO, Deployment, ScenarioSpec,
                                   load_scenario, parse_k_db,
                                   parse_scenario_options)


def test_parse_k_db():
    assert parse_k_db("-inf") == -math.inf
    assert parse_k_db("6") == 6.0
    assert parse_k_db(3) == 3
    with pytest.raises(DomainError):
        parse_k_db("six")


def test_default_scenario():
    assert parse_scenario_options(None) is DEFAULT_SCENARIO
    names = [d.name for d in DEFAULT_SCENARIO.deployments]
    assert names == ["co-located", "distributed"]
    assert DEFAULT_SCENARIO.deployments[0].spec == ChannelSpec.uniform(1.0,
                                                                       64)
    assert DEFAULT_SCENARIO.deployments[1].spec == ChannelSpec.uniform(4.0,
                                                                       32)
    assert DEFAULT_SCENARIO.p_target == 1e-6


def test_parse_mapping():
    scenario = parse_scenario_options({
        "p_target": 1e-5,
        "deployments": [
            {"name": "a", "m": 4, "k_db": 10},
            {"name": "b", "m": 2, "k_factors_db": ["-inf", 10],
             "p_dif": 0.5},
            {"name": "c", "m": 1},
        ],
    })

    assert scenario.p_target == 1e-5
    a, b, c = scenario.deployments
    assert a.spec == ChannelSpec.from_db(10, 4)
    assert b.spec.k_factors == pytest.approx((0.0, 10.0))
    assert b.spec.p_dif == 0.5
    assert c.spec == ChannelSpec.from_db(-math.inf, 1)


def test_parse_deployment_instances():
    deployment = Deployment(name="x", spec=ChannelSpec.uniform(2.0, 3))
    scenario = parse_scenario_options({"deployments": [deployment]})
    assert scenario.deployments == (deployment,)
    assert scenario.p_target == 1e-6


@pytest.mark.parametrize("config, message", [
    ([], "Config must be mapping"),
    ({"deployments": []}, "must not be empty"),
    ({"deployments": "a"}, "must be a list"),
    ({}, "must be a list"),
    ({"deployments": [{"name": "a", "m": 1}], "other": 1},
     "Unexpected keywords in scenario: other"),
    ({"deployments": [{"name": "a", "m": 1, "k": 1}]},
     "Unexpected keywords in deployment: k"),
    ({"deployments": [{"name": "a"}]}, "needs 'name' and 'm'"),
    ({"deployments": [1]}, "must be either urdiv.Deployment"),
    ({"deployments": [{"name": "a", "m": 2, "k_db": "x"}]},
     "Invalid deployment 'a'"),
    ({"deployments": [{"name": "a", "m": 2, "k_factors_db": [1]}]},
     "Invalid deployment 'a'"),
    ({"deployments": [{"name": "a", "m": 0}]}, "Invalid deployment 'a'"),
    ({"deployments": [{"name": "a", "m": 1}, {"name": "a", "m": 2}]},
     "unique"),
    ({"deployments": [{"name": "a", "m": 1}], "p_target": 0.5},
     "p_target"),
])
def test_parse_invalid(config, message):
    with pytest.raises(ConfigError, match=message):
        parse_scenario_options(config)


def test_deployment_validation():
    with pytest.raises(DomainError):
        Deployment(name="", spec=ChannelSpec.uniform(0.0, 1))
    with pytest.raises(DomainError):
        Deployment(name="a", spec=None)


def test_scenario_validation():
    deployment = Deployment(name="a", spec=ChannelSpec.uniform(0.0, 1))
    with pytest.raises(DomainError):
        ScenarioSpec(deployments=[])
    with pytest.raises(DomainError):
        ScenarioSpec(deployments=[deployment], p_target=0.6)
    with pytest.raises(DomainError):
        ScenarioSpec(deployments=[object()])


def test_load_scenario(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({
        "deployments": [{"name": "solo", "m": 1, "k_db": "-inf"}],
    }), encoding="utf-8")
    scenario = load_scenario(path)
    assert scenario.deployments[0].spec == ChannelSpec.from_db(-math.inf, 1)


def test_load_scenario_invalid_json(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text("{deployments", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_scenario(path)
