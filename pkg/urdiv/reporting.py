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

"""Tables, curves and reports behind the command line interface.

Everything here returns complete in-memory results; the CLI only writes
them out once assembled.
"""

import collections
import concurrent.futures
import csv
import enum
import io
import logging
import math
import multiprocessing

import numpy as np

from .channel_model import (GainDistribution, gain_quantile, mean_gain,
                            normalize_unit_mean)
from .channel_spec import ChannelSpec, linear_to_db
from .errors import DomainError, check_count, check_probability
from .monte_carlo import (SamplerConfig, dkw_band, ecdf_sup_deviation,
                          sample_effective_gains)
from .reliability_metrics import (fading_margin, local_diversity,
                                  local_diversity_at_probability)

__all__ = (
    "Metric", "CurveKind", "MetricTable",
    "metric_cell", "metric_table", "curve_points", "dkw_demo",
    "scenario_report", "format_number", "format_db", "parse_grid",
    "points_to_csv",
    "DEFAULT_TABLE_K_DB", "DEFAULT_TABLE_M", "DEFAULT_PROBABILITY",
    "REPORT_SCHEMA",
)

logger = logging.getLogger(__name__)

DEFAULT_TABLE_K_DB = (-math.inf, 0.0, 3.0, 6.0, 10.0, 20.0)
DEFAULT_TABLE_M = (1, 2, 4, 8, 16, 32, 64, 128)
DEFAULT_PROBABILITY = 1e-6

# (start, stop, num): dB of gain, or log10 of probability.
DEFAULT_GAIN_GRID = (-60.0, 20.0, 200)
DEFAULT_PROBABILITY_GRID = (-9.0, 0.0, 200)
DEFAULT_SCENARIO_GRID = (10.0, 25.0, 151)

REPORT_SCHEMA = 1


class Metric(enum.Enum):
    NORMALIZED_LOCAL_DIVERSITY = "nld"
    FADING_MARGIN_DB = "margin"

    @property
    def printed_decimals(self):
        """Decimals the metric is conventionally printed with."""
        return 2 if self is Metric.NORMALIZED_LOCAL_DIVERSITY else 1


class CurveKind(enum.Enum):
    CDF = "cdf"
    LOCAL_DIVERSITY_VS_GAIN = "ld-gain"
    LOCAL_DIVERSITY_VS_PROBABILITY = "ld-prob"


def format_number(value):
    """Six significant digits, the CLI number format."""
    return "{:.6g}".format(value)


def format_db(value_db):
    """K-factor label: ``-inf`` or the float as written."""
    return "-inf" if value_db == -math.inf else str(float(value_db))


def parse_grid(text):
    """Parse ``START:STOP:NUM`` into a (start, stop, num) tuple."""
    try:
        start, stop, num = text.split(":")
        return float(start), float(stop), int(num)
    except ValueError:
        raise DomainError(
            "grid must look like START:STOP:NUM, got '{}'".format(
                text)) from None


def _grid_values(grid, *, endpoint=True):
    start, stop, num = grid
    num = check_count("num", num, minimum=2)
    if not start < stop:
        raise DomainError(
            "grid start must be below stop, got {}:{}".format(start, stop))
    return np.linspace(start, stop, num, endpoint=endpoint)


class MetricTable(collections.namedtuple(
        "Base", ("row_labels", "col_labels", "cells", "metric",
                 "probability"))):
    """Metric values over K-factor rows (dB) and antenna count columns."""

    __slots__ = ()

    def __new__(cls, *, row_labels, col_labels, cells, metric, probability):
        _rows = tuple(float(k_db) for k_db in row_labels)
        _cols = tuple(check_count("m", m) for m in col_labels)
        _cells = tuple(tuple(float(v) for v in row) for row in cells)
        if (len(_cells) != len(_rows) or
                any(len(row) != len(_cols) for row in _cells)):
            raise DomainError(
                "cells must form a {}x{} matrix".format(
                    len(_rows), len(_cols)))
        return super().__new__(
            cls, row_labels=_rows, col_labels=_cols, cells=_cells,
            metric=Metric(metric),
            probability=check_probability(
                "probability", probability, upper=0.5))

    def to_csv(self, *, rounded=False):
        """CSV text: header ``k_db,<M>...``, one row per K-factor.

        `rounded` prints values at the precision of the published tables.
        """
        if rounded:
            fmt = "{{:.{}f}}".format(self.metric.printed_decimals).format
        else:
            fmt = format_number
        rows = [["k_db"] + [str(m) for m in self.col_labels]]
        for k_db, values in zip(self.row_labels, self.cells):
            rows.append([format_db(k_db)] + [fmt(v) for v in values])
        return _to_csv(rows)


def _to_csv(rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def points_to_csv(header, points):
    return _to_csv([list(header)] +
                   [[format_number(v) for v in point] for point in points])


def metric_cell(metric, probability, k_db, m):
    """Evaluate one table cell for a uniform-K array with unit P_dif."""
    metric = Metric(metric)
    dist = GainDistribution(ChannelSpec.from_db(k_db, m))
    if metric is Metric.NORMALIZED_LOCAL_DIVERSITY:
        value = local_diversity_at_probability(dist, probability).d_norm
    else:
        value = fading_margin(dist, probability)
    logger.debug("%s cell K=%s dB, M=%d: %g",
                 metric.value, format_db(k_db), m, value)
    return value


def _metric_cell_args(args):
    return metric_cell(*args)


def metric_table(metric, probability=DEFAULT_PROBABILITY,
                 k_db_list=DEFAULT_TABLE_K_DB, m_list=DEFAULT_TABLE_M, *,
                 jobs=1):
    """Fill a `MetricTable`; with ``jobs > 1`` cells are spread over a
    process pool.  The result does not depend on `jobs`."""
    metric = Metric(metric)
    probability = check_probability("probability", probability, upper=0.5)
    k_db_list = tuple(k_db_list)
    m_list = tuple(check_count("m", m) for m in m_list)
    jobs = check_count("jobs", jobs)

    tasks = [(metric.value, probability, k_db, m)
             for k_db in k_db_list for m in m_list]
    if jobs == 1:
        values = [_metric_cell_args(task) for task in tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(
                max_workers=jobs,
                mp_context=multiprocessing.get_context("spawn")) as executor:
            values = list(executor.map(_metric_cell_args, tasks))

    width = len(m_list)
    cells = [values[i:i + width] for i in range(0, len(values), width)]
    return MetricTable(row_labels=k_db_list, col_labels=m_list, cells=cells,
                       metric=metric, probability=probability)


def curve_points(kind, dist, grid=None, *, normalize=False,
                 per_antenna=False):
    """Curve ``(x, y)`` points.

    - ``cdf``: x = gain in dB, y = CDF.
    - ``ld-gain``: x = gain in dB, y = local diversity.
    - ``ld-prob``: x = probability, y = local diversity at that quantile.

    Gains are relative to the mean when `normalize` is set.  Local
    diversity is divided by the antenna count when `per_antenna` is set.
    """
    kind = CurveKind(kind)
    if normalize:
        dist = normalize_unit_mean(dist)
    scale = dist.diversity if per_antenna else 1

    if kind is CurveKind.LOCAL_DIVERSITY_VS_PROBABILITY:
        exponents = _grid_values(grid or DEFAULT_PROBABILITY_GRID,
                                 endpoint=grid is not None)
        points = []
        for p in 10.0 ** exponents:
            point = local_diversity_at_probability(dist, float(p))
            points.append((point.p, point.d / scale))
        return points

    points = []
    for gain_db in _grid_values(grid or DEFAULT_GAIN_GRID):
        q = 10.0 ** (gain_db / 10.0)
        if kind is CurveKind.CDF:
            points.append((float(gain_db), dist.cdf(q)))
        else:
            points.append((float(gain_db), local_diversity(dist, q) / scale))
    return points


DkwDemo = collections.namedtuple(
    "DkwDemo", ("epsilon", "max_deviation", "points"))


def dkw_demo(r=10 ** 6, xi=0.99, spec=None, *, seed=42, grid=None):
    """Analytic CDF, ECDF and DKW upper bound over a gain grid.

    The default is a single Rayleigh antenna with a million samples, where
    the upper bound floors at epsilon ~ 1.6e-3.
    """
    if spec is None:
        spec = ChannelSpec.from_db(-math.inf, 1)
    dist = GainDistribution(spec)
    ecdf = sample_effective_gains(
        SamplerConfig(spec=spec, seed=seed, n_samples=r))
    band = dkw_band(ecdf, xi)

    points = []
    for gain_db in _grid_values(grid or DEFAULT_GAIN_GRID):
        q = 10.0 ** (gain_db / 10.0)
        points.append((float(gain_db), dist.cdf(q),
                       float(ecdf.evaluate(q)), float(band.upper(q))))
    return DkwDemo(epsilon=band.epsilon,
                   max_deviation=ecdf_sup_deviation(ecdf, dist.cdf),
                   points=points)


def scenario_report(scenario, *, grid=DEFAULT_SCENARIO_GRID):
    """JSON-ready comparison of the deployments of `scenario`."""
    p_target = scenario.p_target
    deployments = []
    for deployment in scenario.deployments:
        spec = deployment.spec
        dist = GainDistribution(spec)
        point = local_diversity_at_probability(dist, p_target)
        k_db = [format_db(linear_to_db(k)) for k in spec.k_factors]
        deployments.append({
            "name": deployment.name,
            "m": spec.m,
            "k_db": k_db[0] if len(set(k_db)) == 1 else k_db,
            "p_dif": spec.p_dif,
            "mean_gain": mean_gain(spec),
            "median_gain": gain_quantile(dist, 0.5),
            "fading_margin_db": fading_margin(dist, p_target),
            "local_diversity": point.d,
            "normalized_local_diversity": point.d_norm,
            "cdf": [list(xy) for xy in curve_points(
                CurveKind.CDF, dist, grid)],
        })
    return {
        "schema": REPORT_SCHEMA,
        "p_target": p_target,
        "deployments": deployments,
    }
