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

"""``urdiv`` command line interface.

Every command assembles its complete output before writing anything, so a
failing command never leaves partial CSV behind.
"""

import contextlib
import json
import logging
import math

import click

from .__about__ import __version__
from .channel_model import GainDistribution, gain_variance, mean_gain
from .channel_spec import ChannelSpec
from .errors import UrdivError
from .monte_carlo import (SamplerConfig, dump_gains, ecdf_sup_deviation,
                          sample_effective_gains)
from .reliability_metrics import dkw_epsilon
from .reporting import (CurveKind, Metric, curve_points, dkw_demo,
                        format_number, metric_table, parse_grid,
                        points_to_csv, scenario_report)
from .scenario_config import load_scenario, parse_k_db, parse_scenario_options

__all__ = ("cli", "main")

logger = logging.getLogger(__name__)


@contextlib.contextmanager
def _reported_errors():
    """Turn library and file errors into a diagnostic and exit status 1."""
    try:
        yield
    except UrdivError as exc:
        raise click.ClickException(str(exc)) from exc
    except OSError as exc:
        raise click.ClickException(
            "{}: {}".format(exc.filename, exc.strerror or exc)) from exc


def _emit(text, output):
    with click.open_file(output, "w", encoding="utf-8") as f:
        f.write(text)


def _k_db_list(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(parse_k_db(item.strip()) for item in value.split(","))
    except UrdivError as exc:
        raise click.BadParameter(str(exc))


def _m_list(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(int(item) for item in value.split(","))
    except ValueError:
        raise click.BadParameter(
            "expected comma-separated antenna counts, got '{}'".format(value))


def _k_db(ctx, param, value):
    try:
        return parse_k_db(value)
    except UrdivError as exc:
        raise click.BadParameter(str(exc))


def _grid(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_grid(value)
    except UrdivError as exc:
        raise click.BadParameter(str(exc))


_output_option = click.option(
    "--output", "-o", default="-", show_default=True,
    type=click.Path(dir_okay=False, writable=True, allow_dash=True),
    help="Output file.")


@click.group()
@click.version_option(__version__, prog_name="urdiv")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging.")
def cli(verbose):
    """Reliability statistics of multi-antenna Rician fading channels."""
    if verbose:
        logging.basicConfig(level=logging.DEBUG)


@cli.command()
@click.option("--metric", required=True,
              type=click.Choice([metric.value for metric in Metric]),
              help="nld: normalised local diversity, margin: fading "
                   "margin in dB.")
@click.option("--p", "probability", type=float, default=1e-6,
              show_default=True, help="Target probability.")
@click.option("--k-db", "k_db_list", callback=_k_db_list,
              help="Comma-separated K-factors in dB, '-inf' for Rayleigh.")
@click.option("--m", "m_list", callback=_m_list,
              help="Comma-separated antenna counts.")
@click.option("--round", "rounded", is_flag=True,
              help="Print at the precision of the published tables.")
@click.option("--jobs", type=click.IntRange(min=1), default=1,
              show_default=True, help="Worker processes.")
@_output_option
def table(metric, probability, k_db_list, m_list, rounded, jobs, output):
    """Metric table over K-factors (rows) and antenna counts (columns)."""
    kwargs = {}
    if k_db_list is not None:
        kwargs["k_db_list"] = k_db_list
    if m_list is not None:
        kwargs["m_list"] = m_list
    with _reported_errors():
        result = metric_table(metric, probability, jobs=jobs, **kwargs)
        text = result.to_csv(rounded=rounded)
    _emit(text, output)


@cli.command()
@click.option("--kind", required=True,
              type=click.Choice([kind.value for kind in CurveKind]))
@click.option("--m", type=click.IntRange(min=1), required=True,
              help="Antenna count.")
@click.option("--k-db", required=True, callback=_k_db,
              help="K-factor in dB, '-inf' for Rayleigh.")
@click.option("--p-dif", type=float, default=1.0, show_default=True,
              help="Diffuse power gain.")
@click.option("--normalize", is_flag=True,
              help="Gains relative to the mean gain.")
@click.option("--per-antenna", is_flag=True,
              help="Divide local diversity by the antenna count.")
@click.option("--grid", callback=_grid,
              help="START:STOP:NUM in dB (gain axes) or log10 "
                   "(probability axis).")
@_output_option
def curve(kind, m, k_db, p_dif, normalize, per_antenna, grid, output):
    """CDF or local diversity curve as x,y CSV."""
    kind = CurveKind(kind)
    header = ("probability" if kind is CurveKind.LOCAL_DIVERSITY_VS_PROBABILITY
              else "gain_db",
              "cdf" if kind is CurveKind.CDF else "local_diversity")
    with _reported_errors():
        dist = GainDistribution(ChannelSpec.from_db(k_db, m, p_dif=p_dif))
        points = curve_points(kind, dist, grid, normalize=normalize,
                              per_antenna=per_antenna)
        text = points_to_csv(header, points)
    _emit(text, output)


@cli.command()
@click.option("--r", type=click.IntRange(min=1), default=10 ** 6,
              show_default=True, help="Number of samples.")
@click.option("--xi", type=float, default=0.99, show_default=True,
              help="Confidence.")
@click.option("--seed", type=click.IntRange(min=0), default=42,
              show_default=True)
@click.option("--m", type=click.IntRange(min=1), default=1,
              show_default=True, help="Antenna count.")
@click.option("--k-db", default="-inf", show_default=True, callback=_k_db,
              help="K-factor in dB.")
@click.option("--grid", callback=_grid, help="START:STOP:NUM in dB.")
@_output_option
def dkw(r, xi, seed, m, k_db, grid, output):
    """Analytic CDF, ECDF and DKW upper bound of a simulated channel."""
    with _reported_errors():
        demo = dkw_demo(r, xi, ChannelSpec.from_db(k_db, m), seed=seed,
                        grid=grid)
        text = points_to_csv(("gain_db", "cdf", "ecdf", "upper"),
                             demo.points)
    logger.debug("DKW floor %g, max deviation %g",
                 demo.epsilon, demo.max_deviation)
    _emit(text, output)


@cli.command()
@click.option("--config", "config_path",
              type=click.Path(exists=True, dir_okay=False),
              help="JSON scenario file; default is the 64 vs 32 antenna "
                   "deployment comparison.")
@_output_option
def scenario(config_path, output):
    """Compare deployments by fading margin, mean gain and local diversity.
    """
    with _reported_errors():
        if config_path is None:
            spec = parse_scenario_options(None)
        else:
            spec = load_scenario(config_path)
        text = json.dumps(scenario_report(spec), indent=2) + "\n"
    _emit(text, output)


@cli.command()
@click.option("--m", type=click.IntRange(min=1), required=True,
              help="Antenna count.")
@click.option("--k-db", required=True, callback=_k_db,
              help="K-factor in dB.")
@click.option("--p-dif", type=float, default=1.0, show_default=True)
@click.option("--n", type=click.IntRange(min=1), required=True,
              help="Number of samples.")
@click.option("--seed", type=click.IntRange(min=0), default=42,
              show_default=True)
@click.option("--streams", type=click.IntRange(min=1), default=1,
              show_default=True, help="Parallel sampling threads.")
@click.option("--xi", type=float, default=0.99, show_default=True)
@click.option("--dump", "dump_path",
              type=click.Path(dir_okay=False, writable=True),
              help="Write sorted gains in URDV binary format.")
@_output_option
def mc(m, k_db, p_dif, n, seed, streams, xi, dump_path, output):
    """Simulate effective gains and compare them with the analytic law."""
    with _reported_errors():
        spec = ChannelSpec.from_db(k_db, m, p_dif=p_dif)
        dist = GainDistribution(spec)
        ecdf = sample_effective_gains(SamplerConfig(
            spec=spec, seed=seed, n_samples=n, n_streams=streams))
        epsilon = dkw_epsilon(n, xi)
        deviation = ecdf_sup_deviation(ecdf, dist.cdf)
        rows = (
            ("n_samples", n),
            ("sample_mean", ecdf.mean()),
            ("analytic_mean", mean_gain(spec)),
            ("standard_error", math.sqrt(gain_variance(spec) / n)),
            ("dkw_epsilon", epsilon),
            ("max_deviation", deviation),
        )
        text = "".join("{},{}\n".format(key, format_number(value))
                       for key, value in rows)
        text += "within_band,{}\n".format(
            "true" if deviation <= epsilon else "false")
        if dump_path is not None:
            dump_gains(ecdf, dump_path)
    _emit(text, output)


def main():
    cli(prog_name="urdiv")
