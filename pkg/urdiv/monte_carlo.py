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

"""Seeded Monte Carlo simulation of the MRC effective gain.

Samples are drawn in fixed blocks of `BLOCK_SIZE` vectors.  Block ``b``
owns the generator ``PCG64(SeedSequence(seed, spawn_key=(b,)))``, so the
sample multiset depends only on the seed and the sample count; the number
of parallel streams merely decides how blocks are spread over threads.

Each complex normal entry is generated from two uniforms with the
Box-Muller polar form, ``sqrt(-P_dif ln(1 - u1)) e^(j 2 pi u2)``, giving
total variance P_dif (P_dif / 2 per real dimension).

Simulation is meant for validating the analytic model in the body of the
distribution.  Reliable ECDFs at outage probabilities of 1e-6 need on the
order of 1e13 samples, far beyond `DEFAULT_SAMPLE_CAP`.
"""

import collections
import concurrent.futures
import logging
import math
import pathlib

import numpy as np

from .channel_spec import ChannelSpec
from .errors import (DomainError, DumpFormatError, SampleCapError,
                     check_count, check_real)
from .reliability_metrics import dkw_epsilon

__all__ = (
    "SamplerConfig", "EcdfResult", "DkwBand", "PhaseInvarianceReport",
    "sample_effective_gains", "ecdf_evaluate", "dkw_band",
    "ecdf_sup_deviation", "phase_invariance_check",
    "dump_gains", "load_gains",
    "DEFAULT_SAMPLE_CAP", "BLOCK_SIZE",
)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLE_CAP = 10 ** 8
BLOCK_SIZE = 2 ** 12

_TWO_PI = 2.0 * math.pi

_DUMP_MAGIC = b"URDV"
_DUMP_VERSION = 1
_DUMP_HEADER = np.dtype([("magic", "S4"), ("version", "<u4"),
                         ("count", "<u8")])


class SamplerConfig(collections.namedtuple(
        "Base", ("spec", "phases", "seed", "n_samples", "n_streams",
                 "sample_cap"))):
    """Monte Carlo sampler settings."""

    __slots__ = ()

    def __new__(cls, *, spec, n_samples, seed=0, phases=None, n_streams=1,
                sample_cap=DEFAULT_SAMPLE_CAP):
        """Construct sampler settings.

        :param spec:
            Fading environment to simulate.
        :param n_samples:
            Number of channel vectors to draw.
        :param seed:
            Unsigned 64-bit seed.
        :param phases:
            Phases of the deterministic components per antenna, reduced
            to [0, 2 pi).  Default is all zero.
        :param n_streams:
            Number of parallel sampling threads.
        :param sample_cap:
            Largest `n_samples` that may be held in memory.
        """
        if not isinstance(spec, ChannelSpec):
            raise DomainError(
                "'spec' must be ChannelSpec instance, "
                "got '{!r}'".format(spec))

        if phases is None:
            _phases = (0.0,) * spec.m
        else:
            _phases = tuple(
                check_real("phases[{}]".format(i), phi) % _TWO_PI
                for i, phi in enumerate(phases))
            if len(_phases) != spec.m:
                raise DomainError(
                    "'phases' must have {} entries, got {}".format(
                        spec.m, len(_phases)))

        _seed = check_count("seed", seed, minimum=0)
        if _seed >= 2 ** 64:
            raise DomainError(
                "'seed' must be below 2**64, got '{!r}'".format(seed))

        return super().__new__(
            cls, spec=spec, phases=_phases, seed=_seed,
            n_samples=check_count("n_samples", n_samples),
            n_streams=check_count("n_streams", n_streams),
            sample_cap=check_count("sample_cap", sample_cap))

    def __getnewargs_ex__(self):
        return (), self._asdict()


class EcdfResult:
    """Empirical CDF of effective gain samples.

    Immutable: the sorted sample array is read-only.
    """

    __slots__ = ("_sorted_gains",)

    def __init__(self, gains, *, presorted=False):
        gains = np.array(gains, dtype=np.float64)
        if gains.ndim != 1 or gains.size == 0:
            raise DomainError(
                "'gains' must be a non-empty 1-d sequence, "
                "got shape {}".format(gains.shape))
        if not presorted:
            gains.sort()
        gains.flags.writeable = False
        self._sorted_gains = gains

    @property
    def sorted_gains(self):
        return self._sorted_gains

    @property
    def r(self):
        return self._sorted_gains.size

    def evaluate(self, q):
        """Right-continuous ECDF value(s): fraction of samples <= `q`."""
        if np.ndim(q) == 0:
            q = check_real("q", np.asarray(q).item(), finite=False)
        elif np.isnan(q).any():
            raise DomainError("'q' must not contain NaN")
        counts = np.searchsorted(self._sorted_gains, q, side="right")
        return counts / self.r

    def mean(self):
        return float(np.mean(self._sorted_gains))

    def quantile_probes(self, n_probes):
        """Sample values at `n_probes` evenly spaced ranks."""
        ranks = ((np.arange(n_probes) + 0.5) * self.r / n_probes).astype(int)
        return self._sorted_gains[ranks]

    def __repr__(self):
        return "<EcdfResult r={}>".format(self.r)


class DkwBand(collections.namedtuple("Base", ("ecdf", "epsilon"))):
    """Confidence band ``[ecdf - epsilon, ecdf + epsilon]`` clipped to
    [0, 1].

    Calling the band with a gain returns ``(lower, upper)``.  Below the
    smallest sample the upper bound floors at `epsilon`.
    """

    __slots__ = ()

    def lower(self, q):
        return np.maximum(0.0, self.ecdf.evaluate(q) - self.epsilon)

    def upper(self, q):
        return np.minimum(1.0, self.ecdf.evaluate(q) + self.epsilon)

    def __call__(self, q):
        return self.lower(q), self.upper(q)


PhaseInvarianceReport = collections.namedtuple(
    "PhaseInvarianceReport", ("passed", "max_deviation", "tolerance"))


def _sample_block(config, index, size):
    spec = config.spec
    rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(config.seed, spawn_key=(index,))))
    uniforms = rng.random((2, size, spec.m))

    radius = np.sqrt(-spec.p_dif * np.log1p(-uniforms[0]))
    angle = _TWO_PI * uniforms[1]

    k_factors = np.asarray(spec.k_factors)
    phases = np.asarray(config.phases)
    los = np.sqrt(k_factors * spec.p_dif)

    real = radius * np.cos(angle) + los * np.cos(phases)
    imag = radius * np.sin(angle) + los * np.sin(phases)
    return np.sum(real * real + imag * imag, axis=1)


def sample_effective_gains(config):
    """Draw `config.n_samples` effective MRC gains ``sum_m |h_m|^2``."""
    if config.n_samples > config.sample_cap:
        raise SampleCapError(
            "{} samples requested, the in-memory cap is {}".format(
                config.n_samples, config.sample_cap))

    n_blocks, remainder = divmod(config.n_samples, BLOCK_SIZE)
    blocks = [(index, BLOCK_SIZE) for index in range(n_blocks)]
    if remainder:
        blocks.append((n_blocks, remainder))
    logger.debug("sampling %d gains in %d blocks over %d streams",
                 config.n_samples, len(blocks), config.n_streams)

    if config.n_streams == 1:
        parts = [_sample_block(config, index, size)
                 for index, size in blocks]
    else:
        with concurrent.futures.ThreadPoolExecutor(
                max_workers=config.n_streams) as executor:
            parts = list(executor.map(
                lambda block: _sample_block(config, *block), blocks))

    return EcdfResult(np.concatenate(parts))


def ecdf_evaluate(ecdf, q):
    return ecdf.evaluate(q)


def dkw_band(ecdf, xi):
    """DKW confidence band of `ecdf` at confidence `xi`."""
    return DkwBand(ecdf=ecdf, epsilon=dkw_epsilon(ecdf.r, xi))


def ecdf_sup_deviation(ecdf, cdf, n_probes=100):
    """Largest ``|ecdf(q) - cdf(q)|`` over `n_probes` sample quantiles.

    `cdf` is any callable of a scalar gain, e.g. ``dist.cdf``.
    """
    n_probes = check_count("n_probes", n_probes)
    probes = ecdf.quantile_probes(n_probes)
    empirical = ecdf.evaluate(probes)
    analytic = np.array([cdf(float(q)) for q in probes])
    return float(np.max(np.abs(empirical - analytic)))


def phase_invariance_check(spec, seed, n, *, xi=0.99, n_probes=100):
    """Compare ECDFs drawn with all-zero and with random LoS phases.

    The effective gain only depends on ``|h_m|^2``, so its law should not
    change with the phases.  Both runs share the seed; the ECDFs must stay
    within ``2 * dkw_epsilon(n, xi)`` of each other at `n_probes` points.
    """
    phase_rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(seed, spawn_key=(2 ** 32,))))
    random_phases = phase_rng.uniform(0.0, _TWO_PI, spec.m)

    reference = sample_effective_gains(
        SamplerConfig(spec=spec, seed=seed, n_samples=n))
    rotated = sample_effective_gains(
        SamplerConfig(spec=spec, seed=seed, n_samples=n,
                      phases=random_phases.tolist()))

    probes = reference.quantile_probes(check_count("n_probes", n_probes))
    deviation = float(np.max(np.abs(
        reference.evaluate(probes) - rotated.evaluate(probes))))
    tolerance = 2.0 * dkw_epsilon(n, xi)
    logger.debug("phase invariance: deviation %g, tolerance %g",
                 deviation, tolerance)
    return PhaseInvarianceReport(
        passed=deviation <= tolerance, max_deviation=deviation,
        tolerance=tolerance)


def dump_gains(ecdf, path):
    """Write sorted gains as little-endian float64 after a 16-byte header
    (magic ``URDV``, u32 version, u64 count)."""
    header = np.array([(_DUMP_MAGIC, _DUMP_VERSION, ecdf.r)],
                      dtype=_DUMP_HEADER)
    with open(path, "wb") as f:
        f.write(header.tobytes())
        f.write(ecdf.sorted_gains.astype("<f8").tobytes())


def load_gains(path):
    data = pathlib.Path(path).read_bytes()
    if (len(data) < _DUMP_HEADER.itemsize or
            (len(data) - _DUMP_HEADER.itemsize) % 8):
        raise DumpFormatError(
            "'{}' is not a whole number of gain records".format(path))
    header = np.frombuffer(data, dtype=_DUMP_HEADER, count=1)[0]
    if header["magic"] != _DUMP_MAGIC:
        raise DumpFormatError(
            "'{}' has magic {!r}, expected {!r}".format(
                path, header["magic"], _DUMP_MAGIC))
    if header["version"] != _DUMP_VERSION:
        raise DumpFormatError(
            "'{}' has unsupported version {}".format(path, header["version"]))
    gains = np.frombuffer(data, dtype="<f8", offset=_DUMP_HEADER.itemsize)
    if gains.size != header["count"]:
        raise DumpFormatError(
            "'{}' announces {} gains but holds {}".format(
                path, header["count"], gains.size))
    if not np.isfinite(gains).all() or (gains < 0.0).any():
        raise DumpFormatError(
            "'{}' holds negative or non-finite gains".format(path))
    if (gains[1:] < gains[:-1]).any():
        raise DumpFormatError("'{}' gains are not sorted".format(path))
    return EcdfResult(gains, presorted=True)
