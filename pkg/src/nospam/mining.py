"""Ensemble generation and Z-score computation.

For the input graph, pattern counts are compared against an ensemble of
`samples` randomized graphs with the same degree signature.  Counts and
squared counts are accumulated streamingly; the Z-score of a cell is

    z = (original - mean) / sigma

with the population sigma (divide by the number of samples).  Sums are
kept as exact integers, so mean and sigma carry only the final division
and square-root rounding, results do not depend on accumulation order,
and a zero sigma is detected exactly rather than by tolerance.

Ensemble samples are independent: sample s owns the RNG substream
rng.child(s) and, by default, randomizes a fresh copy of the original
graph.  This makes results invariant under the number of workers and
under any partition of the sample range.  Chained mode instead feeds
each sample's output graph into the next randomization; samples are
then correlated and the run is strictly sequential.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import IntEnum
from math import comb, inf, sqrt

import numpy as np

from .catalog import CATALOG
from .counting import count_patterns_with_census
from .graph import Graph
from .randomize import RngStream, SwitchStats, randomize


class Flag(IntEnum):
    """Degeneracy state of one Z-score cell."""

    FINITE = 0
    #: sigma = 0 and original = mean; z reported as 0
    ZERO_SIGMA_ZERO_DELTA = 1
    #: sigma = 0 but original != mean; z reported as signed infinity
    ZERO_SIGMA_NONZERO_DELTA = 2


@dataclass(frozen=True)
class ZScoreTable:
    values: np.ndarray
    flags: np.ndarray  # uint8 array of Flag values, same shape


@dataclass(frozen=True)
class EnsembleResult:
    """Z-scores plus the raw ingredients they were computed from."""

    table: ZScoreTable
    original: np.ndarray
    mean: np.ndarray
    sigma: np.ndarray
    stats: SwitchStats


@dataclass(frozen=True)
class AnalysisResult:
    """One ensemble pass, scored at both granularities.

    node: per-node marked patterns, arrays of shape (num_nodes, 30).
    classes: global unmarked census, arrays of shape (13,).
    Both are computed from the same randomized graphs.
    """

    node: EnsembleResult
    classes: EnsembleResult
    samples: int
    attempts: int


def _accumulate(g: Graph, attempts: int, rng: RngStream, start: int, stop: int):
    """Moment sums over samples start..stop-1, each from a fresh copy."""
    n = g.num_nodes
    node_sum = np.zeros((n, CATALOG.num_marked_classes), dtype=np.int64)
    node_sq = np.zeros_like(node_sum)
    cen_sum = [0] * CATALOG.num_unmarked_classes
    cen_sq = [0] * CATALOG.num_unmarked_classes
    stats = SwitchStats()
    for s in range(start, stop):
        h, st = randomize(g, attempts, rng.child(s))
        marked, census = count_patterns_with_census(h)
        node_sum += marked
        node_sq += marked * marked
        for i, c in enumerate(census.tolist()):
            cen_sum[i] += c
            cen_sq[i] += c * c
        stats = stats + st
    return node_sum, node_sq, cen_sum, cen_sq, stats


def _accumulate_chained(g: Graph, attempts: int, rng: RngStream, samples: int):
    """Like _accumulate, but each sample continues from the previous one."""
    n = g.num_nodes
    node_sum = np.zeros((n, CATALOG.num_marked_classes), dtype=np.int64)
    node_sq = np.zeros_like(node_sum)
    cen_sum = [0] * CATALOG.num_unmarked_classes
    cen_sq = [0] * CATALOG.num_unmarked_classes
    stats = SwitchStats()
    current = g
    for s in range(samples):
        current, st = randomize(current, attempts, rng.child(s))
        marked, census = count_patterns_with_census(current)
        node_sum += marked
        node_sq += marked * marked
        for i, c in enumerate(census.tolist()):
            cen_sum[i] += c
            cen_sq[i] += c * c
        stats = stats + st
    return node_sum, node_sq, cen_sum, cen_sq, stats


def _cells_to_scores(orig, sums, sqs, samples: int):
    """Score flat cell lists; exact integer moments, float output."""
    vals: list[float] = []
    flags: list[int] = []
    means: list[float] = []
    sigmas: list[float] = []
    s_sq = samples
    for o, s, q in zip(orig, sums, sqs):
        num = s_sq * q - s * s
        if num < 0:
            raise AssertionError("variance numerator went negative; accumulator bug")
        mean = s / s_sq
        sigma = sqrt(num) / s_sq
        means.append(mean)
        sigmas.append(sigma)
        if num:
            vals.append((o - mean) / sigma)
            flags.append(Flag.FINITE)
        elif o * s_sq == s:
            vals.append(0.0)
            flags.append(Flag.ZERO_SIGMA_ZERO_DELTA)
        else:
            vals.append(inf if o * s_sq > s else -inf)
            flags.append(Flag.ZERO_SIGMA_NONZERO_DELTA)
    return vals, flags, means, sigmas


def _result(original: np.ndarray, sums, sqs, samples: int, stats: SwitchStats) -> EnsembleResult:
    shape = original.shape
    vals, flags, means, sigmas = _cells_to_scores(
        original.ravel().tolist(), sums, sqs, samples
    )
    return EnsembleResult(
        table=ZScoreTable(
            values=np.array(vals, dtype=np.float64).reshape(shape),
            flags=np.array(flags, dtype=np.uint8).reshape(shape),
        ),
        original=original,
        mean=np.array(means, dtype=np.float64).reshape(shape),
        sigma=np.array(sigmas, dtype=np.float64).reshape(shape),
        stats=stats,
    )


def _split(samples: int, parts: int) -> list[tuple[int, int]]:
    base, extra = divmod(samples, parts)
    ranges = []
    start = 0
    for k in range(parts):
        stop = start + base + (1 if k < extra else 0)
        if stop > start:
            ranges.append((start, stop))
        start = stop
    return ranges


def resolve_workers(workers: int | None, samples: int) -> int:
    """Explicit argument wins, then NOSPAM_THREADS, then the CPU count."""
    if workers is None:
        env = os.environ.get("NOSPAM_THREADS")
        if env:
            try:
                workers = int(env)
            except ValueError:
                raise ValueError(
                    f"NOSPAM_THREADS must be an integer, got {env!r}"
                ) from None
        else:
            workers = os.cpu_count() or 1
    return max(1, min(workers, samples))


def analyze(
    g: Graph,
    samples: int,
    attempts: int,
    rng: RngStream,
    *,
    chained: bool = False,
    workers: int | None = None,
) -> AnalysisResult:
    """Run one ensemble and score node patterns and global classes.

    samples must be at least 2 (a one-sample ensemble has no spread by
    construction).  attempts = 0 yields the fully degenerate ensemble:
    every sample equals the original and all cells flag as
    ZERO_SIGMA_ZERO_DELTA with z = 0.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    if attempts < 0:
        raise ValueError("attempts must be >= 0")
    n = g.num_nodes
    if n >= 3:
        # per-node counts are bounded by the pairs of other nodes; keep
        # the squared sums inside exact int64 range
        cap = comb(n - 1, 2)
        if samples * cap * cap >= 2**63:
            raise ValueError("samples too large for exact accumulation on this graph")

    original_marked, original_census = count_patterns_with_census(g)

    if chained:
        parts = [_accumulate_chained(g, attempts, rng, samples)]
    else:
        nworkers = resolve_workers(workers, samples)
        if nworkers == 1:
            parts = [_accumulate(g, attempts, rng, 0, samples)]
        else:
            ranges = _split(samples, nworkers)
            with ProcessPoolExecutor(max_workers=nworkers) as pool:
                futures = [
                    pool.submit(_accumulate, g, attempts, rng, a, b)
                    for a, b in ranges
                ]
                parts = [f.result() for f in futures]

    node_sum = np.zeros_like(original_marked)
    node_sq = np.zeros_like(original_marked)
    cen_sum = [0] * CATALOG.num_unmarked_classes
    cen_sq = [0] * CATALOG.num_unmarked_classes
    stats = SwitchStats()
    for p_sum, p_sq, p_cs, p_cq, p_st in parts:
        node_sum += p_sum
        node_sq += p_sq
        for i in range(len(cen_sum)):
            cen_sum[i] += p_cs[i]
            cen_sq[i] += p_cq[i]
        stats = stats + p_st

    node = _result(
        original_marked,
        node_sum.ravel().tolist(),
        node_sq.ravel().tolist(),
        samples,
        stats,
    )
    classes = _result(
        original_census, cen_sum, cen_sq, samples, stats
    )
    return AnalysisResult(node=node, classes=classes, samples=samples, attempts=attempts)


def mine(
    g: Graph,
    samples: int,
    attempts: int,
    rng: RngStream,
    *,
    chained: bool = False,
    workers: int | None = None,
) -> EnsembleResult:
    """Per-node Z-scores for the 30 marked patterns, shape (num_nodes, 30)."""
    return analyze(g, samples, attempts, rng, chained=chained, workers=workers).node


def global_zscores(
    g: Graph,
    samples: int,
    attempts: int,
    rng: RngStream,
    *,
    chained: bool = False,
    workers: int | None = None,
) -> EnsembleResult:
    """Graph-level Z-scores for the 13 unmarked classes, shape (13,)."""
    return analyze(g, samples, attempts, rng, chained=chained, workers=workers).classes
