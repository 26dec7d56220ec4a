"""Percentile bootstrap bands for net-benefit and PPV curves.

Replicate i draws its indices from a PCG64 generator seeded with
SeedSequence(seed).spawn(...)[i], so bands are reproducible and
independent of any execution order. Quantiles use the nearest-rank
rule: the value at rank ceil(q * m) among m sorted replicate values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import ThresholdGrid
from .errors import DataError
from .metrics import PredictionSet

__all__ = ["BandSpec", "CurveBand", "bootstrap_bands"]


@dataclass(frozen=True)
class BandSpec:
    """Bootstrap configuration: replicate count, seed, level, method."""

    replicates: int = 1000
    seed: int = 0
    level: float = 0.95
    method: str = "percentile"

    def __post_init__(self):
        if self.replicates < 1:
            raise DataError(f"replicates must be at least 1, got {self.replicates!r}")
        if self.seed < 0:
            raise DataError(f"seed must be non-negative, got {self.seed!r}")
        if not 0.0 < self.level < 1.0:
            raise DataError(f"level must lie in (0, 1), got {self.level!r}")
        if self.method != "percentile":
            raise DataError(f"unsupported bootstrap method {self.method!r}")


@dataclass(frozen=True)
class CurveBand:
    """Per-threshold quantile bands.

    PPV pools exclude replicates whose selection rate is zero at that
    threshold (their conventional PPV of 0 would distort the band);
    ``ppv_replicates`` records how many replicates remained. When none
    remain the PPV band entries are None.
    """

    spec: BandSpec
    thresholds: tuple[float, ...]
    nb_lower: tuple[float, ...]
    nb_upper: tuple[float, ...]
    ppv_lower: tuple[float | None, ...]
    ppv_upper: tuple[float | None, ...]
    ppv_replicates: tuple[int, ...]


def _nearest_rank(sorted_values: np.ndarray, q: float) -> float:
    m = len(sorted_values)
    # Tiny guard so float fuzz in q*m cannot bump the rank.
    rank = math.ceil(q * m - 1e-9)
    rank = min(max(rank, 1), m)
    return float(sorted_values[rank - 1])


def _grid_counts(cut_indices: np.ndarray, outcomes: np.ndarray, n_grid: int):
    """tp and fp per grid threshold from per-record cut indices.

    ``cut_indices[i]`` is the number of grid thresholds at or below
    record i's risk, so record i is classified positive at grid slot j
    exactly when j < cut_indices[i].
    """
    events = outcomes == 1
    by_cut_1 = np.bincount(cut_indices[events], minlength=n_grid + 1)
    by_cut_0 = np.bincount(cut_indices[~events], minlength=n_grid + 1)
    tp = by_cut_1.sum() - np.cumsum(by_cut_1)[:n_grid]
    fp = by_cut_0.sum() - np.cumsum(by_cut_0)[:n_grid]
    return tp, fp


def bootstrap_bands(data: PredictionSet, grid: ThresholdGrid, spec: BandSpec) -> CurveBand:
    """Resample records with replacement and band the per-threshold curves."""
    if data.n < 2:
        raise DataError("bootstrap needs at least 2 records")
    thresholds = np.asarray(grid.points)
    n_grid = len(thresholds)
    weight = thresholds / (1.0 - thresholds)
    # Record i is positive at grid slot j iff thresholds[j] <= risks[i].
    cuts = np.searchsorted(thresholds, data.risks, side="right")
    n = data.n

    nb_pool = np.empty((spec.replicates, n_grid))
    ppv_pool = np.full((spec.replicates, n_grid), np.nan)
    children = np.random.SeedSequence(spec.seed).spawn(spec.replicates)
    for i, child in enumerate(children):
        rng = np.random.Generator(np.random.PCG64(child))
        idx = rng.integers(0, n, size=n)
        tp, fp = _grid_counts(cuts[idx], data.outcomes[idx], n_grid)
        positives = tp + fp
        nb_pool[i] = tp / n - (fp / n) * weight
        selected = positives > 0
        ppv_pool[i, selected] = tp[selected] / positives[selected]

    q_lo = (1.0 - spec.level) / 2.0
    q_hi = 1.0 - q_lo
    nb_lower, nb_upper = [], []
    ppv_lower, ppv_upper, ppv_used = [], [], []
    for j in range(n_grid):
        nb_sorted = np.sort(nb_pool[:, j])
        nb_lower.append(_nearest_rank(nb_sorted, q_lo))
        nb_upper.append(_nearest_rank(nb_sorted, q_hi))
        col = ppv_pool[:, j]
        col = np.sort(col[~np.isnan(col)])
        ppv_used.append(len(col))
        if len(col):
            ppv_lower.append(_nearest_rank(col, q_lo))
            ppv_upper.append(_nearest_rank(col, q_hi))
        else:
            ppv_lower.append(None)
            ppv_upper.append(None)

    return CurveBand(
        spec=spec,
        thresholds=tuple(float(t) for t in grid.points),
        nb_lower=tuple(nb_lower),
        nb_upper=tuple(nb_upper),
        ppv_lower=tuple(ppv_lower),
        ppv_upper=tuple(ppv_upper),
        ppv_replicates=tuple(ppv_used),
    )
