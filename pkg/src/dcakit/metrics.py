"""Confusion counting and net-benefit style metrics at a single threshold.

Counts are the source of truth: every rate is a double computed from
exact integer counts. All operations are pure functions of immutable
inputs and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, ThresholdError, UsageError

__all__ = [
    "PredictionRecord",
    "PredictionSet",
    "ThresholdConfusion",
    "UtilityWeights",
    "check_threshold",
    "classify_at_threshold",
    "net_benefit",
    "net_benefit_treat_all",
    "net_benefit_treat_none",
    "ppv",
    "intervention_utility",
    "nb_equality_gap",
]


def check_threshold(t: float) -> float:
    """Validate a decision threshold; the weight t/(1-t) degenerates at 0 and 1."""
    t = float(t)
    if not 0.0 < t < 1.0:
        raise ThresholdError(f"threshold must lie strictly inside (0, 1), got {t!r}")
    return t


@dataclass(frozen=True)
class PredictionRecord:
    """One subject's predicted event risk and observed binary outcome."""

    risk: float
    outcome: int

    def __post_init__(self):
        if not 0.0 <= self.risk <= 1.0:
            raise DataError(f"risk must lie in [0, 1], got {self.risk!r}")
        if self.outcome not in (0, 1):
            raise DataError(f"outcome must be 0 or 1, got {self.outcome!r}")


@dataclass(frozen=True, eq=False)
class PredictionSet:
    """A named, ordered set of paired (risk, outcome) records.

    Arrays are copied and frozen on construction; ``n1``, ``n0`` and
    ``prevalence`` are derived from the outcome counts.
    """

    risks: np.ndarray
    outcomes: np.ndarray
    name: str = "model"

    def __post_init__(self):
        risks = np.asarray(self.risks, dtype=np.float64).copy()
        outcomes = np.asarray(self.outcomes).copy()
        if risks.ndim != 1 or outcomes.ndim != 1:
            raise DataError("risks and outcomes must be one-dimensional")
        if risks.shape != outcomes.shape:
            raise DataError(
                f"length mismatch: {risks.shape[0]} risks vs {outcomes.shape[0]} outcomes"
            )
        if risks.shape[0] < 1:
            raise DataError("a prediction set needs at least one record")
        bad = np.flatnonzero(~((risks >= 0.0) & (risks <= 1.0)))
        if bad.size:
            i = int(bad[0])
            raise DataError(f"risk out of [0, 1] at position {i}: {risks[i]!r}")
        if not np.isin(outcomes, (0, 1)).all():
            i = int(np.flatnonzero(~np.isin(outcomes, (0, 1)))[0])
            raise DataError(f"outcome must be 0 or 1 at position {i}: {outcomes[i]!r}")
        outcomes = outcomes.astype(np.int64)
        risks.setflags(write=False)
        outcomes.setflags(write=False)
        object.__setattr__(self, "risks", risks)
        object.__setattr__(self, "outcomes", outcomes)

    @classmethod
    def from_records(cls, records, name: str = "model") -> "PredictionSet":
        records = [
            r if isinstance(r, PredictionRecord) else PredictionRecord(*r) for r in records
        ]
        if not records:
            raise DataError("a prediction set needs at least one record")
        return cls(
            risks=np.array([r.risk for r in records], dtype=np.float64),
            outcomes=np.array([r.outcome for r in records], dtype=np.int64),
            name=name,
        )

    @property
    def n(self) -> int:
        return int(self.risks.shape[0])

    @property
    def n1(self) -> int:
        return int(np.count_nonzero(self.outcomes))

    @property
    def n0(self) -> int:
        return self.n - self.n1

    @property
    def prevalence(self) -> float:
        return self.n1 / self.n

    @property
    def records(self) -> tuple[PredictionRecord, ...]:
        return tuple(
            PredictionRecord(float(r), int(y)) for r, y in zip(self.risks, self.outcomes)
        )


@dataclass(frozen=True)
class ThresholdConfusion:
    """Confusion counts at one threshold; ties (risk == t) count as positive."""

    t: float
    tp: int
    fp: int
    tn: int
    fn: int
    n: int

    def __post_init__(self):
        check_threshold(self.t)
        for field in ("tp", "fp", "tn", "fn"):
            if getattr(self, field) < 0:
                raise DataError(f"{field} must be non-negative")
        if self.tp + self.fp + self.tn + self.fn != self.n:
            raise DataError("confusion counts must sum to n")

    @property
    def s_t(self) -> float:
        """Selection rate: fraction classified positive."""
        return (self.tp + self.fp) / self.n


@dataclass(frozen=True)
class UtilityWeights:
    """Per-cell utilities for TP, FP, TN and FN classifications."""

    u11: float
    u10: float
    u00: float
    u01: float

    def __post_init__(self):
        for field in ("u11", "u10", "u00", "u01"):
            if not math.isfinite(getattr(self, field)):
                raise DataError(f"{field} must be finite")


def classify_at_threshold(data: PredictionSet, t: float) -> ThresholdConfusion:
    """Split ``data`` at threshold ``t``; risk >= t classifies positive."""
    t = check_threshold(t)
    positive = data.risks >= t
    tp = int(np.count_nonzero(positive & (data.outcomes == 1)))
    fp = int(np.count_nonzero(positive)) - tp
    fn = data.n1 - tp
    tn = data.n0 - fp
    return ThresholdConfusion(t=t, tp=tp, fp=fp, tn=tn, fn=fn, n=data.n)


def net_benefit(c: ThresholdConfusion) -> float:
    """True-positive fraction minus false-positive fraction weighted by t/(1-t)."""
    return c.tp / c.n - (c.fp / c.n) * (c.t / (1.0 - c.t))


def net_benefit_treat_all(prevalence: float, t: float) -> float:
    """Net benefit of intervening on everyone; equals (prevalence - t)/(1 - t)."""
    t = check_threshold(t)
    if not 0.0 <= prevalence <= 1.0:
        raise DataError(f"prevalence must lie in [0, 1], got {prevalence!r}")
    return prevalence - (1.0 - prevalence) * (t / (1.0 - t))


def net_benefit_treat_none() -> float:
    """Net benefit of intervening on no one: exactly zero at every threshold."""
    return 0.0


def ppv(c: ThresholdConfusion) -> float:
    """Positive predictive value; defined as 0 when nobody is classified positive."""
    positives = c.tp + c.fp
    return c.tp / positives if positives > 0 else 0.0


def intervention_utility(c: ThresholdConfusion, w: UtilityWeights) -> float:
    """Average per-subject utility of acting on the classification.

    Weights (1, -t/(1-t), 0, 0) recover net benefit; weights (1, 0, 1, 0)
    recover accuracy.
    """
    return (c.tp * w.u11 + c.fp * w.u10 + c.tn * w.u00 + c.fn * w.u01) / c.n


def nb_equality_gap(c1: ThresholdConfusion, c2: ThresholdConfusion) -> float:
    """Signed net-benefit gap between two confusions at the same threshold.

    Zero exactly when the two classifications have equal net benefit even
    though their (tp, fp) pairs may differ.
    """
    if c1.t != c2.t:
        raise UsageError(f"thresholds differ: {c1.t!r} vs {c2.t!r}")
    if c1.n != c2.n:
        raise UsageError(f"cohort sizes differ: {c1.n} vs {c2.n}")
    w = c1.t / (1.0 - c1.t)
    return ((c1.tp - c2.tp) - w * (c1.fp - c2.fp)) / c1.n
