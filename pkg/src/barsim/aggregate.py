"""Pooled statistics over a collection of scored chart pairs."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import EmptyCollection, MixedMetric, MixedScale, SampleVarianceUndefined
from .simcore import ComparisonResult

VarianceKind = Literal["population", "sample"]

MIXED_SCALE_WARNING = "results use different scale constants; pooled statistics mix scales"


@dataclass(frozen=True)
class PairCollection:
    pairs: tuple[tuple[str, ComparisonResult], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((str(i), res) for i, res in self.pairs))

    @classmethod
    def of(cls, results: Iterable[ComparisonResult]) -> "PairCollection":
        """Collect unnamed results, numbering them from 1."""
        return cls(tuple((str(i), res) for i, res in enumerate(results, 1)))

    @property
    def m(self) -> int:
        return len(self.pairs)

    @property
    def scores(self) -> list[float]:
        return [res.s for _, res in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class CollectionSummary:
    mean: float
    variance: float
    std_dev: float
    m: int
    variance_kind: VarianceKind = "population"
    # shared settings; None when the collection is mixed
    r: float | None = None
    c: float | None = None
    warning: str | None = None


def _check_uniform(collection: PairCollection, allow_mixed_scale: bool) -> None:
    if collection.m == 0:
        raise EmptyCollection("pair collection")
    orders = [res.r for _, res in collection.pairs]
    if any(r != orders[0] for r in orders):
        raise MixedMetric(orders)
    scales = [res.c for _, res in collection.pairs]
    if not allow_mixed_scale and any(c != scales[0] for c in scales):
        raise MixedScale(scales)


def _mean(scores: list[float]) -> float:
    mean = math.fsum(scores) / len(scores)
    # division can round one ulp outside the data range
    return min(max(mean, min(scores)), max(scores))


def sim_avg(collection: PairCollection, allow_mixed_scale: bool = False) -> float:
    _check_uniform(collection, allow_mixed_scale)
    return _mean(collection.scores)


def summarize(
    collection: PairCollection,
    kind: VarianceKind = "population",
    allow_mixed_scale: bool = False,
) -> CollectionSummary:
    """Mean, variance and standard deviation of the similarity scores.

    Population variance divides by ``m``, sample variance by ``m - 1``.
    With ``allow_mixed_scale`` the summary is still computed over results
    with differing ``c``, but it carries a warning and no shared ``c``.
    """
    if kind not in ("population", "sample"):
        raise ValueError(f"unknown variance kind {kind!r}")
    _check_uniform(collection, allow_mixed_scale)
    scores = collection.scores
    m = len(scores)
    if kind == "sample" and m < 2:
        raise SampleVarianceUndefined(m)

    mean = _mean(scores)
    if kind == "population":
        variance = statistics.pvariance(scores)
    else:
        variance = statistics.variance(scores)

    first = collection.pairs[0][1]
    mixed = any(res.c != first.c for _, res in collection.pairs)
    return CollectionSummary(
        mean=mean,
        variance=variance,
        std_dev=math.sqrt(variance),
        m=m,
        variance_kind=kind,
        r=first.r,
        c=None if mixed else first.c,
        warning=MIXED_SCALE_WARNING if mixed else None,
    )
