"""Rescaling, Minkowski distances and the exponential similarity score.

Similarity is ``s = exp(-d)`` where ``d`` is a Minkowski distance between
two charts' segment vectors after dividing every component by a common
constant ``c``:

>>> pair = ChartPair(
...     StackedBarChart.from_items("X", [("a", 500), ("b", 1000), ("c", 300)]),
...     StackedBarChart.from_items("Y", [("a", 1000), ("b", 500), ("c", 2000)]),
... )
>>> res = compare_pair(pair, EUCLIDEAN, ScaleSpec.explicit(1000))
>>> round(res.s, 6), round(res.d, 6)
(0.158628, 1.841195)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence, Union

from .chart_model import ChartPair, StackedBarChart, align_pair, to_vector, validate_chart
from .errors import (
    DimensionMismatch,
    EmptyCollection,
    InvalidOrder,
    NegativeDistance,
    NegativeValue,
    NonFiniteDistance,
    NonFiniteValue,
    NonPositiveScale,
    ScaleMismatch,
)


@dataclass(frozen=True)
class MetricSpec:
    r: float = 2.0

    def __post_init__(self):
        r = self.r
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise InvalidOrder(r)
        if not math.isfinite(r) or r < 1:
            raise InvalidOrder(r)
        object.__setattr__(self, "r", float(r))


MANHATTAN = MetricSpec(1.0)
EUCLIDEAN = MetricSpec(2.0)

MIN_SCALE_EXPONENT = -307

MetricLike = Union[MetricSpec, float, int]


def as_metric(metric: MetricLike) -> MetricSpec:
    return metric if isinstance(metric, MetricSpec) else MetricSpec(metric)


def _check_scale(c) -> float:
    if isinstance(c, bool) or not isinstance(c, (int, float)):
        raise NonPositiveScale(c)
    if not math.isfinite(c) or c <= 0:
        raise NonPositiveScale(c)
    return float(c)


@dataclass(frozen=True)
class ScaleSpec:
    mode: Literal["auto", "explicit"] = "auto"
    c: float | None = None

    def __post_init__(self):
        if self.mode == "explicit":
            object.__setattr__(self, "c", _check_scale(self.c))
        elif self.mode == "auto":
            if self.c is not None:
                raise ValueError("auto scale does not take a constant")
        else:
            raise ValueError(f"unknown scale mode {self.mode!r}")

    @classmethod
    def auto(cls) -> "ScaleSpec":
        return cls("auto")

    @classmethod
    def explicit(cls, c: float) -> "ScaleSpec":
        return cls("explicit", c)


@dataclass(frozen=True)
class ChartVector:
    components: tuple[float, ...]
    c: float

    @property
    def n(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class ComparisonResult:
    s: float
    d: float
    r: float
    c: float


def auto_scale(charts: Iterable[StackedBarChart]) -> float:
    """Largest power of ten not exceeding the largest segment value.

    This puts the biggest scaled component in [1, 10). Returns 1 when every
    segment is zero. Floored at ``1e-307`` for subnormal data.
    """
    charts = list(charts)
    if not charts:
        raise EmptyCollection("chart collection")
    top = 0.0
    for chart in charts:
        validate_chart(chart)
        top = max(top, max(chart.values))
    if top == 0:
        return 1.0
    k = math.floor(math.log10(top))
    # log10 can land one off near exact powers of ten
    if 10.0**k > top:
        k -= 1
    elif k < 308 and 10.0 ** (k + 1) <= top:
        k += 1
    # subnormal maxima: smaller powers of ten are not representable
    return 10.0 ** max(k, MIN_SCALE_EXPONENT)


def rescale(vector: Sequence[float], c: float) -> ChartVector:
    c = _check_scale(c)
    if len(vector) == 0:
        raise EmptyCollection("vector")
    out = []
    for i, v in enumerate(vector):
        if not math.isfinite(v):
            raise NonFiniteValue(i, v)
        if v < 0:
            raise NegativeValue(i, v)
        out.append(v / c)
    return ChartVector(tuple(out), c)


def _diffs(x: ChartVector, y: ChartVector) -> list[float]:
    if x.n != y.n:
        raise DimensionMismatch(x.n, y.n)
    if x.c != y.c:
        raise ScaleMismatch(x.c, y.c)
    return [abs(a - b) for a, b in zip(x.components, y.components)]


def minkowski_distance(x: ChartVector, y: ChartVector, metric: MetricLike = EUCLIDEAN) -> float:
    """``(sum |x_i - y_i|**r) ** (1/r)`` for any finite order ``r >= 1``."""
    r = as_metric(metric).r
    diffs = _diffs(x, y)
    biggest = max(diffs)
    if biggest == 0:
        return 0.0
    # factor out the largest term so large r neither overflows nor underflows
    return biggest * math.fsum((t / biggest) ** r for t in diffs) ** (1.0 / r)


def euclidean_distance(x: ChartVector, y: ChartVector) -> float:
    return math.hypot(*_diffs(x, y))


def manhattan_distance(x: ChartVector, y: ChartVector) -> float:
    return math.fsum(_diffs(x, y))


def similarity(d: float) -> float:
    """``exp(-d)``.

    Distances beyond ~745 underflow to 0.0 in double precision; rescaling by
    ``c`` exists to keep ``d`` far from that regime.
    """
    if not math.isfinite(d):
        raise NonFiniteDistance(d)
    if d < 0:
        raise NegativeDistance(d)
    return math.exp(-d)


def compare_pair(
    pair: ChartPair,
    metric: MetricLike = EUCLIDEAN,
    scale: ScaleSpec | None = None,
) -> ComparisonResult:
    """Score one aligned pair.

    ``scale`` defaults to auto, which picks ``c`` from the two charts of
    this pair only. To score several pairs on a common scale pass
    ``ScaleSpec.explicit`` with a ``c`` computed over all of them.
    """
    metric = as_metric(metric)
    if scale is None:
        scale = ScaleSpec.auto()
    align_pair(pair.left, pair.right)
    raw_x = to_vector(pair.left)
    raw_y = to_vector(pair.right)
    c = auto_scale([pair.left, pair.right]) if scale.mode == "auto" else scale.c
    d = minkowski_distance(rescale(raw_x, c), rescale(raw_y, c), metric)
    return ComparisonResult(s=similarity(d), d=d, r=metric.r, c=c)
