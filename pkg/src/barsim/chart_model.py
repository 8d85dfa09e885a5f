"""Stacked bar chart values and pair alignment."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    DuplicateLabel,
    EmptyChart,
    EmptyLabel,
    LabelMismatch,
    LengthMismatch,
    NegativeValue,
    NonFiniteValue,
)


@dataclass(frozen=True)
class Segment:
    label: str
    value: float

    def __post_init__(self):
        # labels compare case-sensitively after trimming
        object.__setattr__(self, "label", str(self.label).strip())


@dataclass(frozen=True)
class StackedBarChart:
    """One bar: a named whole split into ordered, labeled parts.

    Construction does not validate; call :func:`validate_chart` (every
    operation in this package does so before using a chart).
    """

    name: str
    segments: tuple[Segment, ...]

    def __post_init__(self):
        object.__setattr__(self, "name", str(self.name).strip())
        object.__setattr__(self, "segments", tuple(self.segments))

    @classmethod
    def from_items(cls, name: str, items: Iterable[tuple[str, float]]) -> "StackedBarChart":
        return cls(name, tuple(Segment(label, value) for label, value in items))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(seg.label for seg in self.segments)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(seg.value for seg in self.segments)

    @property
    def total(self) -> float:
        return math.fsum(self.values)

    def __len__(self) -> int:
        return len(self.segments)


@dataclass(frozen=True)
class ChartPair:
    left: StackedBarChart
    right: StackedBarChart


def validate_chart(chart: StackedBarChart) -> StackedBarChart:
    """Check chart invariants, raising on the first violation found.

    Segments are checked in order; for each one the label is checked before
    the value. Returns the chart unchanged so calls can be chained.
    """
    if not chart.segments:
        raise EmptyChart(chart.name)
    seen: set[str] = set()
    for i, seg in enumerate(chart.segments):
        if not seg.label:
            raise EmptyLabel(i)
        value = seg.value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise NonFiniteValue(i, value)
        if not math.isfinite(value):
            raise NonFiniteValue(i, value)
        if value < 0:
            raise NegativeValue(i, value)
        if seg.label in seen:
            raise DuplicateLabel(seg.label, i)
        seen.add(seg.label)
    return chart


def align_pair(left: StackedBarChart, right: StackedBarChart, by_label: bool = False) -> ChartPair:
    """Pair two charts so that segment i of each describes the same part.

    With ``by_label`` false the label sequences must already be identical.
    With ``by_label`` true, ``right`` is reordered to follow ``left``'s labels.
    """
    validate_chart(left)
    validate_chart(right)
    if len(left) != len(right):
        raise LengthMismatch(len(left), len(right))

    if not by_label:
        for i, (a, b) in enumerate(zip(left.labels, right.labels)):
            if a != b:
                raise LabelMismatch(
                    f"segment {i}: left label {a!r} does not match right label {b!r}"
                    " (use label alignment to reorder)",
                    position=i,
                )
        return ChartPair(left, right)

    by_name = {seg.label: seg for seg in right.segments}
    reordered = []
    for label in left.labels:
        if label not in by_name:
            raise LabelMismatch(
                f"right chart {right.name!r} has no segment labeled {label!r}", label=label
            )
        reordered.append(by_name[label])
    return ChartPair(left, StackedBarChart(right.name, tuple(reordered)))


def to_vector(chart: StackedBarChart) -> tuple[float, ...]:
    validate_chart(chart)
    return tuple(float(v) for v in chart.values)
