"""Objective similarity scores for pairs of stacked bar charts.

A chart pair is turned into two vectors, divided by a common constant ``c``,
compared with a Minkowski distance of order ``r`` and mapped to a similarity
``s = exp(-d)`` in (0, 1]. Results are reported as ``(s=.., r=.., c=..)``.
"""

__version__ = "0.1.0"

from .aggregate import CollectionSummary, PairCollection, sim_avg, summarize
from .chart_model import ChartPair, Segment, StackedBarChart, align_pair, to_vector, validate_chart
from .errors import BarsimError, ParseError, ValidationError
from .io import (
    ChartTable,
    ReportTriple,
    format_report,
    parse_csv,
    parse_json,
    parse_pairs_manifest,
    parse_table,
    serialize_csv,
    serialize_json,
    serialize_results,
)
from .render import RenderSpec, render_pair
from .simcore import (
    EUCLIDEAN,
    MANHATTAN,
    ChartVector,
    ComparisonResult,
    MetricSpec,
    ScaleSpec,
    auto_scale,
    compare_pair,
    euclidean_distance,
    manhattan_distance,
    minkowski_distance,
    rescale,
    similarity,
)
