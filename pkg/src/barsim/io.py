"""Chart tables in CSV/JSON, pair manifests, the report triple and result output.

CSV table layout (comma separated, first row is a header)::

    segment,Democrats,Republicans
    A,500,567
    B,1000,900
    C,300,310

JSON table schema::

    {"charts": [{"name": "Democrats",
                 "segments": [{"label": "A", "value": 500}, ...]}, ...]}

Pair manifest::

    [{"left": "Democrats", "right": "Republicans"}, ...]
"""

from __future__ import annotations

import csv
import io as _io
import json
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Any, Iterable, Literal, Sequence

from .aggregate import CollectionSummary, PairCollection
from .chart_model import Segment, StackedBarChart, validate_chart
from .errors import (
    DuplicateChartName,
    DuplicateSegmentLabel,
    EmptyCollection,
    InvalidPrecision,
    LabelMismatch,
    MalformedCsv,
    NonNumericValue,
    RaggedRow,
    SchemaViolation,
    UnknownChartName,
)

OutputFormat = Literal["text", "json", "csv"]

# decimal with optional fraction and exponent; no thousands separators, no nan/inf
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class ChartTable:
    """Charts that share one segment-label column."""

    charts: tuple[StackedBarChart, ...]

    def __post_init__(self):
        charts = tuple(self.charts)
        object.__setattr__(self, "charts", charts)
        if not charts:
            raise EmptyCollection("chart table")
        names = set()
        for chart in charts:
            if chart.name in names:
                raise DuplicateChartName(chart.name)
            names.add(chart.name)
            validate_chart(chart)
            if chart.labels != charts[0].labels:
                raise LabelMismatch(
                    f"chart {chart.name!r} has segment labels {list(chart.labels)},"
                    f" expected {list(charts[0].labels)}"
                )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(chart.name for chart in self.charts)

    @property
    def labels(self) -> tuple[str, ...]:
        return self.charts[0].labels

    def get(self, name: str) -> StackedBarChart:
        for chart in self.charts:
            if chart.name == name:
                return chart
        raise UnknownChartName(name)


def _decode(text: str | bytes) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise MalformedCsv(text[: exc.start].count(b"\n") + 1, "input is not valid UTF-8")
    return text


# CSV


def parse_csv(text: str | bytes) -> ChartTable:
    text = _decode(text)
    reader = csv.reader(_io.StringIO(text, newline=""), strict=True)
    rows: list[tuple[int, list[str]]] = []
    try:
        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            rows.append((reader.line_num, row))
    except csv.Error as exc:
        raise MalformedCsv(reader.line_num, str(exc)) from None

    if not rows:
        raise MalformedCsv(1, "missing header row")
    header_line, header = rows[0]
    names = [cell.strip() for cell in header[1:]]
    if not names:
        raise MalformedCsv(header_line, "header names no charts")
    seen_names = set()
    for name in names:
        if not name:
            raise MalformedCsv(header_line, "empty chart name in header")
        if name in seen_names:
            raise DuplicateChartName(name)
        seen_names.add(name)

    columns: list[list[Segment]] = [[] for _ in names]
    seen_labels = set()
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise RaggedRow(line, len(header), len(row))
        label = row[0].strip()
        if not label:
            raise MalformedCsv(line, "empty segment label")
        if label in seen_labels:
            raise DuplicateSegmentLabel(line, label)
        seen_labels.add(label)
        for col, cell in enumerate(row[1:], start=2):
            cell = cell.strip()
            if not _NUMBER.fullmatch(cell):
                raise NonNumericValue(line, col, cell)
            columns[col - 2].append(Segment(label, float(cell)))

    return ChartTable(tuple(StackedBarChart(n, tuple(segs)) for n, segs in zip(names, columns)))


def _csv_text(rows: Iterable[Sequence[Any]]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def serialize_csv(table: ChartTable) -> str:
    rows = [["segment", *table.names]]
    for i, label in enumerate(table.labels):
        rows.append([label, *(repr(float(chart.segments[i].value)) for chart in table.charts)])
    return _csv_text(rows)


# JSON


def _reject_constant(name: str):
    raise SchemaViolation("$", f"{name} is not allowed")


def _load_json(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError:
            raise SchemaViolation("$", "input is not valid UTF-8") from None
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except RecursionError:
        raise SchemaViolation("$", "JSON nesting too deep") from None


def _expect_keys(obj: Any, path: str, keys: set[str]) -> None:
    if not isinstance(obj, dict):
        raise SchemaViolation(path, "expected an object")
    missing = keys - obj.keys()
    if missing:
        raise SchemaViolation(path, f"missing key {sorted(missing)[0]!r}")
    extra = obj.keys() - keys
    if extra:
        raise SchemaViolation(path, f"unexpected key {sorted(extra)[0]!r}")


def _expect_str(obj: Any, path: str) -> str:
    if not isinstance(obj, str):
        raise SchemaViolation(path, "expected a string")
    return obj


def parse_json(text: str | bytes) -> ChartTable:
    doc = _load_json(text)
    _expect_keys(doc, "$", {"charts"})
    charts_doc = doc["charts"]
    if not isinstance(charts_doc, list):
        raise SchemaViolation("$.charts", "expected an array")
    if not charts_doc:
        raise EmptyCollection("chart table")

    charts = []
    for i, chart_doc in enumerate(charts_doc):
        path = f"$.charts[{i}]"
        _expect_keys(chart_doc, path, {"name", "segments"})
        name = _expect_str(chart_doc["name"], f"{path}.name").strip()
        if not name:
            raise SchemaViolation(f"{path}.name", "chart name is empty")
        segs_doc = chart_doc["segments"]
        if not isinstance(segs_doc, list):
            raise SchemaViolation(f"{path}.segments", "expected an array")
        segments = []
        for j, seg_doc in enumerate(segs_doc):
            spath = f"{path}.segments[{j}]"
            _expect_keys(seg_doc, spath, {"label", "value"})
            label = _expect_str(seg_doc["label"], f"{spath}.label")
            value = seg_doc["value"]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaViolation(f"{spath}.value", "expected a number")
            try:
                value = float(value)
            except OverflowError:
                raise SchemaViolation(f"{spath}.value", "number out of range") from None
            segments.append(Segment(label, value))
        charts.append(StackedBarChart(name, tuple(segments)))
    return ChartTable(tuple(charts))


def table_to_dict(table: ChartTable) -> dict:
    return {
        "charts": [
            {
                "name": chart.name,
                "segments": [{"label": s.label, "value": float(s.value)} for s in chart.segments],
            }
            for chart in table.charts
        ]
    }


def serialize_json(table: ChartTable) -> str:
    return json.dumps(table_to_dict(table), indent=2, allow_nan=False) + "\n"


def parse_table(text: str | bytes, fmt: Literal["csv", "json"] | None = None) -> ChartTable:
    """Parse a chart table, sniffing the format when ``fmt`` is None."""
    if fmt is None:
        probe = text[:256].decode("utf-8", "replace") if isinstance(text, bytes) else text[:256]
        fmt = "json" if probe.lstrip("\ufeff \t\r\n").startswith(("{", "[")) else "csv"
    if fmt == "json":
        return parse_json(text)
    return parse_csv(text)


# pair manifests


def parse_pairs_manifest(text: str | bytes) -> list[tuple[str, str]]:
    doc = _load_json(text)
    if not isinstance(doc, list):
        raise SchemaViolation("$", "expected an array of pairs")
    pairs = []
    for i, item in enumerate(doc):
        path = f"$[{i}]"
        _expect_keys(item, path, {"left", "right"})
        pairs.append((_expect_str(item["left"], f"{path}.left"), _expect_str(item["right"], f"{path}.right")))
    return pairs


def resolve_pairs(
    pairs: Iterable[tuple[str, str]], table: ChartTable
) -> list[tuple[StackedBarChart, StackedBarChart]]:
    return [(table.get(left), table.get(right)) for left, right in pairs]


# report triple


@dataclass(frozen=True)
class ReportTriple:
    s: float
    r: float
    c: float
    precision: int = 2

    def __post_init__(self):
        p = self.precision
        if isinstance(p, bool) or not isinstance(p, int) or p < 1:
            raise InvalidPrecision(p)

    def __str__(self) -> str:
        return format_report(self)


def round_half_even(x: float, places: int) -> str:
    """Fixed-point text of ``x`` rounded half-to-even on its exact binary value."""
    return format(Decimal(x).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN), "f")


def plain_number(x: float) -> str:
    """Shortest positional text for ``x``: no exponent, no trailing zeros."""
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    text = format(Decimal(repr(float(x))), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def format_report(triple: ReportTriple) -> str:
    return f"(s={round_half_even(triple.s, triple.precision)}, r={plain_number(triple.r)}, c={plain_number(triple.c)})"


def report_for(result, precision: int = 2) -> str:
    return format_report(ReportTriple(result.s, result.r, result.c, precision))


# result output


def _summary_dict(summary: CollectionSummary) -> dict:
    out = {
        "mean": summary.mean,
        "variance": summary.variance,
        "std_dev": summary.std_dev,
        "m": summary.m,
        "variance_kind": summary.variance_kind,
        "r": summary.r,
        "c": summary.c,
    }
    if summary.warning:
        out["warning"] = summary.warning
    return out


def serialize_results(
    results: PairCollection,
    summary: CollectionSummary,
    fmt: OutputFormat = "text",
    precision: int = 2,
) -> str:
    """Render scored pairs and their summary.

    ``text`` uses the rounded report triple; ``json`` and ``csv`` carry every
    number at full precision (``repr`` round-trips double precision exactly).
    """
    if results.m == 0:
        raise EmptyCollection("pair collection")

    if fmt == "json":
        doc = {
            "pairs": [
                {
                    "id": pid,
                    "s": res.s,
                    "d": res.d,
                    "r": res.r,
                    "c": res.c,
                    "report": report_for(res, precision),
                }
                for pid, res in results.pairs
            ],
            "summary": _summary_dict(summary),
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"

    if fmt == "csv":
        rows: list[list[Any]] = [["id", "s", "d", "r", "c", "variance", "std_dev", "m"]]
        for pid, res in results.pairs:
            rows.append([pid, repr(res.s), repr(res.d), repr(res.r), repr(res.c), "", "", ""])
        rows.append([
            "SIM_avg",
            repr(summary.mean),
            "",
            "" if summary.r is None else repr(summary.r),
            "" if summary.c is None else repr(summary.c),
            repr(summary.variance),
            repr(summary.std_dev),
            summary.m,
        ])
        return _csv_text(rows)

    if fmt != "text":
        raise ValueError(f"unknown output format {fmt!r}")
    lines = [f"{pid}: {report_for(res, precision)}" for pid, res in results.pairs]
    lines.append(f"SIM_avg: {round_half_even(summary.mean, precision)}")
    lines.append(f"variance ({summary.variance_kind}): {round_half_even(summary.variance, precision)}")
    lines.append(f"std_dev: {round_half_even(summary.std_dev, precision)}")
    lines.append(f"m: {summary.m}")
    if summary.warning:
        lines.append(f"warning: {summary.warning}")
    return "\n".join(lines) + "\n"
