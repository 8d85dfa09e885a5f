"""Command-line interface.

Exit codes: 0 success, 1 validation or usage error, 2 malformed input file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .aggregate import PairCollection, summarize
from .chart_model import StackedBarChart, align_pair
from .errors import BarsimError, ValidationError
from .io import ChartTable, _csv_text, parse_pairs_manifest, parse_table, report_for, serialize_results
from .render import RenderSpec, render_pair
from .simcore import ComparisonResult, MetricSpec, ScaleSpec, auto_scale, compare_pair

PROG = "barsim"


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    # bad flags are validation errors (exit 1); exit 2 is reserved for malformed input files
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    inputs: list[str]
    left: str | None = None
    right: str | None = None
    metric: MetricSpec = field(default_factory=MetricSpec)
    scale: ScaleSpec = field(default_factory=ScaleSpec.auto)
    align_by_label: bool = False
    variance_kind: str = "population"
    per_pair_scale: bool = False
    format: str = "text"
    precision: int = 2
    output: str | None = None
    width: int = 360
    height: int = 400
    show_values: bool = True


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description="Exponential similarity scores for pairs of stacked bar charts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_format=True):
        p.add_argument("-r", "--metric-order", default="2", metavar="R",
                       help="Minkowski order, >= 1 (1 Manhattan, 2 Euclidean; default 2)")
        p.add_argument("-c", "--scale", default="auto", metavar="C",
                       help='scale constant, or "auto" (default)')
        p.add_argument("--align-by-label", action="store_true",
                       help="reorder the right chart's segments to match the left chart's labels")
        p.add_argument("--precision", default="2", metavar="N",
                       help="decimal places for s in the report (default 2)")
        if with_format:
            p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("-o", "--output", metavar="PATH")

    for name, help_text in (("compare", "score one pair of charts"), ("render", "write an SVG of one pair")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("inputs", nargs="+", metavar="INPUT",
                       help="chart table (CSV or JSON); a second table supplies the right chart")
        p.add_argument("--left", help="left chart name (default: first chart)")
        p.add_argument("--right", help="right chart name (default: next chart)")
        common(p, with_format=(name == "compare"))
        if name == "render":
            p.add_argument("--width", default="360")
            p.add_argument("--height", default="400")
            p.add_argument("--no-values", action="store_true", help="omit value labels on segments")

    p = sub.add_parser("batch", help="score every pair in a manifest and summarize")
    p.add_argument("inputs", nargs=2, metavar=("TABLE", "PAIRS"))
    common(p)
    p.add_argument("--variance", choices=("population", "sample"), default="population")
    p.add_argument("--per-pair-scale", action="store_true",
                   help="choose c per pair instead of once for the whole batch")
    return parser


def _parse_number(text: str, flag: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"{flag}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise UsageError(f"{flag}: {text!r} is not finite")
    return value


def _parse_int(text: str, flag: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{flag}: {text!r} is not an integer") from None


def parse_config(argv: Sequence[str]) -> CliConfig:
    """Parse and validate flags. No file is touched here."""
    ns = _build_parser().parse_args(argv)
    cfg = CliConfig(command=ns.command, inputs=list(ns.inputs))
    for key in ("left", "right", "output", "align_by_label", "variance", "per_pair_scale", "format"):
        if hasattr(ns, key):
            setattr(cfg, "variance_kind" if key == "variance" else key, getattr(ns, key))

    cfg.metric = MetricSpec(_parse_number(ns.metric_order, "--metric-order"))
    if ns.scale.strip().lower() == "auto":
        cfg.scale = ScaleSpec.auto()
    else:
        cfg.scale = ScaleSpec.explicit(_parse_number(ns.scale, "--scale"))
    cfg.precision = _parse_int(ns.precision, "--precision")
    if cfg.precision < 1:
        raise UsageError(f"--precision must be a positive integer, got {cfg.precision}")

    if cfg.command in ("compare", "render") and len(cfg.inputs) > 2:
        raise UsageError(f"{cfg.command} takes one or two input tables")
    if cfg.command == "render":
        if not cfg.output:
            raise UsageError("render requires -o/--output")
        cfg.width = _parse_int(ns.width, "--width")
        cfg.height = _parse_int(ns.height, "--height")
        cfg.show_values = not ns.no_values
        try:
            RenderSpec(cfg.width, cfg.height)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return cfg


class InputError(BarsimError):
    """A library error tagged with the file it came from."""

    def __init__(self, path: str, cause: BarsimError):
        self.exit_code = cause.exit_code
        super().__init__(f"{path}: {cause}")


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read: {exc.strerror or exc}") from None


def load_table(path: str) -> ChartTable:
    fmt = {".json": "json", ".csv": "csv"}.get(Path(path).suffix.lower())
    data = _read(path)
    try:
        return parse_table(data, fmt)
    except BarsimError as exc:
        raise InputError(path, exc) from exc


def _select(cfg: CliConfig) -> tuple[StackedBarChart, StackedBarChart]:
    first = load_table(cfg.inputs[0])
    second = load_table(cfg.inputs[1]) if len(cfg.inputs) == 2 else None

    left = first.get(cfg.left) if cfg.left else first.charts[0]
    if second is not None:
        right = second.get(cfg.right) if cfg.right else second.charts[0]
    elif cfg.right:
        right = first.get(cfg.right)
    else:
        rest = [c for c in first.charts if c.name != left.name]
        if not rest:
            raise UsageError(f"{cfg.inputs[0]}: only one chart; name the right chart with --right")
        right = rest[0]
    return left, right


def _emit(text: str, cfg: CliConfig, stdout) -> None:
    if cfg.output:
        _write(cfg.output, text)
    else:
        stdout.write(text)


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"{path}: cannot write: {exc.strerror or exc}") from None


def _pair_id(left: StackedBarChart, right: StackedBarChart) -> str:
    return f"{left.name} vs {right.name}"


def _result_fields(res: ComparisonResult, precision: int) -> dict:
    return {"s": res.s, "d": res.d, "r": res.r, "c": res.c, "report": report_for(res, precision)}


def cmd_compare(cfg: CliConfig, stdout) -> int:
    left, right = _select(cfg)
    pair = align_pair(left, right, cfg.align_by_label)
    res = compare_pair(pair, cfg.metric, cfg.scale)
    if cfg.format == "json":
        doc = {"left": left.name, "right": right.name, **_result_fields(res, cfg.precision)}
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.format == "csv":
        text = _csv_text([["id", "s", "d", "r", "c"],
                          [_pair_id(left, right), repr(res.s), repr(res.d), repr(res.r), repr(res.c)]])
    else:
        text = report_for(res, cfg.precision) + "\n"
    _emit(text, cfg, stdout)
    return 0


def cmd_batch(cfg: CliConfig, stdout) -> int:
    table_path, pairs_path = cfg.inputs
    table = load_table(table_path)
    try:
        names = parse_pairs_manifest(_read(pairs_path))
    except BarsimError as exc:
        raise InputError(pairs_path, exc) from exc

    charts = []
    for left_name, right_name in names:
        try:
            charts.append((table.get(left_name), table.get(right_name)))
        except BarsimError as exc:
            raise InputError(pairs_path, exc) from exc
    if not charts:
        raise InputError(pairs_path, ValidationError("pair manifest is empty"))

    scale = cfg.scale
    if scale.mode == "auto" and not cfg.per_pair_scale:
        scale = ScaleSpec.explicit(auto_scale({c.name: c for pair in charts for c in pair}.values()))

    results = []
    for left, right in charts:
        pair = align_pair(left, right, cfg.align_by_label)
        results.append((_pair_id(left, right), compare_pair(pair, cfg.metric, scale)))
    collection = PairCollection(tuple(results))
    summary = summarize(collection, cfg.variance_kind, allow_mixed_scale=cfg.per_pair_scale)
    _emit(serialize_results(collection, summary, cfg.format, cfg.precision), cfg, stdout)
    return 0


def cmd_render(cfg: CliConfig, stdout) -> int:
    left, right = _select(cfg)
    pair = align_pair(left, right, cfg.align_by_label)
    res = compare_pair(pair, cfg.metric, cfg.scale)
    spec = RenderSpec(cfg.width, cfg.height, show_values=cfg.show_values)
    _write(cfg.output, render_pair(pair, res, spec, cfg.precision))
    stdout.write(report_for(res, cfg.precision) + "\n")
    return 0


COMMANDS = {"compare": cmd_compare, "batch": cmd_batch, "render": cmd_render}


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg, stdout)
    except BarsimError as exc:
        print(f"{PROG}: error: {exc}", file=stderr)
        return exc.exit_code
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else 0


def run() -> None:
    sys.exit(main())
