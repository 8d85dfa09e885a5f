"""Side-by-side SVG of a scored chart pair.

Only ``rect``, ``text`` and ``line`` elements are emitted. Both bars share
one value axis running from 0 to the larger bar total, so a difference in
magnitude stays visible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from xml.sax.saxutils import escape as _escape
from xml.sax.saxutils import quoteattr

from .chart_model import ChartPair, align_pair
from .io import plain_number, report_for
from .simcore import ComparisonResult

DEFAULT_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#9c755f",
)

MARGIN_TOP = 40
MARGIN_BOTTOM = 30
MARGIN_LEFT = 56
LEGEND_WIDTH = 120
MIN_LABEL_HEIGHT = 14


@dataclass(frozen=True)
class RenderSpec:
    width: int = 360
    height: int = 400
    palette: tuple[str, ...] = DEFAULT_PALETTE
    show_values: bool = True

    def __post_init__(self):
        object.__setattr__(self, "palette", tuple(self.palette))
        for name in ("width", "height"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 64:
                raise ValueError(f"{name} must be an integer >= 64, got {v!r}")
        if not self.palette:
            raise ValueError("palette must not be empty")


# characters not allowed anywhere in an XML 1.0 document
_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff\ud800-\udfff]")


def escape(text: str) -> str:
    return _escape(_XML_ILLEGAL.sub("", text))


def _num(x: float) -> str:
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def _attrs(**kw) -> str:
    return " ".join(
        f"{k.replace('_', '-')}={quoteattr(_XML_ILLEGAL.sub('', str(v)))}" for k, v in kw.items()
    )


def render_pair(
    pair: ChartPair,
    result: ComparisonResult,
    spec: RenderSpec | None = None,
    precision: int = 2,
) -> str:
    spec = spec or RenderSpec()
    align_pair(pair.left, pair.right)
    caption = report_for(result, precision)

    w, h = spec.width, spec.height
    legend_w = LEGEND_WIDTH if w >= 2 * LEGEND_WIDTH + MARGIN_LEFT else 0
    # margins shrink on small canvases so the plot area never collapses
    x0 = min(MARGIN_LEFT, w // 5)
    x1 = w - legend_w - min(8, w // 16)
    y_top = min(MARGIN_TOP, h // 5)
    y_bottom = h - min(MARGIN_BOTTOM, h // 6)
    plot_h = y_bottom - y_top

    charts = (pair.left, pair.right)
    axis_max = max(chart.total for chart in charts)

    def px(value):
        # ratio first: plot_h / axis_max overflows for subnormal totals
        return value / axis_max * plot_h if axis_max > 0 else 0.0

    slot = (x1 - x0) / 2
    bar_w = slot * 0.5

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}"'
        f' viewBox="0 0 {w} {h}" font-family="sans-serif">',
        f'<text {_attrs(id="caption", x=_num(w / 2), y=_num(y_top * 0.55), text_anchor="middle", font_size=14)}>'
        f"{escape(caption)}</text>",
        f'<line {_attrs(id="axis-y", x1=x0, y1=y_top, x2=x0, y2=y_bottom, stroke="#333")}/>',
        f'<line {_attrs(id="axis-x", x1=x0, y1=y_bottom, x2=_num(x1), y2=y_bottom, stroke="#333")}/>',
        f'<text {_attrs(x=x0 - 4, y=y_bottom + 4, text_anchor="end", font_size=10)}>0</text>',
        f'<text {_attrs(x=x0 - 4, y=y_top + 4, text_anchor="end", font_size=10)}>'
        f"{escape(plain_number(axis_max))}</text>",
    ]

    for b, chart in enumerate(charts):
        bx = x0 + slot * b + (slot - bar_w) / 2
        stacked = 0.0
        for i, seg in enumerate(chart.segments):
            seg_h = px(seg.value)
            y = y_bottom - px(stacked + seg.value)
            stacked += seg.value
            fill = spec.palette[i % len(spec.palette)]
            out.append(
                f'<rect {_attrs(id=f"bar{b}-seg{i}", x=_num(bx), y=_num(y), width=_num(bar_w), height=_num(seg_h), fill=fill)}/>'
            )
            if spec.show_values and seg_h >= MIN_LABEL_HEIGHT:
                out.append(
                    f'<text {_attrs(x=_num(bx + bar_w / 2), y=_num(y + seg_h / 2 + 4), text_anchor="middle", font_size=10, fill="#fff")}>'
                    f"{escape(plain_number(seg.value))}</text>"
                )
        out.append(
            f'<text {_attrs(id=f"name{b}", x=_num(bx + bar_w / 2), y=y_bottom + 18, text_anchor="middle", font_size=12)}>'
            f"{escape(chart.name)}</text>"
        )

    if legend_w:
        lx = w - legend_w
        for i, label in enumerate(pair.left.labels):
            ly = y_top + 18 * i
            fill = spec.palette[i % len(spec.palette)]
            out.append(f'<rect {_attrs(id=f"legend{i}", x=lx, y=ly, width=10, height=10, fill=fill)}/>')
            out.append(f'<text {_attrs(x=lx + 14, y=ly + 9, font_size=11)}>{escape(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
