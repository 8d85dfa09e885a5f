"""Exception hierarchy.

Every failure raised by the library derives from :class:`BarsimError`.
The two direct subclasses split failures by the CLI exit status they map to:
:class:`ValidationError` (exit 1) for domain/usage problems and
:class:`ParseError` (exit 2) for malformed or schema-violating input.
"""

from __future__ import annotations


class BarsimError(Exception):
    exit_code = 1


class ValidationError(BarsimError):
    exit_code = 1


class ParseError(BarsimError):
    exit_code = 2


# chart validation


class EmptyChart(ValidationError):
    def __init__(self, name: str = ""):
        self.name = name
        where = f"chart {name!r}" if name else "chart"
        super().__init__(f"{where} has no segments")


class EmptyLabel(ValidationError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"segment {index}: label is empty")


class NonFiniteValue(ValidationError):
    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"segment {index}: value {value!r} is not finite")


class NegativeValue(ValidationError):
    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"segment {index}: value {value!r} is negative")


class DuplicateLabel(ValidationError):
    def __init__(self, label: str, index: int):
        self.label = label
        self.index = index
        super().__init__(f"segment {index}: duplicate label {label!r}")


# pair alignment


class LengthMismatch(ValidationError):
    def __init__(self, n_left: int, n_right: int):
        self.n_left = n_left
        self.n_right = n_right
        super().__init__(
            f"charts have different segment counts: left has {n_left}, right has {n_right}"
        )


class LabelMismatch(ValidationError):
    def __init__(self, message: str, position: int | None = None, label: str | None = None):
        self.position = position
        self.label = label
        super().__init__(message)


# numeric core


class EmptyCollection(ValidationError):
    def __init__(self, what: str = "collection"):
        super().__init__(f"{what} is empty")


class NonPositiveScale(ValidationError):
    def __init__(self, c: float):
        self.c = c
        super().__init__(f"scale constant c must be positive and finite, got {c!r}")


class InvalidOrder(ValidationError):
    def __init__(self, r: float):
        self.r = r
        super().__init__(f"Minkowski order r must be a finite number >= 1, got {r!r}")


class DimensionMismatch(ValidationError):
    def __init__(self, n_x: int, n_y: int):
        super().__init__(f"vectors have different dimensions: {n_x} and {n_y}")


class ScaleMismatch(ValidationError):
    def __init__(self, c_x: float, c_y: float):
        super().__init__(f"vectors were rescaled with different constants: {c_x!r} and {c_y!r}")


class NegativeDistance(ValidationError):
    def __init__(self, d: float):
        super().__init__(f"distance must be nonnegative, got {d!r}")


class NonFiniteDistance(ValidationError):
    def __init__(self, d: float):
        super().__init__(f"distance must be finite, got {d!r}")


# aggregation


class MixedScale(ValidationError):
    def __init__(self, scales):
        super().__init__(f"collection mixes scale constants {sorted(set(scales))}")


class MixedMetric(ValidationError):
    def __init__(self, orders):
        super().__init__(f"collection mixes metric orders {sorted(set(orders))}")


class SampleVarianceUndefined(ValidationError):
    def __init__(self, m: int):
        super().__init__(f"sample variance needs at least 2 results, got {m}")


# io


class UnknownChartName(ValidationError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"no chart named {name!r}")


class InvalidPrecision(ValidationError):
    def __init__(self, precision):
        super().__init__(f"precision must be a positive integer, got {precision!r}")


class MalformedCsv(ParseError):
    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class NonNumericValue(ParseError):
    def __init__(self, line: int, column: int, text: str):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {text!r} is not a number")


class RaggedRow(ParseError):
    def __init__(self, line: int, expected: int, got: int):
        self.line = line
        super().__init__(f"line {line}: expected {expected} cells, got {got}")


class DuplicateChartName(ParseError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate chart name {name!r}")


class DuplicateSegmentLabel(ParseError):
    def __init__(self, line: int, label: str):
        self.line = line
        self.label = label
        super().__init__(f"line {line}: duplicate segment label {label!r}")


class SchemaViolation(ParseError):
    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")
