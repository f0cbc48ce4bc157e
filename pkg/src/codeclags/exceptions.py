from typing import Optional


class CodecLagsError(Exception):
    """Base exception for all codec-lags errors."""

    exit_code = 1


class InputError(CodecLagsError):
    """The caller supplied data or options the operation cannot use."""

    exit_code = 2


class InvalidInput(InputError):
    """Non-finite values, negative seeds or otherwise malformed arguments."""

    pass


class InsufficientData(InputError):
    """Too few observations for the requested operation."""

    pass


class MissingColumn(InputError):
    """The CSV header does not contain the requested value column."""

    def __init__(self, column: str, available: Optional[list[str]] = None):
        super().__init__(f"Column '{column}' not found")
        self.column = column
        self.available = available or []

    def __str__(self):
        base_msg = super().__str__()
        if self.available:
            base_msg += f" (available: {', '.join(self.available)})"
        return base_msg


class ParseError(InputError):
    """A CSV cell could not be parsed as a real number."""

    def __init__(self, line: int, value: str, path: Optional[str] = None):
        super().__init__(f"Cannot parse value {value!r}")
        self.line = line
        self.value = value
        self.path = path

    def __str__(self):
        location = f"{self.path}:{self.line}" if self.path else f"line {self.line}"
        return f"{super().__str__()} at {location}"


class TooShort(InputError):
    """The CSV holds fewer than two data rows."""

    def __init__(self, rows: int):
        super().__init__(f"Expected at least 2 data rows, found {rows}")
        self.rows = rows


class CorruptDataset(InputError):
    """Bundled benchmark data does not match its descriptor or checksum."""

    def __init__(self, name: str, reason: str):
        super().__init__(f"Dataset '{name}' failed validation: {reason}")
        self.name = name
        self.reason = reason


class ScenarioError(InputError):
    """A scenario document could not be read or validated."""

    pass


class DegenerateError(CodecLagsError):
    """The data carry no usable variation for the requested measure."""

    exit_code = 3


class DegenerateResponse(DegenerateError):
    """The response is constant, so the CODEC denominator vanishes."""

    pass


class DegenerateConditioning(DegenerateError):
    """The response is a function of the conditioning set at sample level."""

    pass


class DegenerateSeries(DegenerateError):
    """Zero-variance series; autocorrelations are undefined."""

    pass


class NumericallySingular(DegenerateError):
    """Durbin-Levinson prediction-error variance collapsed below tolerance."""

    def __init__(self, lag: int, variance: float):
        super().__init__(
            f"Prediction-error variance {variance:.3e} below tolerance at lag {lag}"
        )
        self.lag = lag
        self.variance = variance


class Diverged(CodecLagsError):
    """A simulated path left the representable range."""

    exit_code = 5

    def __init__(self, step: int, model: Optional[str] = None, value: float = float("inf")):
        super().__init__(f"Simulation diverged at step {step}")
        self.step = step
        self.model = model
        self.value = value

    def __str__(self):
        base_msg = super().__str__()
        if self.model:
            base_msg += f" [{self.model}]"
        return base_msg + f" (|value| = {abs(self.value):.3e})"
