from __future__ import annotations

from typing import Any


class HypertensorError(Exception):
    exit_code: int = 1


class HypergraphParseError(HypertensorError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyHypergraphError(HypertensorError, ValueError):
    exit_code = 2


class CapacityError(HypertensorError):
    exit_code = 3


class NumericRangeError(HypertensorError, ArithmeticError):
    exit_code = 4

    def __init__(self, message: str, report: Any = None) -> None:
        self.report = report
        super().__init__(message)


class NumericRangeWarning(RuntimeWarning):
    pass


class CentralityError(HypertensorError):
    exit_code = 5


class NotConnectedError(CentralityError):
    pass


class ConvergenceError(CentralityError):
    def __init__(self, message: str, iterations: int, bounds: tuple[float, float] | None = None) -> None:
        self.iterations = iterations
        self.bounds = bounds
        super().__init__(message)


class FitDivergenceError(HypertensorError):
    exit_code = 6

    def __init__(self, message: str, step_log: list[tuple[int, float, float]]) -> None:
        self.step_log = step_log
        super().__init__(message)


class FixtureCorruptionError(HypertensorError):
    exit_code = 7


class KernelCancelled(HypertensorError):
    exit_code = 8
