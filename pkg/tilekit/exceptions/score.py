from __future__ import annotations

from typing import Any

from stgpytools import CustomRuntimeError, CustomValueError, FuncExceptT, SupportsString

__all__ = [
    'NegativeInputError',
    'AllZeroError',

    'InvalidPerformanceError',
    'InvalidImportanceError',
    'InvalidPriorError',

    'UndefinedScoreError',
    'UndefinedCornerError',
    'UndefinedRateError',

    'SingularSystemError',
    'InfeasibleSolutionError'
]


class NegativeInputError(CustomValueError):
    """Raised when a confusion-matrix entry is negative."""

    def __init__(
        self, func: FuncExceptT, values: Any,
        message: SupportsString = 'Confusion entries must be non-negative, got {values}!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, values=values, **kwargs)


class AllZeroError(CustomValueError):
    """Raised when all confusion-matrix entries are zero."""

    def __init__(
        self, func: FuncExceptT, message: SupportsString = 'At least one confusion entry must be positive!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, **kwargs)


class InvalidPerformanceError(CustomValueError):
    """Raised when the four probabilities of a performance are not a probability measure."""


class InvalidImportanceError(CustomValueError):
    """Raised when an importance coordinate lies outside of [0, 1]."""

    def __init__(
        self, func: FuncExceptT, a: float, b: float,
        message: SupportsString = 'Importance coordinates must lie in [0, 1], got (a={a}, b={b})!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, a=a, b=b, **kwargs)


class InvalidPriorError(CustomValueError):
    """Raised when a positive-class prior lies outside of [0, 1]."""

    def __init__(
        self, func: FuncExceptT, prior: float,
        message: SupportsString = 'The positive prior must lie in [0, 1], got {prior}!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, prior=prior, **kwargs)


class UndefinedScoreError(CustomValueError):
    """Raised when a score has a zero denominator and the caller asked for a defined value."""


class UndefinedCornerError(CustomValueError):
    """Raised when the Tile interpolation needs a corner score that is undefined."""

    def __init__(
        self, func: FuncExceptT, corners: Any,
        message: SupportsString = 'Corner scores {corners} are undefined, the f-means can not be formed!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, corners=corners, **kwargs)


class UndefinedRateError(CustomValueError):
    """Raised when a ROC rate can not be computed because one class is absent."""


class SingularSystemError(CustomRuntimeError):
    """Raised when the score constraints do not determine a unique performance."""

    def __init__(
        self, func: FuncExceptT, message: SupportsString = 'The score constraints form a singular system!',
        **kwargs: Any
    ) -> None:
        super().__init__(message, func, **kwargs)


class InfeasibleSolutionError(CustomValueError):
    """Raised when the recovered performance has a negative component."""

    def __init__(
        self, func: FuncExceptT, solution: Any,
        message: SupportsString = 'The recovered performance {solution} has a negative component!', **kwargs: Any
    ) -> None:
        super().__init__(message, func, solution=solution, **kwargs)
