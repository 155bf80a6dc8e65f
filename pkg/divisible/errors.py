from __future__ import annotations

import typing as t

if t.TYPE_CHECKING:
    from divisible.graphs.minors import ValidationReport


class DivisibleException(Exception):
    pass


class InputError(DivisibleException, ValueError):
    pass


class ModulusMismatch(InputError):

    def __init__(self, left: int, right: int):
        super().__init__(f'modulus mismatch: {left} != {right}')
        self.left = left
        self.right = right


class NotAdjacent(InputError):

    def __init__(self, u: int, v: int):
        super().__init__(f'vertices {u} and {v} are not adjacent')
        self.u = u
        self.v = v


class InvalidGraph(InputError):
    pass


class InvalidModel(InputError):

    def __init__(self, report: ValidationReport):
        super().__init__('invalid minor model: ' + '; '.join(map(str, report.violations)))
        self.report = report


class ModelTooSmall(InputError):

    def __init__(self, available: int, required: int):
        super().__init__(f'model has {available} branch sets, {required} required')
        self.available = available
        self.required = required


class PoolExhausted(InputError):

    def __init__(self, available: int, required: int):
        super().__init__(f'{available} Y-supernodes available, {required} required for routing')
        self.available = available
        self.required = required


class CapExceeded(InputError):

    def __init__(self, value: int, cap: int, what: str):
        super().__init__(f'{what} {value} exceeds cap {cap}')
        self.value = value
        self.cap = cap


class ParseError(InputError):

    def __init__(self, source: str, message: str):
        super().__init__(f'{source}: {message}')
        self.source = source


class AlgorithmicFailure(DivisibleException):
    pass


class AttemptsExhausted(AlgorithmicFailure):

    def __init__(self, failures: int):
        super().__init__(f'no labeling succeeded in {failures} attempts')
        self.failures = failures


class BudgetExceeded(AlgorithmicFailure):

    def __init__(self, budget: int):
        super().__init__(f'search budget of {budget} nodes exceeded')
        self.budget = budget


class StageFailure(object):
    """
    A best-effort stage that came up short. Falsy, so stages can be
    chained with `if not outcome`.
    """

    def __init__(self, stage: str, reason: str):
        self._stage = stage
        self._reason = reason

    @property
    def stage(self) -> str:
        return self._stage

    @property
    def reason(self) -> str:
        return self._reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self._stage}: {self._reason})'


class StageFailed(AlgorithmicFailure):

    def __init__(self, failure: StageFailure):
        super().__init__(f'stage {failure.stage} failed: {failure.reason}')
        self.failure = failure


class InvariantViolation(DivisibleException):
    pass
