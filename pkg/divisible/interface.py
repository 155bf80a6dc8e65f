from __future__ import annotations

import typing as t
from enum import Enum

import click


class Outcome(Enum):
    WITNESS = 'witness'
    FAILURE = 'failure'
    ERROR = 'error'


class RunReport(object):
    """
    What a command did. A witness outcome carries the verdict of the
    verifier run on it.
    """

    def __init__(
        self,
        command: str,
        parameters: t.Mapping[str, t.Any],
        seed: t.Optional[int] = None,
    ):
        self._command = command
        self._parameters = dict(parameters)
        self._seed = seed
        self._outcome: t.Optional[Outcome] = None
        self._detail = ''
        self._seconds: t.Optional[float] = None
        self._verdict: t.Optional[bool] = None
        self._violations: t.Tuple[str, ...] = ()
        self._values: t.List[t.Tuple[str, t.Any]] = []

    @property
    def command(self) -> str:
        return self._command

    @property
    def parameters(self) -> t.Mapping[str, t.Any]:
        return self._parameters

    @property
    def seed(self) -> t.Optional[int]:
        return self._seed

    @property
    def outcome(self) -> t.Optional[Outcome]:
        return self._outcome

    @property
    def detail(self) -> str:
        return self._detail

    @property
    def seconds(self) -> t.Optional[float]:
        return self._seconds

    @property
    def verdict(self) -> t.Optional[bool]:
        return self._verdict

    @property
    def violations(self) -> t.Tuple[str, ...]:
        return self._violations

    def witness(self, violations: t.Sequence[str], detail: str = '') -> RunReport:
        self._outcome = Outcome.WITNESS
        self._violations = tuple(violations)
        self._verdict = not self._violations
        self._detail = detail
        return self

    def failure(self, detail: str) -> RunReport:
        self._outcome = Outcome.FAILURE
        self._detail = detail
        return self

    def error(self, detail: str) -> RunReport:
        self._outcome = Outcome.ERROR
        self._detail = detail
        return self

    def timed(self, seconds: float) -> RunReport:
        self._seconds = seconds
        return self

    def add(self, key: str, value: t.Any) -> RunReport:
        self._values.append((key, value))
        return self

    @property
    def exit_code(self) -> int:
        if self._outcome == Outcome.ERROR:
            return 1
        if self._outcome == Outcome.WITNESS and self._verdict:
            return 0
        return 2

    def lines(self) -> t.List[str]:
        lines = [f'{key}: {value}' for key, value in sorted(self._parameters.items())]
        if self._seed is not None:
            lines.append(f'seed: {self._seed}')
        lines.extend(f'{key}: {value}' for key, value in self._values)
        if self._outcome is not None:
            lines.append(f'outcome: {self._outcome.value}')
        if self._detail:
            lines.append(f'detail: {self._detail}')
        if self._verdict is not None:
            lines.append(
                'verified: yes'
                if self._verdict else
                'verified: no (' + ', '.join(self._violations) + ')'
            )
        if self._seconds is not None:
            lines.append(f'seconds: {self._seconds:.4f}')
        return lines

    def echo(self) -> None:
        with Box(self._command) as box:
            for line in self.lines():
                box.print(line)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self._command}, {self._outcome})'


class Box(object):
    """
    Prints a titled block of lines framed on the left.
    """

    def __init__(self, title: str) -> None:
        self._title = title

    def print(self, *args) -> None:
        click.echo('│ ' + ' '.join(map(str, args)))

    def __enter__(self) -> Box:
        click.echo('┌' + self._title)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        click.echo('└')


def render_table(headers: t.Sequence[str], rows: t.Iterable[t.Sequence[t.Any]]) -> str:
    cells = [list(map(str, headers))] + [list(map(str, row)) for row in rows]
    widths = [max(len(row[column]) for row in cells) for column in range(len(headers))]

    def line(row: t.Sequence[str], left: str, middle: str) -> str:
        return left + middle.join(f' {value.ljust(width)} ' for value, width in zip(row, widths))

    rules = ['─' * (width + 2) for width in widths]
    lines = ['┌' + '┬'.join(rules), line(cells[0], '│', '│'), '├' + '┼'.join(rules)]
    lines.extend(line(row, '│', '│') for row in cells[1:])
    lines.append('└' + '┴'.join(rules))
    return '\n'.join(lines)
