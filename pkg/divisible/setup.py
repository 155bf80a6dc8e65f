from __future__ import annotations

import os
import typing as t

from divisible.errors import InputError


class DivisibleSetup(object):

    def __init__(
        self,
        seed: t.Optional[int] = None,
        brute_force_cap: int = 9,
        ramsey_budget: int = 2_000_000,
        sweep_cap: int = 2 ** 20,
        strict: bool = False,
    ):
        self._seed = seed
        self._brute_force_cap = brute_force_cap
        self._ramsey_budget = ramsey_budget
        self._sweep_cap = sweep_cap
        self._strict = strict

    @classmethod
    def from_environment(cls, environ: t.Optional[t.Mapping[str, str]] = None, **overrides) -> DivisibleSetup:
        environ = os.environ if environ is None else environ
        values: t.Dict[str, t.Any] = {}
        for key, name in (
            ('seed', 'DIVISIBLE_SEED'),
            ('brute_force_cap', 'DIVISIBLE_BRUTE_FORCE_CAP'),
            ('ramsey_budget', 'DIVISIBLE_RAMSEY_BUDGET'),
            ('sweep_cap', 'DIVISIBLE_SWEEP_CAP'),
        ):
            if environ.get(name):
                try:
                    values[key] = int(environ[name])
                except ValueError:
                    raise InputError(f'{name} must be an integer, got {environ[name]!r}')
        values.update(
            (key, value)
            for key, value in
            overrides.items()
            if value is not None
        )
        return cls(**values)

    @property
    def seed(self) -> t.Optional[int]:
        return self._seed

    @property
    def brute_force_cap(self) -> int:
        return self._brute_force_cap

    @property
    def ramsey_budget(self) -> int:
        return self._ramsey_budget

    @property
    def sweep_cap(self) -> int:
        return self._sweep_cap

    @property
    def strict(self) -> bool:
        return self._strict
