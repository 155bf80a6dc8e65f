from __future__ import annotations

import typing as t

from divisible.errors import InputError, ModulusMismatch


def check_modulus(q: int) -> int:
    if not isinstance(q, int) or q < 2:
        raise InputError(f'modulus must be an integer >= 2, got {q!r}')
    return q


class Residue(object):
    """
    An element of Z_q. Immutable; arithmetic between residues requires a
    shared modulus.
    """
    __slots__ = ('_value', '_modulus')

    def __init__(self, value: int, modulus: int):
        self._modulus = check_modulus(modulus)
        self._value = value % modulus

    @property
    def value(self) -> int:
        return self._value

    @property
    def modulus(self) -> int:
        return self._modulus

    def _coerce(self, other: t.Union[Residue, int]) -> int:
        if isinstance(other, Residue):
            if other._modulus != self._modulus:
                raise ModulusMismatch(self._modulus, other._modulus)
            return other._value
        return other

    def __add__(self, other: t.Union[Residue, int]) -> Residue:
        return Residue(self._value + self._coerce(other), self._modulus)

    __radd__ = __add__

    def __sub__(self, other: t.Union[Residue, int]) -> Residue:
        return Residue(self._value - self._coerce(other), self._modulus)

    def __rsub__(self, other: int) -> Residue:
        return Residue(other - self._value, self._modulus)

    def __mul__(self, other: int) -> Residue:
        return Residue(self._value * other, self._modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(-self._value, self._modulus)

    def __int__(self) -> int:
        return self._value

    def __index__(self) -> int:
        return self._value

    def __bool__(self) -> bool:
        return self._value != 0

    def __hash__(self) -> int:
        return hash((self._value, self._modulus))

    def __eq__(self, other) -> bool:
        if isinstance(other, Residue):
            return self._value == other._value and self._modulus == other._modulus
        if isinstance(other, int):
            return self._value == other % self._modulus
        return NotImplemented

    def __repr__(self) -> str:
        return f'{self._value} (mod {self._modulus})'


def residue_add(x: Residue, y: Residue) -> Residue:
    return x + y


def residue_neg(x: Residue) -> Residue:
    return -x


def residues(q: int) -> t.Iterator[Residue]:
    for value in range(check_modulus(q)):
        yield Residue(value, q)
