import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisible.errors import InputError, ModulusMismatch
from divisible.residues import Residue, check_modulus, residue_add, residue_neg, residues

from .strategies import moduli


def test_check_modulus():
    assert check_modulus(2) == 2
    with pytest.raises(InputError):
        check_modulus(1)
    with pytest.raises(InputError):
        check_modulus(2.)


@given(moduli, st.integers(), st.integers())
def test_arithmetic_matches_integers(q: int, x: int, y: int):
    a, b = Residue(x, q), Residue(y, q)
    assert residue_add(a, b).value == (x + y) % q
    assert (a - b).value == (x - y) % q
    assert residue_neg(a).value == -x % q
    assert (a * 3).value == 3 * x % q
    assert a + residue_neg(a) == 0


def test_mixed_moduli_rejected():
    with pytest.raises(ModulusMismatch):
        Residue(1, 3) + Residue(1, 4)


def test_residues_enumerate_the_group():
    assert [r.value for r in residues(4)] == [0, 1, 2, 3]
    assert Residue(5, 4) == 1
    assert Residue(5, 4) == Residue(1, 4)
    assert Residue(1, 4) != Residue(1, 5)
    assert not Residue(4, 4)
