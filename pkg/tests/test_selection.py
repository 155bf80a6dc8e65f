import typing as t

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisible.errors import InputError, ModulusMismatch
from divisible.generators import gen_tree
from divisible.graphs.trees import LabeledTree
from divisible.selection import (
    SelectionCase, certificate_for_leaves, certificate_for_triple, check_certificate, check_selection, f1_bound,
    select_leaves, verify_selection,
)

from .strategies import PROPERTY_SETTINGS, labeled_trees


def test_f1_bound():
    assert f1_bound(2, 2) == 243
    assert f1_bound(3, 2) == 5 ** 9
    with pytest.raises(InputError):
        f1_bound(1, 2)


def test_high_degree_star():
    tree = gen_tree('star', 3, labels = 1, degree = 8)
    sel = select_leaves(tree, 3, 3)
    assert sel.case == SelectionCase.HIGH_DEGREE
    assert sel.hub == 0
    assert sel.residue == 1
    assert sel.leaves == (1, 2, 3)
    assert verify_selection(tree, sel)

    certificate = certificate_for_triple(sel, 3, 1, 2)
    assert certificate.center == 0
    assert certificate.paths == ((0, 3), (0, 1), (0, 2))


def test_star_below_hub_degree_fails():
    tree = gen_tree('star', 3, labels = 1, degree = 7)
    assert not select_leaves(tree, 3, 3)


def test_required_residue():
    tree = gen_tree('star', 2, labels = 1, degree = 6)
    assert select_leaves(tree, 2, 2, residue = 1).residue == 1
    assert not select_leaves(tree, 2, 2, residue = 0)


def test_required_residue_is_taken_modulo_q():
    tree = gen_tree('star', 2, labels = 1, degree = 6)
    assert select_leaves(tree, 2, 2, residue = 3).residue == 1
    assert select_leaves(tree, 2, 2, residue = -1).residue == 1
    assert not select_leaves(tree, 2, 2, residue = 4)


def test_long_path_caterpillar():
    tree = gen_tree('caterpillar', 2, labels = 0, branches = 6)
    sel = select_leaves(tree, 3, 2)
    assert sel.case == SelectionCase.LONG_PATH
    assert sel.residue == 0
    assert sel.k == 3
    assert verify_selection(tree, sel)

    leaves = sorted(sel.leaves, key = lambda leaf: sel.position(sel.branch[leaf]))
    certificate = certificate_for_leaves(sel, leaves)
    assert certificate.center == sel.branch[leaves[1]]
    assert check_certificate(tree, certificate, leaves, 0)


def test_path_has_no_selection():
    failure = select_leaves(gen_tree('star', 2, labels = 1, degree = 2), 2, 2)
    assert not failure
    assert 'path' in failure.reason


def test_selection_input_checks():
    tree = gen_tree('star', 3, labels = 1, degree = 8)
    with pytest.raises(InputError):
        select_leaves(tree, 1, 3)
    with pytest.raises(ModulusMismatch):
        select_leaves(tree, 3, 2)
    sel = select_leaves(tree, 3, 3)
    with pytest.raises(InputError):
        certificate_for_leaves(sel, [1, 1])
    with pytest.raises(InputError):
        certificate_for_leaves(sel, [8])


def test_tampered_selection_is_rejected():
    tree = gen_tree('star', 3, labels = 1, degree = 8)
    sel = select_leaves(tree, 3, 3)
    assert check_selection(tree, sel.with_residue(2)).violations
    other = gen_tree('star', 3, labels = 2, degree = 8)
    assert not verify_selection(other, sel)


def test_designated_leaves_are_respected():
    tree = gen_tree('star', 2, labels = 1, degree = 10, designated = [2, 4, 6, 8, 10])
    sel = select_leaves(tree, 2, 2)
    assert set(sel.leaves) <= {2, 4, 6, 8, 10}
    assert verify_selection(tree, sel)
    tree = gen_tree('star', 2, labels = 1, degree = 10, designated = [2, 4, 6])
    assert not select_leaves(tree, 2, 2)


F1_SHAPES = [
    ('star', lambda count: {'degree': count}),
    ('caterpillar', lambda count: {'branches': count - 2}),
    ('broom', lambda count: {'handle': 3, 'bristles': count - 1}),
    ('random', lambda count: {'leaves': count}),
]


def _select_at_f1(shape: str, params: t.Callable[[int], t.Dict[str, int]], k: int, seed: int) -> None:
    tree = gen_tree(shape, 2, seed = seed, **params(f1_bound(k, 2)))
    assert len(tree.leaves) == f1_bound(k, 2)
    sel = select_leaves(tree, k, 2)
    assert sel
    assert sel.k == k
    assert verify_selection(tree, sel)


@pytest.mark.parametrize('seed', range(5))
@pytest.mark.parametrize('shape, params', F1_SHAPES)
def test_f1_many_leaves_always_select(shape, params, seed: int):
    _select_at_f1(shape, params, 2, seed)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(5))
@pytest.mark.parametrize('shape, params', F1_SHAPES)
def test_f1_many_leaves_select_three(shape, params, seed: int):
    _select_at_f1(shape, params, 3, seed)


@PROPERTY_SETTINGS
@given(labeled_trees(), st.integers(min_value = 2, max_value = 4))
def test_selections_always_verify(tree: LabeledTree, k: int):
    sel = select_leaves(tree, k, tree.modulus)
    if not sel:
        return
    assert sel.k == k
    assert len(set(sel.leaves)) == k
    assert 0 <= sel.residue < tree.modulus
    report = check_selection(tree, sel)
    assert report.valid
    assert report.vacuous == (k < 3)
