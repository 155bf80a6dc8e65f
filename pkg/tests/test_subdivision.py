import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisible.errors import BudgetExceeded, InputError, PoolExhausted, StageFailed, StageFailure
from divisible.generators import gen_favorable_subdivision_instance
from divisible.serialization import witness_to_json
from divisible.subdivision.assembly import (
    Parameterization, build_subdivision, check_pattern, leaf_count, path_residue,
)
from divisible.subdivision.ramsey import (
    EdgeColoring, MonochromaticCopy, check_monochromatic, find_monochromatic_subdivision, subdivide_pattern,
    verify_monochromatic,
)
from divisible.subdivision.routing import common_residue_filter, route_edges, select_all
from divisible.subdivision.split import split_and_weight
from divisible.witnesses import check_subdivision_witness, verify_subdivision_witness

from .strategies import PROPERTY_SETTINGS


def test_subdivide_pattern():
    d, replacement = subdivide_pattern(nx.cycle_graph(3), 1)
    assert sorted(d.nodes()) == list(range(6))
    assert d.number_of_edges() == 6
    assert replacement == {(0, 1): [0, 3, 1], (0, 2): [0, 4, 2], (1, 2): [1, 5, 2]}

    same, replacement = subdivide_pattern(nx.path_graph(3), 0)
    assert sorted(same.edges()) == [(0, 1), (1, 2)]
    assert replacement == {(0, 1): [0, 1], (1, 2): [1, 2]}


@PROPERTY_SETTINGS
@given(st.lists(st.integers(min_value = 0, max_value = 1), min_size = 15, max_size = 15))
def test_every_two_coloring_of_k6_has_a_monochromatic_triangle(values):
    coloring = EdgeColoring.from_sequence(6, 2, values)
    triangle = nx.cycle_graph(3)
    copy = find_monochromatic_subdivision(coloring, triangle)
    assert copy is not None
    assert verify_monochromatic(coloring, triangle, copy)


def test_pentagon_coloring_of_k5_has_no_monochromatic_triangle():
    coloring = EdgeColoring(
        5,
        2,
        {(i, j): 0 if (j - i) % 5 in (1, 4) else 1 for i in range(5) for j in range(i + 1, 5)},
    )
    assert find_monochromatic_subdivision(coloring, nx.cycle_graph(3)) is None


def test_monochromatic_search_limits():
    coloring = EdgeColoring.constant(6, 2)
    assert find_monochromatic_subdivision(coloring, nx.cycle_graph(7)) is None
    with pytest.raises(BudgetExceeded):
        find_monochromatic_subdivision(coloring, nx.cycle_graph(3), budget = 1)


def test_monochromatic_check():
    coloring = EdgeColoring.from_sequence(4, 2, [0, 0, 1, 0, 1, 1])
    path = nx.path_graph(3)
    assert check_monochromatic(coloring, path, MonochromaticCopy(0, {0: 1, 1: 0, 2: 2})) == []
    assert check_monochromatic(coloring, path, MonochromaticCopy(0, {0: 1, 1: 0, 2: 3})) == ['color']
    assert check_monochromatic(coloring, path, MonochromaticCopy(0, {0: 1, 1: 1, 2: 2})) == ['injective']
    assert check_monochromatic(coloring, path, MonochromaticCopy(0, {0: 1, 1: 0})) == ['domain']
    with pytest.raises(InputError):
        EdgeColoring(3, 2, {(0, 1): 0, (1, 2): 0})


def test_common_residue_filter():
    assert common_residue_filter([1, 0, 1, 2, 1], 3, 3) == [0, 2, 4]
    assert common_residue_filter([0, 1, 0, 1], 2, 2) == [0, 2]
    failure = common_residue_filter([0, 1, 2], 2, 3)
    assert isinstance(failure, StageFailure)
    assert failure.stage == 'residue'
    assert not common_residue_filter([], 1, 3)


@pytest.mark.parametrize('a', range(12))
@pytest.mark.parametrize('q', range(2, 12))
def test_assembled_path_residue_vanishes(a: int, q: int):
    for b in range(q):
        assert path_residue(a, b, q) == 0


def test_leaf_counts_and_patterns():
    assert leaf_count(Parameterization.DEGREE, 8) == 7
    assert leaf_count(Parameterization.EDGES, 8) == 56
    with pytest.raises(InputError):
        check_pattern(nx.empty_graph(3))
    with pytest.raises(InputError):
        check_pattern(nx.star_graph(4))


def test_routing_pool_is_checked():
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = 0)
    inst = split_and_weight(host, model, partition)
    with pytest.raises(PoolExhausted):
        route_edges(inst, [(0, 1)] * 6, [])


def test_routing_without_reserved_pools_collides():
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = 1)
    inst = split_and_weight(host, model, partition)
    selections = select_all(inst, 2, 2)
    failure = route_edges(inst, [(0, 1), (0, 2), (1, 2)], selections[:3])
    assert isinstance(failure, StageFailure)
    assert failure.stage == 'route'


def test_routed_paths_are_disjoint_in_the_split_host():
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = 1)
    build = build_subdivision(host, model, partition, h, 2, 3)
    inst = build.instance
    assert sorted(r.edge for r in build.routed) == [(0, 1), (0, 2), (1, 2)]
    used = set()
    for r in build.routed:
        assert inst.is_split_vertex(r.path[0]) and inst.is_split_vertex(r.path[-1])
        assert all(inst.host.has_edge(u, v) for u, v in zip(r.path, r.path[1:]))
        assert inst.host.path_value(r.path) == r.color
        assert not used & set(r.path)
        used |= set(r.path)


@pytest.mark.parametrize('seed', range(4))
def test_edge_subdivision_end_to_end(seed: int):
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = seed)
    build = build_subdivision(host, model, partition, h, 2, 3)
    assert verify_subdivision_witness(build.witness)
    assert verify_subdivision_witness(build.split_witness)
    assert build.k == 2
    assert all(len(path) % 2 == 1 for path in build.witness.paths.values())


def _triangle_build(seed: int):
    h = nx.cycle_graph(3)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 8, seed = seed)
    return host, build_subdivision(host, model, partition, h, 2, 8)


def test_triangle_subdivision_end_to_end():
    host, build = _triangle_build(0)
    witness = build.witness
    assert check_subdivision_witness(witness) == []
    assert witness.host == host.with_unit_weights()
    assert sorted(witness.paths) == [(0, 1), (0, 2), (1, 2)]
    for path in witness.paths.values():
        assert (len(path) - 1) % 2 == 0
    assert build.parameterization == Parameterization.DEGREE
    assert build.k == 7


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(1, 20))
def test_triangle_subdivision_many_seeds(seed: int):
    _, build = _triangle_build(seed)
    assert verify_subdivision_witness(build.witness)


def test_subdivision_is_deterministic():
    h = nx.path_graph(2)
    first = gen_favorable_subdivision_instance(h, 2, 3, seed = 5)
    second = gen_favorable_subdivision_instance(h, 2, 3, seed = 5)
    assert first[0] == second[0]
    one = build_subdivision(*first, h, 2, 3)
    two = build_subdivision(*second, h, 2, 3)
    assert witness_to_json(one.witness) == witness_to_json(two.witness)
    assert json.loads(witness_to_json(one.witness))['kind'] == 'subdivision'


def test_small_ramsey_graph_fails_at_the_ramsey_stage():
    h = nx.cycle_graph(3)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 5, seed = 0)
    with pytest.raises(StageFailed) as info:
        build_subdivision(host, model, partition, h, 2, 5)
    assert info.value.failure.stage == 'ramsey'


def test_build_rejects_tiny_ramsey_graph():
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = 0)
    with pytest.raises(InputError):
        build_subdivision(host, model, partition, h, 2, 2)


def test_selection_stage_failure_is_reported():
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = 0)
    with pytest.raises(StageFailed) as info:
        build_subdivision(host, model, partition, h, 2, 3, Parameterization.EDGES)
    assert info.value.failure.stage == 'select'