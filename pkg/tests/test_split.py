import pytest

from divisible.errors import InputError
from divisible.graphs.minors import MinorModel, validate_minor_model
from divisible.graphs.weighted import WeightedGraph
from divisible.subdivision.split import Partition, check_partition, split_and_weight


def _instance():
    host = WeightedGraph(4, 2, [(0, 1), (1, 2), (0, 3), (2, 3)])
    model = MinorModel(
        host,
        [[0, 1], [2], [3]],
        [[(0, 1)], [], []],
        {(0, 1): (1, 2), (0, 2): (0, 3), (1, 2): (2, 3)},
    )
    return host, model


def test_split_numbers_new_vertices_by_edge_order():
    host, model = _instance()
    inst = split_and_weight(host, model, Partition([0], [1, 2]))

    assert dict(inst.provenance) == {4: (0, 3), 5: (1, 2)}
    assert inst.host.vertex_count == 6
    assert inst.host.value(0, 4) == 0
    assert inst.host.value(4, 3) == 1
    assert inst.host.value(0, 1) == 1
    assert not inst.host.has_edge(0, 3)
    assert inst.model.branch_sets[0] == (0, 1, 4, 5)
    assert inst.model.cross_edge(0, 1) == (5, 2)
    assert inst.model.cross_edge(2, 0) == (3, 4)
    assert validate_minor_model(inst.model)


def test_split_leaves_point_at_y_supernodes():
    host, model = _instance()
    inst = split_and_weight(host, model, Partition([0], [1, 2]))

    assert dict(inst.leaf_ys(0)) == {4: 2, 5: 1}
    assert inst.y_of(4) == 2
    assert inst.y_entry(5) == 2
    assert inst.is_split_vertex(5)
    assert not inst.is_split_vertex(3)

    tree = inst.x_tree(0)
    assert tree.origin == (0, 1, 4, 5)
    assert [tree.external(leaf) for leaf in tree.leaves] == [4, 5]
    assert tree.graph.path_value(tree.path(2, 3)) == 1
    assert [tree.external(leaf) for leaf in inst.x_tree(0, exclude_ys = {1}).leaves] == [4]


def test_contraction_restores_the_host():
    host, model = _instance()
    inst = split_and_weight(host, model, Partition([0], [1, 2]))
    assert inst.contract_host() == host
    assert inst.contract_path([1, 5, 2, 3, 4, 0]) == [1, 2, 3, 0]


def test_partition_checks():
    _, model = _instance()
    assert check_partition(model, Partition([0], [1, 2])) == []
    assert check_partition(model, Partition([], [0, 1, 2])) == ['no X-supernodes']
    assert check_partition(model, Partition([0], [1]))
    assert check_partition(model, Partition([0, 1], [1, 2]))
    host, _ = _instance()
    with pytest.raises(InputError):
        split_and_weight(host, model, Partition([0], [2]))
