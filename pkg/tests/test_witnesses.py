import typing as t

import networkx as nx
import pytest

from divisible.generators import GenKind, GenSpec, gen_favorable_subdivision_instance, gen_minor_model
from divisible.graphs.weighted import CompleteWeightedDigraph, WeightedGraph
from divisible.minorcycle import find_divisible_cycle, g_bound
from divisible.subdivision.assembly import build_subdivision
from divisible.witnesses import (
    CycleWitness, SubdivisionWitness, check_cycle_witness, check_subdivision_witness, verify_cycle_witness,
    verify_subdivision_witness,
)


def test_cycle_witness_in_graph():
    k4 = WeightedGraph.complete(4, 2)
    assert verify_cycle_witness(CycleWitness(k4, [0, 1, 2, 3], 2))
    assert check_cycle_witness(CycleWitness(k4, [0, 1, 2], 2)) == ['residue', 'claim']
    assert check_cycle_witness(CycleWitness(k4, [0, 1], 2)) == ['length']
    assert check_cycle_witness(CycleWitness(k4, [0, 1, 2, 1], 2)) == ['distinct']
    assert 'modulus' in check_cycle_witness(CycleWitness(k4, [0, 1, 2, 3], 3))
    assert check_cycle_witness(CycleWitness(k4, [0, 1, 2, 4], 2)) == ['vertex-range']


def test_cycle_witness_adjacency():
    c5 = WeightedGraph(5, 5, [(v, (v + 1) % 5) for v in range(5)])
    assert verify_cycle_witness(CycleWitness(c5, [0, 1, 2, 3, 4], 5))
    assert check_cycle_witness(CycleWitness(c5, [0, 1, 3, 4], 5)) == ['adjacency']


def test_two_cycles_in_digraphs():
    d = CompleteWeightedDigraph(3, [[0, 1, 0], [2, 0, 0], [1, 1, 0]])
    assert verify_cycle_witness(CycleWitness(d, [0, 1], 3))
    assert check_cycle_witness(CycleWitness(d, [0, 2], 3)) == ['residue', 'claim']
    assert check_cycle_witness(CycleWitness(d, [0], 3)) == ['length', 'adjacency']


def _hexagon_with_triangle(q: int = 2) -> SubdivisionWitness:
    c6 = WeightedGraph(6, q, [(v, (v + 1) % 6) for v in range(6)])
    return SubdivisionWitness(
        c6,
        nx.cycle_graph(3),
        {0: 0, 1: 2, 2: 4},
        {(0, 1): [0, 1, 2], (1, 2): [2, 3, 4], (0, 2): [0, 5, 4]},
        q,
    )


def test_subdivision_witness_holds():
    assert verify_subdivision_witness(_hexagon_with_triangle())


def test_subdivision_witness_residue():
    c6 = WeightedGraph(6, 3, [(v, (v + 1) % 6) for v in range(6)])
    w = _hexagon_with_triangle()
    mutated = SubdivisionWitness(c6, w.pattern, w.branch, w.paths, 3)
    assert check_subdivision_witness(mutated) == ['residue', 'claim']


def test_subdivision_witness_mutations():
    w = _hexagon_with_triangle()

    swapped = SubdivisionWitness(w.host, w.pattern, {0: 0, 1: 4, 2: 2}, w.paths, 2)
    assert check_subdivision_witness(swapped) == ['endpoints']

    collapsed = SubdivisionWitness(w.host, w.pattern, {0: 0, 1: 2, 2: 2}, w.paths, 2)
    assert check_subdivision_witness(collapsed) == ['branch-map']

    paths = dict(w.paths)
    del paths[(0, 2)]
    missing = SubdivisionWitness(w.host, w.pattern, w.branch, paths, 2)
    assert check_subdivision_witness(missing) == ['pattern-edges']

    paths = dict(w.paths)
    paths[(0, 2)] = [0, 1, 2, 3, 4]
    crossing = SubdivisionWitness(w.host, w.pattern, w.branch, paths, 2)
    assert 'disjoint' in check_subdivision_witness(crossing)

    claimed = SubdivisionWitness(w.host, w.pattern, w.branch, w.paths, 2, {(0, 1): 1})
    assert check_subdivision_witness(claimed) == ['claim']


def _pipeline_cycle(seed: int) -> CycleWitness:
    host, model = gen_minor_model(GenSpec(GenKind.TREE_BLOWUP, 3, seed, supernodes = g_bound(3), blowup = (1, 3)))
    return find_divisible_cycle(host, model, 3, seed = seed)


def _cycle_mutations(w: CycleWitness) -> t.Iterator[t.Tuple[str, CycleWitness]]:
    vertices = list(w.vertices)
    for index in range(len(vertices)):
        repeated = vertices[:index] + [vertices[index - 1]] + vertices[index + 1:]
        yield 'repeat', CycleWitness(w.host, repeated, w.modulus, w.claimed)
        yield 'truncate', CycleWitness(w.host, vertices[:index] + vertices[index + 1:], w.modulus, w.claimed)
        outside = vertices[:index] + [w.host.vertex_count] + vertices[index + 1:]
        yield 'vertex-range', CycleWitness(w.host, outside, w.modulus, w.claimed)
    yield 'claim', CycleWitness(w.host, vertices, w.modulus, w.claimed + 1)
    yield 'modulus', CycleWitness(w.host, vertices, w.modulus + 1, w.claimed)


def _pipeline_subdivision(seed: int) -> SubdivisionWitness:
    h = nx.path_graph(2)
    host, model, partition = gen_favorable_subdivision_instance(h, 2, 3, seed = seed)
    return build_subdivision(host, model, partition, h, 2, 3).witness


def _subdivision_mutations(w: SubdivisionWitness) -> t.Iterator[t.Tuple[str, SubdivisionWitness]]:
    a, b = sorted(w.branch)[:2]
    swapped = dict(w.branch)
    swapped[a], swapped[b] = w.branch[b], w.branch[a]
    yield 'swap', SubdivisionWitness(w.host, w.pattern, swapped, w.paths, w.modulus, w.claims)
    for edge, path in w.paths.items():
        paths = dict(w.paths)
        paths[edge] = path[:-1]
        yield 'truncate', SubdivisionWitness(w.host, w.pattern, w.branch, paths, w.modulus, w.claims)
        paths = dict(w.paths)
        paths[edge] = (path[0], path[0]) + path[2:]
        yield 'repeat', SubdivisionWitness(w.host, w.pattern, w.branch, paths, w.modulus, w.claims)
        claims = dict(w.claims)
        claims[edge] = claims.get(edge, 0) + 1
        yield 'claim', SubdivisionWitness(w.host, w.pattern, w.branch, w.paths, w.modulus, claims)
    yield 'modulus', SubdivisionWitness(w.host, w.pattern, w.branch, w.paths, w.modulus + 1, w.claims)


def _assert_mutations_fail(witness_for, mutations, check, seeds: t.Iterable[int]) -> None:
    for seed in seeds:
        witness = witness_for(seed)
        assert check(witness) == []
        for name, mutated in mutations(witness):
            assert check(mutated), f'{name} mutation of seed {seed} still verifies'


def test_pipeline_cycles_reject_every_mutation():
    _assert_mutations_fail(_pipeline_cycle, _cycle_mutations, check_cycle_witness, range(10))


def test_pipeline_subdivisions_reject_every_mutation():
    _assert_mutations_fail(_pipeline_subdivision, _subdivision_mutations, check_subdivision_witness, range(10))


@pytest.mark.slow
def test_pipeline_witnesses_reject_every_mutation_many_seeds():
    _assert_mutations_fail(_pipeline_cycle, _cycle_mutations, check_cycle_witness, range(100))
    _assert_mutations_fail(_pipeline_subdivision, _subdivision_mutations, check_subdivision_witness, range(100))
