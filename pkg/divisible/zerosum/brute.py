from __future__ import annotations

import typing as t

import networkx as nx

from divisible.errors import CapExceeded, ModulusMismatch
from divisible.graphs.weighted import CompleteWeightedDigraph
from divisible.witnesses import CycleWitness


DEFAULT_CAP = 9


def _rotated(cycle: t.Sequence[int]) -> t.Tuple[int, ...]:
    start = cycle.index(min(cycle))
    return tuple(cycle[start:]) + tuple(cycle[:start])


def brute_force_zero_cycle(
    d: CompleteWeightedDigraph,
    q: int,
    cap: int = DEFAULT_CAP,
) -> t.Optional[CycleWitness]:
    """
    Shortest zero-weight simple cycle by Johnson enumeration with growing
    length bound; ties go to the lexicographically least rotation starting
    at its smallest vertex.
    """
    if q != d.modulus:
        raise ModulusMismatch(q, d.modulus)
    n = d.vertex_count
    if n > cap:
        raise CapExceeded(n, cap, 'brute force vertex count')

    graph = d.to_networkx()
    for length in range(2, n + 1):
        zero = [
            _rotated(cycle)
            for cycle in
            nx.simple_cycles(graph, length_bound = length)
            if len(cycle) == length and d.cycle_value(cycle) == 0
        ]
        if zero:
            return CycleWitness(d, min(zero), q)
    return None
