from __future__ import annotations

import typing as t

import networkx as nx
import numpy as np

from divisible.errors import InvalidGraph, NotAdjacent
from divisible.residues import Residue, check_modulus


Edge = t.Tuple[int, int]
WeightedEdge = t.Tuple[int, int, int]


def normalize(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


class WeightedGraph(object):
    """
    Simple undirected graph on the vertices 0..n-1 with Z_q edge weights.
    Edges given as pairs get weight 1, which makes weighted length and edge
    count agree modulo q.
    """

    def __init__(self, n: int, q: int, edges: t.Iterable[t.Union[Edge, WeightedEdge]] = ()):
        if n < 0:
            raise InvalidGraph(f'negative vertex count {n}')
        self._modulus = check_modulus(q)
        self._adjacency: t.List[t.Dict[int, int]] = [{} for _ in range(n)]
        self._edge_count = 0

        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1
            else:
                u, v, w = edge
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraph(f'edge ({u}, {v}) out of range for {n} vertices')
            if u == v:
                raise InvalidGraph(f'loop at vertex {u}')
            if v in self._adjacency[u]:
                raise InvalidGraph(f'parallel edge ({u}, {v})')
            w %= q
            self._adjacency[u][v] = w
            self._adjacency[v][u] = w
            self._edge_count += 1

    @classmethod
    def complete(cls, n: int, q: int) -> WeightedGraph:
        return cls(n, q, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @property
    def vertex_count(self) -> int:
        return len(self._adjacency)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def modulus(self) -> int:
        return self._modulus

    def vertices(self) -> t.Iterable[int]:
        return range(len(self._adjacency))

    def edges(self) -> t.Iterator[WeightedEdge]:
        for u, neighbors in enumerate(self._adjacency):
            for v, w in neighbors.items():
                if u < v:
                    yield u, v, w

    def neighbors(self, u: int) -> t.Iterable[int]:
        return self._adjacency[u].keys()

    def degree(self, u: int) -> int:
        return len(self._adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self._adjacency) and v in self._adjacency[u]

    def value(self, u: int, v: int) -> int:
        try:
            return self._adjacency[u][v]
        except (KeyError, IndexError):
            raise NotAdjacent(u, v)

    def weight(self, u: int, v: int) -> Residue:
        return Residue(self.value(u, v), self._modulus)

    def path_value(self, path: t.Sequence[int]) -> int:
        total = 0
        for u, v in zip(path, path[1:]):
            total += self.value(u, v)
        return total % self._modulus

    def path_weight(self, path: t.Sequence[int]) -> Residue:
        return Residue(self.path_value(path), self._modulus)

    def is_unweighted(self) -> bool:
        return all(w == 1 % self._modulus for _, _, w in self.edges())

    def with_unit_weights(self) -> WeightedGraph:
        return WeightedGraph(
            self.vertex_count,
            self._modulus,
            ((u, v) for u, v, _ in self.edges()),
        )

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_weighted_edges_from(self.edges())
        return graph

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightedGraph)
            and self._modulus == other._modulus
            and self._adjacency == other._adjacency
        )

    def __repr__(self) -> str:
        return '{}(n={}, m={}, q={})'.format(
            self.__class__.__name__,
            self.vertex_count,
            self._edge_count,
            self._modulus,
        )


def path_weight(g: WeightedGraph, path: t.Sequence[int]) -> Residue:
    return g.path_weight(path)


class CompleteWeightedDigraph(object):
    """
    Complete digraph on 0..n-1, one Z_q weight per ordered pair of distinct
    vertices. Diagonal entries of the input matrix are ignored.
    """

    def __init__(self, q: int, matrix: t.Sequence[t.Sequence[int]]):
        self._modulus = check_modulus(q)
        n = len(matrix)
        if n < 2:
            raise InvalidGraph(f'complete digraph needs at least 2 vertices, got {n}')
        rows = []
        for u, row in enumerate(matrix):
            if len(row) != n:
                raise InvalidGraph(f'row {u} has {len(row)} entries, expected {n}')
            rows.append(
                tuple(
                    0 if u == v else int(w) % q
                    for v, w in
                    enumerate(row)
                )
            )
        self._matrix: t.Tuple[t.Tuple[int, ...], ...] = tuple(rows)
        self._array: t.Optional[np.ndarray] = None

    @property
    def vertex_count(self) -> int:
        return len(self._matrix)

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def matrix(self) -> t.Tuple[t.Tuple[int, ...], ...]:
        return self._matrix

    @property
    def array(self) -> np.ndarray:
        if self._array is None:
            array = np.array(self._matrix, dtype = np.int64)
            array.setflags(write = False)
            self._array = array
        return self._array

    def vertices(self) -> t.Iterable[int]:
        return range(len(self._matrix))

    def has_edge(self, u: int, v: int) -> bool:
        n = len(self._matrix)
        return 0 <= u < n and 0 <= v < n and u != v

    def value(self, u: int, v: int) -> int:
        if not self.has_edge(u, v):
            raise NotAdjacent(u, v)
        return self._matrix[u][v]

    def weight(self, u: int, v: int) -> Residue:
        return Residue(self.value(u, v), self._modulus)

    def cycle_value(self, cycle: t.Sequence[int]) -> int:
        return sum(
            self.value(u, v)
            for u, v in
            zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1]))
        ) % self._modulus

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices())
        graph.add_weighted_edges_from(
            (u, v, w)
            for u, row in enumerate(self._matrix)
            for v, w in enumerate(row)
            if u != v
        )
        return graph

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CompleteWeightedDigraph)
            and self._modulus == other._modulus
            and self._matrix == other._matrix
        )

    def __hash__(self) -> int:
        return hash((self._modulus, self._matrix))

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(n={self.vertex_count}, q={self._modulus})'
