from __future__ import annotations

import typing as t

from divisible.errors import InvalidGraph
from divisible.graphs.weighted import WeightedGraph, Edge, WeightedEdge


class LabeledTree(object):
    """
    A Z_q edge-labeled tree with a designated set of leaves L and an optional
    root. `origin` maps local vertices to the ids they had in whatever graph
    the tree was cut from (a branch set of a host, or a larger tree before
    trimming).
    """

    def __init__(
        self,
        graph: WeightedGraph,
        leaves: t.Optional[t.Iterable[int]] = None,
        root: t.Optional[int] = None,
        origin: t.Optional[t.Sequence[int]] = None,
    ):
        n = graph.vertex_count
        if n == 0:
            raise InvalidGraph('empty tree')
        if graph.edge_count != n - 1:
            raise InvalidGraph(f'tree on {n} vertices has {graph.edge_count} edges')

        self._graph = graph
        order, _ = self._bfs(0)
        if len(order) != n:
            raise InvalidGraph('tree is not connected')

        if leaves is None:
            self._leaves = tuple(v for v in graph.vertices() if graph.degree(v) == 1)
        else:
            self._leaves = tuple(sorted(set(leaves)))
            for leaf in self._leaves:
                if not 0 <= leaf < n or (n > 1 and graph.degree(leaf) != 1):
                    raise InvalidGraph(f'designated leaf {leaf} is not a degree-1 vertex')
        self._leaf_set = frozenset(self._leaves)

        if root is not None and not 0 <= root < n:
            raise InvalidGraph(f'root {root} out of range')
        self._root = root

        if origin is not None and len(origin) != n:
            raise InvalidGraph(f'origin has {len(origin)} entries for {n} vertices')
        self._origin = tuple(origin) if origin is not None else None

    @classmethod
    def from_edges(
        cls,
        n: int,
        q: int,
        edges: t.Iterable[t.Union[Edge, WeightedEdge]],
        leaves: t.Optional[t.Iterable[int]] = None,
        root: t.Optional[int] = None,
        origin: t.Optional[t.Sequence[int]] = None,
    ) -> LabeledTree:
        return cls(WeightedGraph(n, q, edges), leaves, root, origin)

    @property
    def graph(self) -> WeightedGraph:
        return self._graph

    @property
    def modulus(self) -> int:
        return self._graph.modulus

    @property
    def vertex_count(self) -> int:
        return self._graph.vertex_count

    @property
    def leaves(self) -> t.Tuple[int, ...]:
        return self._leaves

    @property
    def root(self) -> t.Optional[int]:
        return self._root

    @property
    def origin(self) -> t.Optional[t.Tuple[int, ...]]:
        return self._origin

    def is_leaf(self, v: int) -> bool:
        return v in self._leaf_set

    def external(self, v: int) -> int:
        return v if self._origin is None else self._origin[v]

    def degree(self, v: int) -> int:
        return self._graph.degree(v)

    def _bfs(self, source: int) -> t.Tuple[t.List[int], t.List[int]]:
        parent = [-1] * self._graph.vertex_count
        parent[source] = source
        order = [source]
        index = 0
        while index < len(order):
            u = order[index]
            index += 1
            for v in self._graph.neighbors(u):
                if parent[v] == -1:
                    parent[v] = u
                    order.append(v)
        return order, parent

    def bfs(self, source: int) -> t.Tuple[t.List[int], t.List[int]]:
        """
        Breadth-first order from source and parent pointers (the source is
        its own parent).
        """
        return self._bfs(source)

    def path(self, u: int, v: int) -> t.List[int]:
        _, parent = self._bfs(u)
        path = [v]
        while path[-1] != u:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def __repr__(self) -> str:
        return '{}(n={}, |L|={}, q={})'.format(
            self.__class__.__name__,
            self.vertex_count,
            len(self._leaves),
            self.modulus,
        )
