from __future__ import annotations

import itertools
import typing as t
from types import MappingProxyType

import networkx as nx

from divisible.graphs.weighted import WeightedGraph, Edge, normalize


class TreePaths(object):
    """
    Paths inside one branch set along its recorded spanning tree only, never
    along other host edges induced on the set.
    """

    def __init__(self, vertices: t.Iterable[int], edges: t.Iterable[Edge]):
        self._tree = nx.Graph()
        self._tree.add_nodes_from(vertices)
        self._tree.add_edges_from(edges)

    def path(self, u: int, v: int) -> t.List[int]:
        return nx.shortest_path(self._tree, u, v)


class MinorModel(object):
    """
    Certificate of a complete minor in a host graph: disjoint branch sets,
    a spanning tree of each, and one recorded cross edge per pair of sets.
    Cross edges are stored oriented, `cross_edges[(i, j)] = (a, b)` with
    i < j, a in set i and b in set j.

    Construction does not validate; use validate_minor_model.
    """

    def __init__(
        self,
        host: WeightedGraph,
        branch_sets: t.Sequence[t.Iterable[int]],
        trees: t.Sequence[t.Iterable[Edge]],
        cross_edges: t.Mapping[t.Tuple[int, int], Edge],
    ):
        self._host = host
        self._branch_sets = tuple(tuple(branch_set) for branch_set in branch_sets)
        self._trees = tuple(
            tuple(normalize(u, v) for u, v in tree)
            for tree in
            trees
        )
        self._cross_edges = MappingProxyType(
            {
                (i, j): tuple(edge)
                for (i, j), edge in
                sorted(cross_edges.items())
            }
        )
        self._owner: t.Optional[t.Dict[int, int]] = None
        self._tree_paths: t.Dict[int, TreePaths] = {}

    @classmethod
    def from_branch_sets(cls, host: WeightedGraph, branch_sets: t.Sequence[t.Iterable[int]]) -> MinorModel:
        """
        Spanning trees by breadth-first traversal from the smallest vertex of
        each set; for each pair of sets the lexicographically smallest host
        edge joining them becomes the cross edge.
        """
        branch_sets = [sorted(branch_set) for branch_set in branch_sets]
        owner = {
            v: index
            for index, branch_set in
            enumerate(branch_sets)
            for v in branch_set
        }

        graph = host.to_networkx()
        trees = [
            list(nx.bfs_edges(graph.subgraph(branch_set), branch_set[0], sort_neighbors = sorted))
            if branch_set else
            []
            for branch_set in
            branch_sets
        ]

        cross_edges: t.Dict[t.Tuple[int, int], Edge] = {}
        for u, v, _ in sorted(host.edges()):
            i, j = owner.get(u), owner.get(v)
            if i is None or j is None or i == j:
                continue
            key = (min(i, j), max(i, j))
            if key not in cross_edges:
                cross_edges[key] = (u, v) if i < j else (v, u)

        return cls(host, branch_sets, trees, cross_edges)

    @classmethod
    def identity(cls, host: WeightedGraph) -> MinorModel:
        return cls.from_branch_sets(host, [[v] for v in host.vertices()])

    @property
    def host(self) -> WeightedGraph:
        return self._host

    @property
    def branch_sets(self) -> t.Tuple[t.Tuple[int, ...], ...]:
        return self._branch_sets

    @property
    def trees(self) -> t.Tuple[t.Tuple[Edge, ...], ...]:
        return self._trees

    @property
    def cross_edges(self) -> t.Mapping[t.Tuple[int, int], Edge]:
        return self._cross_edges

    @property
    def size(self) -> int:
        return len(self._branch_sets)

    def owner(self, v: int) -> t.Optional[int]:
        if self._owner is None:
            self._owner = {
                u: index
                for index, branch_set in
                enumerate(self._branch_sets)
                for u in branch_set
            }
        return self._owner.get(v)

    def cross_edge(self, i: int, j: int) -> Edge:
        """
        The recorded edge between sets i and j, oriented from i to j.
        """
        if i < j:
            return self._cross_edges[(i, j)]
        a, b = self._cross_edges[(j, i)]
        return b, a

    def tree_paths(self, index: int) -> TreePaths:
        try:
            return self._tree_paths[index]
        except KeyError:
            paths = TreePaths(self._branch_sets[index], self._trees[index])
            self._tree_paths[index] = paths
            return paths

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(host={self._host!r}, sets={self.size})'


class Violation(object):

    def __init__(
        self,
        kind: str,
        message: str,
        branch_sets: t.Sequence[int] = (),
        edges: t.Sequence[Edge] = (),
    ):
        self._kind = kind
        self._message = message
        self._branch_sets = tuple(branch_sets)
        self._edges = tuple(edges)

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def message(self) -> str:
        return self._message

    @property
    def branch_sets(self) -> t.Tuple[int, ...]:
        return self._branch_sets

    @property
    def edges(self) -> t.Tuple[Edge, ...]:
        return self._edges

    def __str__(self) -> str:
        return f'{self._kind}: {self._message}'

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self})'


class ValidationReport(object):

    def __init__(self, violations: t.Iterable[Violation]):
        self._violations = tuple(violations)

    @property
    def violations(self) -> t.Tuple[Violation, ...]:
        return self._violations

    @property
    def valid(self) -> bool:
        return not self._violations

    def kinds(self) -> t.FrozenSet[str]:
        return frozenset(violation.kind for violation in self._violations)

    def __bool__(self) -> bool:
        return self.valid

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({list(map(str, self._violations))})'


def validate_minor_model(m: MinorModel) -> ValidationReport:
    host = m.host
    n = host.vertex_count
    violations: t.List[Violation] = []
    owner: t.Dict[int, int] = {}

    for index, branch_set in enumerate(m.branch_sets):
        if not branch_set:
            violations.append(Violation('empty-set', f'branch set {index} is empty', (index,)))
        if len(set(branch_set)) != len(branch_set):
            violations.append(Violation('duplicate-vertex', f'branch set {index} repeats a vertex', (index,)))
        for v in branch_set:
            if not 0 <= v < n:
                violations.append(Violation('vertex-range', f'vertex {v} of set {index} not in host', (index,)))
            elif v in owner and owner[v] != index:
                violations.append(
                    Violation(
                        'overlap',
                        f'vertex {v} lies in sets {owner[v]} and {index}',
                        (owner[v], index),
                    )
                )
            else:
                owner[v] = index

    if len(m.trees) != len(m.branch_sets):
        violations.append(
            Violation('tree-count', f'{len(m.trees)} trees for {len(m.branch_sets)} branch sets')
        )
    else:
        for index, (branch_set, tree) in enumerate(zip(m.branch_sets, m.trees)):
            members = set(branch_set)
            foreign = [
                (u, v)
                for u, v in
                tree
                if u not in members or v not in members or not host.has_edge(u, v)
            ]
            if foreign:
                violations.append(
                    Violation(
                        'tree-edge',
                        f'spanning tree of set {index} uses edges outside the set or the host',
                        (index,),
                        foreign,
                    )
                )
                continue
            spanning = nx.Graph()
            spanning.add_nodes_from(members)
            spanning.add_edges_from(tree)
            if members and not nx.is_tree(spanning):
                violations.append(
                    Violation(
                        'not-spanning-tree',
                        f'tree edges of set {index} do not form a spanning tree of it',
                        (index,),
                    )
                )

    size = len(m.branch_sets)
    for key, (a, b) in m.cross_edges.items():
        i, j = key
        if not (0 <= i < j < size):
            violations.append(Violation('cross-key', f'cross edge key {key} is not a pair of set indices'))
            continue
        if not host.has_edge(a, b):
            violations.append(
                Violation('cross-edge', f'cross edge ({a}, {b}) is not a host edge', (i, j), ((a, b),))
            )
        elif owner.get(a) != i or owner.get(b) != j:
            violations.append(
                Violation(
                    'cross-endpoints',
                    f'cross edge ({a}, {b}) does not join sets {i} and {j}',
                    (i, j),
                    ((a, b),),
                )
            )

    for i, j in itertools.combinations(range(size), 2):
        if (i, j) not in m.cross_edges:
            violations.append(Violation('missing-cross-edge', f'no cross edge between sets {i} and {j}', (i, j)))

    return ValidationReport(violations)
