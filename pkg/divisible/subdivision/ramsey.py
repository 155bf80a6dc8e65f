from __future__ import annotations

import itertools
import logging
import typing as t

import networkx as nx

from divisible.errors import BudgetExceeded, InputError
from divisible.graphs.weighted import Edge, normalize
from divisible.residues import check_modulus


log = logging.getLogger(__name__)


def complete_edges(m: int) -> t.List[Edge]:
    return list(itertools.combinations(range(m), 2))


class EdgeColoring(object):
    """
    A q-coloring of the edges of the complete graph K_m.
    """

    def __init__(self, m: int, q: int, colors: t.Mapping[Edge, int]):
        if m < 1:
            raise InputError(f'K_m needs m >= 1, got {m}')
        self._m = m
        self._q = check_modulus(q)
        self._colors = {normalize(i, j): c % q for (i, j), c in colors.items()}
        missing = [edge for edge in complete_edges(m) if edge not in self._colors]
        if missing or len(self._colors) != m * (m - 1) // 2:
            raise InputError(f'coloring of K_{m} does not color exactly its edges, missing {missing[:5]}')

    @classmethod
    def from_sequence(cls, m: int, q: int, values: t.Sequence[int]) -> EdgeColoring:
        """
        Colors listed in lexicographic edge order.
        """
        edges = complete_edges(m)
        if len(values) != len(edges):
            raise InputError(f'{len(values)} colors for {len(edges)} edges')
        return cls(m, q, dict(zip(edges, values)))

    @classmethod
    def constant(cls, m: int, q: int, color: int = 0) -> EdgeColoring:
        return cls(m, q, {edge: color for edge in complete_edges(m)})

    @property
    def m(self) -> int:
        return self._m

    @property
    def colors(self) -> int:
        return self._q

    def color(self, i: int, j: int) -> int:
        return self._colors[normalize(i, j)]

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(K_{self._m}, q={self._q})'


def subdivide_pattern(h: nx.Graph, s: int) -> t.Tuple[nx.Graph, t.Dict[Edge, t.List[int]]]:
    """
    The s-subdivision D of h and, for every edge (a, b) of h with a < b, the
    path of D from a to b replacing it. New vertices are numbered after the
    largest vertex of h, edge by edge in sorted order.
    """
    if s < 0:
        raise InputError(f'subdivision count must be non-negative, got {s}')
    d = nx.Graph()
    d.add_nodes_from(sorted(h.nodes()))
    fresh = itertools.count(max(h.nodes(), default = -1) + 1)
    replacement = {}
    for a, b in sorted(normalize(a, b) for a, b in h.edges()):
        path = [a] + [next(fresh) for _ in range(s)] + [b]
        nx.add_path(d, path)
        replacement[(a, b)] = path
    return d, replacement


class MonochromaticCopy(object):
    """
    An injective map of the target's vertices into K_m under which every
    target edge lands on an edge of one color.
    """

    def __init__(self, color: int, embedding: t.Mapping[int, int]):
        self._color = color
        self._embedding = dict(sorted(embedding.items()))

    @property
    def color(self) -> int:
        return self._color

    @property
    def embedding(self) -> t.Mapping[int, int]:
        return self._embedding

    def image(self, path: t.Sequence[int]) -> t.List[int]:
        return [self._embedding[v] for v in path]

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(b={self._color}, {self._embedding})'


def _search_order(target: nx.Graph) -> t.List[int]:
    order: t.List[int] = []
    for component in sorted(nx.connected_components(target), key = min):
        source = min(component)
        order.append(source)
        order.extend(v for _, v in nx.bfs_edges(target, source, sort_neighbors = sorted))
    return order


def find_monochromatic_subdivision(
    coloring: EdgeColoring,
    target: nx.Graph,
    budget: int = 2_000_000,
) -> t.Optional[MonochromaticCopy]:
    """
    Lexicographic backtracking over colors 0..q-1 and, within a color,
    over images of the target vertices in breadth-first order. Returns the
    first copy found, None when none exists, and raises BudgetExceeded when
    more than `budget` placements were tried.
    """
    m = coloring.m
    if target.number_of_nodes() > m:
        log.info('target on %d vertices cannot fit into K_%d', target.number_of_nodes(), m)
        return None

    order = _search_order(target)
    position = {v: index for index, v in enumerate(order)}
    earlier = [
        [position[w] for w in target.neighbors(v) if position[w] < index]
        for index, v in
        enumerate(order)
    ]
    nodes = [0]

    for color in range(coloring.colors):
        allowed = [
            frozenset(j for j in range(m) if j != i and coloring.color(i, j) == color)
            for i in range(m)
        ]
        image = [-1] * len(order)
        used = [False] * m

        def extend(index: int) -> bool:
            if index == len(order):
                return True
            for candidate in range(m):
                if used[candidate]:
                    continue
                if any(candidate not in allowed[image[p]] for p in earlier[index]):
                    continue
                nodes[0] += 1
                if nodes[0] > budget:
                    raise BudgetExceeded(budget)
                image[index] = candidate
                used[candidate] = True
                if extend(index + 1):
                    return True
                used[candidate] = False
            return False

        if extend(0):
            log.debug('monochromatic copy in color %d after %d placements', color, nodes[0])
            return MonochromaticCopy(color, {v: image[position[v]] for v in order})

    log.info('no monochromatic copy after %d placements', nodes[0])
    return None


def check_monochromatic(coloring: EdgeColoring, target: nx.Graph, copy: MonochromaticCopy) -> t.List[str]:
    violations = []
    embedding = copy.embedding
    if set(embedding) != set(target.nodes()):
        violations.append('domain')
        return violations
    images = list(embedding.values())
    if len(set(images)) != len(images) or any(not 0 <= v < coloring.m for v in images):
        violations.append('injective')
        return violations
    if any(coloring.color(embedding[a], embedding[b]) != copy.color for a, b in target.edges()):
        violations.append('color')
    return violations


def verify_monochromatic(coloring: EdgeColoring, target: nx.Graph, copy: MonochromaticCopy) -> bool:
    return not check_monochromatic(coloring, target, copy)
