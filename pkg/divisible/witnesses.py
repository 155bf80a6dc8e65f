from __future__ import annotations

import typing as t

import networkx as nx

from divisible.graphs.weighted import WeightedGraph, CompleteWeightedDigraph, Edge, normalize


Host = t.Union[WeightedGraph, CompleteWeightedDigraph]


class CycleWitness(object):
    """
    A cycle in a host, listed without repeating the first vertex, claimed to
    have weight `claimed` (always 0 for witnesses this package produces)
    modulo `modulus`.
    """

    def __init__(self, host: Host, vertices: t.Sequence[int], modulus: int, claimed: int = 0):
        self._host = host
        self._vertices = tuple(vertices)
        self._modulus = modulus
        self._claimed = claimed

    @property
    def host(self) -> Host:
        return self._host

    @property
    def vertices(self) -> t.Tuple[int, ...]:
        return self._vertices

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def claimed(self) -> int:
        return self._claimed

    @property
    def directed(self) -> bool:
        return isinstance(self._host, CompleteWeightedDigraph)

    def edges(self) -> t.Iterator[Edge]:
        vertices = self._vertices
        for index, u in enumerate(vertices):
            yield u, vertices[(index + 1) % len(vertices)]

    def value(self) -> int:
        return sum(self._host.value(u, v) for u, v in self.edges()) % self._host.modulus

    def __len__(self) -> int:
        return len(self._vertices)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({list(self._vertices)}, q={self._modulus})'


def check_cycle_witness(w: CycleWitness) -> t.List[str]:
    """
    Names of the violated witness invariants, empty iff the witness holds.
    """
    host = w.host
    violations = []
    if w.modulus != host.modulus:
        violations.append('modulus')
    if len(w) < (2 if w.directed else 3):
        violations.append('length')
    if len(set(w.vertices)) != len(w.vertices):
        violations.append('distinct')
    if any(not 0 <= v < host.vertex_count for v in w.vertices):
        violations.append('vertex-range')
        return violations
    if any(not host.has_edge(u, v) for u, v in w.edges()):
        violations.append('adjacency')
        return violations
    value = w.value()
    if value != 0:
        violations.append('residue')
    if w.claimed % w.modulus != value:
        violations.append('claim')
    return violations


def verify_cycle_witness(w: CycleWitness) -> bool:
    return not check_cycle_witness(w)


class SubdivisionWitness(object):
    """
    A subdivision of the pattern H in a host: branch vertices for the
    vertices of H and, for each edge (a, b) of H with a < b, a host path from
    the branch vertex of a to that of b.
    """

    def __init__(
        self,
        host: WeightedGraph,
        pattern: nx.Graph,
        branch: t.Mapping[int, int],
        paths: t.Mapping[Edge, t.Sequence[int]],
        modulus: int,
        claims: t.Optional[t.Mapping[Edge, int]] = None,
    ):
        self._host = host
        self._pattern = pattern
        self._branch = dict(sorted(branch.items()))
        self._paths = {
            normalize(a, b): tuple(path)
            for (a, b), path in
            sorted(paths.items())
        }
        self._modulus = modulus
        self._claims = (
            {edge: 0 for edge in self._paths}
            if claims is None else
            {normalize(a, b): claim for (a, b), claim in claims.items()}
        )

    @property
    def host(self) -> WeightedGraph:
        return self._host

    @property
    def pattern(self) -> nx.Graph:
        return self._pattern

    @property
    def branch(self) -> t.Mapping[int, int]:
        return self._branch

    @property
    def paths(self) -> t.Mapping[Edge, t.Tuple[int, ...]]:
        return self._paths

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def claims(self) -> t.Mapping[Edge, int]:
        return self._claims

    def __repr__(self) -> str:
        return '{}(H={}, paths={}, q={})'.format(
            self.__class__.__name__,
            sorted(self._pattern.edges()),
            len(self._paths),
            self._modulus,
        )


def check_subdivision_witness(w: SubdivisionWitness) -> t.List[str]:
    host = w.host
    violations = []
    if w.modulus != host.modulus:
        violations.append('modulus')

    branch = w.branch
    if set(branch) != set(w.pattern.nodes()):
        violations.append('branch-map')
        return violations
    branch_vertices = set(branch.values())
    if len(branch_vertices) != len(branch) or any(not 0 <= v < host.vertex_count for v in branch_vertices):
        violations.append('branch-map')
        return violations

    if set(w.paths) != {normalize(a, b) for a, b in w.pattern.edges()}:
        violations.append('pattern-edges')
        return violations

    used: t.Set[int] = set()
    for (a, b), path in w.paths.items():
        if len(path) < 2 or path[0] != branch[a] or path[-1] != branch[b]:
            if 'endpoints' not in violations:
                violations.append('endpoints')
            continue
        if len(set(path)) != len(path):
            if 'simple' not in violations:
                violations.append('simple')
            continue
        if any(not host.has_edge(u, v) for u, v in zip(path, path[1:])):
            if 'adjacency' not in violations:
                violations.append('adjacency')
            continue
        value = host.path_value(path)
        if value != 0 and 'residue' not in violations:
            violations.append('residue')
        if w.claims.get((a, b), 0) % w.modulus != value and 'claim' not in violations:
            violations.append('claim')
        inner = set(path[1:-1])
        if (inner & branch_vertices or inner & used) and 'disjoint' not in violations:
            violations.append('disjoint')
        used |= inner
    return violations


def verify_subdivision_witness(w: SubdivisionWitness) -> bool:
    return not check_subdivision_witness(w)
