from __future__ import annotations

import typing as t

from divisible.errors import InputError, InvalidModel
from divisible.graphs.minors import MinorModel, validate_minor_model
from divisible.graphs.trees import LabeledTree
from divisible.graphs.weighted import Edge, WeightedGraph
from divisible.witnesses import SubdivisionWitness


class Partition(object):
    """
    Branch set indices of the X-supernodes (the ones trees are selected in)
    and of the Y-supernodes (the routing pool).
    """

    def __init__(self, x: t.Iterable[int], y: t.Iterable[int]):
        self._x = tuple(x)
        self._y = tuple(y)

    @property
    def x(self) -> t.Tuple[int, ...]:
        return self._x

    @property
    def y(self) -> t.Tuple[int, ...]:
        return self._y

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self._x == other._x and self._y == other._y

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(|X|={len(self._x)}, |Y|={len(self._y)})'


class SplitInstance(object):
    """
    The host after every X-Y edge (x, y) has been split by a new vertex z
    with w(x, z) = 0 and w(z, y) = 1, every other edge carrying weight 1.
    Split vertices are numbered from the original vertex count on, and z
    belongs to the X-supernode of x.
    """

    def __init__(
        self,
        original: WeightedGraph,
        model: MinorModel,
        partition: Partition,
        provenance: t.Mapping[int, Edge],
    ):
        self._original = original
        self._model = model
        self._partition = partition
        self._provenance = dict(provenance)

        self._leaf_ys: t.Dict[int, t.Dict[int, int]] = {}
        for i in partition.x:
            leaf_ys: t.Dict[int, int] = {}
            for z in sorted(v for v in model.branch_sets[i] if v in self._provenance):
                y_set = model.owner(self._provenance[z][1])
                if y_set not in leaf_ys.values():
                    leaf_ys[z] = y_set
            self._leaf_ys[i] = leaf_ys

        self._tree_graphs: t.Dict[int, t.Tuple[WeightedGraph, t.Tuple[int, ...]]] = {}

    @property
    def original(self) -> WeightedGraph:
        return self._original

    @property
    def host(self) -> WeightedGraph:
        return self._model.host

    @property
    def model(self) -> MinorModel:
        return self._model

    @property
    def partition(self) -> Partition:
        return self._partition

    @property
    def modulus(self) -> int:
        return self._original.modulus

    @property
    def provenance(self) -> t.Mapping[int, Edge]:
        return self._provenance

    def is_split_vertex(self, v: int) -> bool:
        return v >= self._original.vertex_count

    def leaf_ys(self, x: int) -> t.Mapping[int, int]:
        """
        L_i of the X-supernode x: split vertex z -> index of the Y-supernode
        behind it, one z (the smallest) per Y-supernode.
        """
        return self._leaf_ys[x]

    def y_of(self, z: int) -> int:
        return self._model.owner(self._provenance[z][1])

    def y_entry(self, z: int) -> int:
        return self._provenance[z][1]

    def x_tree(self, x: int, exclude_ys: t.Collection[int] = ()) -> LabeledTree:
        """
        The spanning tree of X-supernode x in local ids, origin giving the
        host vertices, with the leaves of L_i whose Y-supernode is not in
        `exclude_ys` designated.
        """
        try:
            graph, vertices = self._tree_graphs[x]
        except KeyError:
            vertices = tuple(sorted(self._model.branch_sets[x]))
            local = {v: index for index, v in enumerate(vertices)}
            graph = WeightedGraph(
                len(vertices),
                self.modulus,
                (
                    (local[u], local[v], self.host.value(u, v))
                    for u, v in
                    self._model.trees[x]
                ),
            )
            self._tree_graphs[x] = graph, vertices

        local = {v: index for index, v in enumerate(vertices)}
        return LabeledTree(
            graph,
            leaves = [
                local[z]
                for z, y_set in
                self._leaf_ys[x].items()
                if y_set not in exclude_ys
            ],
            origin = vertices,
        )

    def contract_path(self, path: t.Sequence[int]) -> t.List[int]:
        n = self._original.vertex_count
        return [v for v in path if v < n]

    def contract_host(self) -> WeightedGraph:
        """
        Contracts every split vertex back into its edge, weights of the
        split pair summed.
        """
        n = self._original.vertex_count
        host = self.host
        edges = [(u, v, w) for u, v, w in host.edges() if u < n and v < n]
        edges.extend(
            (x, y, host.value(x, z) + host.value(z, y))
            for z, (x, y) in
            sorted(self._provenance.items())
        )
        return WeightedGraph(n, self.modulus, edges)

    def contract_witness(self, w: SubdivisionWitness) -> SubdivisionWitness:
        """
        The same subdivision in the original host with all weights 1.
        """
        return SubdivisionWitness(
            self._original.with_unit_weights(),
            w.pattern,
            w.branch,
            {edge: self.contract_path(path) for edge, path in w.paths.items()},
            w.modulus,
            w.claims,
        )

    def __repr__(self) -> str:
        return '{}(n={}, splits={}, {!r})'.format(
            self.__class__.__name__,
            self._original.vertex_count,
            len(self._provenance),
            self._partition,
        )


def check_partition(m: MinorModel, partition: Partition) -> t.List[str]:
    problems = []
    if not partition.x:
        problems.append('no X-supernodes')
    indices = partition.x + partition.y
    if len(set(indices)) != len(indices):
        problems.append('X and Y overlap or repeat a branch set')
    if sorted(set(indices)) != list(range(m.size)):
        problems.append(f'X and Y do not cover the {m.size} branch sets exactly')
    return problems


def split_and_weight(g: WeightedGraph, m: MinorModel, partition: Partition) -> SplitInstance:
    if m.host is not g and m.host != g:
        raise InputError('minor model is not on the given host graph')
    report = validate_minor_model(m)
    if not report:
        raise InvalidModel(report)
    problems = check_partition(m, partition)
    if problems:
        raise InputError('invalid partition: ' + '; '.join(problems))

    x_sets, y_sets = set(partition.x), set(partition.y)
    n = g.vertex_count
    edges = []
    provenance: t.Dict[int, Edge] = {}
    split_of: t.Dict[Edge, int] = {}

    for u, v, _ in sorted(g.edges()):
        i, j = m.owner(u), m.owner(v)
        if i in x_sets and j in y_sets:
            x, y = u, v
        elif j in x_sets and i in y_sets:
            x, y = v, u
        else:
            edges.append((u, v, 1))
            continue
        z = n + len(provenance)
        provenance[z] = (x, y)
        split_of[(x, y)] = z
        edges.append((x, z, 0))
        edges.append((z, y, 1))

    host = WeightedGraph(n + len(provenance), g.modulus, edges)

    absorbed: t.Dict[int, t.List[int]] = {i: [] for i in x_sets}
    for z, (x, _) in provenance.items():
        absorbed[m.owner(x)].append(z)

    branch_sets = []
    trees = []
    for i, (branch_set, tree) in enumerate(zip(m.branch_sets, m.trees)):
        zs = absorbed.get(i, [])
        branch_sets.append(list(branch_set) + zs)
        trees.append(list(tree) + [(provenance[z][0], z) for z in zs])

    cross_edges: t.Dict[t.Tuple[int, int], Edge] = {}
    for (i, j), (a, b) in m.cross_edges.items():
        if i in x_sets and j in y_sets:
            a = split_of[(a, b)]
        elif i in y_sets and j in x_sets:
            b = split_of[(b, a)]
        cross_edges[(i, j)] = (a, b)

    return SplitInstance(
        g,
        MinorModel(host, branch_sets, trees, cross_edges),
        partition,
        provenance,
    )
