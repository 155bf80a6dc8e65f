from __future__ import annotations

import itertools
import logging
import typing as t
from enum import Enum

import networkx as nx
import numpy as np

from divisible.errors import InputError
from divisible.graphs.minors import MinorModel
from divisible.graphs.trees import LabeledTree
from divisible.graphs.weighted import CompleteWeightedDigraph, Edge, WeightedGraph, normalize
from divisible.residues import check_modulus
from divisible.subdivision.assembly import Parameterization, check_pattern, leaf_count
from divisible.subdivision.split import Partition


log = logging.getLogger(__name__)


def rng_description() -> str:
    return f'numpy.random.PCG64 (numpy {np.__version__})'


def sub_rng(seed: t.Optional[int], *key: int) -> np.random.Generator:
    """
    Independent stream for one stage or part of a generator, derived from the
    seed through the seed sequence spawn key.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key = key)))


class GenKind(Enum):
    IDENTITY = 'identity'
    TREE_BLOWUP = 'tree-blowup'
    CUBIC = 'cubic'
    FAVORABLE_SUBDIVISION = 'favorable-subdivision'
    DIGRAPH = 'digraph'
    TREE_SHAPE = 'tree-shape'


class GenSpec(object):

    def __init__(
        self,
        kind: GenKind,
        q: int,
        seed: t.Optional[int] = None,
        supernodes: int = 2,
        blowup: t.Tuple[int, int] = (1, 1),
        noise: int = 0,
        cross_noise: bool = False,
        weighted: bool = False,
    ):
        check_modulus(q)
        if supernodes < 2:
            raise InputError(f'need at least 2 supernodes, got {supernodes}')
        low, high = blowup
        if kind in (GenKind.IDENTITY, GenKind.CUBIC) and (low, high) != (1, 1):
            raise InputError(f'{kind.value} models have blowup size 1')
        if not 1 <= low <= high:
            raise InputError(f'infeasible blowup sizes {blowup}')
        if noise < 0:
            raise InputError(f'negative noise {noise}')

        self._kind = kind
        self._q = q
        self._seed = seed
        self._supernodes = supernodes
        self._blowup = (low, high)
        self._noise = noise
        self._cross_noise = cross_noise
        self._weighted = weighted

    @property
    def kind(self) -> GenKind:
        return self._kind

    @property
    def q(self) -> int:
        return self._q

    @property
    def seed(self) -> t.Optional[int]:
        return self._seed

    @property
    def supernodes(self) -> int:
        return self._supernodes

    @property
    def blowup(self) -> t.Tuple[int, int]:
        return self._blowup

    @property
    def noise(self) -> int:
        return self._noise

    @property
    def cross_noise(self) -> bool:
        return self._cross_noise

    @property
    def weighted(self) -> bool:
        return self._weighted

    def rng(self, *key: int) -> np.random.Generator:
        return sub_rng(self._seed, *key)

    def __repr__(self) -> str:
        return '{}({}, q={}, supernodes={}, blowup={}, seed={})'.format(
            self.__class__.__name__,
            self._kind.value,
            self._q,
            self._supernodes,
            self._blowup,
            self._seed,
        )


def _random_recursive_tree(vertices: t.Sequence[int], rng: np.random.Generator) -> t.List[Edge]:
    return [
        (vertices[int(rng.integers(0, index))], vertices[index])
        for index in
        range(1, len(vertices))
    ]


def _weigh(edges: t.Iterable[Edge], q: int, rng: t.Optional[np.random.Generator]) -> t.List[t.Tuple[int, int, int]]:
    edges = sorted(edges)
    if rng is None:
        return [(u, v, 1) for u, v in edges]
    weights = rng.integers(0, q, size = len(edges))
    return [(u, v, int(w)) for (u, v), w in zip(edges, weights)]


def gen_minor_model(spec: GenSpec) -> t.Tuple[WeightedGraph, MinorModel]:
    """
    Blows each of spec.supernodes vertices of a complete graph up into a
    random recursive tree with a size drawn from spec.blowup, joining every
    pair of trees by one edge between random vertices. Cubic models are
    deterministic, see gen_cubic_minor_model.
    """
    if spec.kind == GenKind.CUBIC:
        return gen_cubic_minor_model(spec.supernodes, spec.q)
    if spec.kind not in (GenKind.IDENTITY, GenKind.TREE_BLOWUP):
        raise InputError(f'{spec.kind.value} does not describe a minor model')
    low, high = spec.blowup
    sizes = [int(size) for size in spec.rng(0).integers(low, high + 1, size = spec.supernodes)]

    branch_sets = []
    offset = 0
    for size in sizes:
        branch_sets.append(list(range(offset, offset + size)))
        offset += size
    n = offset

    trees = [
        _random_recursive_tree(branch_set, spec.rng(1, index))
        for index, branch_set in
        enumerate(branch_sets)
    ]
    edges: t.Set[Edge] = {normalize(u, v) for tree in trees for u, v in tree}

    cross_rng = spec.rng(2)
    cross_edges: t.Dict[t.Tuple[int, int], Edge] = {}
    for i, j in itertools.combinations(range(spec.supernodes), 2):
        a = branch_sets[i][int(cross_rng.integers(0, sizes[i]))]
        b = branch_sets[j][int(cross_rng.integers(0, sizes[j]))]
        cross_edges[(i, j)] = (a, b)
        edges.add(normalize(a, b))

    noise_rng = spec.rng(3)
    for branch_set in branch_sets:
        if len(branch_set) < 3:
            continue
        for _ in range(spec.noise):
            u, v = noise_rng.choice(branch_set, size = 2, replace = False)
            edges.add(normalize(int(u), int(v)))

    if spec.cross_noise and spec.noise:
        owner = {v: index for index, branch_set in enumerate(branch_sets) for v in branch_set}
        cross_noise_rng = spec.rng(4)
        for _ in range(spec.noise):
            u, v = cross_noise_rng.choice(n, size = 2, replace = False)
            edges.add(normalize(int(u), int(v)))
        cross_edges = {}
        for u, v in sorted(edges):
            i, j = owner[u], owner[v]
            if i != j and (min(i, j), max(i, j)) not in cross_edges:
                cross_edges[(min(i, j), max(i, j))] = (u, v) if i < j else (v, u)

    host = WeightedGraph(n, spec.q, _weigh(edges, spec.q, spec.rng(5) if spec.weighted else None))
    log.debug('generated %r on %d vertices', spec, n)
    return host, MinorModel(host, branch_sets, trees, cross_edges)


def gen_cubic_minor_model(f: int, q: int) -> t.Tuple[WeightedGraph, MinorModel]:
    """
    A K_f minor of maximum degree 3. Supernode i is a path through one port
    per other supernode, port (i, j) being joined to port (j, i), and every
    edge of this skeleton is stretched into a path of length q. Any path
    between two degree 3 vertices then has length divisible by q, so the
    host holds no subdivision of a graph with a vertex of degree 4.
    """
    check_modulus(q)
    if f < 2:
        raise InputError(f'need at least 2 supernodes, got {f}')

    ports = {
        (i, j): index
        for index, (i, j) in
        enumerate((i, j) for i in range(f) for j in range(f) if i != j)
    }
    branch_sets: t.List[t.List[int]] = [[] for _ in range(f)]
    for (i, _), port in ports.items():
        branch_sets[i].append(port)
    trees: t.List[t.List[Edge]] = [[] for _ in range(f)]
    fresh = itertools.count(len(ports))

    def stretch(a: int, b: int) -> t.List[int]:
        return [a] + [next(fresh) for _ in range(q - 1)] + [b]

    for i in range(f):
        spine = [ports[(i, j)] for j in range(f) if j != i]
        for a, b in zip(spine, spine[1:]):
            path = stretch(a, b)
            branch_sets[i].extend(path[1:-1])
            trees[i].extend(zip(path, path[1:]))

    cross_edges: t.Dict[t.Tuple[int, int], Edge] = {}
    for i, j in itertools.combinations(range(f), 2):
        path = stretch(ports[(i, j)], ports[(j, i)])
        branch_sets[i].extend(path[1:-1])
        trees[i].extend(zip(path[:-2], path[1:-1]))
        cross_edges[(i, j)] = (path[-2], path[-1])

    edges = {normalize(u, v) for tree in trees for u, v in tree}
    edges.update(normalize(a, b) for a, b in cross_edges.values())
    host = WeightedGraph(next(fresh), q, _weigh(edges, q, None))
    log.debug('generated cubic K_%d minor on %d vertices, q=%d', f, host.vertex_count, q)
    return host, MinorModel(host, branch_sets, trees, cross_edges)


def gen_digraph(n: int, q: int, seed: t.Optional[int] = None) -> CompleteWeightedDigraph:
    if n < 2:
        raise InputError(f'digraph needs at least 2 vertices, got {n}')
    check_modulus(q)
    matrix = np.random.default_rng(seed).integers(0, q, size = (n, n))
    return CompleteWeightedDigraph(q, matrix.tolist())


def enumerate_digraphs(n: int, q: int) -> t.Iterator[CompleteWeightedDigraph]:
    """
    Every weighting of the complete digraph on n vertices, off-diagonal
    entries in row-major order with the first entry varying slowest.
    """
    if n < 2:
        raise InputError(f'digraph needs at least 2 vertices, got {n}')
    check_modulus(q)
    positions = [(u, v) for u in range(n) for v in range(n) if u != v]
    for values in itertools.product(range(q), repeat = len(positions)):
        matrix = [[0] * n for _ in range(n)]
        for (u, v), value in zip(positions, values):
            matrix[u][v] = value
        yield CompleteWeightedDigraph(q, matrix)


class TreeShape(Enum):
    STAR = 'star'
    CATERPILLAR = 'caterpillar'
    BROOM = 'broom'
    RANDOM = 'random'


def _shape_edges(shape: TreeShape, params: t.Mapping[str, int], rng: np.random.Generator) -> t.Tuple[int, t.List[Edge]]:
    if shape == TreeShape.STAR:
        degree = params['degree']
        if degree < 2:
            raise InputError(f'star needs hub degree at least 2, got {degree}')
        return degree + 1, [(0, leaf) for leaf in range(1, degree + 1)]

    if shape == TreeShape.CATERPILLAR:
        spine = params['branches']
        if spine < 1:
            raise InputError(f'caterpillar needs at least 1 branch vertex, got {spine}')
        edges = [(u, u + 1) for u in range(spine - 1)]
        fresh = itertools.count(spine)
        edges.extend((u, next(fresh)) for u in range(spine))
        edges.append((0, next(fresh)))
        edges.append((spine - 1, next(fresh)))
        return spine * 2 + 2, edges

    if shape == TreeShape.BROOM:
        handle, bristles = params['handle'], params['bristles']
        if handle < 1 or bristles < 2:
            raise InputError(f'broom needs handle >= 1 and bristles >= 2, got {handle}, {bristles}')
        edges = [(u, u + 1) for u in range(handle)]
        edges.extend((handle, handle + 1 + index) for index in range(bristles))
        return handle + 1 + bristles, edges

    leaves = params['leaves']
    if leaves < 2:
        raise InputError(f'random tree needs at least 2 leaves, got {leaves}')
    degree = [1, 1]
    edges = [(0, 1)]
    count = 2
    while count < leaves:
        for draw in rng.random(max(64, 2 * (leaves - count))):
            parent = int(draw * len(degree))
            if degree[parent] != 1:
                count += 1
            degree[parent] += 1
            degree.append(1)
            edges.append((parent, len(degree) - 1))
            if count == leaves:
                break
    return len(degree), edges


def gen_tree(
    shape: t.Union[TreeShape, str],
    q: int,
    seed: t.Optional[int] = None,
    labels: t.Union[int, str] = 'random',
    designated: t.Optional[t.Iterable[int]] = None,
    **params: int,
) -> LabeledTree:
    """
    Shapes and their parameters: star (degree), caterpillar (branches: the
    number of degree-3 spine vertices), broom (handle, bristles) and random
    (leaves: the exact leaf count). Labels are a constant or 'random'.
    """
    shape = TreeShape(shape)
    check_modulus(q)
    try:
        n, edges = _shape_edges(shape, params, sub_rng(seed, 0))
    except KeyError as e:
        raise InputError(f'{shape.value} tree needs parameter {e.args[0]}')

    if labels == 'random':
        weights = sub_rng(seed, 1).integers(0, q, size = len(edges))
        weighted = [(u, v, int(w)) for (u, v), w in zip(edges, weights)]
    elif isinstance(labels, int):
        weighted = [(u, v, labels) for u, v in edges]
    else:
        raise InputError(f'labels must be an integer or \'random\', got {labels!r}')
    return LabeledTree.from_edges(n, q, weighted, designated)


def gen_favorable_subdivision_instance(
    h: nx.Graph,
    q: int,
    m: int,
    seed: t.Optional[int] = None,
    parameterization: Parameterization = Parameterization.DEGREE,
    hub_degree: t.Optional[int] = None,
) -> t.Tuple[WeightedGraph, MinorModel, Partition]:
    """
    (m - 1)q + 1 X-supernodes shaped as spiders, each with all spokes of one
    random length in 1..q, and a pool of small Y-supernodes. Every spoke tip
    is joined to its own Y-supernode; with `hub_degree` spokes the Y pool is
    dealt round robin over the tips. X-supernodes are joined hub to hub.
    """
    check_modulus(q)
    check_pattern(h)
    if m < 3:
        raise InputError(f'Ramsey graph size must be at least 3, got {m}')
    target = h.number_of_nodes() + h.number_of_edges() * (q - 1)
    if m < target:
        log.info('K_%d is smaller than the %d-vertex subdivision, the Ramsey stage will come up empty', m, target)

    k = leaf_count(parameterization, m)
    spare = (k - 1) * q + 2
    x_count = (m - 1) * q + 1
    y_count = m * (m - 1) + spare if parameterization == Parameterization.DEGREE else spare
    spokes = y_count if hub_degree is None else hub_degree
    if not 3 <= spokes <= y_count:
        raise InputError(f'hub degree must lie in 3..{y_count}, got {spokes}')

    edges: t.List[Edge] = []
    branch_sets: t.List[t.List[int]] = []
    trees: t.List[t.List[Edge]] = []
    tips: t.List[t.List[int]] = []
    fresh = itertools.count()

    for i in range(x_count):
        length = int(sub_rng(seed, 0, i).integers(1, q + 1))
        hub = next(fresh)
        members, tree, ends = [hub], [], []
        for _ in range(spokes):
            previous = hub
            for _ in range(length):
                v = next(fresh)
                members.append(v)
                tree.append((previous, v))
                previous = v
            ends.append(previous)
        branch_sets.append(members)
        trees.append(tree)
        tips.append(ends)

    for j in range(y_count):
        size = int(sub_rng(seed, 1, j).integers(1, 3))
        members = [next(fresh) for _ in range(size)]
        branch_sets.append(members)
        trees.append([(members[0], members[1])] if size == 2 else [])

    for tree in trees:
        edges.extend(tree)

    cross_edges: t.Dict[t.Tuple[int, int], Edge] = {}
    for i, j in itertools.combinations(range(x_count), 2):
        cross_edges[(i, j)] = (branch_sets[i][0], branch_sets[j][0])

    for i in range(x_count):
        rng = sub_rng(seed, 2, i)
        for j in range(y_count):
            y_set = branch_sets[x_count + j]
            cross_edges[(i, x_count + j)] = (tips[i][j % spokes], y_set[int(rng.integers(0, len(y_set)))])

    rng = sub_rng(seed, 3)
    for j1, j2 in itertools.combinations(range(x_count, x_count + y_count), 2):
        first, second = branch_sets[j1], branch_sets[j2]
        cross_edges[(j1, j2)] = (
            first[int(rng.integers(0, len(first)))],
            second[int(rng.integers(0, len(second)))],
        )

    edges.extend(cross_edges.values())
    host = WeightedGraph(next(fresh), q, edges)
    log.debug(
        'favorable instance: %d X spiders with %d spokes, %d Y-supernodes, %d vertices',
        x_count,
        spokes,
        y_count,
        host.vertex_count,
    )
    return (
        host,
        MinorModel(host, branch_sets, trees, cross_edges),
        Partition(range(x_count), range(x_count, x_count + y_count)),
    )
