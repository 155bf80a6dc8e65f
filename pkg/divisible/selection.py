from __future__ import annotations

import itertools
import logging
import typing as t
from enum import Enum

from yeetlong.multiset import Multiset

from divisible.errors import InputError, ModulusMismatch
from divisible.graphs.trees import LabeledTree
from divisible.graphs.weighted import WeightedGraph
from divisible.residues import check_modulus


log = logging.getLogger(__name__)


def f1_bound(k: int, q: int) -> int:
    if k < 2 or q < 2:
        raise InputError(f'k and q must be at least 2, got k={k}, q={q}')
    return ((k - 1) * q + 1) ** ((k - 1) * q * q + 1)


class SelectionCase(Enum):
    HIGH_DEGREE = 'high-degree'
    LONG_PATH = 'long-path'


class LeafSelection(object):
    """
    k leaves L0 and a residue a such that every triple of L0 has a center
    with disjoint paths of weight a to it.

    HIGH_DEGREE: `hub` is the center for every triple, `down_paths[leaf]`
    runs from the hub to the leaf.
    LONG_PATH: `branch[leaf]` is the backbone vertex the leaf hangs off,
    `down_paths[leaf]` runs from it to the leaf, and `backbone` is the part
    of the root path spanning the branch vertices, in which consecutive
    branch vertices are joined by segments of weight 0.
    """

    def __init__(
        self,
        case: SelectionCase,
        leaves: t.Sequence[int],
        residue: int,
        modulus: int,
        down_paths: t.Mapping[int, t.Sequence[int]],
        hub: t.Optional[int] = None,
        backbone: t.Sequence[int] = (),
        branch: t.Optional[t.Mapping[int, int]] = None,
    ):
        self._case = case
        self._leaves = tuple(leaves)
        self._residue = residue % modulus
        self._modulus = modulus
        self._down_paths = {leaf: tuple(path) for leaf, path in down_paths.items()}
        self._hub = hub
        self._backbone = tuple(backbone)
        self._branch = dict(branch) if branch is not None else {}
        branch_vertices = set(self._branch.values())
        self._position = {
            u: index
            for index, u in
            enumerate(self._backbone)
            if u in branch_vertices
        }

    @property
    def case(self) -> SelectionCase:
        return self._case

    @property
    def leaves(self) -> t.Tuple[int, ...]:
        return self._leaves

    @property
    def k(self) -> int:
        return len(self._leaves)

    @property
    def residue(self) -> int:
        return self._residue

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def hub(self) -> t.Optional[int]:
        return self._hub

    @property
    def backbone(self) -> t.Tuple[int, ...]:
        return self._backbone

    @property
    def branch(self) -> t.Mapping[int, int]:
        return self._branch

    @property
    def down_paths(self) -> t.Mapping[int, t.Tuple[int, ...]]:
        return self._down_paths

    def position(self, u: int) -> int:
        return self._position[u]

    def with_residue(self, residue: int) -> LeafSelection:
        return LeafSelection(
            self._case,
            self._leaves,
            residue,
            self._modulus,
            self._down_paths,
            self._hub,
            self._backbone,
            self._branch,
        )

    def __bool__(self) -> bool:
        return True

    def __repr__(self) -> str:
        return '{}({}, L0={}, a={})'.format(
            self.__class__.__name__,
            self._case.value,
            list(self._leaves),
            self._residue,
        )


class SelectionFailure(object):

    def __init__(self, reason: str):
        self._reason = reason

    @property
    def reason(self) -> str:
        return self._reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self._reason})'


SelectionOutcome = t.Union[LeafSelection, SelectionFailure]


def _trim(tree: LabeledTree) -> t.Tuple[LabeledTree, t.Optional[t.List[int]]]:
    if not tree.leaves:
        raise InputError('leaf set L is empty')
    graph = tree.graph
    n = graph.vertex_count
    degree = [graph.degree(v) for v in range(n)]
    removed = bytearray(n)
    stack = [v for v in range(n) if degree[v] <= 1 and not tree.is_leaf(v)]

    while stack:
        v = stack.pop()
        if removed[v]:
            continue
        removed[v] = 1
        for w in graph.neighbors(v):
            if not removed[w]:
                degree[w] -= 1
                if degree[w] == 1 and not tree.is_leaf(w):
                    stack.append(w)

    kept = [v for v in range(n) if not removed[v]]
    if len(kept) == n:
        return tree, None

    index = {v: i for i, v in enumerate(kept)}
    trimmed = LabeledTree(
        WeightedGraph(
            len(kept),
            graph.modulus,
            (
                (index[u], index[v], w)
                for u, v, w in
                graph.edges()
                if u in index and v in index
            ),
        ),
        leaves = (index[leaf] for leaf in tree.leaves),
        origin = [tree.external(v) for v in kept],
    )
    return trimmed, kept


def steiner_trim(tree: LabeledTree) -> LabeledTree:
    """
    The minimal subtree containing L. Its origin maps into the external ids
    of the input.
    """
    trimmed, _ = _trim(tree)
    return trimmed


def _best_bucket(buckets: Multiset, k: int, residue: t.Optional[int]) -> t.Optional[int]:
    candidates = sorted(
        (-multiplicity, value)
        for value, multiplicity in
        buckets.items()
        if multiplicity >= k and (residue is None or value == residue)
    )
    return candidates[0][1] if candidates else None


def _climb(parent: t.Sequence[int], top: int, bottom: int) -> t.List[int]:
    path = [bottom]
    while path[-1] != top:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def select_leaves(
    tree: LabeledTree,
    k: int,
    q: int,
    residue: t.Optional[int] = None,
) -> SelectionOutcome:
    """
    Best-effort leaf selection. Succeeds whenever |L| >= f1(k, q); below that
    it may return a SelectionFailure. With `residue` set only that residue is
    accepted for a. Vertices in the result are the input tree's local ids.
    """
    if k < 2:
        raise InputError(f'k must be at least 2, got {k}')
    check_modulus(q)
    if q != tree.modulus:
        raise ModulusMismatch(q, tree.modulus)
    if residue is not None:
        residue %= q

    trimmed, kept = _trim(tree)
    lift = (lambda v: v) if kept is None else kept.__getitem__
    graph = trimmed.graph
    n = graph.vertex_count

    root = next((v for v in range(n) if graph.degree(v) >= 3), None)
    if root is None:
        return SelectionFailure('trimmed tree is a path, so |L| <= 2')

    order, parent = trimmed.bfs(root)
    dist = [0] * n
    for u in order[1:]:
        dist[u] = (dist[parent[u]] + graph.value(parent[u], u)) % q

    smallest_leaf = [n] * n
    for u in reversed(order):
        if trimmed.is_leaf(u) and u < smallest_leaf[u]:
            smallest_leaf[u] = u
        p = parent[u]
        if p != u and smallest_leaf[u] < smallest_leaf[p]:
            smallest_leaf[p] = smallest_leaf[u]

    def lifted_path(top: int, bottom: int) -> t.List[int]:
        return [lift(v) for v in _climb(parent, top, bottom)]

    hub_degree = (k - 1) * q + 2
    for v in range(n):
        if graph.degree(v) < hub_degree:
            continue
        leaves = sorted(smallest_leaf[c] for c in graph.neighbors(v) if parent[c] == v)
        a = _best_bucket(Multiset((dist[leaf] - dist[v]) % q for leaf in leaves), k, residue)
        if a is None:
            continue
        chosen = [leaf for leaf in leaves if (dist[leaf] - dist[v]) % q == a][:k]
        log.debug('high-degree selection at hub %d, a=%d', v, a)
        return LeafSelection(
            SelectionCase.HIGH_DEGREE,
            [lift(leaf) for leaf in chosen],
            a,
            q,
            {lift(leaf): lifted_path(v, leaf) for leaf in chosen},
            hub = lift(v),
        )

    count = [0] * n
    count[root] = 1
    for u in order[1:]:
        count[u] = count[parent[u]] + (graph.degree(u) >= 3)
    end = min(trimmed.leaves, key = lambda leaf: (-count[leaf], leaf))
    backbone = _climb(parent, root, end)

    branch_vertices = []
    own_leaf: t.Dict[int, int] = {}
    for index, u in enumerate(backbone[:-1]):
        if graph.degree(u) < 3:
            continue
        following = backbone[index + 1]
        own_leaf[u] = min(
            smallest_leaf[c]
            for c in
            graph.neighbors(u)
            if parent[c] == u and c != following
        )
        branch_vertices.append(u)

    by_root = Multiset(dist[u] for u in branch_vertices)
    for root_residue, _ in sorted(by_root.items(), key = lambda item: (-item[1], item[0])):
        aligned = [u for u in branch_vertices if dist[u] == root_residue]
        down = {u: (dist[own_leaf[u]] - dist[u]) % q for u in aligned}
        a = _best_bucket(Multiset(down.values()), k, residue)
        if a is None:
            continue
        chosen = [u for u in aligned if down[u] == a][:k]
        first, last = backbone.index(chosen[0]), backbone.index(chosen[-1])
        log.debug('long-path selection on a backbone of %d branch vertices, a=%d', len(branch_vertices), a)
        return LeafSelection(
            SelectionCase.LONG_PATH,
            [lift(own_leaf[u]) for u in chosen],
            a,
            q,
            {lift(own_leaf[u]): lifted_path(u, own_leaf[u]) for u in chosen},
            backbone = [lift(u) for u in backbone[first:last + 1]],
            branch = {lift(own_leaf[u]): lift(u) for u in chosen},
        )

    return SelectionFailure(
        f'no hub of degree >= {hub_degree} and no residue class of {k} branch vertices '
        f'on a backbone with {len(branch_vertices)} branch vertices'
    )


class Certificate(object):

    def __init__(self, center: int, paths: t.Sequence[t.Sequence[int]]):
        self._center = center
        self._paths = tuple(tuple(path) for path in paths)

    @property
    def center(self) -> int:
        return self._center

    @property
    def paths(self) -> t.Tuple[t.Tuple[int, ...], ...]:
        return self._paths

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(v={self._center}, paths={list(map(list, self._paths))})'


def certificate_for_leaves(sel: LeafSelection, leaves: t.Sequence[int]) -> Certificate:
    """
    Center and disjoint center-to-leaf paths of weight a for one, two or
    three distinct members of L0, paths in the order of `leaves`.
    """
    if not 1 <= len(leaves) <= 3 or len(set(leaves)) != len(leaves):
        raise InputError(f'need one to three distinct leaves, got {list(leaves)}')
    missing = [leaf for leaf in leaves if leaf not in sel.down_paths]
    if missing:
        raise InputError(f'leaves {missing} are not in L0')

    if sel.case == SelectionCase.HIGH_DEGREE:
        return Certificate(sel.hub, [sel.down_paths[leaf] for leaf in leaves])

    ordered = sorted(leaves, key = lambda leaf: sel.position(sel.branch[leaf]))
    center = sel.branch[ordered[(len(ordered) - 1) // 2]]
    middle = sel.position(center)
    backbone = sel.backbone
    paths = []
    for leaf in leaves:
        position = sel.position(sel.branch[leaf])
        if position >= middle:
            segment = backbone[middle:position + 1]
        else:
            segment = backbone[position:middle + 1][::-1]
        paths.append(segment + sel.down_paths[leaf][1:])
    return Certificate(center, paths)


def certificate_for_triple(sel: LeafSelection, x1: int, x2: int, x3: int) -> Certificate:
    if len({x1, x2, x3}) != 3:
        raise InputError(f'triple {x1}, {x2}, {x3} is not distinct')
    return certificate_for_leaves(sel, (x1, x2, x3))


def check_certificate(tree: LabeledTree, certificate: Certificate, leaves: t.Sequence[int], residue: int) -> bool:
    graph = tree.graph
    seen: t.Set[int] = set()
    for leaf, path in zip(leaves, certificate.paths):
        if path[0] != certificate.center or path[-1] != leaf:
            return False
        if len(set(path)) != len(path):
            return False
        if any(not graph.has_edge(u, v) for u, v in zip(path, path[1:])):
            return False
        if graph.path_value(path) != residue:
            return False
        inner = set(path[1:])
        if inner & seen:
            return False
        seen |= inner
    return len(certificate.paths) == len(leaves)


class SelectionReport(object):

    def __init__(self, violations: t.Sequence[str], vacuous: bool):
        self._violations = tuple(violations)
        self._vacuous = vacuous

    @property
    def violations(self) -> t.Tuple[str, ...]:
        return self._violations

    @property
    def vacuous(self) -> bool:
        return self._vacuous

    @property
    def valid(self) -> bool:
        return not self._violations

    def __bool__(self) -> bool:
        return self.valid

    def __repr__(self) -> str:
        return '{}(valid={}, vacuous={}, violations={})'.format(
            self.__class__.__name__,
            self.valid,
            self._vacuous,
            list(self._violations),
        )


def check_selection(tree: LabeledTree, sel: LeafSelection) -> SelectionReport:
    violations = []
    if sel.modulus != tree.modulus:
        violations.append('modulus')
    if len(set(sel.leaves)) != len(sel.leaves):
        violations.append('distinct')
    if any(not tree.is_leaf(leaf) for leaf in sel.leaves):
        violations.append('leaf-set')
    if violations:
        return SelectionReport(violations, len(sel.leaves) < 3)

    for triple in itertools.combinations(sel.leaves, 3):
        try:
            certificate = certificate_for_triple(sel, *triple)
        except (InputError, KeyError):
            violations.append(f'certificate {triple}')
            continue
        if not check_certificate(tree, certificate, triple, sel.residue):
            violations.append(f'certificate {triple}')
    return SelectionReport(violations, len(sel.leaves) < 3)


def verify_selection(tree: LabeledTree, sel: LeafSelection) -> bool:
    return check_selection(tree, sel).valid
