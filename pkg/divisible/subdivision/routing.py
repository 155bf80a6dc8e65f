from __future__ import annotations

import logging
import typing as t

from yeetlong.multiset import Multiset

from divisible.errors import InputError, PoolExhausted, StageFailure
from divisible.graphs.trees import LabeledTree
from divisible.graphs.weighted import Edge
from divisible.selection import Certificate, LeafSelection, certificate_for_leaves, select_leaves
from divisible.subdivision.split import SplitInstance


log = logging.getLogger(__name__)


class SupernodeSelection(object):
    """
    A leaf selection inside the tree of one X-supernode, exposed in host
    vertex ids.
    """

    def __init__(self, x: int, tree: LabeledTree, selection: LeafSelection):
        self._x = x
        self._tree = tree
        self._selection = selection
        self._local = {tree.external(v): v for v in range(tree.vertex_count)}

    @property
    def x(self) -> int:
        return self._x

    @property
    def tree(self) -> LabeledTree:
        return self._tree

    @property
    def selection(self) -> LeafSelection:
        return self._selection

    @property
    def residue(self) -> int:
        return self._selection.residue

    @property
    def leaves(self) -> t.Tuple[int, ...]:
        return tuple(sorted(self._tree.external(leaf) for leaf in self._selection.leaves))

    def certificate(self, leaves: t.Sequence[int]) -> Certificate:
        certificate = certificate_for_leaves(self._selection, [self._local[leaf] for leaf in leaves])
        external = self._tree.external
        return Certificate(
            external(certificate.center),
            [[external(v) for v in path] for path in certificate.paths],
        )

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(X={self._x}, L\'={list(self.leaves)}, a={self.residue})'


def select_in(
    inst: SplitInstance,
    x: int,
    k: int,
    q: int,
    residue: t.Optional[int] = None,
    exclude_ys: t.Collection[int] = (),
) -> t.Union[SupernodeSelection, StageFailure]:
    tree = inst.x_tree(x, exclude_ys)
    if len(tree.leaves) < k:
        return StageFailure('select', f'X-supernode {x} has {len(tree.leaves)} usable leaves, {k} needed')
    selection = select_leaves(tree, k, q, residue = residue)
    if not selection:
        return StageFailure('select', f'X-supernode {x}: {selection.reason}')
    return SupernodeSelection(x, tree, selection)


def select_all(
    inst: SplitInstance,
    k: int,
    q: int,
) -> t.Union[t.List[SupernodeSelection], StageFailure]:
    selections = []
    for x in inst.partition.x:
        outcome = select_in(inst, x, k, q)
        if not outcome:
            log.info('selection failed: %s', outcome.reason)
            return outcome
        selections.append(outcome)
    log.debug('selected %d leaves in each of %d X-supernodes', k, len(selections))
    return selections


def common_residue_filter(
    values: t.Sequence[int],
    N: int,
    q: int,
) -> t.Union[t.List[int], StageFailure]:
    """
    The N smallest indices of the most frequent residue, ties going to the
    smaller residue. Guaranteed to succeed for (N - 1)q + 1 values.
    """
    if N < 1:
        raise InputError(f'N must be positive, got {N}')
    if not values:
        return StageFailure('residue', 'no residues to filter')
    buckets = Multiset(value % q for value in values)
    residue, multiplicity = min(buckets.items(), key = lambda item: (-item[1], item[0]))
    if multiplicity < N:
        return StageFailure(
            'residue',
            f'most frequent residue {residue} occurs {multiplicity} times among {len(values)}, {N} needed',
        )
    return [index for index, value in enumerate(values) if value % q == residue][:N]


class RoutedEdge(object):
    """
    The host path for one edge (i1, i2) of the Ramsey graph: from a leaf of
    L'_{i1} through two Y-supernodes to a leaf of L'_{i2}.
    """

    def __init__(
        self,
        edge: Edge,
        path: t.Sequence[int],
        color: int,
        ys: t.Tuple[int, int],
    ):
        self._edge = edge
        self._path = tuple(path)
        self._color = color
        self._ys = ys

    @property
    def edge(self) -> Edge:
        return self._edge

    @property
    def path(self) -> t.Tuple[int, ...]:
        return self._path

    @property
    def color(self) -> int:
        return self._color

    @property
    def ys(self) -> t.Tuple[int, int]:
        return self._ys

    def leaf(self, i: int) -> int:
        """
        The leaf the path uses in the X-supernode at Ramsey vertex i.
        """
        if i == self._edge[0]:
            return self._path[0]
        if i == self._edge[1]:
            return self._path[-1]
        raise InputError(f'{i} is not an end of {self._edge}')

    def oriented(self, i: int) -> t.Tuple[int, ...]:
        """
        The path starting on the side of Ramsey vertex i.
        """
        return self._path if i == self._edge[0] else self._path[::-1]

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({self._edge}, c={self._color}, |P|={len(self._path)})'


def route_edges(
    inst: SplitInstance,
    gamma_edges: t.Sequence[Edge],
    selections: t.Sequence[SupernodeSelection],
) -> t.Union[t.List[RoutedEdge], StageFailure]:
    """
    Routes the edges of the Ramsey graph in the given order; Ramsey vertex i
    is the X-supernode of selections[i]. Each side takes its smallest unused
    selected leaf whose Y-supernode is still unused.
    """
    required = 2 * len(gamma_edges)
    if len(inst.partition.y) < required:
        raise PoolExhausted(len(inst.partition.y), required)

    model = inst.model
    used_ys: t.Set[int] = set()
    used_leaves: t.Set[int] = set()

    def take(i: int) -> t.Optional[int]:
        for leaf in selections[i].leaves:
            if leaf not in used_leaves and inst.y_of(leaf) not in used_ys:
                used_leaves.add(leaf)
                used_ys.add(inst.y_of(leaf))
                return leaf
        return None

    routed = []
    for i1, i2 in gamma_edges:
        z1 = take(i1)
        z2 = take(i2) if z1 is not None else None
        if z1 is None or z2 is None:
            failure = StageFailure(
                'route',
                f'X-supernode {selections[i1 if z1 is None else i2].x} has no selected leaf '
                f'towards an unused Y-supernode for edge ({i1}, {i2})',
            )
            log.info('routing failed: %s', failure.reason)
            return failure

        j1, j2 = inst.y_of(z1), inst.y_of(z2)
        a, b = model.cross_edge(j1, j2)
        path = (
            [z1]
            + model.tree_paths(j1).path(inst.y_entry(z1), a)
            + model.tree_paths(j2).path(b, inst.y_entry(z2))
            + [z2]
        )
        routed.append(RoutedEdge((i1, i2), path, inst.host.path_value(path), (j1, j2)))

    log.debug('routed %d edges through %d Y-supernodes', len(routed), len(used_ys))
    return routed
