from __future__ import annotations

import logging
import typing as t
from enum import Enum

import networkx as nx

from divisible.errors import InputError, InvariantViolation, StageFailed, StageFailure
from divisible.graphs.minors import MinorModel
from divisible.graphs.weighted import Edge, WeightedGraph, normalize
from divisible.residues import check_modulus
from divisible.subdivision.ramsey import (
    EdgeColoring, MonochromaticCopy, complete_edges, find_monochromatic_subdivision, subdivide_pattern,
)
from divisible.subdivision.routing import (
    RoutedEdge, SupernodeSelection, common_residue_filter, route_edges, select_all, select_in,
)
from divisible.subdivision.split import Partition, SplitInstance, split_and_weight
from divisible.witnesses import SubdivisionWitness, verify_subdivision_witness


log = logging.getLogger(__name__)


class Parameterization(Enum):
    DEGREE = 'degree'
    EDGES = 'edges'


def leaf_count(parameterization: Parameterization, gamma_size: int) -> int:
    """
    k: the maximum degree of K_m, or twice its number of edges.
    """
    if parameterization == Parameterization.DEGREE:
        return gamma_size - 1
    return gamma_size * (gamma_size - 1)


def path_residue(a: int, b: int, q: int) -> int:
    """
    Weight of an assembled path: two endpoint connectors of weight a, q - 1
    intermediate connectors of weight 2a and q routed segments of weight b.
    """
    return (2 * a + (q - 1) * 2 * a + q * b) % q


def check_pattern(h: nx.Graph) -> None:
    if h.number_of_edges() == 0:
        raise InputError('pattern graph has no edges')
    degree = max(d for _, d in h.degree())
    if degree > 3:
        raise InputError(f'pattern graph has maximum degree {degree}, at most 3 supported')


def _connector(selection: SupernodeSelection, entry: int, departure: int) -> t.List[int]:
    others = [leaf for leaf in selection.leaves if leaf not in (entry, departure)]
    certificate = selection.certificate([entry, departure] + others[:1])
    return list(reversed(certificate.paths[0])) + list(certificate.paths[1][1:])


def assemble_subdivision(
    inst: SplitInstance,
    routed: t.Sequence[RoutedEdge],
    copy: MonochromaticCopy,
    selections: t.Sequence[SupernodeSelection],
    a: int,
    b: int,
    h: nx.Graph,
    q: int,
    replacement: t.Optional[t.Mapping[Edge, t.Sequence[int]]] = None,
) -> SubdivisionWitness:
    """
    Ramsey vertex g stands for the X-supernode of selections[g]. Every
    branch vertex of h becomes the certificate center of its supernode's
    departure leaves; every path joins the routed segments of its copy in
    K_m by connectors of weight 2a through the intermediate supernodes.
    """
    check_pattern(h)
    if replacement is None:
        _, replacement = subdivide_pattern(h, q - 1)
    by_edge = {normalize(*r.edge): r for r in routed}

    def between(g1: int, g2: int) -> RoutedEdge:
        return by_edge[normalize(g1, g2)]

    branch: t.Dict[int, int] = {}
    endpoint_paths: t.Dict[t.Tuple[int, Edge], t.Tuple[int, ...]] = {}
    for v in sorted(h.nodes()):
        g = copy.embedding[v]
        selection = selections[g]
        incident = sorted(normalize(v, w) for w in h.neighbors(v))
        departures = []
        for edge in incident:
            path = replacement[edge]
            following = path[1] if path[0] == v else path[-2]
            departures.append(between(g, copy.embedding[following]).leaf(g))
        certificate = selection.certificate(departures or selection.leaves[:1])
        branch[v] = certificate.center
        for edge, path in zip(incident, certificate.paths):
            endpoint_paths[(v, edge)] = path

    expected = path_residue(a, b, q)
    paths = {}
    for edge, d_path in sorted(replacement.items()):
        images = copy.image(d_path)
        host_path = list(endpoint_paths[(d_path[0], edge)])
        for index in range(len(images) - 1):
            g1, g2 = images[index], images[index + 1]
            segment = between(g1, g2).oriented(g1)
            host_path.extend(segment[1:])
            if index + 2 < len(images):
                departure = between(g2, images[index + 2]).leaf(g2)
                host_path.extend(_connector(selections[g2], segment[-1], departure)[1:])
        host_path.extend(reversed(endpoint_paths[(d_path[-1], edge)][:-1]))

        value = inst.host.path_value(host_path)
        if value != expected:
            raise InvariantViolation(f'path for {edge} has weight {value}, expected {expected}')
        paths[edge] = host_path

    witness = SubdivisionWitness(inst.host, h, branch, paths, q)
    if not verify_subdivision_witness(witness):
        raise InvariantViolation(f'assembled subdivision {witness!r} does not verify')
    return witness


class SubdivisionBuild(object):
    """
    Outcome of a successful build: the witness in original host coordinates,
    the witness in the split host, and the residues a and b it was built on.
    """

    def __init__(
        self,
        instance: SplitInstance,
        witness: SubdivisionWitness,
        split_witness: SubdivisionWitness,
        a: int,
        b: int,
        k: int,
        parameterization: Parameterization,
        routed: t.Sequence[RoutedEdge],
    ):
        self._instance = instance
        self._witness = witness
        self._split_witness = split_witness
        self._a = a
        self._b = b
        self._k = k
        self._parameterization = parameterization
        self._routed = tuple(routed)

    @property
    def instance(self) -> SplitInstance:
        return self._instance

    @property
    def witness(self) -> SubdivisionWitness:
        return self._witness

    @property
    def split_witness(self) -> SubdivisionWitness:
        return self._split_witness

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    @property
    def k(self) -> int:
        return self._k

    @property
    def parameterization(self) -> Parameterization:
        return self._parameterization

    @property
    def routed(self) -> t.Tuple[RoutedEdge, ...]:
        return self._routed

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(a={self._a}, b={self._b}, k={self._k}, {self._parameterization.value})'


def _stage(outcome: t.Any) -> t.Any:
    if isinstance(outcome, StageFailure):
        raise StageFailed(outcome)
    return outcome


def build_subdivision(
    g: WeightedGraph,
    m: MinorModel,
    partition: Partition,
    h: nx.Graph,
    q: int,
    gamma_size: int,
    parameterization: Parameterization = Parameterization.DEGREE,
    budget: int = 2_000_000,
) -> SubdivisionBuild:
    """
    Best-effort subdivision build on K_m with m = gamma_size. Raises
    StageFailed naming the stage that came up short.
    """
    check_modulus(q)
    check_pattern(h)
    if gamma_size < 3:
        raise InputError(f'Ramsey graph size must be at least 3, got {gamma_size}')

    inst = split_and_weight(g, m, partition)
    k = leaf_count(parameterization, gamma_size)
    log.debug('%s parameterization, k=%d, %d X-supernodes', parameterization.value, k, len(partition.x))

    selections = _stage(select_all(inst, k, q))
    indices = _stage(common_residue_filter([s.residue for s in selections], gamma_size, q))
    chosen = [selections[index] for index in indices]
    a = chosen[0].residue

    if parameterization == Parameterization.DEGREE:
        reserved: t.Set[int] = set()
        refined = []
        for selection in chosen:
            outcome = select_in(inst, selection.x, k, q, residue = a, exclude_ys = reserved)
            if not outcome:
                raise StageFailed(StageFailure('reserve', outcome.reason))
            reserved.update(inst.y_of(leaf) for leaf in outcome.leaves)
            refined.append(outcome)
        chosen = refined

    routed = _stage(route_edges(inst, complete_edges(gamma_size), chosen))
    coloring = EdgeColoring(gamma_size, q, {r.edge: r.color for r in routed})
    target, replacement = subdivide_pattern(h, q - 1)
    copy = find_monochromatic_subdivision(coloring, target, budget)
    if copy is None:
        raise StageFailed(
            StageFailure(
                'ramsey',
                f'no monochromatic {q - 1}-subdivision of the pattern in K_{gamma_size}; '
                f'raise the Ramsey graph size',
            )
        )
    b = copy.color

    split_witness = assemble_subdivision(inst, routed, copy, chosen, a, b, h, q, replacement)
    witness = inst.contract_witness(split_witness)
    if not verify_subdivision_witness(witness):
        raise InvariantViolation('contracted subdivision does not verify in the original host')
    log.debug('subdivision built with a=%d, b=%d', a, b)
    return SubdivisionBuild(inst, witness, split_witness, a, b, k, parameterization, routed)
