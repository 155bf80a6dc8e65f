from __future__ import annotations

import json
import typing as t

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from divisible.errors import InputError, ParseError
from divisible.graphs.minors import MinorModel
from divisible.graphs.trees import LabeledTree
from divisible.graphs.weighted import CompleteWeightedDigraph, WeightedGraph
from divisible.subdivision.split import Partition
from divisible.witnesses import CycleWitness, Host, SubdivisionWitness


Witness = t.Union[CycleWitness, SubdivisionWitness]


def _lines(text: str) -> t.Iterator[t.Tuple[int, t.List[str]]]:
    for number, line in enumerate(text.splitlines(), start = 1):
        tokens = line.split('#', 1)[0].split()
        if tokens:
            yield number, tokens


def _ints(source: str, number: int, tokens: t.Sequence[str]) -> t.List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(source, f'line {number}: expected integers, got {" ".join(tokens)!r}')


def _header(source: str, lines: t.Iterator[t.Tuple[int, t.List[str]]]) -> t.Tuple[str, int, int, int]:
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError(source, 'empty file')
    if len(tokens) != 4 or tokens[0] not in ('graph', 'digraph'):
        raise ParseError(source, f'line {number}: expected "graph|digraph <n> <m> <q>"')
    n, m, q = _ints(source, number, tokens[1:])
    return tokens[0], n, m, q


def _edge_lines(
    source: str,
    lines: t.Iterator[t.Tuple[int, t.List[str]]],
    m: int,
    weighted: bool,
) -> t.List[t.Tuple[int, ...]]:
    edges = []
    for _ in range(m):
        try:
            number, tokens = next(lines)
        except StopIteration:
            raise ParseError(source, f'expected {m} edge lines, got {len(edges)}')
        if len(tokens) not in ((3,) if weighted else (2, 3)):
            raise ParseError(source, f'line {number}: expected "u v{" w" if weighted else " [w]"}"')
        edges.append(tuple(_ints(source, number, tokens)))
    return edges


def parse_graph(text: str, source: str = '<graph>') -> WeightedGraph:
    graph, _ = _parse_graph_with_rest(text, source)
    return graph


def _parse_graph_with_rest(text: str, source: str) -> t.Tuple[WeightedGraph, t.List[t.Tuple[int, t.List[str]]]]:
    lines = _lines(text)
    kind, n, m, q = _header(source, lines)
    if kind != 'graph':
        raise ParseError(source, 'expected an undirected graph')
    edges = _edge_lines(source, lines, m, weighted = False)
    try:
        return WeightedGraph(n, q, edges), list(lines)
    except InputError as e:
        raise ParseError(source, str(e))


def parse_digraph(text: str, source: str = '<digraph>') -> CompleteWeightedDigraph:
    lines = _lines(text)
    kind, n, m, q = _header(source, lines)
    if kind != 'digraph':
        raise ParseError(source, 'expected a digraph')
    if m != n * (n - 1):
        raise ParseError(source, f'a complete digraph on {n} vertices has {n * (n - 1)} arcs, header says {m}')
    matrix = [[None] * n for _ in range(n)]
    for u, v, w in _edge_lines(source, lines, m, weighted = True):
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ParseError(source, f'arc ({u}, {v}) is out of range or a loop')
        if matrix[u][v] is not None:
            raise ParseError(source, f'arc ({u}, {v}) listed twice')
        matrix[u][v] = w
    for u in range(n):
        matrix[u][u] = 0
    try:
        return CompleteWeightedDigraph(q, matrix)
    except InputError as e:
        raise ParseError(source, str(e))


def parse_host(text: str, source: str = '<host>') -> Host:
    for _, tokens in _lines(text):
        return parse_digraph(text, source) if tokens[0] == 'digraph' else parse_graph(text, source)
    raise ParseError(source, 'empty file')


def parse_tree(text: str, source: str = '<tree>') -> LabeledTree:
    graph, rest = _parse_graph_with_rest(text, source)
    leaves = None
    for number, tokens in rest:
        if tokens[0] != 'leaves' or leaves is not None:
            raise ParseError(source, f'line {number}: unexpected {" ".join(tokens)!r}')
        leaves = _ints(source, number, tokens[1:])
    try:
        return LabeledTree(graph, leaves)
    except InputError as e:
        raise ParseError(source, str(e))


def parse_pattern(text: str, source: str = '<pattern>') -> nx.Graph:
    graph = parse_graph(text, source)
    pattern = nx.Graph()
    pattern.add_nodes_from(graph.vertices())
    pattern.add_edges_from((u, v) for u, v, _ in graph.edges())
    return pattern


def format_graph(g: WeightedGraph) -> str:
    lines = [f'graph {g.vertex_count} {g.edge_count} {g.modulus}']
    lines.extend(f'{u} {v} {w}' for u, v, w in sorted(g.edges()))
    return '\n'.join(lines) + '\n'


def format_digraph(d: CompleteWeightedDigraph) -> str:
    n = d.vertex_count
    lines = [f'digraph {n} {n * (n - 1)} {d.modulus}']
    lines.extend(
        f'{u} {v} {d.value(u, v)}'
        for u in range(n)
        for v in range(n)
        if u != v
    )
    return '\n'.join(lines) + '\n'


def format_host(host: Host) -> str:
    return format_digraph(host) if isinstance(host, CompleteWeightedDigraph) else format_graph(host)


def format_tree(tree: LabeledTree) -> str:
    return format_graph(tree.graph) + 'leaves ' + ' '.join(map(str, tree.leaves)) + '\n'


def format_pattern(h: nx.Graph, q: int = 2) -> str:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return format_graph(WeightedGraph(len(nodes), q, ((index[a], index[b]) for a, b in h.edges())))


class CrossEdgeSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    sets: t.Tuple[int, int]
    edge: t.Tuple[int, int]


class PartitionSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    x: t.List[int]
    y: t.List[int]


class ModelSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    branch_sets: t.List[t.List[int]]
    trees: t.List[t.List[t.Tuple[int, int]]]
    cross_edges: t.List[CrossEdgeSchema]
    partition: t.Optional[PartitionSchema] = None
    generated_by: t.Optional[str] = None


class CycleWitnessSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    kind: t.Literal['cycle']
    modulus: int
    vertices: t.List[int]
    claimed: int = 0
    seed: t.Optional[int] = None


class PathSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    edge: t.Tuple[int, int]
    vertices: t.List[int]
    claimed: int = 0


class SubdivisionWitnessSchema(BaseModel):
    model_config = ConfigDict(extra = 'forbid')

    kind: t.Literal['subdivision']
    modulus: int
    pattern_vertices: t.List[int]
    pattern_edges: t.List[t.Tuple[int, int]]
    branch: t.List[t.Tuple[int, int]]
    paths: t.List[PathSchema]
    seed: t.Optional[int] = None


WitnessSchema = t.Annotated[
    t.Union[CycleWitnessSchema, SubdivisionWitnessSchema],
    Field(discriminator = 'kind'),
]
_witness_adapter = TypeAdapter(WitnessSchema)


def _validation_message(error: ValidationError) -> str:
    return '; '.join(
        '{}: {}'.format('.'.join(map(str, detail['loc'])) or '<root>', detail['msg'])
        for detail in
        error.errors()
    )


def _dump(schema: BaseModel) -> str:
    return json.dumps(schema.model_dump(mode = 'json'), sort_keys = True, indent = 2) + '\n'


def model_to_json(
    m: MinorModel,
    partition: t.Optional[Partition] = None,
    generated_by: t.Optional[str] = None,
) -> str:
    return _dump(
        ModelSchema(
            branch_sets = [list(branch_set) for branch_set in m.branch_sets],
            trees = [list(tree) for tree in m.trees],
            cross_edges = [
                CrossEdgeSchema(sets = key, edge = edge)
                for key, edge in
                m.cross_edges.items()
            ],
            partition = (
                None
                if partition is None else
                PartitionSchema(x = list(partition.x), y = list(partition.y))
            ),
            generated_by = generated_by,
        )
    )


def model_from_json(
    text: str,
    host: WeightedGraph,
    source: str = '<model>',
) -> t.Tuple[MinorModel, t.Optional[Partition]]:
    """
    The model is not validated against the host here, only parsed; callers
    run validate_minor_model.
    """
    try:
        schema = ModelSchema.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(source, _validation_message(e))

    cross_edges = {}
    for entry in schema.cross_edges:
        i, j = entry.sets
        a, b = entry.edge
        key = (min(i, j), max(i, j))
        if key in cross_edges:
            raise ParseError(source, f'cross edge for sets {key} listed twice')
        cross_edges[key] = (a, b) if i <= j else (b, a)

    return (
        MinorModel(host, schema.branch_sets, schema.trees, cross_edges),
        None if schema.partition is None else Partition(schema.partition.x, schema.partition.y),
    )


def witness_to_json(w: Witness, seed: t.Optional[int] = None) -> str:
    if isinstance(w, CycleWitness):
        return _dump(
            CycleWitnessSchema(
                kind = 'cycle',
                modulus = w.modulus,
                vertices = list(w.vertices),
                claimed = w.claimed,
                seed = seed,
            )
        )
    return _dump(
        SubdivisionWitnessSchema(
            kind = 'subdivision',
            modulus = w.modulus,
            pattern_vertices = sorted(w.pattern.nodes()),
            pattern_edges = sorted(w.paths),
            branch = sorted(w.branch.items()),
            paths = [
                PathSchema(edge = edge, vertices = list(path), claimed = w.claims.get(edge, 0))
                for edge, path in
                sorted(w.paths.items())
            ],
            seed = seed,
        )
    )


def witness_from_json(text: str, host: Host, source: str = '<witness>') -> Witness:
    """
    Subdivision witnesses are bound to the host with unit weights, their
    paths being checked by length.
    """
    try:
        schema = _witness_adapter.validate_json(text)
    except ValidationError as e:
        raise ParseError(source, _validation_message(e))

    if isinstance(schema, CycleWitnessSchema):
        return CycleWitness(host, schema.vertices, schema.modulus, schema.claimed)

    if isinstance(host, CompleteWeightedDigraph):
        raise ParseError(source, 'subdivision witnesses live in undirected graphs')
    pattern = nx.Graph()
    pattern.add_nodes_from(schema.pattern_vertices)
    pattern.add_edges_from(schema.pattern_edges)
    return SubdivisionWitness(
        host.with_unit_weights(),
        pattern,
        dict(schema.branch),
        {path.edge: path.vertices for path in schema.paths},
        schema.modulus,
        {path.edge: path.claimed for path in schema.paths},
    )
