from __future__ import annotations

import logging
import typing as t

from sympy import isprime

from divisible.errors import InputError, InvalidModel, InvariantViolation, ModelTooSmall, ModulusMismatch
from divisible.graphs.minors import MinorModel, validate_minor_model
from divisible.graphs.weighted import CompleteWeightedDigraph, WeightedGraph
from divisible.residues import check_modulus
from divisible.witnesses import CycleWitness, verify_cycle_witness
from divisible.zerosum.prime import find_zero_cycle_prime
from divisible.zerosum.randomized import find_zero_cycle_randomized, threshold


log = logging.getLogger(__name__)


def required_pairs(q: int) -> int:
    """
    N: 2q - 1 for prime q, ceil(2 q ln q) otherwise.
    """
    check_modulus(q)
    return 2 * q - 1 if isprime(q) else threshold(q)


def g_bound(q: int) -> int:
    return 2 * required_pairs(q)


class SupernodePairing(object):
    """
    Pair i joins X_i^- (branch set 2i) and X_i^+ (branch set 2i + 1) through
    the pair edge x_i^- x_i^+ of weight b_i. The connector (i, j) runs from
    x_i^+ along the tree of X_i^+, over the cross edge into X_j^-, and along
    the tree of X_j^- to x_j^-; w'(ij) is its weight.
    """

    def __init__(self, model: MinorModel, pairs: t.Sequence[t.Tuple[int, int]]):
        self._model = model
        self._pairs = tuple(pairs)
        host = model.host

        self._pair_edges = tuple(model.cross_edge(minus, plus) for minus, plus in self._pairs)
        self._b = tuple(host.value(x_minus, x_plus) for x_minus, x_plus in self._pair_edges)

        self._connectors: t.Dict[t.Tuple[int, int], t.Tuple[int, ...]] = {}
        for i, (_, plus) in enumerate(self._pairs):
            x_plus = self._pair_edges[i][1]
            for j, (minus, _) in enumerate(self._pairs):
                if i == j:
                    continue
                x_minus = self._pair_edges[j][0]
                a, b = model.cross_edge(plus, minus)
                self._connectors[(i, j)] = tuple(
                    model.tree_paths(plus).path(x_plus, a)
                    + model.tree_paths(minus).path(b, x_minus)
                )
        self._w_prime = {
            key: host.path_value(path)
            for key, path in
            self._connectors.items()
        }

    @property
    def model(self) -> MinorModel:
        return self._model

    @property
    def modulus(self) -> int:
        return self._model.host.modulus

    @property
    def pairs(self) -> t.Tuple[t.Tuple[int, int], ...]:
        return self._pairs

    @property
    def size(self) -> int:
        return len(self._pairs)

    def pair_edge(self, i: int) -> t.Tuple[int, int]:
        return self._pair_edges[i]

    def b(self, i: int) -> int:
        return self._b[i]

    def connector(self, i: int, j: int) -> t.Tuple[int, ...]:
        return self._connectors[(i, j)]

    def w_prime(self, i: int, j: int) -> int:
        return self._w_prime[(i, j)]

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(N={self.size}, q={self.modulus})'


def pair_supernodes(m: MinorModel, N: int, q: int) -> SupernodePairing:
    if q != m.host.modulus:
        raise ModulusMismatch(q, m.host.modulus)
    if N < 2:
        raise InputError(f'need at least 2 pairs, got {N}')
    if m.size < 2 * N:
        raise ModelTooSmall(m.size, 2 * N)
    missing = [
        (i, j)
        for i in range(2 * N)
        for j in range(i + 1, 2 * N)
        if (i, j) not in m.cross_edges
    ]
    if missing:
        raise InputError(f'missing cross edges between branch sets {missing[:5]}')
    return SupernodePairing(m, [(2 * i, 2 * i + 1) for i in range(N)])


def build_auxiliary_digraph(p: SupernodePairing, q: int) -> CompleteWeightedDigraph:
    if q != p.modulus:
        raise ModulusMismatch(q, p.modulus)
    return CompleteWeightedDigraph(
        q,
        [
            [
                0 if i == j else p.b(i) + p.w_prime(i, j)
                for j in range(p.size)
            ]
            for i in range(p.size)
        ],
    )


def lift_cycle(p: SupernodePairing, aux_cycle: t.Sequence[int]) -> CycleWitness:
    aux_cycle = list(aux_cycle)
    if len(aux_cycle) < 2:
        raise InputError(f'auxiliary cycle {aux_cycle} is shorter than 2')
    if len(set(aux_cycle)) != len(aux_cycle):
        raise InputError(f'auxiliary cycle {aux_cycle} repeats an index')
    if any(not 0 <= i < p.size for i in aux_cycle):
        raise InputError(f'auxiliary cycle {aux_cycle} leaves 0..{p.size - 1}')

    vertices: t.List[int] = []
    for index, i in enumerate(aux_cycle):
        j = aux_cycle[(index + 1) % len(aux_cycle)]
        vertices.append(p.pair_edge(i)[0])
        vertices.extend(p.connector(i, j)[:-1])
    return CycleWitness(p.model.host, vertices, p.modulus)


def find_divisible_cycle(
    g: WeightedGraph,
    m: MinorModel,
    q: int,
    seed: t.Optional[int] = None,
    use_all: bool = False,
    pairs: t.Optional[int] = None,
    max_attempts: t.Optional[int] = None,
) -> CycleWitness:
    """
    Finds a cycle of length divisible by q. By default the first 2N branch
    sets are used, N from required_pairs; `use_all` pairs up every branch
    set, `pairs` fixes N explicitly (best-effort below the
    guarantee). Prime q with at least 2q - 1 pairs takes the deterministic
    finder, everything else the randomized one.
    """
    if m.host is not g and m.host != g:
        raise InputError('minor model is not on the given host graph')
    report = validate_minor_model(m)
    if not report:
        raise InvalidModel(report)

    if pairs is None:
        required = required_pairs(q)
        if m.size < 2 * required:
            raise ModelTooSmall(m.size, 2 * required)
        pairs = m.size // 2 if use_all else required

    pairing = pair_supernodes(m, pairs, q)
    aux = build_auxiliary_digraph(pairing, q)
    log.debug('auxiliary digraph on %d pairs, q=%d', pairing.size, q)

    if isprime(q) and aux.vertex_count >= 2 * q - 1:
        aux_cycle = find_zero_cycle_prime(aux, q)
    else:
        aux_cycle = find_zero_cycle_randomized(aux, q, seed = seed, max_attempts = max_attempts)

    witness = lift_cycle(pairing, aux_cycle.vertices)
    if not verify_cycle_witness(witness):
        raise InvariantViolation(f'lifted cycle {witness.vertices} does not verify')
    return witness
