from __future__ import annotations

import itertools
import logging
import typing as t

from sympy import isprime

from divisible.errors import InputError, InvariantViolation, ModulusMismatch
from divisible.graphs.weighted import CompleteWeightedDigraph
from divisible.witnesses import CycleWitness, verify_cycle_witness


log = logging.getLogger(__name__)


def sumset_extend(
    S: t.Iterable[int],
    T: t.Iterable[int],
    q: int,
) -> t.Dict[int, t.Tuple[int, int]]:
    """
    S + T in Z_q. Keys are the sumset, each mapped to the first (s, t) pair in
    sorted order producing it. For prime q the Cauchy-Davenport bound
    |S + T| >= min(q, |S| + |T| - 1) is asserted.
    """
    S = sorted({int(s) % q for s in S})
    T = sorted({int(x) % q for x in T})
    if not S or not T:
        raise InputError('sumset of an empty set')

    provenance: t.Dict[int, t.Tuple[int, int]] = {}
    for s, x in itertools.product(S, T):
        provenance.setdefault((s + x) % q, (s, x))

    if isprime(q) and len(provenance) < min(q, len(S) + len(T) - 1):
        raise InvariantViolation(f'|S+T| = {len(provenance)} below the Cauchy-Davenport bound for q={q}')
    return dict(sorted(provenance.items()))


class PathFamily(object):
    """
    Anchors x_0..x_k, y_1..y_k and, per achieved residue s, one path from x_0
    to x_k of weight s whose i-th segment is x_{i-1} x_i or x_{i-1} y_i x_i.
    """

    def __init__(
        self,
        x: t.Sequence[int],
        y: t.Sequence[int],
        paths: t.Mapping[int, t.Sequence[int]],
    ):
        self._x = tuple(x)
        self._y = tuple(y)
        self._paths = {residue: tuple(path) for residue, path in sorted(paths.items())}

    @classmethod
    def trivial(cls, x0: int) -> PathFamily:
        return cls((x0,), (), {0: (x0,)})

    @property
    def k(self) -> int:
        return len(self._x) - 1

    @property
    def x(self) -> t.Tuple[int, ...]:
        return self._x

    @property
    def y(self) -> t.Tuple[int, ...]:
        return self._y

    @property
    def anchors(self) -> t.FrozenSet[int]:
        return frozenset(self._x + self._y)

    @property
    def residues(self) -> t.FrozenSet[int]:
        return frozenset(self._paths)

    @property
    def paths(self) -> t.Mapping[int, t.Tuple[int, ...]]:
        return self._paths

    def extend(self, d: CompleteWeightedDigraph, u: int, v: int) -> PathFamily:
        """
        Next family with x_{k+1} = u and y_{k+1} = v.
        """
        q = d.modulus
        tail = self._x[-1]
        direct = d.value(tail, u)
        detour = (d.value(tail, v) + d.value(v, u)) % q
        if direct == detour:
            raise InvariantViolation(f'segments through {u}, {v} give one residue')

        segments = {direct: (u,), detour: (v, u)}
        paths = {
            residue: self._paths[s] + segments[x]
            for residue, (s, x) in
            sumset_extend(self._paths, segments, q).items()
        }
        return PathFamily(self._x + (u,), self._y + (v,), paths)

    def verify(self, d: CompleteWeightedDigraph) -> bool:
        anchors = self.anchors
        if len(anchors) != 2 * self.k + 1:
            return False
        for residue, path in self._paths.items():
            if path[0] != self._x[0] or path[-1] != self._x[-1]:
                return False
            if len(set(path)) != len(path) or not set(path) <= anchors:
                return False
            if sum(d.value(a, b) for a, b in zip(path, path[1:])) % d.modulus != residue:
                return False
        return True

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}(k={self.k}, S={sorted(self._paths)})'


def antisymmetric_pair(d: CompleteWeightedDigraph) -> t.Optional[t.Tuple[int, int]]:
    q = d.modulus
    for u, v in itertools.combinations(d.vertices(), 2):
        if (d.value(u, v) + d.value(v, u)) % q == 0:
            return u, v
    return None


def grow_path_family(d: CompleteWeightedDigraph) -> t.Iterator[PathFamily]:
    """
    Yields the family for k = 0, 1, ..., q - 1. Assumes no antisymmetric pair,
    which is what makes one orientation of every step valid.
    """
    q = d.modulus
    if d.vertex_count < 2 * q - 1:
        raise InputError(f'need {2 * q - 1} vertices for q={q}, got {d.vertex_count}')

    family = PathFamily.trivial(0)
    yield family
    for k in range(q - 1):
        u, v = sorted(set(d.vertices()) - family.anchors)[:2]
        tail = family.x[-1]
        if d.value(tail, u) == (d.value(tail, v) + d.value(v, u)) % q:
            u, v = v, u
        family = family.extend(d, u, v)
        if len(family.residues) < min(q, k + 2):
            raise InvariantViolation(f'path family covers {len(family.residues)} residues after step {k + 1}')
        log.debug('path family step %d: |S|=%d', k + 1, len(family.residues))
        yield family


def find_zero_cycle_prime(d: CompleteWeightedDigraph, q: int) -> CycleWitness:
    if q != d.modulus:
        raise ModulusMismatch(q, d.modulus)
    if not isprime(q):
        raise InputError(f'{q} is not prime')
    if d.vertex_count < 2 * q - 1:
        raise InputError(f'need {2 * q - 1} vertices for q={q}, got {d.vertex_count}')

    pair = antisymmetric_pair(d)
    if pair is not None:
        log.debug('antisymmetric pair %s', pair)
        return CycleWitness(d, pair, q)

    family = None
    for family in grow_path_family(d):
        pass

    if len(family.residues) != q:
        raise InvariantViolation(f'final path family misses residues: {sorted(family.residues)}')

    closing = -d.value(family.x[-1], family.x[0]) % q
    witness = CycleWitness(d, family.paths[closing], q)
    if not verify_cycle_witness(witness):
        raise InvariantViolation(f'closed path {witness.vertices} does not verify')
    return witness
