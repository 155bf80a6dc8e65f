from __future__ import annotations

import logging
import math
import typing as t

import numpy as np

from divisible.errors import AttemptsExhausted, InvariantViolation, ModulusMismatch
from divisible.graphs.weighted import CompleteWeightedDigraph
from divisible.residues import Residue, check_modulus
from divisible.witnesses import CycleWitness, verify_cycle_witness


log = logging.getLogger(__name__)


def threshold(q: int) -> int:
    """
    Vertex count from which a zero-sum cycle is guaranteed for any q,
    ceil(2 q ln q).
    """
    return math.ceil(2 * check_modulus(q) * math.log(q))


def default_max_attempts(n: int) -> int:
    return 64 * math.ceil(math.log(n + 1))


class Labeling(object):

    def __init__(self, labels: t.Sequence[int], modulus: int):
        self._modulus = check_modulus(modulus)
        self._labels = tuple(int(label) % modulus for label in labels)

    @classmethod
    def draw(cls, n: int, q: int, rng: np.random.Generator) -> Labeling:
        return cls(rng.integers(0, q, size = n), q)

    @property
    def labels(self) -> t.Tuple[int, ...]:
        return self._labels

    @property
    def modulus(self) -> int:
        return self._modulus

    def __getitem__(self, v: int) -> Residue:
        return Residue(self._labels[v], self._modulus)

    def __len__(self) -> int:
        return len(self._labels)

    def __repr__(self) -> str:
        return f'{self.__class__.__name__}({list(self._labels)}, q={self._modulus})'


def successors(d: CompleteWeightedDigraph, labeling: Labeling) -> np.ndarray:
    """
    For each u the smallest v != u with c(v) = c(u) + w(uv), or -1.
    """
    c = np.array(labeling.labels, dtype = np.int64)
    matches = (c[:, None] + d.array) % d.modulus == c[None, :]
    np.fill_diagonal(matches, False)
    return np.where(matches.any(axis = 1), matches.argmax(axis = 1), -1)


def unsatisfied_vertices(d: CompleteWeightedDigraph, labeling: Labeling) -> t.List[int]:
    return [int(u) for u in np.flatnonzero(successors(d, labeling) < 0)]


def attempt_labeling(d: CompleteWeightedDigraph, labeling: Labeling) -> t.Optional[CycleWitness]:
    """
    One attempt: if every vertex has a matching outneighbour, the chosen
    edges form a functional graph, and the cycle reached by walking from
    vertex 0 telescopes to weight 0.
    """
    if len(labeling) != d.vertex_count:
        raise InvariantViolation('labeling does not cover the digraph')
    successor = successors(d, labeling)
    if (successor < 0).any():
        return None

    position: t.Dict[int, int] = {}
    walk: t.List[int] = []
    u = 0
    while u not in position:
        position[u] = len(walk)
        walk.append(u)
        u = int(successor[u])
    return CycleWitness(d, walk[position[u]:], d.modulus)


def run_randomized(
    d: CompleteWeightedDigraph,
    seed: t.Optional[int] = None,
    max_attempts: t.Optional[int] = None,
) -> t.Tuple[CycleWitness, int]:
    """
    Returns the witness and the 1-based index of the succeeding attempt.
    Attempt i draws its labeling from the i-th child of the seed sequence, so
    attempts are independent of evaluation order.
    """
    n, q = d.vertex_count, d.modulus
    if max_attempts is None:
        max_attempts = default_max_attempts(n)

    for attempt, child in enumerate(np.random.SeedSequence(seed).spawn(max_attempts), start = 1):
        labeling = Labeling.draw(n, q, np.random.default_rng(child))
        witness = attempt_labeling(d, labeling)
        if witness is not None:
            if not verify_cycle_witness(witness):
                raise InvariantViolation(f'labeling cycle {witness.vertices} does not verify')
            log.debug('labeling succeeded on attempt %d (n=%d, q=%d)', attempt, n, q)
            return witness, attempt

    log.info('randomized finder exhausted %d attempts (n=%d, q=%d)', max_attempts, n, q)
    raise AttemptsExhausted(max_attempts)


def find_zero_cycle_randomized(
    d: CompleteWeightedDigraph,
    q: int,
    seed: t.Optional[int] = None,
    max_attempts: t.Optional[int] = None,
) -> CycleWitness:
    if q != d.modulus:
        raise ModulusMismatch(q, d.modulus)
    witness, _ = run_randomized(d, seed, max_attempts)
    return witness
