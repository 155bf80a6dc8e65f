from __future__ import annotations

import logging
import time
import typing as t
from concurrent.futures import ProcessPoolExecutor

from sympy import isprime
from yeetlong.multiset import Multiset

from divisible.errors import AttemptsExhausted, InputError
from divisible.generators import gen_digraph
from divisible.zerosum.prime import find_zero_cycle_prime
from divisible.zerosum.randomized import run_randomized, threshold


log = logging.getLogger(__name__)


HEADERS = ('q', 'n', 'finder', 'runs', 'success', 'attempts', 'seconds')


class BenchCell(object):

    def __init__(self, q: int, n: int, seeds: t.Sequence[int], prime: bool = False):
        if prime and not isprime(q):
            raise InputError(f'{q} is not prime')
        if prime and n < 2 * q - 1:
            raise InputError(f'the prime finder needs {2 * q - 1} vertices for q={q}, got {n}')
        if n < 2:
            raise InputError(f'digraph needs at least 2 vertices, got {n}')
        self._q = q
        self._n = n
        self._seeds = tuple(seeds)
        self._prime = prime

    @property
    def q(self) -> int:
        return self._q

    @property
    def n(self) -> int:
        return self._n

    @property
    def seeds(self) -> t.Tuple[int, ...]:
        return self._seeds

    @property
    def prime(self) -> bool:
        return self._prime

    @property
    def key(self) -> t.Tuple[int, int, bool]:
        return self._q, self._n, self._prime


class BenchRow(object):

    def __init__(self, cell: BenchCell, successes: int, attempts: int, seconds: float):
        self._cell = cell
        self._successes = successes
        self._attempts = attempts
        self._seconds = seconds

    @property
    def cell(self) -> BenchCell:
        return self._cell

    @property
    def runs(self) -> int:
        return len(self._cell.seeds)

    @property
    def successes(self) -> int:
        return self._successes

    @property
    def success_rate(self) -> float:
        return self.successes / self.runs if self.runs else 0.

    @property
    def mean_attempts(self) -> float:
        return self._attempts / self.successes if self.successes else 0.

    @property
    def mean_seconds(self) -> float:
        return self._seconds / self.runs if self.runs else 0.

    def values(self) -> t.Tuple[t.Any, ...]:
        return (
            self._cell.q,
            self._cell.n,
            'prime' if self._cell.prime else 'randomized',
            self.runs,
            f'{self.success_rate:.3f}',
            f'{self.mean_attempts:.2f}',
            f'{self.mean_seconds:.5f}',
        )


def run_cell(cell: BenchCell) -> BenchRow:
    outcomes = []
    attempts = 0
    started = time.perf_counter()
    for seed in cell.seeds:
        d = gen_digraph(cell.n, cell.q, seed)
        if cell.prime:
            find_zero_cycle_prime(d, cell.q)
            attempts += 1
            outcomes.append('success')
            continue
        try:
            _, attempt = run_randomized(d, seed)
        except AttemptsExhausted:
            outcomes.append('exhausted')
        else:
            attempts += attempt
            outcomes.append('success')
    return BenchRow(cell, Multiset(outcomes)['success'], attempts, time.perf_counter() - started)


def sweep_cells(
    qs: t.Iterable[int],
    seeds: t.Sequence[int],
    ns: t.Optional[t.Sequence[int]] = None,
    prime: bool = False,
    below: int = 0,
) -> t.List[BenchCell]:
    """
    One cell per (q, n). Without explicit ns, n is the guarantee threshold
    for the chosen finder, minus `below`.
    """
    cells = []
    for q in sorted(set(qs)):
        for n in (ns if ns else [(2 * q - 1 if prime else threshold(q)) - below]):
            cells.append(BenchCell(q, n, seeds, prime))
    return sorted(cells, key = lambda cell: cell.key)


def run_bench(cells: t.Sequence[BenchCell], jobs: int = 1) -> t.List[BenchRow]:
    """
    Rows come back in cell order whatever order the cells finish in.
    """
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers = jobs) as executor:
            rows = list(executor.map(run_cell, cells))
    else:
        rows = [run_cell(cell) for cell in cells]
    log.debug('bench ran %d cells', len(rows))
    return rows
