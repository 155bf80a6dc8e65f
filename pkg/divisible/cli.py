from __future__ import annotations

import logging
import sys
import time
import typing as t

import click
import networkx as nx
import numpy as np
from sympy import isprime

from divisible.bench import HEADERS, run_bench, sweep_cells
from divisible.errors import (
    AlgorithmicFailure, CapExceeded, InputError, InvariantViolation, ModulusMismatch,
)
from divisible.generators import (
    GenKind, GenSpec, TreeShape, gen_digraph, gen_favorable_subdivision_instance, gen_minor_model, gen_tree,
    rng_description, enumerate_digraphs,
)
from divisible.graphs.weighted import CompleteWeightedDigraph
from divisible.interface import RunReport, render_table
from divisible.minorcycle import find_divisible_cycle
from divisible.selection import check_selection, select_leaves
from divisible.serialization import (
    format_digraph, format_graph, format_pattern, format_tree, model_from_json, model_to_json, parse_digraph,
    parse_graph, parse_host, parse_pattern, parse_tree, witness_from_json, witness_to_json,
)
from divisible.setup import DivisibleSetup
from divisible.subdivision.assembly import Parameterization, build_subdivision
from divisible.witnesses import (
    CycleWitness, check_cycle_witness, check_subdivision_witness, verify_cycle_witness,
)
from divisible.zerosum.brute import brute_force_zero_cycle
from divisible.zerosum.prime import find_zero_cycle_prime
from divisible.zerosum.randomized import find_zero_cycle_randomized


log = logging.getLogger(__name__)


class DivisibleGroup(click.Group):
    """
    Runs outside click's standalone mode and turns exceptions into exit
    codes: 1 for input and usage errors, 2 for algorithmic failures.
    Commands return their exit code.
    """

    def main(self, *args, **kwargs):
        kwargs['standalone_mode'] = False
        try:
            code = super().main(*args, **kwargs)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo('aborted', err = True)
            sys.exit(1)
        except (InputError, InvariantViolation) as e:
            click.echo(f'error: {e}', err = True)
            sys.exit(1)
        except AlgorithmicFailure as e:
            click.echo(f'failure: {e}', err = True)
            sys.exit(2)
        sys.exit(code if isinstance(code, int) else 0)


_file = click.Path(exists = True, dir_okay = False)
_out = click.Path(dir_okay = False, writable = True)


def _read(path: str) -> str:
    with open(path, 'r', encoding = 'utf-8') as f:
        return f.read()


def _emit(text: str, out: t.Optional[str]) -> None:
    if out is None:
        click.echo(text, nl = False)
    else:
        with open(out, 'w', encoding = 'utf-8', newline = '\n') as f:
            f.write(text)


def resolve_seed(setup: DivisibleSetup, seed: t.Optional[int]) -> int:
    if seed is not None:
        return seed
    if setup.seed is not None:
        return setup.seed
    if setup.strict:
        raise click.UsageError('--strict requires --seed or DIVISIBLE_SEED')
    return int(np.random.SeedSequence().entropy % 2 ** 32)


@click.group(cls = DivisibleGroup)
@click.option('-v', '--verbose', count = True, help = '-v for INFO, -vv for DEBUG logging on stderr.')
@click.option('--strict', is_flag = True, help = 'Require an explicit seed for randomized commands.')
@click.pass_context
def cli(ctx: click.Context, verbose: int, strict: bool) -> None:
    logging.basicConfig(
        stream = sys.stderr,
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG),
        format = '%(levelname)s %(name)s: %(message)s',
    )
    ctx.obj = DivisibleSetup.from_environment(strict = strict)


@cli.command('find-cycle')
@click.option('--graph', 'graph_path', type = _file, required = True)
@click.option('--model', 'model_path', type = _file, required = True)
@click.option('--q', type = int, required = True)
@click.option('--seed', type = int, default = None)
@click.option('--use-all', is_flag = True, help = 'Pair up every branch set, not just the required 2N.')
@click.option('--pairs', type = int, default = None, help = 'Use exactly this many pairs, below the guarantee if need be.')
@click.option('--out', type = _out, default = None)
@click.pass_obj
def find_cycle(
    setup: DivisibleSetup,
    graph_path: str,
    model_path: str,
    q: int,
    seed: t.Optional[int],
    use_all: bool,
    pairs: t.Optional[int],
    out: t.Optional[str],
) -> int:
    """Cycle of length divisible by q in a graph with a complete minor."""
    g = parse_graph(_read(graph_path), graph_path)
    m, _ = model_from_json(_read(model_path), g, model_path)
    if not isprime(q) or pairs is not None:
        seed = resolve_seed(setup, seed)

    report = RunReport('find-cycle', {'q': q, 'graph': graph_path, 'model': model_path}, seed)
    started = time.perf_counter()
    try:
        witness = find_divisible_cycle(g, m, q, seed = seed, use_all = use_all, pairs = pairs)
    except AlgorithmicFailure as e:
        report.failure(str(e)).timed(time.perf_counter() - started).echo()
        return report.exit_code

    report.add('length', len(witness)).witness(check_cycle_witness(witness))
    report.timed(time.perf_counter() - started)
    _emit(witness_to_json(witness, seed), out)
    report.echo()
    return report.exit_code


def _find_zero_cycle(
    d: CompleteWeightedDigraph,
    q: int,
    force_prime: bool,
    seed: int,
    max_attempts: t.Optional[int],
) -> t.Tuple[CycleWitness, str]:
    if force_prime or (isprime(q) and d.vertex_count >= 2 * q - 1):
        return find_zero_cycle_prime(d, q), 'prime'
    return find_zero_cycle_randomized(d, q, seed = seed, max_attempts = max_attempts), 'randomized'


@cli.command('zero-sum')
@click.option('--n', type = int, default = None)
@click.option('--q', type = int, required = True)
@click.option('--prime', 'force_prime', is_flag = True, help = 'Insist on the deterministic prime finder.')
@click.option('--seed', type = int, default = None)
@click.option('--exhaustive', is_flag = True, help = 'Cross-check against the brute-force oracle.')
@click.option('--sweep', is_flag = True, help = 'Run over every weighting of the complete digraph on n vertices.')
@click.option('--digraph', 'digraph_path', type = _file, default = None)
@click.option('--max-attempts', type = int, default = None)
@click.option('--out', type = _out, default = None)
@click.pass_obj
def zero_sum(
    setup: DivisibleSetup,
    n: t.Optional[int],
    q: int,
    force_prime: bool,
    seed: t.Optional[int],
    exhaustive: bool,
    sweep: bool,
    digraph_path: t.Optional[str],
    max_attempts: t.Optional[int],
    out: t.Optional[str],
) -> int:
    """Zero-sum cycle in a Z_q-weighted complete digraph."""
    if force_prime and not isprime(q):
        raise InputError(f'{q} is not prime')
    if digraph_path is None and n is None:
        raise click.UsageError('one of --n and --digraph is required')
    seed = resolve_seed(setup, seed)

    if sweep:
        return _zero_sum_sweep(setup, n, q, force_prime, seed, exhaustive, max_attempts)

    if digraph_path is not None:
        d = parse_digraph(_read(digraph_path), digraph_path)
        if d.modulus != q:
            raise ModulusMismatch(q, d.modulus)
    else:
        d = gen_digraph(n, q, seed)

    report = RunReport('zero-sum', {'n': d.vertex_count, 'q': q}, seed)
    if exhaustive:
        oracle = brute_force_zero_cycle(d, q, cap = setup.brute_force_cap)
        report.add('oracle', 'none' if oracle is None else list(oracle.vertices))

    started = time.perf_counter()
    try:
        witness, finder = _find_zero_cycle(d, q, force_prime, seed, max_attempts)
    except AlgorithmicFailure as e:
        report.failure(str(e)).timed(time.perf_counter() - started).echo()
        return report.exit_code
    report.timed(time.perf_counter() - started)

    if exhaustive and oracle is None:
        raise InvariantViolation(f'finder returned {witness.vertices} where the oracle finds no zero-sum cycle')
    report.add('finder', finder).add('cycle', list(witness.vertices))
    report.witness(check_cycle_witness(witness))
    _emit(witness_to_json(witness, seed), out)
    report.echo()
    return report.exit_code


def _zero_sum_sweep(
    setup: DivisibleSetup,
    n: t.Optional[int],
    q: int,
    force_prime: bool,
    seed: int,
    exhaustive: bool,
    max_attempts: t.Optional[int],
) -> int:
    if n is None:
        raise click.UsageError('--sweep needs --n')
    total = q ** (n * (n - 1))
    if total > setup.sweep_cap:
        raise CapExceeded(total, setup.sweep_cap, 'sweep size')

    report = RunReport('zero-sum', {'n': n, 'q': q, 'sweep': True}, seed)
    successes = agreements = 0
    started = time.perf_counter()
    for d in enumerate_digraphs(n, q):
        try:
            witness, _ = _find_zero_cycle(d, q, force_prime, seed, max_attempts)
            found = verify_cycle_witness(witness)
        except AlgorithmicFailure:
            found = False
        successes += found
        if exhaustive:
            agreements += found == (brute_force_zero_cycle(d, q, cap = setup.brute_force_cap) is not None)
    report.timed(time.perf_counter() - started)

    report.add('successes', f'{successes}/{total}')
    if exhaustive:
        report.add('oracle agreement', f'{agreements}/{total}')
    if successes == total and (not exhaustive or agreements == total):
        report.witness(())
    else:
        report.failure(f'{total - successes} weightings without a verified cycle')
    report.echo()
    return report.exit_code


@cli.command('tree-select')
@click.option('--tree', 'tree_path', type = _file, required = True)
@click.option('--k', type = int, required = True)
@click.option('--q', type = int, required = True)
@click.option('--residue', type = int, default = None, help = 'Only accept this residue for a.')
@click.pass_obj
def tree_select(
    setup: DivisibleSetup,
    tree_path: str,
    k: int,
    q: int,
    residue: t.Optional[int],
) -> int:
    """k leaves of a Z_q-labeled tree with a common certificate residue."""
    tree = parse_tree(_read(tree_path), tree_path)
    report = RunReport('tree-select', {'k': k, 'q': q, 'tree': tree_path, 'leaves': len(tree.leaves)})
    started = time.perf_counter()
    selection = select_leaves(tree, k, q, residue = residue)
    if not selection:
        report.failure(selection.reason).timed(time.perf_counter() - started).echo()
        return report.exit_code

    checked = check_selection(tree, selection)
    report.timed(time.perf_counter() - started)
    report.add('case', selection.case.value).add('residue', selection.residue)
    if selection.hub is not None:
        report.add('hub', selection.hub)
    report.add('selected', list(selection.leaves))
    if checked.vacuous:
        report.add('certificates', 'vacuous, fewer than 3 leaves')
    report.witness(checked.violations).echo()
    return report.exit_code


@cli.command('build-subdivision')
@click.option('--graph', 'graph_path', type = _file, required = True)
@click.option('--model', 'model_path', type = _file, required = True, help = 'Minor model with an X/Y partition.')
@click.option('--pattern', 'pattern_path', type = _file, required = True)
@click.option('--q', type = int, required = True)
@click.option('--gamma', type = int, required = True, help = 'Size m of the Ramsey graph K_m.')
@click.option(
    '--parameterization',
    type = click.Choice([p.value for p in Parameterization]),
    default = Parameterization.DEGREE.value,
)
@click.option('--budget', type = int, default = None, help = 'Node budget of the monochromatic search.')
@click.option('--out', type = _out, default = None)
@click.pass_obj
def build_subdivision_command(
    setup: DivisibleSetup,
    graph_path: str,
    model_path: str,
    pattern_path: str,
    q: int,
    gamma: int,
    parameterization: str,
    budget: t.Optional[int],
    out: t.Optional[str],
) -> int:
    """Subdivision of a pattern with every path length divisible by q."""
    g = parse_graph(_read(graph_path), graph_path)
    m, partition = model_from_json(_read(model_path), g, model_path)
    if partition is None:
        raise InputError(f'{model_path}: no X/Y partition')
    h = parse_pattern(_read(pattern_path), pattern_path)

    report = RunReport(
        'build-subdivision',
        {'q': q, 'gamma': gamma, 'parameterization': parameterization, 'pattern': pattern_path},
    )
    started = time.perf_counter()
    try:
        build = build_subdivision(
            g,
            m,
            partition,
            h,
            q,
            gamma,
            Parameterization(parameterization),
            setup.ramsey_budget if budget is None else budget,
        )
    except AlgorithmicFailure as e:
        report.failure(str(e)).timed(time.perf_counter() - started).echo()
        return report.exit_code

    report.timed(time.perf_counter() - started)
    report.add('a', build.a).add('b', build.b).add('k', build.k)
    report.witness(check_subdivision_witness(build.witness))
    _emit(witness_to_json(build.witness), out)
    report.echo()
    return report.exit_code


@cli.group()
def gen() -> None:
    """Seeded instance generators."""


@gen.command('minor-model')
@click.option('--supernodes', type = int, required = True)
@click.option('--q', type = int, required = True)
@click.option('--blowup-min', type = int, default = 1)
@click.option('--blowup-max', type = int, default = 1)
@click.option('--noise', type = int, default = 0, help = 'Extra edges per supernode.')
@click.option('--cross-noise', is_flag = True, help = 'Also add noise edges between supernodes.')
@click.option('--weighted', is_flag = True, help = 'Uniform random Z_q weights instead of 1.')
@click.option('--cubic', is_flag = True, help = 'Maximum degree 3 model with all skeleton paths of length q.')
@click.option('--seed', type = int, default = None)
@click.option('--graph-out', type = _out, default = None)
@click.option('--model-out', type = _out, default = None)
@click.pass_obj
def gen_minor_model_command(
    setup: DivisibleSetup,
    supernodes: int,
    q: int,
    blowup_min: int,
    blowup_max: int,
    noise: int,
    cross_noise: bool,
    weighted: bool,
    cubic: bool,
    seed: t.Optional[int],
    graph_out: t.Optional[str],
    model_out: t.Optional[str],
) -> int:
    seed = resolve_seed(setup, seed)
    spec = GenSpec(
        GenKind.CUBIC if cubic else
        GenKind.IDENTITY if (blowup_min, blowup_max) == (1, 1) else
        GenKind.TREE_BLOWUP,
        q,
        seed,
        supernodes = supernodes,
        blowup = (blowup_min, blowup_max),
        noise = noise,
        cross_noise = cross_noise,
        weighted = weighted,
    )
    host, model = gen_minor_model(spec)
    _emit(format_graph(host), graph_out)
    _emit(model_to_json(model, generated_by = f'{rng_description()} seed {seed}'), model_out)
    return 0


@gen.command('digraph')
@click.option('--n', type = int, required = True)
@click.option('--q', type = int, required = True)
@click.option('--seed', type = int, default = None)
@click.option('--out', type = _out, default = None)
@click.pass_obj
def gen_digraph_command(setup: DivisibleSetup, n: int, q: int, seed: t.Optional[int], out: t.Optional[str]) -> int:
    _emit(format_digraph(gen_digraph(n, q, resolve_seed(setup, seed))), out)
    return 0


@gen.command('tree')
@click.option('--shape', type = click.Choice([shape.value for shape in TreeShape]), required = True)
@click.option('--q', type = int, required = True)
@click.option('--labels', default = 'random', help = 'A constant label or "random".')
@click.option('--degree', type = int, default = None, help = 'Star hub degree.')
@click.option('--branches', type = int, default = None, help = 'Caterpillar branch vertices.')
@click.option('--handle', type = int, default = None, help = 'Broom handle length.')
@click.option('--bristles', type = int, default = None, help = 'Broom bristle count.')
@click.option('--leaves', type = int, default = None, help = 'Leaf count of a random tree.')
@click.option('--seed', type = int, default = None)
@click.option('--out', type = _out, default = None)
@click.pass_obj
def gen_tree_command(
    setup: DivisibleSetup,
    shape: str,
    q: int,
    labels: str,
    seed: t.Optional[int],
    out: t.Optional[str],
    **params: t.Optional[int],
) -> int:
    if labels != 'random':
        try:
            labels = int(labels)
        except ValueError:
            raise click.BadParameter(f'{labels!r} is neither an integer nor "random"', param_hint = '--labels')
    tree = gen_tree(
        shape,
        q,
        resolve_seed(setup, seed),
        labels = labels,
        **{key: value for key, value in params.items() if value is not None},
    )
    _emit(format_tree(tree), out)
    return 0


@gen.command('pattern')
@click.option('--shape', type = click.Choice(['cycle', 'path', 'complete']), required = True)
@click.option('--size', type = int, required = True)
@click.option('--out', type = _out, default = None)
def gen_pattern_command(shape: str, size: int, out: t.Optional[str]) -> int:
    builders = {'cycle': nx.cycle_graph, 'path': nx.path_graph, 'complete': nx.complete_graph}
    if size < (3 if shape == 'cycle' else 2):
        raise InputError(f'{shape} pattern of size {size} is too small')
    _emit(format_pattern(builders[shape](size)), out)
    return 0


@gen.command('favorable')
@click.option('--pattern', 'pattern_path', type = _file, required = True)
@click.option('--q', type = int, required = True)
@click.option('--gamma', type = int, required = True, help = 'Size m of the Ramsey graph K_m.')
@click.option(
    '--parameterization',
    type = click.Choice([p.value for p in Parameterization]),
    default = Parameterization.DEGREE.value,
)
@click.option('--hub-degree', type = int, default = None)
@click.option('--seed', type = int, default = None)
@click.option('--graph-out', type = _out, default = None)
@click.option('--model-out', type = _out, default = None)
@click.pass_obj
def gen_favorable_command(
    setup: DivisibleSetup,
    pattern_path: str,
    q: int,
    gamma: int,
    parameterization: str,
    hub_degree: t.Optional[int],
    seed: t.Optional[int],
    graph_out: t.Optional[str],
    model_out: t.Optional[str],
) -> int:
    seed = resolve_seed(setup, seed)
    host, model, partition = gen_favorable_subdivision_instance(
        parse_pattern(_read(pattern_path), pattern_path),
        q,
        gamma,
        seed,
        Parameterization(parameterization),
        hub_degree,
    )
    _emit(format_graph(host), graph_out)
    _emit(model_to_json(model, partition, generated_by = f'{rng_description()} seed {seed}'), model_out)
    return 0


@cli.command('verify')
@click.option('--graph', 'graph_path', type = _file, required = True)
@click.option('--witness', 'witness_path', type = _file, required = True)
def verify(graph_path: str, witness_path: str) -> int:
    """Re-check a witness file against its graph file."""
    host = parse_host(_read(graph_path), graph_path)
    witness = witness_from_json(_read(witness_path), host, witness_path)
    report = RunReport('verify', {'graph': graph_path, 'witness': witness_path})
    if isinstance(witness, CycleWitness):
        report.add('kind', 'cycle').witness(check_cycle_witness(witness))
    else:
        report.add('kind', 'subdivision').witness(check_subdivision_witness(witness))
    report.echo()
    return report.exit_code


def _parse_range(value: str) -> t.List[int]:
    values = []
    try:
        for part in value.split(','):
            if '..' in part:
                low, high = part.split('..')
                values.extend(range(int(low), int(high) + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise click.BadParameter(f'{value!r} is not a list of integers and ranges like 2..8')
    return values


@cli.command('bench')
@click.option('--q', 'q_range', required = True, help = 'Moduli, e.g. 2..8 or 2,3,5.')
@click.option('--n', 'ns', type = int, multiple = True, help = 'Vertex counts; default the guarantee threshold.')
@click.option('--seeds', type = int, default = 20, help = 'Runs per cell.')
@click.option('--seed', type = int, default = None, help = 'First seed of each cell.')
@click.option('--prime', is_flag = True, help = 'Benchmark the deterministic prime finder.')
@click.option('--below', type = int, default = 0, help = 'Run this many vertices below the threshold.')
@click.option('--jobs', type = int, default = 1)
@click.pass_obj
def bench(
    setup: DivisibleSetup,
    q_range: str,
    ns: t.Tuple[int, ...],
    seeds: int,
    seed: t.Optional[int],
    prime: bool,
    below: int,
    jobs: int,
) -> int:
    """Success rates and timings of the zero-sum finders over (q, n)."""
    base = resolve_seed(setup, seed)
    cells = sweep_cells(_parse_range(q_range), range(base, base + seeds), list(ns), prime, below)
    rows = run_bench(cells, jobs)
    click.echo(render_table(HEADERS, [row.values() for row in rows]))
    return 0


def main() -> None:
    cli()
