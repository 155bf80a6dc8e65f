import json

import pytest
from click.testing import CliRunner

from divisible.cli import cli


@pytest.fixture
def runner(monkeypatch):
    for name in ('DIVISIBLE_SEED', 'DIVISIBLE_BRUTE_FORCE_CAP', 'DIVISIBLE_RAMSEY_BUDGET', 'DIVISIBLE_SWEEP_CAP'):
        monkeypatch.delenv(name, raising = False)
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, [str(arg) for arg in args])


def test_find_cycle_and_verify(runner, tmp_path):
    graph, model, witness = tmp_path / 'g.txt', tmp_path / 'm.json', tmp_path / 'w.json'
    result = invoke(
        runner, 'gen', 'minor-model', '--supernodes', 10, '--q', 3, '--seed', 1,
        '--graph-out', graph, '--model-out', model,
    )
    assert result.exit_code == 0

    result = invoke(runner, 'find-cycle', '--graph', graph, '--model', model, '--q', 3, '--out', witness)
    assert result.exit_code == 0
    assert 'verified: yes' in result.output
    assert json.loads(witness.read_text())['kind'] == 'cycle'

    result = invoke(runner, 'verify', '--graph', graph, '--witness', witness)
    assert result.exit_code == 0

    tampered = json.loads(witness.read_text())
    tampered['vertices'] = tampered['vertices'][:-1]
    witness.write_text(json.dumps(tampered))
    result = invoke(runner, 'verify', '--graph', graph, '--witness', witness)
    assert result.exit_code == 2
    assert 'verified: no' in result.output


def test_find_cycle_needs_enough_branch_sets(runner, tmp_path):
    graph, model = tmp_path / 'g.txt', tmp_path / 'm.json'
    invoke(
        runner, 'gen', 'minor-model', '--supernodes', 10, '--q', 5, '--seed', 1,
        '--graph-out', graph, '--model-out', model,
    )
    result = invoke(runner, 'find-cycle', '--graph', graph, '--model', model, '--q', 5)
    assert result.exit_code == 1


def test_cubic_model_yields_a_divisible_cycle(runner, tmp_path):
    graph, model = tmp_path / 'g.txt', tmp_path / 'm.json'
    result = invoke(
        runner, 'gen', 'minor-model', '--supernodes', 6, '--q', 2, '--cubic', '--seed', 0,
        '--graph-out', graph, '--model-out', model,
    )
    assert result.exit_code == 0
    result = invoke(runner, 'find-cycle', '--graph', graph, '--model', model, '--q', 2, '--seed', 0)
    assert result.exit_code == 0
    assert 'verified: yes' in result.output


def test_generators_are_byte_identical(runner, tmp_path):
    outputs = []
    for name in ('a', 'b'):
        graph, model = tmp_path / f'{name}.txt', tmp_path / f'{name}.json'
        invoke(
            runner, 'gen', 'minor-model', '--supernodes', 6, '--q', 4, '--blowup-max', 3, '--weighted',
            '--seed', 12, '--graph-out', graph, '--model-out', model,
        )
        outputs.append((graph.read_bytes(), model.read_bytes()))
    assert outputs[0] == outputs[1]


def test_zero_sum(runner):
    result = invoke(runner, 'zero-sum', '--n', 5, '--q', 3, '--seed', 0, '--exhaustive')
    assert result.exit_code == 0
    assert 'finder: prime' in result.output

    result = invoke(runner, 'zero-sum', '--n', 12, '--q', 4, '--seed', 0)
    assert result.exit_code == 0
    assert 'finder: randomized' in result.output


def test_zero_sum_sweep(runner, monkeypatch):
    result = invoke(runner, 'zero-sum', '--sweep', '--n', 3, '--q', 2, '--exhaustive', '--seed', 0)
    assert result.exit_code == 0
    assert 'successes: 64/64' in result.output
    assert 'oracle agreement: 64/64' in result.output

    monkeypatch.setenv('DIVISIBLE_SWEEP_CAP', '100')
    result = invoke(runner, 'zero-sum', '--sweep', '--n', 4, '--q', 2)
    assert result.exit_code == 1


def test_zero_sum_input_errors(runner, tmp_path):
    assert invoke(runner, 'zero-sum', '--n', 7, '--q', 4, '--prime').exit_code == 1
    assert invoke(runner, 'zero-sum', '--q', 3).exit_code == 1

    digraph = tmp_path / 'd.txt'
    assert invoke(runner, 'gen', 'digraph', '--n', 5, '--q', 3, '--seed', 2, '--out', digraph).exit_code == 0
    assert invoke(runner, 'zero-sum', '--digraph', digraph, '--q', 3, '--seed', 0).exit_code == 0
    assert invoke(runner, 'zero-sum', '--digraph', digraph, '--q', 5, '--seed', 0).exit_code == 1


def test_strict_mode_needs_a_seed(runner, monkeypatch):
    assert invoke(runner, '--strict', 'zero-sum', '--n', 5, '--q', 3).exit_code == 1

    monkeypatch.setenv('DIVISIBLE_SEED', '3')
    result = invoke(runner, '--strict', 'zero-sum', '--n', 5, '--q', 3)
    assert result.exit_code == 0
    assert 'seed: 3' in result.output


def test_tree_select(runner, tmp_path):
    tree = tmp_path / 't.txt'
    invoke(runner, 'gen', 'tree', '--shape', 'star', '--q', 3, '--labels', 1, '--degree', 8, '--out', tree)
    result = invoke(runner, 'tree-select', '--tree', tree, '--k', 3, '--q', 3)
    assert result.exit_code == 0
    assert 'case: high-degree' in result.output

    invoke(runner, 'gen', 'tree', '--shape', 'star', '--q', 3, '--labels', 1, '--degree', 2, '--out', tree)
    assert invoke(runner, 'tree-select', '--tree', tree, '--k', 2, '--q', 3).exit_code == 2

    assert invoke(runner, 'gen', 'tree', '--shape', 'star', '--q', 3, '--labels', 'x', '--degree', 3).exit_code == 1


def test_build_subdivision_and_verify(runner, tmp_path):
    pattern, graph, model, witness = (tmp_path / name for name in ('p.txt', 'g.txt', 'm.json', 'w.json'))
    assert invoke(runner, 'gen', 'pattern', '--shape', 'path', '--size', 2, '--out', pattern).exit_code == 0
    result = invoke(
        runner, 'gen', 'favorable', '--pattern', pattern, '--q', 2, '--gamma', 3, '--seed', 0,
        '--graph-out', graph, '--model-out', model,
    )
    assert result.exit_code == 0

    result = invoke(
        runner, 'build-subdivision', '--graph', graph, '--model', model, '--pattern', pattern,
        '--q', 2, '--gamma', 3, '--out', witness,
    )
    assert result.exit_code == 0
    assert json.loads(witness.read_text())['kind'] == 'subdivision'
    assert invoke(runner, 'verify', '--graph', graph, '--witness', witness).exit_code == 0


def test_build_subdivision_failures(runner, tmp_path):
    pattern, graph, model = (tmp_path / name for name in ('p.txt', 'g.txt', 'm.json'))
    invoke(runner, 'gen', 'pattern', '--shape', 'cycle', '--size', 3, '--out', pattern)
    invoke(
        runner, 'gen', 'favorable', '--pattern', pattern, '--q', 2, '--gamma', 5, '--seed', 0,
        '--graph-out', graph, '--model-out', model,
    )
    result = invoke(
        runner, 'build-subdivision', '--graph', graph, '--model', model, '--pattern', pattern,
        '--q', 2, '--gamma', 5,
    )
    assert result.exit_code == 2
    assert 'ramsey' in result.output

    invoke(
        runner, 'gen', 'minor-model', '--supernodes', 4, '--q', 2, '--seed', 0,
        '--graph-out', graph, '--model-out', model,
    )
    result = invoke(
        runner, 'build-subdivision', '--graph', graph, '--model', model, '--pattern', pattern,
        '--q', 2, '--gamma', 5,
    )
    assert result.exit_code == 1


def test_bench(runner):
    result = invoke(runner, 'bench', '--q', '2..3', '--seeds', 2, '--seed', 0)
    assert result.exit_code == 0
    assert 'randomized' in result.output
    assert invoke(runner, 'bench', '--q', 'two').exit_code == 1


def test_usage_errors(runner):
    assert invoke(runner, 'find-cycle').exit_code == 1
    assert invoke(runner, 'gen', 'pattern', '--shape', 'cycle', '--size', 2).exit_code == 1
    assert invoke(runner, 'no-such-command').exit_code == 1
    assert invoke(runner, '--help').exit_code == 0
