# -*- coding: utf-8 -*-

import csv
import json
import os

import pytest
from click.testing import CliRunner

from ft_offload.cli import main
from ft_offload.config import STRATEGY_NAMES, ScenarioConfig
from ft_offload.decorators import capture_errors
from ft_offload.exceptions import EmptyInput, InvalidConfig, InvalidFile, SimulationException
from ft_offload.experiment import (COMPUTATION_SWEEP, DEFAULT_VALUES, MTBF_SWEEP, ExperimentSpec, ResultRow,
                                   ResultTable, run_experiment, run_scenario)
from ft_offload.report import HEADER, SUMMARY_HEADER, aggregate, emit_csv, read_csv, summarize, summary_path
from ft_offload.storage import dump_scenario, write_json


@pytest.fixture(scope="module")
def tiny_config():
    yield ScenarioConfig(scenario_id='tiny', app_count=2, device_count=(3, 4), task_count=(2, 4),
                         instruction_scale=1e4, avail_time=(1e6, 2e6))


@pytest.fixture(scope="module")
def tiny_spec(tiny_config):
    yield ExperimentSpec(name='tiny_sweep', sweep=MTBF_SWEEP, values=(20, 60), seeds=2, scenario=tiny_config)


def _rows(path):
    with open(path, newline='') as handle:
        return list(csv.reader(handle))


def test_experiment_spec_validation(tiny_config):
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep='bandwidth', values=(1,))
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep=MTBF_SWEEP, values=())
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep=MTBF_SWEEP, values=(10,), seeds=0)
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep=MTBF_SWEEP, values=(10, -5))
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep=COMPUTATION_SWEEP, values=(0,))
    with pytest.raises(InvalidConfig):
        ExperimentSpec(name='x', sweep=MTBF_SWEEP, values=(10,), strategies=('EVERYTHING',))

    spec = ExperimentSpec(name='x', sweep=MTBF_SWEEP, values=(10,), seeds=3, scenario=tiny_config.replace(seed=5))
    assert spec.seed_list == (5, 6, 7)
    assert spec.strategy_names == STRATEGY_NAMES
    assert spec.point(10.0).mtbf == (10.0, 10.0)


def test_experiment_presets():
    availability = ExperimentSpec.preset(MTBF_SWEEP)
    assert availability.name == 'mtbf_sweep'
    assert availability.values == DEFAULT_VALUES[MTBF_SWEEP]
    assert availability.seeds == 20

    computation = ExperimentSpec.preset(COMPUTATION_SWEEP, seeds=3)
    assert computation.values == (1.0, 2.0, 3.0, 4.0)
    assert computation.scenario.mtbf == (90.0, 120.0)
    assert computation.point(3.0).instruction_scale == 3 * ScenarioConfig().instruction_scale
    assert computation.point(3.0).mtbf == (90.0, 120.0)

    with pytest.raises(InvalidConfig):
        ExperimentSpec.preset('bandwidth')


def test_run_scenario_aggregates_applications(tiny_config):
    result = run_scenario(tiny_config, seed=4)
    assert list(result.runs) == list(STRATEGY_NAMES)
    for strategy, runs in result.runs.items():
        assert len(runs) == tiny_config.app_count
        assert result.completion_time(strategy) == pytest.approx(
            sum(run.metrics.completion_time for run in runs) / len(runs))
        assert result.overhead(strategy) == pytest.approx(sum(run.metrics.overhead_time for run in runs))
        assert result.ft_messages(strategy) == sum(run.metrics.ft_messages for run in runs)
    assert all(not run.trace for run in result.runs['FT_ALGO'])

    only = run_scenario(tiny_config, seed=4, strategies=['NO_FT'], keep_trace=True)
    assert list(only.runs) == ['NO_FT']
    assert only.completion_time('NO_FT') == result.completion_time('NO_FT')
    assert all(run.trace for run in only.runs['NO_FT'])


def test_run_experiment(tiny_spec):
    table = run_experiment(tiny_spec)
    assert not table.errors
    assert len(table) == 2 * 2 * len(STRATEGY_NAMES)
    assert [(row.sweep_value, row.seed) for row in table.rows[::len(STRATEGY_NAMES)]] == \
        [(20.0, 0), (20.0, 1), (60.0, 0), (60.0, 1)]
    assert [row.strategy for row in table.rows[:len(STRATEGY_NAMES)]] == list(STRATEGY_NAMES)
    for row in table:
        assert row.scenario_id == 'tiny'
        assert row.completion_time > 0
        if row.strategy == 'NO_FT':
            assert row.overhead == 0.0 and row.ft_messages == 0


def test_run_experiment_reports_failed_cells(tiny_spec):
    broken = ExperimentSpec(name='broken', sweep=MTBF_SWEEP, values=(20,), seeds=2, strategies=('NO_FT',),
                            scenario=tiny_spec.scenario.replace(max_events=1))
    table = run_experiment(broken)
    assert len(table) == 0
    assert len(table.errors) == 2
    assert table.errors[0]['code'] == 'limit_exceeded'
    assert [error['meta']['seed'] for error in table.errors] == [0, 1]
    assert all(error['meta']['sweep_value'] == 20.0 for error in table.errors)


def test_emit_csv(tmp_path, tiny_spec):
    table = run_experiment(tiny_spec)
    path, summary = emit_csv(table, str(tmp_path / 'out' / 'tiny.csv'))
    assert summary == str(tmp_path / 'out' / 'tiny_summary.csv')

    rows = _rows(path)
    assert rows[0] == ['scenario_id', 'strategy', 'sweep_value', 'seed', 'completion_time_s', 'overhead_s',
                       'ft_messages']
    assert len(rows) == len(table) + 1
    assert rows[1][:4] == ['tiny', 'FT_ALGO', '20', '0']
    assert len(rows[1][4].split('.')[1]) == 6

    summary_rows = _rows(summary)
    assert tuple(summary_rows[0]) == SUMMARY_HEADER
    assert len(summary_rows) == 2 * len(STRATEGY_NAMES) + 1
    assert all(row[3] == '2' for row in summary_rows[1:])

    assert read_csv(path).rows[0].strategy == 'FT_ALGO'
    assert len(aggregate([path, path])) == 2 * len(table)


def test_emit_csv_is_deterministic(tmp_path, tiny_spec):
    first, _ = emit_csv(run_experiment(tiny_spec), str(tmp_path / 'first.csv'))
    second, _ = emit_csv(run_experiment(tiny_spec, jobs=2), str(tmp_path / 'second.csv'))
    with open(first, 'rb') as a, open(second, 'rb') as b:
        assert a.read() == b.read()


def test_emit_csv_empty(tmp_path):
    with pytest.raises(EmptyInput):
        emit_csv(ResultTable(), str(tmp_path / 'empty.csv'))


def test_summarize():
    rows = tuple(ResultRow('s', 'FT_ALGO', 10.0, seed, completion, 0.0, messages)
                 for seed, completion, messages in ((0, 1.0, 2), (1, 3.0, 4)))
    rows += (ResultRow('s', 'NO_FT', 10.0, 0, 5.0, 0.0, 0),)
    summary = summarize(ResultTable(rows=rows))
    assert summary[0] == ('s', 'FT_ALGO', 10.0, 2, 2.0, 1.0, 0.0, 0.0, 3.0, 1.0)
    assert summary[1] == ('s', 'NO_FT', 10.0, 1, 5.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert summary_path('results/exp.csv') == 'results/exp_summary.csv'


def test_read_csv_errors(tmp_path):
    wrong = tmp_path / 'wrong.csv'
    wrong.write_text('a,b,c\n1,2,3\n')
    with pytest.raises(InvalidFile):
        read_csv(str(wrong))

    broken = tmp_path / 'broken.csv'
    broken.write_text(','.join(HEADER) + '\ns,NO_FT,,zero,1.0,0.0,0\n')
    with pytest.raises(InvalidFile) as excinfo:
        read_csv(str(broken))
    assert excinfo.value.source['line'] == 2

    with pytest.raises(InvalidFile):
        read_csv(str(tmp_path / 'absent.csv'))


def test_capture_errors():
    @capture_errors
    def divide(a, b):
        if b == 0:
            raise InvalidConfig("b must not be zero", source={'parameter': 'b'})
        return a / b

    assert divide(4, 2) == (2, None)
    result, error = divide(1, 0)
    assert result is None
    assert error == {'code': 'invalid_config', 'title': 'Invalid configuration', 'detail': 'b must not be zero',
                     'source': {'parameter': 'b'}}

    @capture_errors
    def unexpected():
        raise KeyError('boom')

    result, error = unexpected()
    assert error['code'] == 'unknown' and error['title'] == 'Unknown error'

    @capture_errors(propagate=True)
    def propagated():
        raise KeyError('boom')

    with pytest.raises(KeyError):
        propagated()

    @capture_errors(propagate=True)
    def known():
        raise SimulationException('known')

    assert known() == (None, {'code': 'unknown', 'title': 'Unknown error', 'detail': 'known'})


@pytest.fixture(scope="module")
def runner():
    yield CliRunner()


@pytest.fixture
def config_file(tmp_path, tiny_config):
    path = str(tmp_path / 'scenario.json')
    dump_scenario(tiny_config, path)
    yield path


def test_cli_generate_and_run(runner, tmp_path, config_file):
    workload_dir = str(tmp_path / 'workload')
    result = runner.invoke(main, ['generate', '--config', config_file, '--seed', '3', '--out', workload_dir])
    assert result.exit_code == 0, result.output
    files = os.listdir(workload_dir)
    assert {'devices.json', 'scenario.json', 'app_000.dag.json', 'app_001.dag.json', 'app_000.plan.json'} <= \
        set(files)

    out = str(tmp_path / 'results')
    result = runner.invoke(main, ['run', '--config', config_file, '--seed', '3', '--workload', workload_dir,
                                  '--plans', workload_dir, '-s', 'ft_algo', '-s', 'NO_FT', '--trace', '--out', out])
    assert result.exit_code == 0, result.output
    assert 'FT_ALGO' in result.output and 'NO_FT' in result.output
    assert len(_rows(os.path.join(out, 'tiny.csv'))) == 3
    assert os.path.exists(os.path.join(out, 'tiny_summary.csv'))
    with open(os.path.join(out, 'tiny_metrics.json')) as handle:
        metrics = json.load(handle)
    assert set(metrics) == {'FT_ALGO', 'NO_FT'}
    assert metrics['NO_FT'][0]['strategy'] == 'NO_FT'
    assert sorted(os.listdir(os.path.join(out, 'traces'))) == ['FT_ALGO_app_000.trace', 'FT_ALGO_app_001.trace',
                                                               'NO_FT_app_000.trace', 'NO_FT_app_001.trace']

    # the generated workload is the one a generating run would see
    direct = runner.invoke(main, ['run', '--config', config_file, '--seed', '3', '-s', 'NO_FT',
                                  '--out', str(tmp_path / 'direct')])
    assert direct.exit_code == 0, direct.output
    assert _rows(os.path.join(out, 'tiny.csv'))[2] == _rows(str(tmp_path / 'direct' / 'tiny.csv'))[1]


def test_cli_sweep(runner, tmp_path, tiny_config):
    experiment = str(tmp_path / 'experiment.json')
    write_json({'name': 'exp', 'sweep': 'mtbf', 'values': [30], 'seeds': 1, 'strategies': ['NO_FT', 'FT_ALGO'],
                'scenario': {'app_count': 2, 'device_count': [3, 4], 'task_count': [2, 4],
                             'instruction_scale': 1e4, 'avail_time': [1e6, 2e6]}}, experiment)
    out = str(tmp_path / 'results')
    result = runner.invoke(main, ['sweep', experiment, '--seeds', '2', '--out', out])
    assert result.exit_code == 0, result.output
    rows = _rows(os.path.join(out, 'exp.csv'))
    assert [row[1] for row in rows[1:]] == ['NO_FT', 'FT_ALGO', 'NO_FT', 'FT_ALGO']

    summary = str(tmp_path / 'summary.csv')
    result = runner.invoke(main, ['report', os.path.join(out, 'exp.csv'), '--out', summary])
    assert result.exit_code == 0, result.output
    assert len(_rows(summary)) == 3


def test_cli_sweep_failures(runner, tmp_path, tiny_config):
    config = str(tmp_path / 'limited.json')
    dump_scenario(tiny_config.replace(max_events=1), config)
    out = str(tmp_path / 'results')
    result = runner.invoke(main, ['sweep', '--preset', 'mtbf', '--seeds', '1', '--config', config, '-s', 'NO_FT',
                                  '--out', out])
    assert result.exit_code == 1
    with open(os.path.join(out, 'mtbf_sweep_errors.json')) as handle:
        report = json.load(handle)
    assert report['meta']['count'] == len(DEFAULT_VALUES[MTBF_SWEEP])
    assert not os.path.exists(os.path.join(out, 'mtbf_sweep.csv'))

    assert runner.invoke(main, ['sweep', '--out', out]).exit_code == 2


def test_cli_errors(runner, tmp_path):
    broken = tmp_path / 'broken.json'
    broken.write_text('{"cpu_speed": [3, 2]}')
    result = runner.invoke(main, ['generate', '--config', str(broken), '--out', str(tmp_path / 'out')])
    assert result.exit_code == 1
    assert 'Invalid configuration' in result.output

    result = runner.invoke(main, ['report', str(broken), '--out', str(tmp_path / 'summary.csv')])
    assert result.exit_code == 1
    assert 'Invalid file' in result.output


def test_cli_policies(runner, tmp_path, config_file):
    out = str(tmp_path / 'policies')
    result = runner.invoke(main, ['policies', '--config', config_file, '--out', out])
    assert result.exit_code == 0, result.output
    assert sorted(os.listdir(out)) == ['app_000.policies.json', 'app_001.policies.json']
    with open(os.path.join(out, 'app_000.policies.json')) as handle:
        data = json.load(handle)
    assert {policy['kind'] for policy in data['policies']} <= {'none', 'replicate', 'checkpoint'}
