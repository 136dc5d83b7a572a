# -*- coding: utf-8 -*-

"""Command line interface: generate workloads, run scenarios and sweeps, aggregate results"""

import logging
import os
import sys

import click

from ft_offload.config import STRATEGY_NAMES, ScenarioConfig
from ft_offload.decorators import cli_errors
from ft_offload.engine import Strategy, resolve_policies
from ft_offload.errors import error_report
from ft_offload.experiment import SWEEP_VARIABLES, ExperimentSpec, ResultTable, run_experiment, run_scenario
from ft_offload.plans.greedy import GreedyPlanSource
from ft_offload.plans.tosp import TospFilePlanSource
from ft_offload.report import aggregate, emit_csv, emit_summary
from ft_offload.storage import (dump_policies, dump_scenario, dump_workload, load_experiment, load_scenario,
                                load_workload, write_json, write_lines)
from ft_offload.workload import generate_workload

logger = logging.getLogger(__name__)

LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)

strategy_option = click.option('--strategy', '-s', 'strategies', multiple=True,
                               type=click.Choice(STRATEGY_NAMES, case_sensitive=False),
                               help='Strategy to run, repeat for several (default: all of the scenario)')
config_option = click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False),
                             help='Scenario file (default values when omitted)')
seed_option = click.option('--seed', type=int, default=None, help='Overrides the scenario seed')
out_option = click.option('--out', '-o', type=click.Path(file_okay=False), default='results', show_default=True,
                          help='Output directory')


def _config(config_path, seed=None):
    config = load_scenario(config_path) if config_path else ScenarioConfig()
    if seed is not None:
        config = config.replace(seed=seed)
    return config


def _strategies(strategies):
    return tuple(name.upper() for name in strategies) or None


@click.group()
@click.option('--verbose', '-v', count=True, help='-v for progress, -vv for every simulated event')
def main(verbose):
    """Fault tolerant task offloading simulator"""
    logging.basicConfig(level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


@main.command()
@config_option
@seed_option
@out_option
@cli_errors
def generate(config_path, seed, out):
    """Write the devices, the graphs and the greedy plans of a scenario"""
    config = _config(config_path, seed)
    workload = generate_workload(config)
    plan_source = GreedyPlanSource({'cost_model': config.cost_model()})
    plans = [plan_source.plan(dag, workload.devices, app_index) for app_index, dag in enumerate(workload.dags)]
    dump_workload(workload, out, plans)
    dump_scenario(config, os.path.join(out, 'scenario.json'))
    click.echo("Wrote {} devices and {} applications to {}".format(len(workload.devices), len(workload.dags), out))


@main.command(name='run')
@config_option
@seed_option
@out_option
@strategy_option
@click.option('--workload', 'workload_dir', type=click.Path(exists=True, file_okay=False),
              help='Run on a directory written by "generate" instead of generating the workload')
@click.option('--plans', 'plans_dir', type=click.Path(exists=True, file_okay=False),
              help='Directory of app_XXX.plan.json files (default: greedy earliest finish time plans)')
@click.option('--trace/--no-trace', default=False, help='Write the event trace of every run')
@cli_errors
def run_command(config_path, seed, out, strategies, workload_dir, plans_dir, trace):
    """Run every strategy on one scenario"""
    config = _config(config_path, seed)
    workload = load_workload(workload_dir, config) if workload_dir else None
    plan_source = TospFilePlanSource({'directory': plans_dir}) if plans_dir else None
    result = run_scenario(config, strategies=_strategies(strategies), plan_source=plan_source, keep_trace=trace,
                          workload=workload)

    path = os.path.join(out, '{}.csv'.format(config.scenario_id))
    emit_csv(ResultTable(rows=tuple(result.rows())), path)
    write_json({strategy: [run.metrics for run in runs] for strategy, runs in result.runs.items()},
               os.path.join(out, '{}_metrics.json'.format(config.scenario_id)))
    if trace:
        for strategy, runs in result.runs.items():
            for app_index, run in enumerate(runs):
                write_lines(run.trace_lines(),
                            os.path.join(out, 'traces', '{}_app_{:03d}.trace'.format(strategy, app_index)))
    for strategy in result.runs:
        click.echo("{:<16} completion {:>14.3f} s  overhead {:>14.3f} s  messages {:>8d}"
                   .format(strategy, result.completion_time(strategy), result.overhead(strategy),
                           result.ft_messages(strategy)))


@main.command()
@click.argument('experiment', required=False, type=click.Path(exists=True, dir_okay=False))
@click.option('--preset', type=click.Choice(SWEEP_VARIABLES), help='Default sweep when no experiment file is given')
@click.option('--seeds', type=click.IntRange(min=1), default=None, help='Seeds per sweep value')
@config_option
@seed_option
@out_option
@strategy_option
@click.option('--jobs', '-j', type=click.IntRange(min=1), default=1, show_default=True, help='Worker processes')
@cli_errors
def sweep(experiment, preset, seeds, config_path, seed, out, strategies, jobs):
    """Run an experiment sweep; exits with status 1 when a cell failed"""
    if experiment:
        spec = load_experiment(experiment)
        if seeds is not None:
            spec = ExperimentSpec(spec.name, spec.sweep, spec.values, seeds, spec.strategies, spec.scenario)
    elif preset:
        spec = ExperimentSpec.preset(preset, seeds=seeds or 20, scenario=_config(config_path, seed))
    else:
        raise click.UsageError('Give an experiment file or --preset')
    if strategies:
        spec = ExperimentSpec(spec.name, spec.sweep, spec.values, spec.seeds, _strategies(strategies), spec.scenario)

    table = run_experiment(spec, jobs=jobs)
    path = os.path.join(out, '{}.csv'.format(spec.name))
    if len(table):
        emit_csv(table, path)
        click.echo("Wrote {} rows to {}".format(len(table), path))
    if table.errors:
        errors_path = os.path.join(out, '{}_errors.json'.format(spec.name))
        write_json(error_report(table.errors), errors_path)
        click.echo("{} cells failed, see {}".format(len(table.errors), errors_path), err=True)
        sys.exit(1)


@main.command()
@click.argument('paths', nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option('--out', '-o', type=click.Path(dir_okay=False), default='summary.csv', show_default=True,
              help='Summary file')
@cli_errors
def report(paths, out):
    """Summarize existing result files"""
    table = aggregate(paths)
    emit_summary(table, out)
    click.echo("Summarized {} rows from {} files into {}".format(len(table), len(paths), out))


@main.command()
@config_option
@seed_option
@out_option
@cli_errors
def policies(config_path, seed, out):
    """Write the fault tolerance policies of every application of a scenario"""
    config = _config(config_path, seed)
    workload = generate_workload(config)
    cost_model = config.cost_model()
    plan_source = GreedyPlanSource({'cost_model': cost_model})
    for app_index, dag in enumerate(workload.dags):
        plan = plan_source.plan(dag, workload.devices, app_index)
        assignment = resolve_policies(Strategy.FT_ALGO, dag, workload.devices, plan, config, config.seed, cost_model)
        dump_policies(assignment, os.path.join(out, 'app_{:03d}.policies.json'.format(app_index)))
    click.echo("Wrote the policies of {} applications to {}".format(len(workload.dags), out))
