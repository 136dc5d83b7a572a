# -*- coding: utf-8 -*-

"""Scenario runs and experiment sweeps

A sweep is a grid of cells, one per (sweep value, seed). Each cell generates
one workload and runs every strategy on it with the same seed, so every
strategy of a cell sees the same devices, graphs and failure schedules.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from ft_offload.config import STRATEGY_NAMES, ScenarioConfig
from ft_offload.decorators import capture_errors
from ft_offload.engine import Strategy, run
from ft_offload.exceptions import InvalidConfig
from ft_offload.plans.greedy import GreedyPlanSource
from ft_offload.workload import generate_workload

logger = logging.getLogger(__name__)

MTBF_SWEEP = 'mtbf'
COMPUTATION_SWEEP = 'computation_scale'
SWEEP_VARIABLES = (MTBF_SWEEP, COMPUTATION_SWEEP)

DEFAULT_VALUES = {MTBF_SWEEP: (10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 110.0, 120.0),
                  COMPUTATION_SWEEP: (1.0, 2.0, 3.0, 4.0)}

#: Device MTBF range of the computation scale sweep
COMPUTATION_SWEEP_MTBF = (90.0, 120.0)


@dataclass(frozen=True)
class ExperimentSpec:
    """A sweep over device MTBF or task computation scale

    Cell seeds are ``scenario.seed``, ``scenario.seed + 1`` ... ``scenario.seed + seeds - 1``.
    """

    name: str
    sweep: str
    values: Tuple[float, ...]
    seeds: int = 20
    strategies: Optional[Tuple[str, ...]] = None
    scenario: ScenarioConfig = field(default_factory=ScenarioConfig)

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(float(value) for value in self.values))
        if self.sweep not in SWEEP_VARIABLES:
            raise InvalidConfig("Unknown sweep variable {}".format(self.sweep), source={'parameter': 'sweep'})
        if not self.values:
            raise InvalidConfig("An experiment needs at least one sweep value", source={'parameter': 'values'})
        if self.seeds < 1:
            raise InvalidConfig("An experiment needs at least one seed", source={'parameter': 'seeds'})
        if self.sweep == MTBF_SWEEP and any(value <= 0 for value in self.values):
            raise InvalidConfig("MTBF sweep values must be positive", source={'parameter': 'values'})
        if self.sweep == COMPUTATION_SWEEP and any(value <= 0 for value in self.values):
            raise InvalidConfig("Computation scale values must be positive", source={'parameter': 'values'})
        if self.strategies is not None:
            object.__setattr__(self, 'strategies', tuple(self.strategies))
            if not self.strategies or not set(self.strategies) <= set(STRATEGY_NAMES):
                raise InvalidConfig("Invalid strategies {}".format(list(self.strategies)),
                                    source={'parameter': 'strategies'})

    @property
    def strategy_names(self):
        return self.strategies or self.scenario.strategies

    @property
    def seed_list(self):
        return tuple(range(self.scenario.seed, self.scenario.seed + self.seeds))

    def point(self, value):
        """Scenario of one sweep value"""
        if self.sweep == MTBF_SWEEP:
            return self.scenario.replace(mtbf=(value, value))
        return self.scenario.replace(instruction_scale=self.scenario.instruction_scale * value)

    @classmethod
    def preset(cls, sweep, seeds=20, scenario=None, values=None, strategies=None):
        """The device availability sweep (``mtbf``) or the task computation sweep (``computation_scale``)"""
        scenario = scenario or ScenarioConfig()
        if sweep == COMPUTATION_SWEEP and scenario.mtbf is None:
            scenario = scenario.replace(mtbf=COMPUTATION_SWEEP_MTBF)
        if sweep not in DEFAULT_VALUES:
            raise InvalidConfig("Unknown sweep variable {}".format(sweep), source={'parameter': 'sweep'})
        return cls(name='{}_sweep'.format(sweep), sweep=sweep, values=values or DEFAULT_VALUES[sweep], seeds=seeds,
                   strategies=strategies, scenario=scenario)


@dataclass(frozen=True)
class ResultRow:
    scenario_id: str
    strategy: str
    sweep_value: Optional[float]
    seed: int
    completion_time: float
    overhead: float
    ft_messages: int


@dataclass(frozen=True)
class ResultTable:
    rows: Tuple[ResultRow, ...] = ()
    errors: Tuple[dict, ...] = ()

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


@dataclass
class ScenarioResult:
    """Runs of every strategy on every application of one scenario

    Completion time is the mean over the applications; overhead and messages
    are totals over the applications.
    """

    scenario_id: str
    seed: int
    runs: Dict[str, list] = field(default_factory=dict)

    def completion_time(self, strategy):
        return float(np.mean([result.metrics.completion_time for result in self.runs[strategy]]))

    def overhead(self, strategy):
        return float(sum(result.metrics.overhead_time for result in self.runs[strategy]))

    def ft_messages(self, strategy):
        return int(sum(result.metrics.ft_messages for result in self.runs[strategy]))

    def rows(self, sweep_value=None):
        return [ResultRow(scenario_id=self.scenario_id,
                          strategy=strategy,
                          sweep_value=sweep_value,
                          seed=self.seed,
                          completion_time=self.completion_time(strategy),
                          overhead=self.overhead(strategy),
                          ft_messages=self.ft_messages(strategy))
                for strategy in self.runs]


def run_scenario(config, seed=None, strategies=None, plan_source=None, keep_trace=False, workload=None):
    """Run every strategy on every application of a scenario

    :param ScenarioConfig config: the scenario
    :param int seed: overrides ``config.seed``
    :param iterable strategies: strategy names, ``config.strategies`` when None
    :param BasePlanSource plan_source: provides the plans, greedy earliest finish time when None
    :param bool keep_trace: record the event traces
    :param Workload workload: run on this workload instead of generating one
    :return ScenarioResult: the runs, keyed by strategy name in the requested order
    """
    seed = config.seed if seed is None else seed
    strategies = tuple(strategies or config.strategies)
    cost_model = config.cost_model()
    plan_source = plan_source or GreedyPlanSource({'cost_model': cost_model})
    workload = workload or generate_workload(config, seed)

    plans = [plan_source.plan(dag, workload.devices, app_index) for app_index, dag in enumerate(workload.dags)]
    result = ScenarioResult(scenario_id=config.scenario_id, seed=seed)
    for name in strategies:
        strategy = Strategy(name)
        result.runs[name] = [run(dag, workload.devices, plan, None, strategy, config, seed, app_index, cost_model,
                                 keep_trace)
                             for app_index, (dag, plan) in enumerate(zip(workload.dags, plans))]
        logger.debug("Scenario %s seed %s %s: completion %.3f s", config.scenario_id, seed, name,
                     result.completion_time(name))
    return result


@capture_errors
def run_cell(spec, value, seed, plan_source=None):
    """Rows of one (sweep value, seed) cell, one per strategy"""
    config = spec.point(value)
    result = run_scenario(config, seed, spec.strategy_names, plan_source)
    logger.info("%s: %s=%g seed %d done", spec.name, spec.sweep, value, seed)
    return result.rows(sweep_value=value)


def _cell(args):
    spec, value, seed, plan_source = args
    return run_cell(spec, value, seed, plan_source)


def run_experiment(spec, jobs=1, plan_source=None):
    """Run every cell of a sweep

    Errors are reported per cell and never stop the sweep.

    :param ExperimentSpec spec: the sweep
    :param int jobs: number of worker processes
    :param BasePlanSource plan_source: forwarded to :func:`run_scenario`
    :return ResultTable: rows ordered by sweep value, then seed, then strategy; the errors of failed cells
    """
    cells = [(spec, value, seed, plan_source) for value in spec.values for seed in spec.seed_list]
    logger.info("%s: %d cells, %d strategies, %d jobs", spec.name, len(cells), len(spec.strategy_names), jobs)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            outcomes = list(executor.map(_cell, cells))
    else:
        outcomes = [_cell(cell) for cell in cells]

    rows, errors = [], []
    for (_, value, seed, _), (cell_rows, error) in zip(cells, outcomes):
        if error is not None:
            error.setdefault('meta', {}).update({'sweep_value': value, 'seed': seed})
            logger.error("%s: %s=%g seed %d failed: %s", spec.name, spec.sweep, value, seed, error.get('detail'))
            errors.append(error)
        else:
            rows.extend(cell_rows)
    return ResultTable(rows=tuple(rows), errors=tuple(errors))
