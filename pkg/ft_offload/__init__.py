# -*- coding: utf-8 -*-

from ft_offload.clustering import ClusterSplit, kmeans_1d, split_by_reliability
from ft_offload.config import ScenarioConfig
from ft_offload.costs import CostModel, exec_time, make_source_device, transfer_time
from ft_offload.dag import AppDag, TaskSpec, compute_schedule_times, critical_path, validate_dag
from ft_offload.device import (DeviceSpec, WeibullParams, WeightsConfig, reliability, sample_failure_time,
                               weibull_mean)
from ft_offload.engine import MetricsReport, RunResult, SimEvent, Strategy, run
from ft_offload.experiment import ExperimentSpec, run_experiment, run_scenario
from ft_offload.plans.base import BasePlanSource
from ft_offload.plans.greedy import GreedyPlanSource, baseline_schedule
from ft_offload.plans.tosp import TospFilePlanSource
from ft_offload.policy import (Checkpoint, NoPolicy, PolicyAssignment, Replicate, SchedulePlan, assign_policies,
                               checkpoint_interval, replication_score, select_replica_device)
from ft_offload.report import emit_csv
from ft_offload.workload import gen_dag, gen_devices, generate_workload

__all__ = [
    'TaskSpec',
    'AppDag',
    'validate_dag',
    'compute_schedule_times',
    'critical_path',
    'DeviceSpec',
    'WeibullParams',
    'WeightsConfig',
    'reliability',
    'sample_failure_time',
    'weibull_mean',
    'kmeans_1d',
    'split_by_reliability',
    'ClusterSplit',
    'CostModel',
    'make_source_device',
    'exec_time',
    'transfer_time',
    'SchedulePlan',
    'PolicyAssignment',
    'NoPolicy',
    'Replicate',
    'Checkpoint',
    'replication_score',
    'select_replica_device',
    'checkpoint_interval',
    'assign_policies',
    'Strategy',
    'SimEvent',
    'MetricsReport',
    'RunResult',
    'run',
    'ScenarioConfig',
    'gen_dag',
    'gen_devices',
    'generate_workload',
    'BasePlanSource',
    'GreedyPlanSource',
    'TospFilePlanSource',
    'baseline_schedule',
    'ExperimentSpec',
    'run_scenario',
    'run_experiment',
    'emit_csv',
]
