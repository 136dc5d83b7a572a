# -*- coding: utf-8 -*-

"""Fault tolerance policies: replica scoring, checkpoint intervals and per-task policy assignment"""

import logging
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet

from ft_offload.clustering import split_by_reliability
from ft_offload.costs import CostModel, make_source_device
from ft_offload.dag import compute_schedule_times, critical_path
from ft_offload.device import reliability, validate_population, weibull_mean
from ft_offload.exceptions import InvalidInput, InvalidPlan, NoCandidate

logger = logging.getLogger(__name__)

#: Shortest checkpoint interval in simulated seconds
MIN_CHECKPOINT_INTERVAL = 1.0


@dataclass(frozen=True)
class SchedulePlan:
    """Task offloading scheduling plan: the host of every task and the set of offloaded tasks"""

    assignments: Mapping
    offload_set: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, 'assignments', dict(self.assignments))
        object.__setattr__(self, 'offload_set', frozenset(self.offload_set))

    def validate(self, dag, devices):
        """Check the plan against a graph and a device population

        :return SchedulePlan: the plan itself
        """
        device_ids = {device.id for device in devices}
        for task_id in sorted(self.offload_set):
            if task_id not in self.assignments:
                raise InvalidPlan("Offloaded task {} has no assigned device".format(task_id), source={'task': task_id})
        for task_id, device_id in sorted(self.assignments.items()):
            if task_id not in dag:
                raise InvalidPlan("Plan assigns unknown task {}".format(task_id), source={'task': task_id})
            if device_id not in device_ids:
                raise InvalidPlan("Task {} is assigned to unknown device {}".format(task_id, device_id),
                                  source={'task': task_id, 'device': device_id})
        return self


class PolicyKind(Enum):
    NONE = 'none'
    REPLICATE = 'replicate'
    CHECKPOINT = 'checkpoint'


@dataclass(frozen=True)
class NoPolicy:
    kind = PolicyKind.NONE


@dataclass(frozen=True)
class Replicate:
    replica_device: str
    kind = PolicyKind.REPLICATE


@dataclass(frozen=True)
class Checkpoint:
    interval: float
    kind = PolicyKind.CHECKPOINT

    def __post_init__(self):
        if not self.interval > 0:
            raise InvalidInput("Checkpoint interval must be positive, got {}".format(self.interval))


NO_POLICY = NoPolicy()


class PolicyAssignment(Mapping):
    """Fault tolerance policy of every offloaded task

    Tasks absent from the assignment carry :data:`NO_POLICY`. The reliability
    values, the cluster split and the critical path the assignment was derived
    from are kept for reporting.
    """

    def __init__(self, policies=None, reliabilities=None, split=None, critical=None):
        self._policies = dict(policies or {})
        self.reliabilities = dict(reliabilities or {})
        self.split = split
        self.critical = frozenset(critical or ())

    def __getitem__(self, task_id):
        return self._policies[task_id]

    def __iter__(self):
        return iter(self._policies)

    def __len__(self):
        return len(self._policies)

    def policy(self, task_id):
        return self._policies.get(task_id, NO_POLICY)

    def count(self, kind):
        return sum(1 for policy in self._policies.values() if policy.kind is kind)

    def __repr__(self):
        return '<PolicyAssignment {}>'.format(', '.join('{}={}'.format(kind.value, self.count(kind))
                                                        for kind in PolicyKind))


@dataclass
class OperationCounter:
    """Counts the work done by :func:`assign_policies`"""

    reliability_evaluations: int = 0
    score_evaluations: int = 0
    scores_per_task: Dict[str, int] = field(default_factory=dict)

    def count_score(self, task_id):
        self.score_evaluations += 1
        self.scores_per_task[task_id] = self.scores_per_task.get(task_id, 0) + 1


def replication_score(dev, task_time, cluster_size, w):
    """Score of a replica host, the lowest score being the preferred host

    :param DeviceSpec dev: the candidate device
    :param float task_time: estimated completion time of the task on ``dev``
    :param int cluster_size: number of devices in the candidate's cluster
    :param WeightsConfig w: the weight factors
    :return float: the score
    """
    if cluster_size < 1:
        raise InvalidInput("Cluster size must be at least 1, got {}".format(cluster_size))
    failure_ratio = dev.tasks_failed / dev.tasks_total if dev.tasks_total else 0.0
    connectivity = dev.peers_connected / cluster_size
    return (w.score_y * task_time) * (w.score_z * failure_ratio) * (w.score_lambda * connectivity)


def select_replica_device(cluster, task, primary_device, w, cost_model=None, counter=None):
    """Pick the replica host of a task inside a cluster

    :param iterable cluster: DeviceSpec instances of the cluster
    :param TaskSpec task: the task to replicate
    :param str primary_device: id of the device running the primary copy
    :param WeightsConfig w: the weight factors
    :param CostModel cost_model: used to estimate the task time on each candidate
    :param OperationCounter counter: optional instrumentation
    :return str: id of the lowest-score candidate, lowest id first on ties
    """
    cost_model = cost_model or CostModel(make_source_device())
    cluster = list(cluster)
    candidates = sorted((dev for dev in cluster if dev.id != primary_device), key=lambda dev: dev.id)
    if not candidates:
        raise NoCandidate("No device besides {} can host a replica of task {}".format(primary_device, task.id),
                          source={'task': task.id, 'device': primary_device})

    best = None
    for dev in candidates:
        if counter is not None:
            counter.count_score(task.id)
        score = replication_score(dev, cost_model.completion_estimate(task, dev), len(cluster), w)
        if best is None or score < best[0]:
            best = (score, dev.id)
    return best[1]


def checkpoint_interval(ckpt_cost, time_between_failures):
    """Time between two checkpoints: sqrt(2 * T_s * T_f)"""
    if ckpt_cost < 0 or not time_between_failures > 0:
        raise InvalidInput("Checkpoint cost must be >= 0 and time between failures > 0, got {} and {}"
                           .format(ckpt_cost, time_between_failures))
    return math.sqrt(2.0 * ckpt_cost * time_between_failures)


def checkpoint_policy(task, dev, cost_model, min_interval=MIN_CHECKPOINT_INTERVAL):
    """Checkpoint policy of a task on its host, the failure time being the host's MTBF"""
    interval = checkpoint_interval(cost_model.checkpoint_cost(task, dev), weibull_mean(dev.failure_params))
    return Checkpoint(interval=max(min_interval, interval))


def _hosts(dag, devices, plan, cost_model):
    by_id = {dev.id: dev for dev in devices}
    return {task.id: by_id[plan.assignments[task.id]] if task.id in plan.offload_set else cost_model.source
            for task in dag}


def assign_policies(devices, dag, plan, w, seed=0, cost_model=None, counter=None,
                    min_interval=MIN_CHECKPOINT_INTERVAL):
    """Bind a fault tolerance policy to every offloaded task

    Devices are clustered on their reliability; critical offloaded tasks hosted
    in the low reliability cluster get a replica inside that cluster, those
    hosted in the high reliability cluster get checkpointed. Other offloaded
    tasks run without policy.

    :param iterable devices: the device population
    :param AppDag dag: the application graph
    :param SchedulePlan plan: the scheduling plan
    :param WeightsConfig w: the weight factors
    :param int seed: forwarded to the clustering
    :param CostModel cost_model: cost formulas, a default source device when None
    :param OperationCounter counter: optional instrumentation
    :return PolicyAssignment: the policies
    """
    devices = validate_population(devices)
    plan.validate(dag, devices)
    cost_model = cost_model or CostModel(make_source_device())
    by_id = {dev.id: dev for dev in devices}

    reliabilities = {}
    for dev in devices:
        if counter is not None:
            counter.reliability_evaluations += 1
        reliabilities[dev.id] = reliability(dev, w).reliability
    split = split_by_reliability(reliabilities, seed)

    hosts = _hosts(dag, devices, plan, cost_model)
    times = compute_schedule_times(dag, {task.id: cost_model.exec_time(task, hosts[task.id]) for task in dag})
    critical = critical_path(dag, times)
    low_cluster = [by_id[device_id] for device_id in sorted(split.low)]

    policies = {}
    for task_id in dag.order:
        if task_id not in plan.offload_set:
            continue
        if task_id not in critical:
            policies[task_id] = NO_POLICY
            continue
        task, primary = dag.task(task_id), hosts[task_id]
        if primary.id in split.low:
            try:
                policies[task_id] = Replicate(select_replica_device(low_cluster, task, primary.id, w,
                                                                    cost_model, counter))
                continue
            except NoCandidate:
                logger.warning("No replica host for task %s in the low reliability cluster, checkpointing instead",
                               task_id)
        policies[task_id] = checkpoint_policy(task, primary, cost_model, min_interval)

    return PolicyAssignment(policies, reliabilities=reliabilities, split=split, critical=critical)


def checkpoint_all(devices, dag, plan, cost_model=None, min_interval=MIN_CHECKPOINT_INTERVAL):
    """Checkpoint every offloaded task on its host"""
    devices = validate_population(devices)
    plan.validate(dag, devices)
    cost_model = cost_model or CostModel(make_source_device())
    hosts = _hosts(dag, devices, plan, cost_model)
    return PolicyAssignment({task_id: checkpoint_policy(dag.task(task_id), hosts[task_id], cost_model, min_interval)
                             for task_id in dag.order if task_id in plan.offload_set})


def replicate_all(devices, dag, plan, w, cost_model=None):
    """Replicate every offloaded task on the lowest-score device of the whole population"""
    devices = validate_population(devices)
    plan.validate(dag, devices)
    cost_model = cost_model or CostModel(make_source_device())
    hosts = _hosts(dag, devices, plan, cost_model)

    policies = {}
    for task_id in dag.order:
        if task_id not in plan.offload_set:
            continue
        try:
            policies[task_id] = Replicate(select_replica_device(devices, dag.task(task_id), hosts[task_id].id, w,
                                                                cost_model))
        except NoCandidate:
            logger.warning("Task %s cannot be replicated on a single-device population", task_id)
            policies[task_id] = NO_POLICY
    return PolicyAssignment(policies)
