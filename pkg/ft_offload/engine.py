# -*- coding: utf-8 -*-

"""Discrete-event execution of a scheduled application under failure injection

A run owns all of its state: the event queue, the per-device failure schedules
and their random substreams. Events dequeue by time, then by kind, then by
subject id, then by insertion order, so two runs with the same inputs produce
the same trace.

Every execution of a task on a device is a *copy*. A copy occupies its device
from its TaskStart until it completes or is cancelled, going through an input
transfer from the source device, execution segments and, under a checkpoint
policy, checkpoint writes between segments. A failure of the host interrupts
the copy, which keeps the device and restarts after the repair delay from its
last committed checkpoint, or from zero without one. Restarting from a
checkpoint fetches the snapshot back from the source device in place of the
task input. A replica only runs on a
device with no ready primary and is cancelled as soon as one becomes ready.
"""

import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ft_offload.device import sample_failure_time, validate_population
from ft_offload.exceptions import DeadlockDetected, InvalidPlan, SimulationLimitExceeded
from ft_offload.policy import (NO_POLICY, PolicyAssignment, PolicyKind, assign_policies, checkpoint_all,
                               replicate_all)
from ft_offload.rng import failure_stream

logger = logging.getLogger(__name__)

PRIMARY = 'primary'
REPLICA = 'replica'
#: Remaining execution below which a segment ends the task instead of writing a checkpoint
SEGMENT_TOLERANCE = 1e-9


class Strategy(Enum):
    FT_ALGO = 'FT_ALGO'
    CHECKPOINT_ONLY = 'CHECKPOINT_ONLY'
    REPLICATE_ONLY = 'REPLICATE_ONLY'
    NO_FT = 'NO_FT'


class EventKind(Enum):
    # declaration order is the tie-break order of simultaneous events
    DEVICE_FAIL = 'DeviceFail'
    TASK_COMPLETE = 'TaskComplete'
    CHECKPOINT_WRITE = 'CheckpointWrite'
    DEVICE_REPAIR = 'DeviceRepair'
    TRANSFER_DONE = 'TransferDone'
    CHECKPOINT_DONE = 'CheckpointDone'
    REPLICA_CANCEL = 'ReplicaCancel'
    REPLICA_DISPATCH = 'ReplicaDispatch'
    RESTART_REQUEST = 'RestartRequest'
    TASK_START = 'TaskStart'


_PRIORITY = {kind: rank for rank, kind in enumerate(EventKind)}

CONTROL_MESSAGES = frozenset((EventKind.CHECKPOINT_WRITE, EventKind.REPLICA_DISPATCH, EventKind.REPLICA_CANCEL))


@dataclass(frozen=True)
class SimEvent:
    time: float
    kind: EventKind
    task: Optional[str] = None
    device: Optional[str] = None
    role: Optional[str] = None

    def to_line(self):
        return '{:.6f} {} task={} device={} role={}'.format(self.time, self.kind.value, self.task or '-',
                                                            self.device or '-', self.role or '-')


@dataclass
class MetricsReport:
    """Metrics of one run

    ``overhead_time`` counts checkpoint pauses and snapshot transfers, replica
    input transfers and the compute of cancelled copies; re-execution after a
    failure only shows in ``completion_time``.
    """

    strategy: Strategy
    completion_time: float = 0.0
    overhead_time: float = 0.0
    ft_messages: int = 0
    checkpoints: int = 0
    replicas: int = 0
    failures: int = 0
    restarts: int = 0
    rehomed: int = 0


@dataclass(frozen=True)
class RunResult:
    metrics: MetricsReport
    trace: Tuple[SimEvent, ...]
    failure_times: Dict[str, Tuple[float, ...]] = field(default_factory=dict)

    def trace_lines(self):
        return [event.to_line() for event in self.trace]


class FailureSchedule(object):
    """Failure instants of one device

    The device stays up for a Weibull time between failures, then down for the
    repair delay, then up again. Instants are drawn lazily from the device's own
    substream, so the schedule does not depend on what the device runs.
    """

    def __init__(self, params, repair_delay, rng):
        self.params = params
        self.repair_delay = repair_delay
        self._rng = rng
        self._times = []
        self._clock = 0.0

    def failure(self, index):
        while len(self._times) <= index:
            self._clock += sample_failure_time(self.params, self._rng)
            self._times.append(self._clock)
            self._clock += self.repair_delay
        return self._times[index]

    def times(self, until):
        """All failure instants strictly before ``until``"""
        index = 0
        while self.failure(index) < until:
            index += 1
        return tuple(self._times[:index])


class _Copy(object):
    """One execution of a task on one device"""

    def __init__(self, task, device, role, policy, exec_total, position=0.0):
        self.task = task
        self.device = device
        self.role = role
        self.policy = policy
        self.exec_total = exec_total
        self.position = position
        self.committed = position
        self.phase = 'waiting'
        self.phase_started = 0.0
        self.phase_duration = 0.0
        self.segment = 0.0
        self.consumed = 0.0
        self.epoch = 0

    @property
    def active(self):
        return self.phase in ('transfer', 'exec', 'checkpoint', 'down')

    @property
    def live(self):
        return self.phase not in ('done', 'cancelled')


class _DeviceState(object):

    def __init__(self, spec, schedule=None):
        self.spec = spec
        self.schedule = schedule
        self.up = True
        self.gone = False
        self.current = None
        self.primaries = []
        self.replicas = deque()
        self.failure_index = 0


def resolve_policies(strategy, dag, devices, plan, config, seed=0, cost_model=None, policy=None):
    """Policies a strategy applies to the offloaded tasks

    :param Strategy strategy: the strategy
    :param PolicyAssignment policy: used as is by FT_ALGO when given
    :return PolicyAssignment: the policies
    """
    strategy = Strategy(strategy)
    cost_model = cost_model or config.cost_model()
    if strategy is Strategy.NO_FT:
        return PolicyAssignment()
    if strategy is Strategy.CHECKPOINT_ONLY:
        return checkpoint_all(devices, dag, plan, cost_model, config.min_checkpoint_interval)
    if strategy is Strategy.REPLICATE_ONLY:
        return replicate_all(devices, dag, plan, config.weights, cost_model)
    if policy is not None:
        return policy
    return assign_policies(devices, dag, plan, config.weights, seed, cost_model,
                           min_interval=config.min_checkpoint_interval)


class Simulation(object):
    """A single deterministic run. Use :func:`run`."""

    def __init__(self, dag, devices, plan, policy, strategy, config, seed, app_index=0, cost_model=None,
                 keep_trace=True):
        self.dag = dag
        self.devices = validate_population(devices)
        self.plan = plan.validate(dag, self.devices)
        self.strategy = Strategy(strategy)
        self.config = config
        self.seed = seed
        self.app_index = app_index
        self.cost = cost_model or config.cost_model()
        self.policy = resolve_policies(self.strategy, dag, self.devices, plan, config, seed, self.cost, policy)
        self.keep_trace = keep_trace

        self.now = 0.0
        self.metrics = MetricsReport(strategy=self.strategy)
        self.trace = []
        self._queue = []
        self._seq = 0
        self._events = 0
        self._done = set()
        self._remaining = set(dag.ids)
        self._last_completion = 0.0
        self._copies = {task_id: [] for task_id in dag.ids}
        self._replica_sent = set()
        self._carry = {}

        source = self.cost.source
        if any(dev.id == source.id for dev in self.devices):
            raise InvalidPlan("Device id {} is reserved for the source device".format(source.id),
                              source={'device': source.id})
        self._source = _DeviceState(source)
        self._states = {dev.id: _DeviceState(dev) for dev in self.devices}
        self._states[source.id] = self._source
        self._order = [self._states[device_id] for device_id in sorted(self._states)]

        for task_id in dag.order:
            self._states[self._host(task_id)].primaries.append(task_id)
        self._check_replicas()

        if config.inject_failures:
            for index, dev in enumerate(self.devices):
                state = self._states[dev.id]
                state.schedule = FailureSchedule(dev.failure_params, config.repair_delay,
                                                 failure_stream(seed, app_index, index))
                first = state.schedule.failure(0)
                if first < dev.avail_time:
                    self._push(first, EventKind.DEVICE_FAIL, dev.id, device=dev.id)
                if math.isfinite(dev.avail_time):
                    self._push(dev.avail_time, EventKind.DEVICE_FAIL, dev.id, device=dev.id, permanent=True)

        self._handlers = {EventKind.DEVICE_FAIL: self._on_device_fail,
                          EventKind.DEVICE_REPAIR: self._on_device_repair,
                          EventKind.TRANSFER_DONE: self._on_transfer_done,
                          EventKind.CHECKPOINT_WRITE: self._on_checkpoint_write,
                          EventKind.CHECKPOINT_DONE: self._on_checkpoint_done,
                          EventKind.TASK_COMPLETE: self._on_task_complete}

    # plumbing

    def _host(self, task_id):
        if task_id in self.plan.offload_set:
            return self.plan.assignments[task_id]
        return self._source.spec.id

    def _policy_of(self, task_id, device_id):
        if device_id == self._source.spec.id or task_id not in self.plan.offload_set:
            return NO_POLICY
        return self.policy.policy(task_id)

    def _check_replicas(self):
        for task_id in sorted(self.plan.offload_set):
            policy = self.policy.policy(task_id)
            if policy.kind is not PolicyKind.REPLICATE:
                continue
            if policy.replica_device not in self._states or policy.replica_device == self._source.spec.id:
                raise InvalidPlan("Replica of task {} targets unknown device {}"
                                  .format(task_id, policy.replica_device), source={'task': task_id})
            if policy.replica_device == self._host(task_id):
                raise InvalidPlan("Replica of task {} targets its primary device".format(task_id),
                                  source={'task': task_id, 'device': policy.replica_device})

    def _push(self, time, kind, subject, **payload):
        self._seq += 1
        heapq.heappush(self._queue, (time, _PRIORITY[kind], subject, self._seq, kind, payload))

    def _schedule(self, copy, delay, kind):
        self._push(self.now + delay, kind, copy.task.id, copy=copy, epoch=copy.epoch)

    def _emit(self, kind, task=None, device=None, role=None):
        if kind in CONTROL_MESSAGES:
            self.metrics.ft_messages += 1
        if self.keep_trace:
            self.trace.append(SimEvent(self.now, kind, task, device, role))

    def _spec(self, copy):
        return self._states[copy.device].spec

    # main loop

    def run(self):
        self._dispatch_all()
        self._check_progress()
        while self._remaining:
            if not self._queue:
                raise DeadlockDetected("No event left while tasks {} are unfinished".format(sorted(self._remaining)))
            time, _, _, _, kind, payload = heapq.heappop(self._queue)
            copy = payload.get('copy')
            if copy is not None and payload['epoch'] != copy.epoch:
                continue
            self._events += 1
            if self._events > self.config.max_events:
                raise SimulationLimitExceeded("More than {} events processed".format(self.config.max_events),
                                              meta={'time': time, 'remaining': sorted(self._remaining)})
            self.now = time
            if copy is not None:
                self._handlers[kind](copy)
            else:
                self._handlers[kind](**payload)
            self._dispatch_all()
            self._check_progress()

        self.metrics.completion_time = self._last_completion
        failure_times = {}
        for dev in self.devices:
            schedule = self._states[dev.id].schedule
            failure_times[dev.id] = schedule.times(min(self.now, dev.avail_time)) if schedule is not None else ()
        return RunResult(metrics=self.metrics, trace=tuple(self.trace), failure_times=failure_times)

    def _check_progress(self):
        if not self._remaining:
            return
        for copies in self._copies.values():
            for copy in copies:
                if copy.active or (copy.phase == 'waiting' and not self._states[copy.device].gone):
                    return
        for state in self._order:
            if not state.gone and state.primaries and self._ready(state.primaries[0]):
                return
        raise DeadlockDetected("No task can run while tasks {} are unfinished".format(sorted(self._remaining)),
                               meta={'time': self.now})

    def _ready(self, task_id):
        return self.dag.predecessors(task_id) <= self._done

    # dispatching

    def _dispatch_all(self):
        changed = True
        while changed:
            changed = False
            for state in self._order:
                if not state.up or state.gone:
                    continue
                if state.current is not None and state.current.role == REPLICA and self._primary_ready(state):
                    self._preempt(state.current)
                if state.current is None and self._start_next(state):
                    changed = True

    def _primary_ready(self, state):
        while state.primaries and state.primaries[0] in self._done:
            state.primaries.pop(0)
        return bool(state.primaries) and self._ready(state.primaries[0])

    def _start_next(self, state):
        if self._primary_ready(state):
            task_id = state.primaries.pop(0)
            task = self.dag.task(task_id)
            exec_total = self.cost.exec_time(task, state.spec)
            copy = _Copy(task, state.spec.id, PRIMARY, self._policy_of(task_id, state.spec.id), exec_total,
                         position=self._carry.pop(task_id, 0.0) * exec_total)
            self._copies[task_id].append(copy)
            self._begin(copy)
            return True
        while state.replicas:
            copy = state.replicas.popleft()
            if copy.phase == 'waiting':
                self._begin(copy)
                return True
        return False

    def _begin(self, copy):
        self._states[copy.device].current = copy
        self._emit(EventKind.TASK_START, copy.task.id, copy.device, copy.role)
        logger.debug("%.6f start %s copy of %s on %s", self.now, copy.role, copy.task.id, copy.device)
        if (copy.role == PRIMARY and copy.policy.kind is PolicyKind.REPLICATE
                and copy.task.id not in self._replica_sent):
            self._dispatch_replica(copy)
        self._begin_transfer(copy)

    def _dispatch_replica(self, primary):
        task = primary.task
        target = self._states[primary.policy.replica_device]
        self._replica_sent.add(task.id)
        if target.gone:
            logger.debug("Replica host %s of %s is gone, no replica sent", target.spec.id, task.id)
            return
        self._emit(EventKind.REPLICA_DISPATCH, task.id, target.spec.id, REPLICA)
        self.metrics.replicas += 1
        replica = _Copy(task, target.spec.id, REPLICA, NO_POLICY, self.cost.exec_time(task, target.spec))
        self._copies[task.id].append(replica)
        target.replicas.append(replica)

    # copy phases

    def _begin_transfer(self, copy):
        copy.phase = 'transfer'
        copy.phase_started = self.now
        if copy.policy.kind is PolicyKind.CHECKPOINT and copy.committed > 0:
            copy.phase_duration = self.cost.snapshot_restore(copy.task, self._spec(copy))
        else:
            copy.phase_duration = self.cost.input_transfer(copy.task, self._spec(copy))
        self._schedule(copy, copy.phase_duration, EventKind.TRANSFER_DONE)

    def _begin_segment(self, copy):
        remaining = max(0.0, copy.exec_total - copy.position)
        interval = copy.policy.interval if copy.policy.kind is PolicyKind.CHECKPOINT else math.inf
        copy.phase = 'exec'
        copy.phase_started = self.now
        if remaining <= interval + SEGMENT_TOLERANCE:
            copy.segment = remaining
            self._schedule(copy, remaining, EventKind.TASK_COMPLETE)
        else:
            copy.segment = interval
            self._schedule(copy, interval, EventKind.CHECKPOINT_WRITE)

    def _on_transfer_done(self, copy):
        self._emit(EventKind.TRANSFER_DONE, copy.task.id, copy.device, copy.role)
        if copy.role == REPLICA:
            self.metrics.overhead_time += copy.phase_duration
        self._begin_segment(copy)

    def _on_checkpoint_write(self, copy):
        copy.position += copy.segment
        copy.consumed += copy.segment
        self._emit(EventKind.CHECKPOINT_WRITE, copy.task.id, copy.device, copy.role)
        spec = self._spec(copy)
        copy.phase = 'checkpoint'
        copy.phase_started = self.now
        copy.phase_duration = self.cost.checkpoint_cost(copy.task, spec) + self.cost.snapshot_transfer(copy.task, spec)
        self._schedule(copy, copy.phase_duration, EventKind.CHECKPOINT_DONE)

    def _on_checkpoint_done(self, copy):
        self._emit(EventKind.CHECKPOINT_DONE, copy.task.id, copy.device, copy.role)
        self.metrics.overhead_time += copy.phase_duration
        self.metrics.checkpoints += 1
        copy.committed = copy.position
        self._begin_segment(copy)

    def _on_task_complete(self, copy):
        copy.consumed += copy.segment
        copy.position = copy.exec_total
        copy.phase = 'done'
        copy.epoch += 1
        self._states[copy.device].current = None
        self._emit(EventKind.TASK_COMPLETE, copy.task.id, copy.device, copy.role)

        task_id = copy.task.id
        self._remaining.discard(task_id)
        self._done.add(task_id)
        self._last_completion = self.now
        for other in self._copies[task_id]:
            if other is not copy and other.live:
                self._cancel(other)
        self._copies[task_id] = []

    def _cancel(self, copy):
        """Stop a copy that lost the race or gave its device back"""
        elapsed = self.now - copy.phase_started
        if copy.phase == 'exec':
            copy.consumed += elapsed
        elif copy.phase == 'checkpoint' or (copy.phase == 'transfer' and copy.role == REPLICA):
            self.metrics.overhead_time += elapsed
        self.metrics.overhead_time += copy.consumed
        self._emit(EventKind.REPLICA_CANCEL, copy.task.id, copy.device, copy.role)

        state = self._states[copy.device]
        if state.current is copy:
            state.current = None
        if copy in state.replicas:
            state.replicas.remove(copy)
        copy.phase = 'cancelled'
        copy.epoch += 1

    def _preempt(self, replica):
        """Cancel a replica holding the device of a ready primary"""
        logger.debug("%.6f replica of %s on %s pre-empted", self.now, replica.task.id, replica.device)
        self._cancel(replica)

    # failures

    def _interrupt(self, copy):
        """Abort the running phase of a copy whose host just failed"""
        elapsed = self.now - copy.phase_started
        if copy.phase == 'exec':
            copy.consumed += elapsed
        elif copy.phase == 'checkpoint' or (copy.phase == 'transfer' and copy.role == REPLICA):
            self.metrics.overhead_time += elapsed
        copy.position = copy.committed if copy.policy.kind is PolicyKind.CHECKPOINT else 0.0
        copy.committed = copy.position
        copy.consumed = 0.0
        copy.phase = 'down'
        copy.epoch += 1
        self.metrics.failures += 1

    def _on_device_fail(self, device, permanent=False):
        state = self._states[device]
        if state.gone:
            return
        if not permanent:
            state.failure_index += 1
            following = state.schedule.failure(state.failure_index)
            if following < state.spec.avail_time:
                self._push(following, EventKind.DEVICE_FAIL, device, device=device)
        self._emit(EventKind.DEVICE_FAIL, device=device)

        copy = state.current
        if copy is not None and copy.phase != 'down':
            self._interrupt(copy)
        state.up = False
        if permanent:
            state.gone = True
            self._abandon(state)
        else:
            self._push(self.now + self.config.repair_delay, EventKind.DEVICE_REPAIR, device, device=device)

    def _on_device_repair(self, device):
        state = self._states[device]
        if state.gone:
            return
        state.up = True
        self._emit(EventKind.DEVICE_REPAIR, device=device)
        copy = state.current
        if copy is not None and copy.phase == 'down':
            if copy.role == REPLICA and self._primary_ready(state):
                self._preempt(copy)
                return
            self._emit(EventKind.RESTART_REQUEST, copy.task.id, copy.device, copy.role)
            self.metrics.restarts += 1
            self._begin_transfer(copy)

    def _abandon(self, state):
        """Drop the work of a device whose availability window closed"""
        logger.warning("Availability window of device %s closed at %.3f s", state.spec.id, self.now)
        lost = []
        if state.current is not None:
            lost.append(state.current)
            state.current = None
        lost.extend(state.replicas)
        state.replicas.clear()

        orphans = set(state.primaries)
        state.primaries = []
        for copy in lost:
            copy.phase = 'cancelled'
            copy.epoch += 1
            self._copies[copy.task.id].remove(copy)
            if not any(other.live for other in self._copies[copy.task.id]):
                orphans.add(copy.task.id)
                if copy.policy.kind is PolicyKind.CHECKPOINT and copy.exec_total > 0:
                    self._carry[copy.task.id] = copy.committed / copy.exec_total

        for task_id in sorted(orphans, key=self.dag.rank):
            if task_id in self._done:
                continue
            logger.warning("Task %s re-homed to the source device", task_id)
            self.metrics.rehomed += 1
            self._source.primaries.append(task_id)
        self._source.primaries.sort(key=self.dag.rank)


def run(dag, devices, plan, policy, strategy, config, seed, app_index=0, cost_model=None, keep_trace=True):
    """Simulate one application under one strategy

    :param AppDag dag: the application graph
    :param iterable devices: the device population
    :param SchedulePlan plan: the scheduling plan
    :param PolicyAssignment policy: per-task policies used by FT_ALGO, computed when None
    :param Strategy strategy: the strategy
    :param ScenarioConfig config: repair delay, checkpoint settings, weights and failure injection switch
    :param int seed: the run seed
    :param int app_index: selects the failure substreams of this application
    :param CostModel cost_model: cost formulas, taken from ``config`` when None
    :param bool keep_trace: record the event trace
    :return RunResult: metrics, event trace and the failure instants of every device
    """
    return Simulation(dag, devices, plan, policy, strategy, config, seed, app_index, cost_model, keep_trace).run()
