# -*- coding: utf-8 -*-

"""Marshmallow schemas of the simulator file formats

Loading a document returns the domain object (TaskSpec, AppDag, DeviceSpec,
SchedulePlan, PolicyAssignment, ScenarioConfig, ExperimentSpec); dumping one
returns plain JSON-compatible data with deterministic ordering.
"""

import math

from marshmallow import Schema, ValidationError, fields, post_load, pre_dump, validate, validates_schema

from ft_offload.clustering import ClusterSplit
from ft_offload.config import RANGE_FIELDS, STRATEGY_NAMES, ScenarioConfig
from ft_offload.dag import TaskSpec, validate_dag
from ft_offload.device import DeviceSpec, WeightsConfig, validate_population
from ft_offload.experiment import SWEEP_VARIABLES, ExperimentSpec
from ft_offload.policy import NO_POLICY, Checkpoint, PolicyAssignment, PolicyKind, Replicate, SchedulePlan

INTEGER_RANGES = ('task_count', 'device_count', 'conn_count', 'history_total')


def _pair(field_cls):
    return fields.List(field_cls(), validate=validate.Length(equal=2))


class TaskSchema(Schema):
    id = fields.Str(required=True)
    instructions = fields.Float(required=True)
    data_size = fields.Float(load_default=0.0)
    deps = fields.List(fields.Str(), load_default=list)

    @pre_dump
    def sort_deps(self, task, **kwargs):
        return {'id': task.id, 'instructions': task.instructions, 'data_size': task.data_size,
                'deps': sorted(task.deps)}

    @post_load
    def make_task(self, data, **kwargs):
        return TaskSpec(**data)


class DagSchema(Schema):
    """One task per record; ``deps`` lists the ids of the tasks a task waits for"""

    tasks = fields.List(fields.Nested(TaskSchema), required=True)

    @post_load
    def make_dag(self, data, **kwargs):
        return validate_dag(data['tasks'])


class DeviceSchema(Schema):
    id = fields.Str(required=True)
    cpu_speed = fields.Float(required=True)
    cpu_utilization = fields.Float()
    battery = fields.Float()
    has_wifi = fields.Bool()
    has_ether = fields.Bool()
    bandwidth_wifi = fields.Float()
    bandwidth_ether = fields.Float()
    latency = fields.Float()
    avail_time = fields.Float(allow_none=True)
    mtbf = fields.Float()
    per_conn_rate = fields.Float()
    conn_count = fields.Int()
    tasks_failed = fields.Int()
    tasks_total = fields.Int()
    peers_connected = fields.Int()
    failure_shape = fields.Float()

    @pre_dump
    def unbounded_avail_time(self, device, **kwargs):
        data = {name: getattr(device, name) for name in self.fields}
        if math.isinf(data['avail_time']):
            data['avail_time'] = None
        return data

    @post_load
    def make_device(self, data, **kwargs):
        if data.get('avail_time', 0.0) is None:
            data['avail_time'] = math.inf
        return DeviceSpec(**data)


class PopulationSchema(Schema):
    devices = fields.List(fields.Nested(DeviceSchema), required=True)

    @post_load
    def make_population(self, data, **kwargs):
        return validate_population(data['devices'])


class PlanSchema(Schema):
    """Task offloading scheduling plan: task id to device id, and the offloaded task ids"""

    assignments = fields.Dict(keys=fields.Str(), values=fields.Str(), required=True)
    offload_set = fields.List(fields.Str(), required=True)

    @pre_dump
    def sort_offload_set(self, plan, **kwargs):
        return {'assignments': dict(plan.assignments), 'offload_set': sorted(plan.offload_set)}

    @post_load
    def make_plan(self, data, **kwargs):
        return SchedulePlan(**data)


class PolicySchema(Schema):
    task = fields.Str(required=True)
    kind = fields.Str(required=True, validate=validate.OneOf([kind.value for kind in PolicyKind]))
    replica_device = fields.Str(allow_none=True, load_default=None)
    interval = fields.Float(allow_none=True, load_default=None,
                            validate=validate.Range(min=0, min_inclusive=False))

    @validates_schema
    def check_parameters(self, data, **kwargs):
        if data['kind'] == PolicyKind.REPLICATE.value and not data.get('replica_device'):
            raise ValidationError("A replicate policy needs a replica_device", 'replica_device')
        if data['kind'] == PolicyKind.CHECKPOINT.value and data.get('interval') is None:
            raise ValidationError("A checkpoint policy needs an interval", 'interval')

    @post_load
    def make_policy(self, data, **kwargs):
        kind = PolicyKind(data['kind'])
        if kind is PolicyKind.REPLICATE:
            policy = Replicate(data['replica_device'])
        elif kind is PolicyKind.CHECKPOINT:
            policy = Checkpoint(data['interval'])
        else:
            policy = NO_POLICY
        return data['task'], policy


class PolicyAssignmentSchema(Schema):
    """Policies of the offloaded tasks with the reliability data they were derived from"""

    policies = fields.List(fields.Nested(PolicySchema), required=True)
    reliabilities = fields.Dict(keys=fields.Str(), values=fields.Float(), load_default=dict)
    high = fields.List(fields.Str(), allow_none=True, load_default=None)
    low = fields.List(fields.Str(), allow_none=True, load_default=None)
    centroid_high = fields.Float(allow_none=True, load_default=None)
    centroid_low = fields.Float(allow_none=True, load_default=None)
    critical = fields.List(fields.Str(), load_default=list)

    @pre_dump
    def flatten(self, assignment, **kwargs):
        policies = []
        for task_id in sorted(assignment):
            policy = assignment[task_id]
            policies.append({'task': task_id,
                             'kind': policy.kind.value,
                             'replica_device': getattr(policy, 'replica_device', None),
                             'interval': getattr(policy, 'interval', None)})
        split = assignment.split
        return {'policies': policies,
                'reliabilities': dict(assignment.reliabilities),
                'high': sorted(split.high) if split is not None else None,
                'low': sorted(split.low) if split is not None else None,
                'centroid_high': split.centroid_high if split is not None else None,
                'centroid_low': split.centroid_low if split is not None else None,
                'critical': sorted(assignment.critical)}

    @post_load
    def make_assignment(self, data, **kwargs):
        split = None
        if data['high'] is not None and data['low'] is not None:
            split = ClusterSplit(high=frozenset(data['high']), low=frozenset(data['low']),
                                 centroid_high=data['centroid_high'], centroid_low=data['centroid_low'])
        return PolicyAssignment(dict(data['policies']), reliabilities=data['reliabilities'], split=split,
                                critical=data['critical'])


class WeightsSchema(Schema):
    avail_y = fields.Float()
    avail_z = fields.Float()
    score_y = fields.Float()
    score_z = fields.Float()
    score_lambda = fields.Float()
    alpha_cpu = fields.Float()
    alpha_batt = fields.Float()
    alpha_conn = fields.Float()

    @post_load
    def make_weights(self, data, **kwargs):
        return WeightsConfig(**data)


class ScenarioSchema(Schema):
    """Scenario file. Every field is optional; ranges are ``[min, max]`` lists."""

    scenario_id = fields.Str()
    seed = fields.Int()
    strategies = fields.List(fields.Str(validate=validate.OneOf(STRATEGY_NAMES)), validate=validate.Length(min=1))

    app_count = fields.Int()
    task_count = _pair(fields.Int)
    edge_probability = fields.Float()
    instructions = _pair(fields.Float)
    instruction_scale = fields.Float()
    data_size = _pair(fields.Float)

    device_count = _pair(fields.Int)
    cpu_speed = _pair(fields.Float)
    cpu_utilization = _pair(fields.Float)
    battery = _pair(fields.Float)
    avail_time = _pair(fields.Float)
    weibull_shape = fields.Float()
    weibull_scale = fields.Float()
    mtbf = fields.List(fields.Float(), validate=validate.Length(equal=2), allow_none=True)
    bandwidth_wifi = _pair(fields.Float)
    ether_fraction = fields.Float()
    bandwidth_ether = _pair(fields.Float)
    latency = _pair(fields.Float)
    per_conn_rate = fields.Float()
    conn_count = _pair(fields.Int)
    history_total = _pair(fields.Int)

    source_cpu_speed = fields.Float()
    source_bandwidth = fields.Float()
    source_latency = fields.Float()

    weights = fields.Nested(WeightsSchema)
    repair_delay = fields.Float()
    snapshot_ratio = fields.Float()
    checkpoint_cost = fields.Float(allow_none=True)
    min_checkpoint_interval = fields.Float()
    inject_failures = fields.Bool()
    max_events = fields.Int()

    @post_load
    def make_config(self, data, **kwargs):
        for name in RANGE_FIELDS:
            if data.get(name) is not None:
                data[name] = tuple(data[name])
        return ScenarioConfig(**data)


class ExperimentSchema(Schema):
    """Experiment sweep file"""

    name = fields.Str(required=True)
    sweep = fields.Str(required=True, validate=validate.OneOf(SWEEP_VARIABLES))
    values = fields.List(fields.Float(), required=True, validate=validate.Length(min=1))
    seeds = fields.Int(load_default=20, validate=validate.Range(min=1))
    strategies = fields.List(fields.Str(validate=validate.OneOf(STRATEGY_NAMES)), allow_none=True,
                             load_default=None)
    scenario = fields.Nested(ScenarioSchema, load_default=None)

    @post_load
    def make_experiment(self, data, **kwargs):
        if data['scenario'] is None:
            data['scenario'] = ScenarioConfig()
        if data['strategies'] is not None:
            data['strategies'] = tuple(data['strategies'])
        return ExperimentSpec(**data)
