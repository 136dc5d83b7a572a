# -*- coding: utf-8 -*-

import pytest

from ft_offload.config import ScenarioConfig
from ft_offload.dag import TaskSpec, validate_dag
from ft_offload.engine import EventKind, Strategy, run
from ft_offload.exceptions import InvalidConfig
from ft_offload.plans.base import BasePlanSource
from ft_offload.plans.greedy import GreedyPlanSource, baseline_schedule
from ft_offload.policy import SchedulePlan
from ft_offload.rng import substream
from ft_offload.workload import DagShape, gen_dag, gen_devices, generate_workload


def test_gen_dag_ranges():
    rng = substream(1)
    shape = DagShape()
    for _ in range(500):
        dag = gen_dag(shape, rng)
        assert 5 <= len(dag) <= 15
        for task in dag:
            assert 20000 <= task.instructions <= 100000
            assert 0.5 <= task.data_size <= 10.0


def test_gen_dag_edge_probability():
    rng = substream(2)
    independent = gen_dag(DagShape(edge_probability=0.0), rng)
    assert all(not task.deps for task in independent)

    complete = gen_dag(DagShape(edge_probability=1.0), rng)
    for index, task_id in enumerate(complete.order):
        assert complete.predecessors(task_id) == frozenset(complete.order[:index])


def test_gen_dag_instruction_scale():
    plain = gen_dag(DagShape(), substream(3))
    scaled = gen_dag(DagShape(instruction_scale=4.0), substream(3))
    assert [task.instructions * 4.0 for task in plain] == [task.instructions for task in scaled]
    assert [task.deps for task in plain] == [task.deps for task in scaled]


def test_gen_devices_ranges():
    config = ScenarioConfig()
    rng = substream(4)
    for _ in range(20):
        devices = gen_devices(config, rng)
        assert 20 <= len(devices) <= 50
        for dev in devices:
            assert 1000 <= dev.cpu_speed <= 100000
            assert 0.9 <= dev.bandwidth_wifi <= 1.2
            assert 1000 <= dev.avail_time <= 30000
            assert dev.failure_shape == 1.21
            assert dev.mtbf == pytest.approx(88.3, rel=1e-2)
            assert dev.peers_connected <= len(devices) - 1


def test_gen_devices_mtbf_range():
    devices = gen_devices(ScenarioConfig(mtbf=(90.0, 120.0)), substream(5))
    assert all(90.0 <= dev.mtbf <= 120.0 for dev in devices)
    fixed = gen_devices(ScenarioConfig(mtbf=(30.0, 30.0)), substream(5))
    assert {dev.mtbf for dev in fixed} == {30.0}
    assert [dev.cpu_speed for dev in fixed] == [dev.cpu_speed for dev in devices]


def test_generate_workload_is_deterministic(small_config):
    first = generate_workload(small_config, seed=9)
    second = generate_workload(small_config, seed=9)
    assert first.devices == second.devices
    assert [dag.tasks for dag in first.dags] == [dag.tasks for dag in second.dags]
    assert len(first.dags) == small_config.app_count
    assert generate_workload(small_config, seed=10).devices != first.devices


def test_scenario_config_validation():
    with pytest.raises(InvalidConfig):
        ScenarioConfig(cpu_speed=(10.0, 1.0))
    with pytest.raises(InvalidConfig):
        ScenarioConfig(edge_probability=1.5)
    with pytest.raises(InvalidConfig):
        ScenarioConfig(strategies=('FT_ALGO', 'SOMETHING'))
    assert ScenarioConfig().replace(app_count=2).app_count == 2


def test_baseline_schedule_one_device(chain, device_factory, cost_model):
    plan = baseline_schedule(chain, [device_factory('d0')], cost_model)
    assert plan.assignments == {'a': 'd0', 'b': 'd0', 'c': 'd0'}
    assert plan.offload_set == frozenset(chain.ids)


def test_baseline_schedule_spreads_independent_tasks(device_factory, cost_model):
    dag = validate_dag([TaskSpec('t0', 1e9), TaskSpec('t1', 1e9)])
    plan = baseline_schedule(dag, [device_factory('d1'), device_factory('d0')], cost_model)
    assert plan.assignments == {'t0': 'd0', 't1': 'd1'}


def test_baseline_schedule_respects_dependencies(small_config):
    config = small_config.replace(inject_failures=False)
    workload = generate_workload(config, seed=6)
    cost_model = config.cost_model()
    for dag in workload.dags:
        plan = baseline_schedule(dag, workload.devices, cost_model)
        result = run(dag, workload.devices, plan.validate(dag, workload.devices), None, Strategy.NO_FT, config, 6)
        finished = {}
        for event in result.trace:
            if event.kind is EventKind.TASK_COMPLETE:
                finished[event.task] = event.time
            elif event.kind is EventKind.TASK_START:
                assert all(finished[dep] <= event.time for dep in dag.predecessors(event.task))
        assert set(finished) == set(dag.ids)


def test_plan_source_hooks(chain, device_factory):
    def after_get_plan(self, plan, dag, devices, app_index):
        return SchedulePlan(plan.assignments, {'a'})

    source = GreedyPlanSource({'methods': {'after_get_plan': after_get_plan, 'get_plan': None}})
    plan = source.plan(chain, [device_factory('d0')])
    assert plan.offload_set == frozenset({'a'})
    assert source.get_plan.__func__ is GreedyPlanSource.get_plan

    with pytest.raises(NotImplementedError):
        BasePlanSource({}).plan(chain, [device_factory('d0')])
