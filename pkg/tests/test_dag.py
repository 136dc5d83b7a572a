# -*- coding: utf-8 -*-

import itertools

import numpy as np
import pytest

from ft_offload.dag import TaskSpec, compute_schedule_times, critical_path, validate_dag
from ft_offload.exceptions import (CycleDetected, DagError, DuplicateTaskId, InvalidTask, MissingExecTime,
                                   UnknownDependency)
from ft_offload.workload import DagShape, gen_dag


def test_task_spec_invariants():
    with pytest.raises(InvalidTask):
        TaskSpec('a', 0)
    with pytest.raises(InvalidTask):
        TaskSpec('a', 10, data_size=-1)
    with pytest.raises(InvalidTask):
        TaskSpec('a', 10, deps={'a'})
    assert TaskSpec('a', 10, deps=['b']).deps == frozenset({'b'})


def test_validate_dag_order(diamond):
    assert diamond.order == ('a', 'b', 'c', 'd')
    assert diamond.predecessors('d') == frozenset({'b', 'c'})
    assert diamond.successors('a') == frozenset({'b', 'c'})
    assert diamond.rank('c') == 2
    assert 'b' in diamond and 'z' not in diamond


def test_validate_dag_order_follows_input_position():
    dag = validate_dag([TaskSpec('z', 1), TaskSpec('y', 1), TaskSpec('x', 1, deps={'z'})])
    assert dag.order == ('z', 'y', 'x')


def test_validate_dag_errors():
    with pytest.raises(DuplicateTaskId):
        validate_dag([TaskSpec('a', 1), TaskSpec('a', 2)])
    with pytest.raises(UnknownDependency):
        validate_dag([TaskSpec('a', 1, deps={'b'})])
    with pytest.raises(CycleDetected) as excinfo:
        validate_dag([TaskSpec('a', 1, deps={'c'}), TaskSpec('b', 1, deps={'a'}), TaskSpec('c', 1, deps={'b'})])
    assert set(excinfo.value.source['tasks']) == {'a', 'b', 'c'}
    assert isinstance(excinfo.value, DagError)


def test_schedule_times_diamond(diamond):
    times = compute_schedule_times(diamond, {'a': 1.0, 'b': 3.0, 'c': 1.0, 'd': 1.0})
    assert times.makespan == 5.0
    assert times['c'].earliest_start == 1.0
    assert times['c'].latest_finish == 4.0
    assert times['c'].total_float == 2.0
    assert not times['c'].on_critical_path
    assert critical_path(diamond, times) == frozenset({'a', 'b', 'd'})


def test_schedule_times_dependency_table():
    dag = validate_dag([TaskSpec('1', 1), TaskSpec('2', 1),
                        TaskSpec('3', 1, deps={'1', '2'}),
                        TaskSpec('4', 1, deps={'1', '3', '5'}),
                        TaskSpec('5', 1, deps={'2'}),
                        TaskSpec('6', 1, deps={'4', '5'})])
    times = compute_schedule_times(dag, {'1': 8.0, '2': 3.0, '3': 4.0, '4': 6.0, '5': 2.0, '6': 5.0})
    assert times.makespan == 23.0
    assert critical_path(dag, times) == frozenset({'1', '3', '4', '6'})
    assert times['2'].total_float == 5.0
    assert times['5'].total_float == 7.0

    chain = validate_dag([TaskSpec('a', 1), TaskSpec('b', 1, deps={'a'})])
    times = compute_schedule_times(chain, {'a': 2.0, 'b': 3.0})
    assert times.makespan == 5.0
    assert times['a'].total_float == times['b'].total_float == 0.0


def test_schedule_times_independent_tasks():
    dag = validate_dag([TaskSpec('a', 1), TaskSpec('b', 1), TaskSpec('c', 1)])
    times = compute_schedule_times(dag, {'a': 2.0, 'b': 5.0, 'c': 5.0})
    assert critical_path(dag, times) == frozenset({'b', 'c'})
    assert times['a'].total_float == 3.0


def test_schedule_times_missing_exec_time(diamond):
    with pytest.raises(MissingExecTime):
        compute_schedule_times(diamond, {'a': 1.0, 'b': 1.0, 'c': 1.0})
    with pytest.raises(MissingExecTime):
        compute_schedule_times(diamond, {'a': 1.0, 'b': 0.0, 'c': 1.0, 'd': 1.0})


def _paths(dag):
    sources = [task_id for task_id in dag.ids if not dag.predecessors(task_id)]
    sinks = [task_id for task_id in dag.ids if not dag.successors(task_id)]
    for start in sources:
        stack = [(start, (start,))]
        while stack:
            node, path = stack.pop()
            if node in sinks:
                yield path
            for succ in dag.successors(node):
                stack.append((succ, path + (succ,)))


def test_critical_path_matches_path_enumeration():
    rng = np.random.default_rng(7)
    for _ in range(100):
        shape = DagShape(task_count=(1, 10), edge_probability=float(rng.uniform(0, 1)), instructions=(1, 50))
        dag = gen_dag(shape, rng)
        weights = {task.id: float(task.instructions) for task in dag}
        lengths = {path: sum(weights[task_id] for task_id in path) for path in _paths(dag)}
        longest = max(lengths.values())
        expected = frozenset(itertools.chain.from_iterable(path for path, length in lengths.items()
                                                           if abs(length - longest) <= 1e-9))
        assert critical_path(dag, compute_schedule_times(dag, weights)) == expected


def test_scaled_dag(chain):
    scaled = chain.scaled(4)
    assert scaled.task('b').instructions == 4e9
    assert scaled.order == chain.order
    assert chain.task('b').instructions == 1e9


def _with_task(dag, task, before=None):
    tasks = [TaskSpec(other.id, other.instructions, other.data_size, other.deps | {task.id})
             if other.id == before else other for other in dag]
    return validate_dag(tasks + [task])


def _makespan(dag):
    weights = {task.id: float(task.instructions) for task in dag}
    return compute_schedule_times(dag, weights).makespan


def test_task_on_critical_path_lengthens_makespan():
    rng = np.random.default_rng(13)
    for _ in range(100):
        shape = DagShape(task_count=(1, 10), edge_probability=float(rng.uniform(0, 1)), instructions=(1, 50))
        dag = gen_dag(shape, rng)
        weights = {task.id: float(task.instructions) for task in dag}
        longest = max(_paths(dag), key=lambda path: sum(weights[task_id] for task_id in path))
        makespan = _makespan(dag)

        cut = int(rng.integers(0, len(longest)))
        before = longest[cut + 1] if cut + 1 < len(longest) else None
        extra = TaskSpec('extra', float(rng.integers(1, 20)), deps={longest[cut]})
        extended = _with_task(dag, extra, before)

        assert _makespan(extended) > makespan
        assert _makespan(extended) == pytest.approx(makespan + extra.instructions)
        times = compute_schedule_times(extended, {task.id: float(task.instructions) for task in extended})
        assert times['extra'].on_critical_path


def test_task_within_slack_keeps_makespan():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(200):
        shape = DagShape(task_count=(2, 10), edge_probability=float(rng.uniform(0, 0.6)), instructions=(1, 50))
        dag = gen_dag(shape, rng)
        times = compute_schedule_times(dag, {task.id: float(task.instructions) for task in dag})
        slack = [task_id for task_id in dag.ids if times[task_id].total_float > 0]
        if not slack:
            continue
        host = slack[int(rng.integers(0, len(slack)))]
        extra = TaskSpec('extra', times[host].total_float * float(rng.uniform(0.1, 0.9)), deps={host})
        extended = _with_task(dag, extra)

        assert _makespan(extended) == pytest.approx(times.makespan)
        extended_weights = {task.id: float(task.instructions) for task in extended}
        assert max(sum(extended_weights[task_id] for task_id in path)
                   for path in _paths(extended)) == pytest.approx(times.makespan)
        checked += 1
    assert checked > 50
