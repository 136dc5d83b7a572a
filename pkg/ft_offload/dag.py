# -*- coding: utf-8 -*-

"""Application model: a directed acyclic graph of tasks with schedule times, total float and critical path"""

from dataclasses import dataclass, field
from typing import FrozenSet, Mapping

import networkx as nx

from ft_offload.exceptions import (CycleDetected, DuplicateTaskId, InvalidTask, MissingExecTime,
                                   UnknownDependency)

#: Tolerance (seconds) under which a total float counts as zero
FLOAT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TaskSpec:
    """A task of the application

    :param str id: task identifier
    :param float instructions: number of machine instructions
    :param float data_size: input payload size in megabytes
    :param frozenset deps: identifiers of the tasks this task depends on
    """

    id: str
    instructions: float
    data_size: float = 0.0
    deps: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, 'deps', frozenset(self.deps))
        if not self.instructions > 0:
            raise InvalidTask("Task {} must have a positive instruction count".format(self.id),
                              source={'task': self.id})
        if self.data_size < 0:
            raise InvalidTask("Task {} has a negative data size".format(self.id), source={'task': self.id})
        if self.id in self.deps:
            raise InvalidTask("Task {} depends on itself".format(self.id), source={'task': self.id})

    def scaled(self, factor):
        """Return a copy with the instruction count multiplied by ``factor``"""
        return TaskSpec(self.id, self.instructions * factor, self.data_size, self.deps)


class AppDag(object):
    """A validated application graph. Build it with :func:`validate_dag`."""

    def __init__(self, tasks, graph, order):
        self.tasks = tuple(tasks)
        self.graph = graph
        self.order = tuple(order)
        self._by_id = {task.id: task for task in self.tasks}
        self._rank = {task_id: rank for rank, task_id in enumerate(self.order)}

    def __len__(self):
        return len(self.tasks)

    def __iter__(self):
        return iter(self.tasks)

    def __contains__(self, task_id):
        return task_id in self._by_id

    @property
    def ids(self):
        return tuple(task.id for task in self.tasks)

    def task(self, task_id):
        return self._by_id[task_id]

    def predecessors(self, task_id):
        return self._by_id[task_id].deps

    def successors(self, task_id):
        return frozenset(self.graph.successors(task_id))

    def rank(self, task_id):
        """Position of the task in the cached topological order"""
        return self._rank[task_id]

    def scaled(self, factor):
        """Return the same graph with every instruction count multiplied by ``factor``"""
        return AppDag([task.scaled(factor) for task in self.tasks], self.graph, self.order)

    def __repr__(self):
        return '<AppDag {} tasks>'.format(len(self.tasks))


@dataclass(frozen=True)
class TaskTimes:
    earliest_start: float
    earliest_finish: float
    latest_start: float
    latest_finish: float
    total_float: float
    on_critical_path: bool


@dataclass(frozen=True)
class ScheduleTimes:
    """Schedule-time annotations of every task of a graph"""

    tasks: Mapping[str, TaskTimes]
    makespan: float

    def __getitem__(self, task_id):
        return self.tasks[task_id]


def validate_dag(tasks):
    """Validate a collection of tasks and build the application graph

    :param iterable tasks: TaskSpec instances
    :return AppDag: the validated graph with a cached topological order
    """
    tasks = list(tasks)
    position = {}
    for index, task in enumerate(tasks):
        if task.id in position:
            raise DuplicateTaskId("Task id {} is used more than once".format(task.id), source={'task': task.id})
        position[task.id] = index

    graph = nx.DiGraph()
    graph.add_nodes_from(task.id for task in tasks)
    for task in tasks:
        for dep in sorted(task.deps):
            if dep not in position:
                raise UnknownDependency("Task {} depends on unknown task {}".format(task.id, dep),
                                        source={'task': task.id, 'dependency': dep})
            graph.add_edge(dep, task.id)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = [edge[0] for edge in nx.find_cycle(graph)]
        raise CycleDetected("Tasks {} form a cycle".format(' -> '.join(cycle)), source={'tasks': cycle})

    order = nx.lexicographical_topological_sort(graph, key=lambda task_id: position[task_id])
    return AppDag(tasks, graph, order)


def compute_schedule_times(dag, exec_time):
    """Forward and backward pass over the graph

    :param AppDag dag: the application graph
    :param dict exec_time: execution time in seconds of every task
    :return ScheduleTimes: earliest/latest times, total float and critical flag of every task
    """
    for task_id in dag.ids:
        if task_id not in exec_time:
            raise MissingExecTime("No execution time for task {}".format(task_id), source={'task': task_id})
        if not exec_time[task_id] > 0:
            raise MissingExecTime("Execution time of task {} must be positive".format(task_id),
                                  source={'task': task_id})

    earliest = {}
    for task_id in dag.order:
        start = max((earliest[dep][1] for dep in dag.predecessors(task_id)), default=0.0)
        earliest[task_id] = (start, start + exec_time[task_id])

    makespan = max((finish for _, finish in earliest.values()), default=0.0)

    latest = {}
    for task_id in reversed(dag.order):
        finish = min((latest[succ][0] for succ in dag.successors(task_id)), default=makespan)
        latest[task_id] = (finish - exec_time[task_id], finish)

    times = {}
    for task_id in dag.order:
        total_float = max(0.0, latest[task_id][1] - earliest[task_id][1])
        times[task_id] = TaskTimes(earliest_start=earliest[task_id][0],
                                   earliest_finish=earliest[task_id][1],
                                   latest_start=latest[task_id][0],
                                   latest_finish=latest[task_id][1],
                                   total_float=total_float,
                                   on_critical_path=total_float <= FLOAT_TOLERANCE)

    return ScheduleTimes(tasks=times, makespan=makespan)


def critical_path(dag, times):
    """Return the set of tasks with zero total float

    :param AppDag dag: the application graph
    :param ScheduleTimes times: times computed for ``dag``
    :return frozenset: identifiers of the critical tasks
    """
    return frozenset(task_id for task_id in dag.ids if times[task_id].on_critical_path)
