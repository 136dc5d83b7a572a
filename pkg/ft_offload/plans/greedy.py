# -*- coding: utf-8 -*-

"""Greedy earliest-finish-time scheduler used when no external plan is given"""

from ft_offload.costs import CostModel, make_source_device
from ft_offload.exceptions import NoRoute
from ft_offload.plans.base import BasePlanSource
from ft_offload.policy import SchedulePlan


def baseline_schedule(dag, devices, cost_model=None):
    """Assign every task, in topological order, to the device where it finishes first

    The estimated finish of a task on a device is the later of the device's
    ready time and the finish of the task's dependencies, plus the input
    transfer from the source and the execution time. Ties go to the lowest
    device id. Every task is offloaded.

    :param AppDag dag: the application graph
    :param iterable devices: the device population
    :param CostModel cost_model: cost formulas, a default source device when None
    :return SchedulePlan: the plan
    """
    cost_model = cost_model or CostModel(make_source_device())
    devices = sorted(devices, key=lambda dev: dev.id)
    ready = {dev.id: 0.0 for dev in devices}
    finish = {}
    assignments = {}

    for task_id in dag.order:
        task = dag.task(task_id)
        deps_done = max((finish[dep] for dep in task.deps), default=0.0)
        best = None
        for dev in devices:
            try:
                duration = cost_model.input_transfer(task, dev) + cost_model.exec_time(task, dev)
            except NoRoute:
                continue
            end = max(ready[dev.id], deps_done) + duration
            if best is None or end < best[0]:
                best = (end, dev.id)
        if best is None:
            raise NoRoute("No device can receive the input of task {}".format(task_id), source={'task': task_id})
        finish[task_id], assignments[task_id] = best
        ready[best[1]] = best[0]

    return SchedulePlan(assignments=assignments, offload_set=frozenset(dag.ids))


class GreedyPlanSource(BasePlanSource):
    """Plan source running :func:`baseline_schedule`"""

    def __init__(self, kwargs=None):
        super(GreedyPlanSource, self).__init__(kwargs or {})
        if not hasattr(self, 'cost_model'):
            self.cost_model = CostModel(make_source_device())

    def get_plan(self, dag, devices, app_index):
        return baseline_schedule(dag, devices, self.cost_model)
