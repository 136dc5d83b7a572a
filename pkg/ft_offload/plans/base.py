# -*- coding: utf-8 -*-

"""The base class of a plan source. A plan source provides the task offloading scheduling plan the fault
tolerance layer works on; inherit from this class to plug another offloading decision engine."""

import types


class BasePlanSource(object):
    """Base class of a plan source"""

    REWRITABLE_METHODS = ('before_get_plan',
                          'after_get_plan')

    def __init__(self, kwargs):
        """Initialize a plan source instance with kwargs

        :param dict kwargs: information about the plan source instance
        """
        kwargs = dict(kwargs)
        if kwargs.get('methods') is not None:
            self.bound_rewritable_methods(kwargs['methods'])
            kwargs.pop('methods')

        kwargs.pop('class', None)

        for key, value in kwargs.items():
            setattr(self, key, value)

    def plan(self, dag, devices, app_index=0):
        """Provide the plan of an application, running the hooks around :meth:`get_plan`

        :param AppDag dag: the application graph
        :param tuple devices: the device population
        :param int app_index: position of the application in its scenario
        :return SchedulePlan: a plan validated against the graph and the devices
        """
        self.before_get_plan(dag, devices, app_index)
        plan = self.get_plan(dag, devices, app_index).validate(dag, devices)
        return self.after_get_plan(plan, dag, devices, app_index)

    def get_plan(self, dag, devices, app_index):
        """Build or retrieve the plan of an application

        :return SchedulePlan: the plan
        """
        raise NotImplementedError

    def before_get_plan(self, dag, devices, app_index):
        """Make work before to provide a plan"""
        pass

    def after_get_plan(self, plan, dag, devices, app_index):
        """Make work after a plan is provided

        :return SchedulePlan: the plan to use
        """
        return plan

    def bound_rewritable_methods(self, methods):
        """Bound additional methods to current instance

        :param dict methods: functions keyed by the name of the method they replace
        """
        for key, value in methods.items():
            if key in self.REWRITABLE_METHODS:
                setattr(self, key, types.MethodType(value, self))
