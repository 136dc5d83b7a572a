# -*- coding: utf-8 -*-

"""Collection of errors raised by the simulator"""


class SimulationException(Exception):
    """Base exception class for unknown errors"""

    title = 'Unknown error'
    code = 'unknown'
    source = None

    def __init__(self, detail, source=None, title=None, code=None, meta=None):
        """Initialize a simulation exception

        :param str detail: the detail of the error
        :param dict source: where the error comes from (task, device, file ...)
        """
        super(SimulationException, self).__init__(detail)
        self.detail = detail
        if source is not None:
            self.source = source
        self.meta = meta or {}
        if title is not None:
            self.title = title
        if code is not None:
            self.code = code

    def to_dict(self):
        """Return values of each non-empty field of the error"""
        error_dict = {}
        for field in ('code', 'title', 'detail', 'source', 'meta'):
            if getattr(self, field, None):
                error_dict.update({field: getattr(self, field)})

        return error_dict


class InvalidInput(SimulationException):
    """Input values break a type invariant"""

    title = 'Invalid input'
    code = 'invalid_input'


class InvalidTask(InvalidInput):
    title = 'Invalid task'
    code = 'invalid_task'


class InvalidDevice(InvalidInput):
    title = 'Invalid device'
    code = 'invalid_device'


class InvalidWeights(InvalidInput):
    """Weight factors do not sum to one or are negative"""

    title = 'Invalid weights'
    code = 'invalid_weights'
    source = {'parameter': 'weights'}


class InvalidConfig(InvalidInput):
    title = 'Invalid configuration'
    code = 'invalid_config'


class InvalidFile(InvalidInput):
    """A file could not be read, written or validated against its schema"""

    title = 'Invalid file'
    code = 'invalid_file'


class InvalidPlan(InvalidInput):
    """A scheduling plan refers to unknown tasks or devices"""

    title = 'Invalid scheduling plan'
    code = 'invalid_plan'


class DagError(SimulationException):
    """Base error of the application graph"""

    title = 'Invalid application graph'
    code = 'invalid_dag'


class CycleDetected(DagError):
    title = 'Cycle detected'
    code = 'cycle_detected'


class UnknownDependency(DagError):
    title = 'Unknown dependency'
    code = 'unknown_dependency'


class DuplicateTaskId(DagError):
    title = 'Duplicate task id'
    code = 'duplicate_task_id'


class MissingExecTime(DagError):
    title = 'Missing execution time'
    code = 'missing_exec_time'


class EmptyInput(SimulationException):
    title = 'Empty input'
    code = 'empty_input'


class NoCandidate(SimulationException):
    """No device other than the primary is available to host a replica"""

    title = 'No replica candidate'
    code = 'no_candidate'


class NoRoute(SimulationException):
    """Two devices share no enabled network interface"""

    title = 'No route'
    code = 'no_route'


class DeadlockDetected(SimulationException):
    """No task can run and no event is pending"""

    title = 'Deadlock detected'
    code = 'deadlock'


class SimulationLimitExceeded(SimulationException):
    title = 'Simulation limit exceeded'
    code = 'limit_exceeded'
