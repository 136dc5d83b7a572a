# -*- coding: utf-8 -*-

"""Read and write the simulator files

Every file is a JSON document validated by its schema. Reading or writing
problems are raised as :class:`InvalidFile` with the path as source.
"""

import glob
import json
import logging
import os

from marshmallow import ValidationError

from ft_offload.exceptions import InvalidFile
from ft_offload.schema import (DagSchema, ExperimentSchema, PlanSchema, PolicyAssignmentSchema, PopulationSchema,
                               ScenarioSchema)
from ft_offload.utils import JSONEncoder
from ft_offload.workload import Workload

logger = logging.getLogger(__name__)

DEVICES_FILE = 'devices.json'
SCENARIO_FILE = 'scenario.json'
DAG_PATTERN = 'app_{:03d}.dag.json'
PLAN_PATTERN = 'app_{:03d}.plan.json'


def read_json(path):
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return json.load(handle)
    except (OSError, ValueError) as e:
        raise InvalidFile("Cannot read {}: {}".format(path, e), source={'file': str(path)})


def write_json(data, path):
    """Write a JSON document with sorted keys, creating the parent directory"""
    try:
        directory = os.path.dirname(str(path))
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(data, handle, cls=JSONEncoder, indent=2, sort_keys=True)
            handle.write('\n')
    except (OSError, TypeError, ValueError) as e:
        raise InvalidFile("Cannot write {}: {}".format(path, e), source={'file': str(path)})
    logger.debug("Wrote %s", path)
    return path


def write_lines(lines, path):
    try:
        directory = os.path.dirname(str(path))
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as handle:
            for line in lines:
                handle.write(line + '\n')
    except OSError as e:
        raise InvalidFile("Cannot write {}: {}".format(path, e), source={'file': str(path)})
    return path


def _load(schema, path):
    try:
        return schema.load(read_json(path))
    except ValidationError as e:
        raise InvalidFile("{} does not match the {} format".format(path, schema.__class__.__name__[:-6].lower()),
                          source={'file': str(path)}, meta={'messages': e.messages})


def load_dag(path):
    return _load(DagSchema(), path)


def dump_dag(dag, path):
    return write_json(DagSchema().dump(dag), path)


def load_devices(path):
    return _load(PopulationSchema(), path)


def dump_devices(devices, path):
    return write_json(PopulationSchema().dump({'devices': list(devices)}), path)


def load_plan(path):
    return _load(PlanSchema(), path)


def dump_plan(plan, path):
    return write_json(PlanSchema().dump(plan), path)


def load_policies(path):
    return _load(PolicyAssignmentSchema(), path)


def dump_policies(policy, path):
    return write_json(PolicyAssignmentSchema().dump(policy), path)


def load_scenario(path):
    return _load(ScenarioSchema(), path)


def dump_scenario(config, path):
    return write_json(ScenarioSchema().dump(config), path)


def load_experiment(path):
    return _load(ExperimentSchema(), path)


def dump_experiment(spec, path):
    return write_json(ExperimentSchema().dump(spec), path)


def dump_workload(workload, directory, plans=None):
    """Write the devices, the graphs and optionally the plans of a workload to a directory

    :param Workload workload: the workload
    :param str directory: the output directory
    :param list plans: one SchedulePlan per application
    """
    dump_devices(workload.devices, os.path.join(directory, DEVICES_FILE))
    for app_index, dag in enumerate(workload.dags):
        dump_dag(dag, os.path.join(directory, DAG_PATTERN.format(app_index)))
    for app_index, plan in enumerate(plans or ()):
        dump_plan(plan, os.path.join(directory, PLAN_PATTERN.format(app_index)))


def load_workload(directory, config):
    """Read a workload written by :func:`dump_workload`

    :param str directory: the workload directory
    :param ScenarioConfig config: provides the source device
    :return Workload: the workload, graphs ordered by application index
    """
    devices = load_devices(os.path.join(directory, DEVICES_FILE))
    paths = sorted(glob.glob(os.path.join(glob.escape(str(directory)), 'app_*.dag.json')))
    if not paths:
        raise InvalidFile("No application graph in {}".format(directory), source={'file': str(directory)})
    dags = tuple(load_dag(path) for path in paths)
    return Workload(devices=devices, dags=dags, source=config.source_device())
