# -*- coding: utf-8 -*-

"""Random application graphs and device populations within the configured parameter ranges"""

import logging
from dataclasses import dataclass
from typing import Tuple

from ft_offload.dag import AppDag, TaskSpec, validate_dag
from ft_offload.device import DeviceSpec, WeibullParams, validate_population, weibull_mean
from ft_offload.rng import dag_stream, devices_stream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DagShape:
    """Parameters of the random graph generator"""

    task_count: Tuple[int, int] = (5, 15)
    edge_probability: float = 0.3
    instructions: Tuple[float, float] = (20000, 100000)
    instruction_scale: float = 1.0
    data_size: Tuple[float, float] = (0.5, 10.0)

    @classmethod
    def from_config(cls, config):
        return cls(task_count=config.task_count,
                   edge_probability=config.edge_probability,
                   instructions=config.instructions,
                   instruction_scale=config.instruction_scale,
                   data_size=config.data_size)


@dataclass(frozen=True)
class Workload:
    """Everything a scenario runs on: the devices, the source device and one graph per application"""

    devices: Tuple[DeviceSpec, ...]
    dags: Tuple[AppDag, ...]
    source: DeviceSpec


def gen_dag(shape, rng):
    """Generate a random application graph

    Edges only go from a lower to a higher task index, each with probability
    ``shape.edge_probability``, so the result is always acyclic.

    :param DagShape shape: the generator parameters
    :param numpy.random.Generator rng: the random source
    :return AppDag: the graph
    """
    count = int(rng.integers(shape.task_count[0], shape.task_count[1] + 1))
    ids = ['t{:03d}'.format(index) for index in range(count)]

    tasks = []
    for index, task_id in enumerate(ids):
        instructions = int(rng.integers(int(shape.instructions[0]), int(shape.instructions[1]) + 1))
        data_size = float(rng.uniform(shape.data_size[0], shape.data_size[1]))
        deps = [ids[dep] for dep in range(index) if rng.random() < shape.edge_probability]
        tasks.append(TaskSpec(id=task_id,
                              instructions=instructions * shape.instruction_scale,
                              data_size=data_size,
                              deps=frozenset(deps)))
    return validate_dag(tasks)


def _uniform(rng, bounds):
    return float(rng.uniform(bounds[0], bounds[1]))


def _integer(rng, bounds):
    return int(rng.integers(int(bounds[0]), int(bounds[1]) + 1))


def gen_devices(config, rng):
    """Generate a device population

    Every field is drawn for every device, whatever the configuration, so two
    configurations differing only in one range produce aligned populations.

    :param ScenarioConfig config: the scenario
    :param numpy.random.Generator rng: the random source
    :return tuple: DeviceSpec instances with ids ``d000``, ``d001`` ...
    """
    count = _integer(rng, config.device_count)
    default_mtbf = weibull_mean(WeibullParams(config.weibull_shape, config.weibull_scale))

    devices = []
    for index in range(count):
        cpu_speed = _uniform(rng, config.cpu_speed)
        cpu_utilization = _uniform(rng, config.cpu_utilization)
        battery = _uniform(rng, config.battery)
        bandwidth_wifi = _uniform(rng, config.bandwidth_wifi)
        has_ether = bool(rng.random() < config.ether_fraction)
        bandwidth_ether = _uniform(rng, config.bandwidth_ether)
        latency = _uniform(rng, config.latency)
        avail_time = _uniform(rng, config.avail_time)
        mtbf_draw = float(rng.random())
        conn_count = _integer(rng, config.conn_count)
        tasks_total = _integer(rng, config.history_total)
        tasks_failed = int(rng.integers(0, tasks_total + 1))
        peers_connected = int(rng.integers(0, count))

        if config.mtbf is None:
            mtbf = default_mtbf
        else:
            mtbf = config.mtbf[0] + mtbf_draw * (config.mtbf[1] - config.mtbf[0])

        devices.append(DeviceSpec(id='d{:03d}'.format(index),
                                  cpu_speed=cpu_speed,
                                  cpu_utilization=cpu_utilization,
                                  battery=battery,
                                  has_wifi=True,
                                  has_ether=has_ether,
                                  bandwidth_wifi=bandwidth_wifi,
                                  bandwidth_ether=bandwidth_ether,
                                  latency=latency,
                                  avail_time=avail_time,
                                  mtbf=mtbf,
                                  per_conn_rate=config.per_conn_rate,
                                  conn_count=conn_count,
                                  tasks_failed=tasks_failed,
                                  tasks_total=tasks_total,
                                  peers_connected=peers_connected,
                                  failure_shape=config.weibull_shape))
    return validate_population(devices)


def generate_workload(config, seed=None):
    """Generate the devices and the application graphs of a scenario

    :param ScenarioConfig config: the scenario
    :param int seed: overrides ``config.seed``
    :return Workload: the workload, a pure function of the configuration and the seed
    """
    seed = config.seed if seed is None else seed
    devices = gen_devices(config, devices_stream(seed))
    shape = DagShape.from_config(config)
    dags = tuple(gen_dag(shape, dag_stream(seed, app_index)) for app_index in range(config.app_count))
    logger.debug("Generated %d devices and %d applications for scenario %s seed %s",
                 len(devices), len(dags), config.scenario_id, seed)
    return Workload(devices=devices, dags=dags, source=config.source_device())
