# -*- coding: utf-8 -*-

import pytest

from ft_offload.config import ScenarioConfig
from ft_offload.costs import CostModel, make_source_device
from ft_offload.dag import TaskSpec, validate_dag
from ft_offload.device import DeviceSpec


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run the slow evaluation sweeps')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


def make_device(device_id, **kwargs):
    values = dict(cpu_speed=1000.0, bandwidth_wifi=1.0, latency=0.0, mtbf=100.0)
    values.update(kwargs)
    return DeviceSpec(id=device_id, **values)


@pytest.fixture(scope="session")
def device_factory():
    return make_device


@pytest.fixture(scope="module")
def source():
    # 1 MBps and no latency keep transfer times equal to data sizes
    yield make_source_device(cpu_speed=1000.0, bandwidth=1.0, latency=0.0)


@pytest.fixture(scope="module")
def cost_model(source):
    yield CostModel(source)


@pytest.fixture(scope="module")
def quiet_config():
    """Failure-free scenario whose source device matches the ``source`` fixture"""
    yield ScenarioConfig(inject_failures=False, source_bandwidth=1.0, source_latency=0.0)


@pytest.fixture(scope="module")
def chain():
    # a -> b -> c, 1e9 instructions each: 1 s on a 1000 MIPS device
    yield validate_dag([TaskSpec('a', 1e9, data_size=2.0),
                        TaskSpec('b', 1e9, data_size=0.0, deps={'a'}),
                        TaskSpec('c', 1e9, data_size=0.0, deps={'b'})])


@pytest.fixture(scope="module")
def diamond():
    # a -> (b, c) -> d with b longer than c
    yield validate_dag([TaskSpec('a', 1e9),
                        TaskSpec('b', 3e9, deps={'a'}),
                        TaskSpec('c', 1e9, deps={'a'}),
                        TaskSpec('d', 1e9, deps={'b', 'c'})])


@pytest.fixture(scope="module")
def small_config():
    yield ScenarioConfig(scenario_id='small', app_count=3, device_count=(4, 6), task_count=(3, 6),
                         instruction_scale=1e4, avail_time=(1e6, 2e6), mtbf=(30.0, 60.0))
