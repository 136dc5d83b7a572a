# -*- coding: utf-8 -*-

"""Scenario configuration with the default task and device parameter values"""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Tuple

from ft_offload.costs import CostModel, make_source_device
from ft_offload.device import WeightsConfig
from ft_offload.exceptions import InvalidConfig

STRATEGY_NAMES = ('FT_ALGO', 'CHECKPOINT_ONLY', 'REPLICATE_ONLY', 'NO_FT')

RANGE_FIELDS = ('task_count', 'instructions', 'data_size', 'device_count', 'cpu_speed', 'cpu_utilization',
                'battery', 'avail_time', 'bandwidth_wifi', 'bandwidth_ether', 'latency', 'conn_count',
                'history_total', 'mtbf')


@dataclass(frozen=True)
class ScenarioConfig:
    """Every knob of a simulated scenario

    Ranges are ``(min, max)`` pairs sampled uniformly. Defaults follow the task
    and device parameter tables of the evaluation; the DAG shape, the source
    device and the fault tolerance costs are choices of this simulator.
    """

    scenario_id: str = 'default'
    seed: int = 0
    strategies: Tuple[str, ...] = STRATEGY_NAMES

    # applications
    app_count: int = 50
    task_count: Tuple[int, int] = (5, 15)
    edge_probability: float = 0.3
    instructions: Tuple[float, float] = (20000, 100000)
    instruction_scale: float = 3e6
    data_size: Tuple[float, float] = (0.5, 10.0)

    # devices
    device_count: Tuple[int, int] = (20, 50)
    cpu_speed: Tuple[float, float] = (1000, 100000)
    cpu_utilization: Tuple[float, float] = (0.2, 1.0)
    battery: Tuple[float, float] = (0.1, 1.0)
    avail_time: Tuple[float, float] = (1000, 30000)
    weibull_shape: float = 1.21
    weibull_scale: float = 94.08
    mtbf: Optional[Tuple[float, float]] = None
    bandwidth_wifi: Tuple[float, float] = (0.9, 1.2)
    ether_fraction: float = 0.0
    bandwidth_ether: Tuple[float, float] = (10.0, 100.0)
    latency: Tuple[float, float] = (0.01, 0.05)
    per_conn_rate: float = 0.05
    conn_count: Tuple[int, int] = (0, 5)
    history_total: Tuple[int, int] = (0, 50)

    # source device
    source_cpu_speed: float = 1000.0
    source_bandwidth: float = 1.2
    source_latency: float = 0.01

    # fault tolerance
    weights: WeightsConfig = field(default_factory=WeightsConfig)
    repair_delay: float = 1.0
    snapshot_ratio: float = 0.1
    checkpoint_cost: Optional[float] = 0.05
    min_checkpoint_interval: float = 1.0
    inject_failures: bool = True
    max_events: int = 5000000

    def __post_init__(self):
        for name in RANGE_FIELDS:
            bounds = getattr(self, name)
            if bounds is None:
                continue
            bounds = tuple(bounds)
            object.__setattr__(self, name, bounds)
            if len(bounds) != 2 or bounds[0] > bounds[1]:
                raise InvalidConfig("{} must be a [min, max] pair with min <= max, got {}".format(name, list(bounds)),
                                    source={'parameter': name})
        object.__setattr__(self, 'strategies', tuple(self.strategies))

        checks = ((self.app_count >= 1, 'app_count'),
                  (self.task_count[0] >= 1, 'task_count'),
                  (0.0 <= self.edge_probability <= 1.0, 'edge_probability'),
                  (self.instructions[0] > 0, 'instructions'),
                  (self.instruction_scale > 0, 'instruction_scale'),
                  (self.data_size[0] >= 0, 'data_size'),
                  (self.device_count[0] >= 1, 'device_count'),
                  (self.cpu_speed[0] > 0, 'cpu_speed'),
                  (0 < self.cpu_utilization[0] and self.cpu_utilization[1] <= 1, 'cpu_utilization'),
                  (0 <= self.battery[0] and self.battery[1] <= 1, 'battery'),
                  (self.weibull_shape > 0 and self.weibull_scale > 0, 'weibull'),
                  (self.mtbf is None or self.mtbf[0] > 0, 'mtbf'),
                  (0.0 <= self.ether_fraction <= 1.0, 'ether_fraction'),
                  (self.repair_delay >= 0, 'repair_delay'),
                  (self.snapshot_ratio >= 0, 'snapshot_ratio'),
                  (self.checkpoint_cost is None or self.checkpoint_cost >= 0, 'checkpoint_cost'),
                  (self.min_checkpoint_interval > 0, 'min_checkpoint_interval'),
                  (self.max_events > 0, 'max_events'),
                  (set(self.strategies) <= set(STRATEGY_NAMES) and len(self.strategies) > 0, 'strategies'))
        for valid, name in checks:
            if not valid:
                raise InvalidConfig("Invalid value for {}".format(name), source={'parameter': name})

    def replace(self, **changes):
        """Return a copy with some fields changed"""
        return dataclasses.replace(self, **changes)

    def source_device(self):
        """The never-failing device owning the application"""
        return make_source_device(cpu_speed=self.source_cpu_speed, bandwidth=self.source_bandwidth,
                                  latency=self.source_latency)

    def cost_model(self):
        """Cost formulas of the scenario"""
        return CostModel(self.source_device(), snapshot_ratio=self.snapshot_ratio,
                         checkpoint_cost=self.checkpoint_cost)
