# -*- coding: utf-8 -*-

"""Device model: heterogeneous devices, their reliability criteria and Weibull failure times"""

import math
from dataclasses import dataclass
from enum import Enum

from scipy.special import gamma

from ft_offload.exceptions import EmptyInput, InvalidDevice, InvalidInput, InvalidWeights

#: Shape of the failure law when a device does not state one
DEFAULT_FAILURE_SHAPE = 1.21
WEIGHT_TOLERANCE = 1e-9


class Interface(Enum):
    WIFI = 'wifi'
    ETHER = 'ether'


@dataclass(frozen=True)
class WeibullParams:
    """2-parameter Weibull law: ``shape`` is dimensionless, ``scale`` in seconds"""

    shape: float
    scale: float

    def __post_init__(self):
        if not (self.shape > 0 and self.scale > 0):
            raise InvalidInput("Weibull shape and scale must be positive, got {} and {}"
                               .format(self.shape, self.scale), source={'parameter': 'weibull'})


@dataclass(frozen=True)
class WeightsConfig:
    """Weight factors of the availability, reliability and replica score products"""

    avail_y: float = 0.5
    avail_z: float = 0.5
    score_y: float = 0.2
    score_z: float = 0.6
    score_lambda: float = 0.2
    alpha_cpu: float = 1.0 / 3
    alpha_batt: float = 1.0 / 3
    alpha_conn: float = 1.0 / 3

    def __post_init__(self):
        groups = {'avail': (self.avail_y, self.avail_z),
                  'score': (self.score_y, self.score_z, self.score_lambda),
                  'alpha': (self.alpha_cpu, self.alpha_batt, self.alpha_conn)}
        for name, weights in groups.items():
            if any(weight < 0 for weight in weights):
                raise InvalidWeights("{} weights must not be negative: {}".format(name, weights))
            if abs(sum(weights) - 1.0) > WEIGHT_TOLERANCE:
                raise InvalidWeights("{} weights must sum to 1, got {}".format(name, sum(weights)))


@dataclass(frozen=True)
class DeviceSpec:
    """A participating device

    Speeds are in MIPS, bandwidths and transfer rates in MBps, times in seconds.
    ``cpu_utilization`` is the fraction of the CPU available to offloaded work.
    """

    id: str
    cpu_speed: float
    cpu_utilization: float = 1.0
    battery: float = 1.0
    has_wifi: bool = True
    has_ether: bool = False
    bandwidth_wifi: float = 1.0
    bandwidth_ether: float = 0.0
    latency: float = 0.0
    avail_time: float = math.inf
    mtbf: float = 100.0
    per_conn_rate: float = 0.0
    conn_count: int = 0
    tasks_failed: int = 0
    tasks_total: int = 0
    peers_connected: int = 0
    failure_shape: float = DEFAULT_FAILURE_SHAPE

    def __post_init__(self):
        checks = ((self.cpu_speed > 0, 'cpu_speed must be positive'),
                  (0 < self.cpu_utilization <= 1, 'cpu_utilization must be in (0, 1]'),
                  (0 <= self.battery <= 1, 'battery must be in [0, 1]'),
                  (self.mtbf > 0, 'mtbf must be positive'),
                  (self.failure_shape > 0, 'failure_shape must be positive'),
                  (self.bandwidth_wifi >= 0 and self.bandwidth_ether >= 0, 'bandwidths must not be negative'),
                  (self.latency >= 0, 'latency must not be negative'),
                  (self.avail_time >= 0, 'avail_time must not be negative'),
                  (self.per_conn_rate >= 0, 'per_conn_rate must not be negative'),
                  (self.conn_count >= 0, 'conn_count must not be negative'),
                  (0 <= self.tasks_failed <= self.tasks_total, 'tasks_failed must be in [0, tasks_total]'),
                  (self.peers_connected >= 0, 'peers_connected must not be negative'))
        for valid, message in checks:
            if not valid:
                raise InvalidDevice("Device {}: {}".format(self.id, message), source={'device': self.id})

    @property
    def failure_params(self):
        """Weibull law whose mean equals the device MTBF"""
        return WeibullParams(self.failure_shape, weibull_scale_for_mean(self.failure_shape, self.mtbf))


@dataclass(frozen=True)
class ReliabilityScores:
    capability: float
    availability: float
    comm_capacity: float
    reliability: float


def validate_population(devices):
    """Check a device population as a whole

    :param iterable devices: DeviceSpec instances
    :return tuple: the devices
    """
    devices = tuple(devices)
    if not devices:
        raise EmptyInput("A device population needs at least one device")
    seen = set()
    for device in devices:
        if device.id in seen:
            raise InvalidDevice("Device id {} is used more than once".format(device.id), source={'device': device.id})
        seen.add(device.id)
        if device.peers_connected > len(devices) - 1:
            raise InvalidDevice("Device {} is connected to {} peers but the population has {} devices"
                                .format(device.id, device.peers_connected, len(devices)),
                                source={'device': device.id})
    return devices


def computing_capability(dev):
    return dev.cpu_speed * dev.cpu_utilization


def availability(dev, w):
    return (w.avail_y * dev.mtbf) * (w.avail_z * dev.battery)


def effective_link_speed(dev, interface):
    """Throughput of one interface: indicator times bandwidth (MBps)"""
    if interface is Interface.WIFI:
        return float(dev.has_wifi) * dev.bandwidth_wifi
    return float(dev.has_ether) * dev.bandwidth_ether


def total_bandwidth(dev):
    return sum(effective_link_speed(dev, interface) for interface in Interface)


def communication_capacity(dev):
    """Bandwidth left for future connections, never negative"""
    return max(0.0, total_bandwidth(dev) - dev.per_conn_rate * dev.conn_count)


def reliability(dev, w):
    """Compute the three criteria of a device and their weighted product

    :param DeviceSpec dev: the device
    :param WeightsConfig w: the weight factors
    :return ReliabilityScores: capability, availability, communication capacity and reliability
    """
    capability = computing_capability(dev)
    avail = availability(dev, w)
    capacity = communication_capacity(dev)
    return ReliabilityScores(capability=capability,
                             availability=avail,
                             comm_capacity=capacity,
                             reliability=(w.alpha_cpu * capability) * (w.alpha_batt * avail)
                             * (w.alpha_conn * capacity))


def weibull_inverse_cdf(p, u):
    """Failure time at cumulative probability ``u``"""
    return p.scale * (-math.log1p(-u)) ** (1.0 / p.shape)


def sample_failure_time(p, rng):
    """Draw a time between failures by inverse-CDF sampling

    :param WeibullParams p: the failure law
    :param numpy.random.Generator rng: the random source owned by the caller
    :return float: seconds until the next failure
    """
    u = rng.random()
    while u <= 0.0:
        u = rng.random()
    return weibull_inverse_cdf(p, u)


def weibull_mean(p):
    return float(p.scale * gamma(1.0 + 1.0 / p.shape))


def weibull_scale_for_mean(shape, mean):
    """Scale parameter giving a Weibull law of ``shape`` the requested mean"""
    return float(mean / gamma(1.0 + 1.0 / shape))
