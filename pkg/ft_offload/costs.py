# -*- coding: utf-8 -*-

"""Time costs of computing, moving data and writing checkpoints"""

import math

from ft_offload.device import DeviceSpec, Interface, computing_capability, effective_link_speed
from ft_offload.exceptions import NoRoute

SOURCE_ID = 'source'
INSTRUCTIONS_PER_MI = 1e6


def make_source_device(cpu_speed=1000.0, bandwidth=1.2, latency=0.01, device_id=SOURCE_ID):
    """The application owner: supplies task inputs, stores checkpoints and never fails"""
    return DeviceSpec(id=device_id, cpu_speed=cpu_speed, cpu_utilization=1.0, battery=1.0,
                      has_wifi=True, bandwidth_wifi=bandwidth, has_ether=True, bandwidth_ether=bandwidth,
                      latency=latency, avail_time=math.inf)


def exec_time(task, dev):
    """Seconds needed by ``dev`` to run ``task`` at its available capability"""
    return task.instructions / (computing_capability(dev) * INSTRUCTIONS_PER_MI)


def link_speed(sender, receiver):
    """Best throughput over the interfaces enabled on both ends (MBps)"""
    speeds = [min(effective_link_speed(sender, interface), effective_link_speed(receiver, interface))
              for interface in Interface]
    speed = max(speeds)
    if not speed > 0:
        raise NoRoute("Devices {} and {} share no enabled interface".format(sender.id, receiver.id),
                      source={'from': sender.id, 'to': receiver.id})
    return speed


def transfer_time(data_size, sender, receiver):
    """Seconds to move ``data_size`` megabytes between two devices, latencies included

    Moving data inside the same device is free.
    """
    if sender.id == receiver.id:
        return 0.0
    return data_size / link_speed(sender, receiver) + sender.latency + receiver.latency


class CostModel(object):
    """Cost formulas bound to one source device and the scenario's checkpoint settings"""

    def __init__(self, source, snapshot_ratio=1.0, checkpoint_cost=None):
        """
        :param DeviceSpec source: the device holding inputs and checkpoints
        :param float snapshot_ratio: snapshot size as a fraction of the task data size
        :param float checkpoint_cost: fixed checkpoint time, derived from the snapshot size when None
        """
        self.source = source
        self.snapshot_ratio = snapshot_ratio
        self.fixed_checkpoint_cost = checkpoint_cost

    def exec_time(self, task, dev):
        return exec_time(task, dev)

    def input_transfer(self, task, dev):
        return transfer_time(task.data_size, self.source, dev)

    def snapshot_size(self, task):
        return self.snapshot_ratio * task.data_size

    def snapshot_transfer(self, task, dev):
        return transfer_time(self.snapshot_size(task), dev, self.source)

    def snapshot_restore(self, task, dev):
        """Time to fetch the stored snapshot back before resuming from a checkpoint"""
        return transfer_time(self.snapshot_size(task), self.source, dev)

    def checkpoint_cost(self, task, dev):
        """Time a checkpoint pauses the task (T_s)"""
        if self.fixed_checkpoint_cost is not None:
            return self.fixed_checkpoint_cost
        if dev.id == self.source.id:
            return 0.0
        return self.snapshot_size(task) / link_speed(dev, self.source)

    def completion_estimate(self, task, dev):
        """Input transfer plus execution, the task time used to score replica hosts"""
        return self.input_transfer(task, dev) + self.exec_time(task, dev)
