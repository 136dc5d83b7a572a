# -*- coding: utf-8 -*-

"""Seeded random substreams

Every consumer of randomness gets its own generator derived from the run seed
and a fixed spawn key, so drawing more numbers in one place never shifts the
numbers drawn somewhere else. In particular the failure schedule of a device
does not depend on the strategy being simulated.
"""

import numpy as np

DEVICES_STREAM = 0
DAG_STREAM = 1
FAILURE_STREAM = 2


def substream(seed, *key):
    """Return an independent generator for ``seed`` and a spawn key

    :param int seed: the run seed
    :param int key: stream identifiers (stream kind, application index, device index ...)
    :return numpy.random.Generator: the generator
    """
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def failure_stream(seed, app_index, device_index):
    """Generator feeding the failure schedule of one device for one application run"""
    return substream(seed, FAILURE_STREAM, app_index, device_index)


def devices_stream(seed):
    return substream(seed, DEVICES_STREAM)


def dag_stream(seed, app_index):
    return substream(seed, DAG_STREAM, app_index)
