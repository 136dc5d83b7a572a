# -*- coding: utf-8 -*-

"""Reliability clustering: one-dimensional k-means splitting devices into high and low reliability clusters"""

from dataclasses import dataclass
from typing import FrozenSet, Tuple

import numpy as np

from ft_offload.exceptions import EmptyInput, InvalidInput

MAX_ITERATIONS = 100
#: Below this spread every value is considered identical
MIN_SPREAD = 1e-12


@dataclass(frozen=True)
class KMeansResult:
    """Cluster label of every input value, with centroids sorted in ascending order"""

    labels: Tuple[int, ...]
    centroids: Tuple[float, ...]
    iterations: int
    objectives: Tuple[float, ...]


@dataclass(frozen=True)
class ClusterSplit:
    high: FrozenSet[str]
    low: FrozenSet[str]
    centroid_high: float
    centroid_low: float


def _assign(values, centroids):
    # argmin keeps the first (lowest) centroid on ties
    return np.argmin(np.abs(values[:, None] - centroids[None, :]), axis=1)


def _objective(values, centroids, labels):
    return float(np.sum((values - centroids[labels]) ** 2))


def kmeans_1d(values, k, seed=0):
    """Lloyd iterations on scalar values

    With ``k=2`` the centroids start at the minimum and the maximum value;
    larger ``k`` adds evenly spaced centroids between them. The outcome is
    deterministic and ``seed`` is accepted for interface stability only.

    :param list values: the values to cluster
    :param int k: the number of clusters
    :param int seed: unused
    :return KMeansResult: labels, centroids, iteration count and objective after each assignment
    """
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        raise EmptyInput("k-means needs at least one value")
    if k < 1:
        raise InvalidInput("k must be at least 1, got {}".format(k), source={'parameter': 'k'})

    low, high = float(values.min()), float(values.max())
    if high - low < MIN_SPREAD:
        return KMeansResult(labels=(0,) * values.size, centroids=(float(values.mean()),), iterations=0,
                            objectives=(0.0,))

    k = min(k, np.unique(values).size)
    centroids = np.array([float(values.mean())]) if k == 1 else np.linspace(low, high, k)

    labels = _assign(values, centroids)
    objectives = [_objective(values, centroids, labels)]
    iterations = 0
    while iterations < MAX_ITERATIONS:
        iterations += 1
        for cluster in range(k):
            members = values[labels == cluster]
            if members.size:
                centroids[cluster] = members.mean()
        new_labels = _assign(values, centroids)
        objectives.append(_objective(values, centroids, new_labels))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels

    return KMeansResult(labels=tuple(int(label) for label in labels),
                        centroids=tuple(float(centroid) for centroid in centroids),
                        iterations=iterations,
                        objectives=tuple(objectives))


def split_by_reliability(reliabilities, seed=0):
    """Split devices into high and low reliability clusters with 2-means

    :param dict reliabilities: reliability value of every device id
    :param int seed: forwarded to :func:`kmeans_1d`
    :return ClusterSplit: the two clusters, the higher centroid being the high reliability one
    """
    if not reliabilities:
        raise EmptyInput("Cannot cluster an empty device population")

    device_ids = sorted(reliabilities)
    result = kmeans_1d([reliabilities[device_id] for device_id in device_ids], 2, seed)

    if len(result.centroids) == 1:
        return ClusterSplit(high=frozenset(device_ids), low=frozenset(),
                            centroid_high=result.centroids[0], centroid_low=result.centroids[0])

    high = frozenset(device_id for device_id, label in zip(device_ids, result.labels) if label == 1)
    low = frozenset(device_id for device_id, label in zip(device_ids, result.labels) if label == 0)
    return ClusterSplit(high=high, low=low, centroid_high=result.centroids[1], centroid_low=result.centroids[0])
