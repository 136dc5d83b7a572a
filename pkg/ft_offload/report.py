# -*- coding: utf-8 -*-

"""CSV output of result tables, their summaries and the aggregation of existing result files"""

import csv
import logging
import os
from collections import OrderedDict

import numpy as np

from ft_offload.exceptions import EmptyInput, InvalidFile
from ft_offload.experiment import ResultRow, ResultTable

logger = logging.getLogger(__name__)

HEADER = ('scenario_id', 'strategy', 'sweep_value', 'seed', 'completion_time_s', 'overhead_s', 'ft_messages')

SUMMARY_HEADER = ('scenario_id', 'strategy', 'sweep_value', 'runs',
                  'completion_time_mean_s', 'completion_time_std_s',
                  'overhead_mean_s', 'overhead_std_s',
                  'ft_messages_mean', 'ft_messages_std')


def _number(value):
    return '{:.6f}'.format(value)


def _sweep_value(value):
    return '' if value is None else '{:g}'.format(value)


def summary_path(path):
    """``results.csv`` is summarized in ``results_summary.csv``"""
    stem, ext = os.path.splitext(str(path))
    return '{}_summary{}'.format(stem, ext or '.csv')


def _write_rows(path, header, rows):
    try:
        directory = os.path.dirname(str(path))
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise InvalidFile("Cannot write {}: {}".format(path, e), source={'file': str(path)})
    logger.debug("Wrote %d rows to %s", len(rows), path)
    return path


def summarize(table):
    """Mean and population standard deviation of every metric per (scenario, sweep value, strategy)

    Groups keep the order in which they first appear in the table.

    :param ResultTable table: the raw rows
    :return list: one tuple per group, matching :data:`SUMMARY_HEADER`
    """
    groups = OrderedDict()
    for row in table:
        groups.setdefault((row.scenario_id, row.strategy, row.sweep_value), []).append(row)

    summary = []
    for (scenario_id, strategy, sweep_value), rows in groups.items():
        completion = np.array([row.completion_time for row in rows], dtype=float)
        overhead = np.array([row.overhead for row in rows], dtype=float)
        messages = np.array([row.ft_messages for row in rows], dtype=float)
        summary.append((scenario_id, strategy, sweep_value, len(rows),
                        float(completion.mean()), float(completion.std()),
                        float(overhead.mean()), float(overhead.std()),
                        float(messages.mean()), float(messages.std())))
    return summary


def emit_csv(table, path):
    """Write the raw rows of a table and their summary

    :param ResultTable table: a non-empty table
    :param str path: the raw rows file; the summary goes next to it, see :func:`summary_path`
    :return tuple: the two written paths
    """
    if not len(table):
        raise EmptyInput("No result row to write to {}".format(path), source={'file': str(path)})

    rows = [(row.scenario_id, row.strategy, _sweep_value(row.sweep_value), row.seed,
             _number(row.completion_time), _number(row.overhead), row.ft_messages)
            for row in table]
    _write_rows(path, HEADER, rows)
    return path, emit_summary(table, summary_path(path))


def emit_summary(table, path):
    summary = [(scenario_id, strategy, _sweep_value(sweep_value), runs) + tuple(_number(value) for value in values)
               for scenario_id, strategy, sweep_value, runs, *values in summarize(table)]
    return _write_rows(path, SUMMARY_HEADER, summary)


def read_csv(path):
    """Read a raw rows file written by :func:`emit_csv`

    :param str path: the file
    :return ResultTable: the rows
    """
    try:
        with open(path, 'r', encoding='utf-8', newline='') as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or tuple(header) != HEADER:
                raise InvalidFile("{} does not start with the result header".format(path), source={'file': str(path)},
                                  meta={'header': header})
            rows = []
            for line, record in enumerate(reader, start=2):
                try:
                    scenario_id, strategy, sweep_value, seed, completion, overhead, messages = record
                    rows.append(ResultRow(scenario_id=scenario_id,
                                          strategy=strategy,
                                          sweep_value=float(sweep_value) if sweep_value else None,
                                          seed=int(seed),
                                          completion_time=float(completion),
                                          overhead=float(overhead),
                                          ft_messages=int(messages)))
                except ValueError as e:
                    raise InvalidFile("Invalid row in {}: {}".format(path, e), source={'file': str(path), 'line': line})
    except OSError as e:
        raise InvalidFile("Cannot read {}: {}".format(path, e), source={'file': str(path)})
    return ResultTable(rows=tuple(rows))


def aggregate(paths):
    """Merge existing result files into one table, in the order of ``paths``"""
    rows = []
    for path in paths:
        rows.extend(read_csv(path).rows)
    return ResultTable(rows=tuple(rows))
