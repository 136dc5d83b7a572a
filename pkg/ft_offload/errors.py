# -*- coding: utf-8 -*-

"""Helper to format simulator errors as a report document"""


def error_report(errors):
    """Construct an error report

    :param iterable errors: an iterable of error dicts (see SimulationException.to_dict)
    :return dict: a dict of errors with their count
    """
    errors = [error for error in errors]
    return {'errors': errors,
            'meta': {'count': len(errors)}}
