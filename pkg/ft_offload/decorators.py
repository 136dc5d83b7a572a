# -*- coding: utf-8 -*-

"""Decorators turning simulator errors into error documents or command line failures"""

import logging
from functools import wraps

import click

from ft_offload.exceptions import SimulationException

logger = logging.getLogger(__name__)


def capture_errors(func=None, propagate=False):
    """Run a unit of work and report its error instead of raising it

    The wrapped function returns ``(result, None)`` on success and
    ``(None, error_dict)`` on failure. Unexpected exceptions are reported as
    unknown errors, or raised again when ``propagate`` is set.

    :param callable func: the function to decorate
    :param bool propagate: raise exceptions that are not simulator errors
    :return callable: the wrapped function
    """
    if func is None:
        return lambda f: capture_errors(f, propagate=propagate)

    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs), None
        except SimulationException as e:
            return None, e.to_dict()
        except Exception as e:
            if propagate is True:
                raise
            logger.exception("Unexpected error in %s", func.__name__)
            exc = SimulationException(getattr(e, 'detail', str(e) or e.__class__.__name__),
                                      source=getattr(e, 'source', None),
                                      title=getattr(e, 'title', None),
                                      code=getattr(e, 'code', None),
                                      meta=getattr(e, 'meta', None))
            return None, exc.to_dict()
    return wrapper


def cli_errors(func):
    """Turn simulator errors raised by a command into a command line failure

    :param callable func: the command callback to decorate
    :return callable: the wrapped function
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SimulationException as e:
            raise click.ClickException('{}: {}{}'.format(e.title, e.detail, _format_source(e.to_dict())))
    return wrapper


def _format_source(error):
    source = error.get('source')
    if not source:
        return ''
    return ' ({})'.format(', '.join('{}={}'.format(key, value) for key, value in sorted(source.items())))
