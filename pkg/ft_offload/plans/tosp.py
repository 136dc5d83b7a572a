# -*- coding: utf-8 -*-

"""Plan source reading externally produced task offloading scheduling plans"""

import os

from ft_offload.exceptions import InvalidConfig
from ft_offload.plans.base import BasePlanSource
from ft_offload.storage import load_plan


class TospFilePlanSource(BasePlanSource):
    """Load plans from TOSP files

    Give either ``path``, one plan used for every application, or ``directory``,
    holding one ``app_XXX.plan.json`` file per application index.
    """

    FILE_PATTERN = 'app_{:03d}.plan.json'

    def __init__(self, kwargs):
        super(TospFilePlanSource, self).__init__(kwargs)

        if getattr(self, 'path', None) is None and getattr(self, 'directory', None) is None:
            raise InvalidConfig("You must provide a path or a directory to use the TOSP file plan source")

    def get_plan(self, dag, devices, app_index):
        if getattr(self, 'path', None) is not None:
            return load_plan(self.path)
        return load_plan(os.path.join(self.directory, self.FILE_PATTERN.format(app_index)))
