#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/base/PrepUnit.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  14.09.2026
# Last Modified By:    treeprep contributors

import logging
from typing import Any
from pydantic import PrivateAttr
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.protocol.LoggerProtocol import LoggerProtocol


class PrepUnit(PrepBaseModel):
	"""
	Configurable processing unit. Instantiated as ``Unit(logger=..., **config)``;
	``post_init`` runs once validation succeeded.
	"""

	_logger: Any = PrivateAttr(default=None)

	def __init__(self, logger: None | LoggerProtocol = None, **kwargs: Any) -> None:
		super().__init__(**kwargs)
		self._logger = logger or logging.getLogger(f"treeprep.{type(self).__name__}")
		self.post_init()

	@property
	def logger(self) -> LoggerProtocol:
		return self._logger

	def post_init(self) -> None:
		pass
