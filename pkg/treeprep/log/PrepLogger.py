#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/log/PrepLogger.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  21.07.2026
# Last Modified By:    treeprep contributors

import logging, sys
from typing import ClassVar

# attributes every LogRecord carries; anything else arrived through extra={...}
_RECORD_KEYS = frozenset(
	logging.LogRecord("", 0, "", 0, "", (), None).__dict__.keys()
) | {"message", "asctime", "taskName"}


class ExtraFormatter(logging.Formatter):
	"""
	Appends the fields passed via ``extra`` as sorted key=value pairs:
	``2026-07-21 10:02:11 INFO treeprep.optimizer: sync [improved=2 y_best=0.031]``
	"""

	def format(self, record: logging.LogRecord) -> str:
		line = super().format(record)
		if extra := {k: v for k, v in record.__dict__.items() if k not in _RECORD_KEYS}:
			line += " [" + " ".join(f"{k}={extra[k]}" for k in sorted(extra)) + "]"
		return line


class PrepLogger:

	fmt: ClassVar[str] = "%(asctime)s %(levelname)s %(name)s: %(message)s"
	_configured: ClassVar[set[str]] = set()

	@classmethod
	def get_logger(cls, name: str = "treeprep", level: int = logging.INFO) -> logging.Logger:
		"""
		Return the named logger, attaching a stderr handler with ExtraFormatter
		the first time a given name is requested.
		"""
		logger = logging.getLogger(name)
		if name not in cls._configured:
			handler = logging.StreamHandler(sys.stderr)
			handler.setFormatter(ExtraFormatter(cls.fmt))
			logger.addHandler(handler)
			logger.setLevel(level)
			logger.propagate = False
			cls._configured.add(name)
		return logger
