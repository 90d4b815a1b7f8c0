#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/protocol/LoggerProtocol.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  02.03.2026
# Last Modified By:    treeprep contributors

from typing import Any, Protocol, runtime_checkable


@runtime_checkable
class LoggerProtocol(Protocol):

	def debug(self, msg: str | None, *args: Any, extra: None | dict[str, Any] = None, **kwargs: Any) -> None:
		...

	def info(self, msg: str | None, *args: Any, extra: None | dict[str, Any] = None, **kwargs: Any) -> None:
		...

	def warning(self, msg: str | None, *args: Any, extra: None | dict[str, Any] = None, **kwargs: Any) -> None:
		...

	def error(self, msg: str | None, *args: Any, extra: None | dict[str, Any] = None, **kwargs: Any) -> None:
		...
