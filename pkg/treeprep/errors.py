#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/errors.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  30.06.2026
# Last Modified By:    treeprep contributors


class PrepError(Exception):
	pass


class ConfigError(PrepError, ValueError):
	pass


class CapacityError(PrepError):
	pass


class DimensionError(PrepError, ValueError):
	pass


class QASMError(PrepError):
	pass


class QASMSyntaxError(QASMError):

	def __init__(self, msg: str, line: int, column: int) -> None:
		super().__init__(f"{msg} (line {line}, column {column})")
		self.line = line
		self.column = column


class UnsupportedGateError(QASMError):

	def __init__(self, gate: str, line: None | int = None) -> None:
		where = f" (line {line})" if line is not None else ""
		super().__init__(f"Unsupported gate '{gate}'{where}")
		self.gate = gate
