#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/base/PrepBaseModel.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.03.2026
# Last Modified Date:  14.09.2026
# Last Modified By:    treeprep contributors

from pydantic import BaseModel, ConfigDict


class PrepBaseModel(BaseModel):
	"""
	Base class of every configuration model.
	Unknown keys are rejected and defaults are validated like explicit values.
	"""

	model_config = ConfigDict(
		extra="forbid",
		arbitrary_types_allowed=True,
		validate_default=True,
		populate_by_name=True,
	)
