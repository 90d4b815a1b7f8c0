#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/acquisition/AcquisitionConfig.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                16.03.2026
# Last Modified Date:  22.07.2026
# Last Modified By:    treeprep contributors

from typing import Literal
from pydantic import Field, field_validator
from treeprep.base.PrepBaseModel import PrepBaseModel


class AcquisitionConfig(PrepBaseModel):
	"""
	kind: ``ei`` maximises expected improvement, ``ucb`` minimises mean - kappa * std.
	kappa: a fixed positive multiplier or ``schedule`` for sqrt(2 ln t).
	n_cand: candidates scored per proposal.
	sigma_prop: scale (radians) of the gaussian perturbations around the incumbent.
	"""

	kind: Literal["ei", "ucb"] = "ei"
	kappa: float | Literal["schedule"] = "schedule"
	n_cand: int = Field(default=512, ge=1)
	sigma_prop: float = Field(default=0.25, gt=0.0)
	seed: int = 0

	@field_validator("kind", mode="before")
	@classmethod
	def _lower(cls, v: str) -> str:
		return v.lower() if isinstance(v, str) else v

	@field_validator("kappa")
	@classmethod
	def _positive_kappa(cls, v: float | str) -> float | str:
		if not isinstance(v, str) and v <= 0:
			raise ValueError(f"kappa must be > 0, got {v}")
		return v
