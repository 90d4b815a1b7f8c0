#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/optimizer/RunConfig.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                18.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

from typing import Literal
from pydantic import Field, model_validator
from treeprep.acquisition.AcquisitionConfig import AcquisitionConfig
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.surrogate.SurrogateConfig import SurrogateConfig


class RunConfig(PrepBaseModel):
	"""
	Options of one optimisation run.

	mode: ``full`` searches the whole box, ``random_subspace`` random blocks of
	``block_size`` indices (redrawn every cycle when ``reshuffle``), ``layerwise``
	one block per ansatz layer.
	budget: number of cycles T after the warm-up.
	shots: measurements per evaluation, None for exact distributions.
	block_data: ``all_records`` trains block surrogates on every record, ``epoch_records``
	on the records produced since the previous synchronization.
	"""

	mode: Literal["full", "random_subspace", "layerwise"] = "layerwise"
	block_size: None | int = Field(default=None, ge=1)
	reshuffle: bool = True
	budget: int = Field(default=20, ge=0)
	#: stop at the first cycle boundary with at least this many evaluations
	max_evals: None | int = Field(default=None, ge=1)
	#: warm-up draws, max(10, 2d) when unset
	n_init: None | int = Field(default=None, ge=1)
	shots: None | int = Field(default=250, ge=1)
	#: shots of the target reference, exact p* when unset
	reference_shots: None | int = Field(default=None, ge=1)
	noise_sigma: float = Field(default=0.0, ge=0.0)
	#: with shots or noise, measure the incumbent once more at every synchronization
	#: and compare candidates against the mean of its measurements
	remeasure_incumbent: bool = True
	inner_iters: int = Field(default=5, ge=1)
	block_data: Literal["all_records", "epoch_records"] = "all_records"
	acquisition: AcquisitionConfig = AcquisitionConfig()
	surrogate: SurrogateConfig = SurrogateConfig()
	seed: int = 0
	max_workers: int = Field(default=4, ge=1)
	#: run block workers one after the other in block order
	sequential: bool = False
	#: zero every wall-clock field of emitted records
	deterministic: bool = False

	@model_validator(mode="after")
	def _check_block_size(self) -> "RunConfig":
		if self.mode == "random_subspace" and self.block_size is None:
			raise ValueError("random_subspace mode requires block_size")
		return self

	def init_count(self, d: int) -> int:
		return self.n_init if self.n_init is not None else max(10, 2 * d)

	@property
	def noisy(self) -> bool:
		return self.shots is not None or self.noise_sigma > 0
