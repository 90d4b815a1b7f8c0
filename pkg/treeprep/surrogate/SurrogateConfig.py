#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/SurrogateConfig.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                12.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

from typing import Any, Literal
from pydantic import Field
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.surrogate.BoostedEnsemble import BoostedEnsemble, DEFAULT_FLOOR_FRACTION, fit_gbrt
from treeprep.surrogate.QuantileForest import QuantileForest, fit_qrf

SurrogateModel = BoostedEnsemble | QuantileForest


class SurrogateConfig(PrepBaseModel):

	kind: Literal["gbrt", "qrf"] = "gbrt"

	#: boosting stages M
	n_estimators: int = Field(default=100, ge=1)
	#: shrinkage nu
	learning_rate: float = Field(default=0.1, gt=0.0, le=1.0)
	max_depth: int = Field(default=3, ge=0)
	min_samples_leaf: int = Field(default=1, ge=1)
	floor_fraction: float = Field(default=DEFAULT_FLOOR_FRACTION, gt=0.0)

	qrf_trees: int = Field(default=50, ge=1)
	#: None grows forest trees until leaves hold qrf_min_samples_leaf points
	qrf_max_depth: None | int = Field(default=8, ge=1)
	qrf_min_samples_leaf: int = Field(default=2, ge=1)

	def fit(self, X: Any, y: Any, seed: int = 0) -> SurrogateModel:
		"""
		Fit the configured model. Forests need two records; with a single one
		the boosted ensemble is used regardless of ``kind``.
		"""
		if self.kind == "qrf" and len(y) >= 2:
			return fit_qrf(X, y, self.qrf_trees, seed, self.qrf_max_depth, self.qrf_min_samples_leaf)
		return fit_gbrt(X, y, self.n_estimators, self.learning_rate, self.max_depth, self.min_samples_leaf)
