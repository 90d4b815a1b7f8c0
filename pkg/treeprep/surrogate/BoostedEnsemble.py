#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/BoostedEnsemble.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                10.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Sequence
from typing import Any, NamedTuple
from scipy.spatial import cKDTree
from treeprep.circuit.ParameterVector import TWO_PI
from treeprep.errors import DimensionError
from treeprep.surrogate.RegressionTree import RegressionTree, fit_tree, presort

#: floor trigger distance as a fraction of the box diameter 2pi * sqrt(d)
DEFAULT_FLOOR_FRACTION = 0.01


class UncertainPrediction(NamedTuple):
	mean: float
	std: float
	floor_applied: bool = False


class BoostedEnsemble:
	"""
	Gradient-boosted regression trees under squared loss:
	f(x) = base + nu * sum_m h_m(x), base being the mean training target.

	Instances are immutable once fit and may be shared between threads.
	"""

	kind = "gbrt"

	def __init__(
		self,
		trees: Sequence[RegressionTree],
		base: float,
		nu: float,
		max_depth: int,
		min_samples_leaf: int,
		n_features: int
	) -> None:
		if len(trees) < 1:
			raise ValueError("An ensemble needs at least one tree")
		self.trees = tuple(trees)
		self.base = float(base)
		self.nu = float(nu)
		self.max_depth = max_depth
		self.min_samples_leaf = min_samples_leaf
		self.n_features = n_features

	@property
	def n_trees(self) -> int:
		return len(self.trees)

	def _check(self, X: Any) -> np.ndarray:
		X = np.atleast_2d(np.asarray(X, dtype=np.float64))
		if X.shape[1] != self.n_features:
			raise DimensionError(f"Ensemble was fit on {self.n_features} coordinates, got {X.shape[1]}")
		return X

	def contributions(self, X: Any) -> np.ndarray:
		""" Unscaled per-tree outputs h_m(x), shape (M, n) """
		X = self._check(X)
		return np.stack([tree.predict(X) for tree in self.trees])

	def predict(self, X: Any) -> np.ndarray:
		return self.base + self.nu * self.contributions(X).sum(axis=0)

	def predict_uncertain_batch(
		self,
		X: Any,
		train_X: Any,
		train_y: Any,
		floor_fraction: float = DEFAULT_FLOOR_FRACTION
	) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		"""
		Vectorised predict_uncertain: (mean, std, floor_applied) arrays.
		The spread is the population standard deviation of the per-tree outputs;
		points farther than ``floor_fraction * 2pi * sqrt(d)`` from every training
		point get std^2 >= variance_floor_eta. Fitted trees have no empty leaves:
		every leaf holds at least min_samples_leaf residuals.
		"""
		X = self._check(X)
		train_X = np.atleast_2d(np.asarray(train_X, dtype=np.float64))
		train_y = np.asarray(train_y, dtype=np.float64)
		if train_y.size == 0:
			raise ValueError("predict_uncertain needs a non-empty dataset")

		h = self.contributions(X)
		mean = self.base + self.nu * h.sum(axis=0)
		var = h.var(axis=0)

		delta = floor_fraction * TWO_PI * np.sqrt(self.n_features)
		dist, _ = cKDTree(train_X).query(X, k=1)
		floor = dist > delta
		if floor.any():
			eta = variance_floor_eta(train_y, self.nu, self.n_trees)
			var = np.where(floor, np.maximum(var, eta), var)

		return mean, np.sqrt(var), floor

	def predict_uncertain(self, x: Any, train_X: Any, train_y: Any, floor_fraction: float = DEFAULT_FLOOR_FRACTION) -> UncertainPrediction:
		mean, std, floor = self.predict_uncertain_batch(np.atleast_2d(np.asarray(x, dtype=np.float64)), train_X, train_y, floor_fraction)
		return UncertainPrediction(float(mean[0]), float(std[0]), bool(floor[0]))

	def to_dict(self) -> dict[str, Any]:
		return {
			"base": self.base,
			"nu": self.nu,
			"max_depth": self.max_depth,
			"min_samples_leaf": self.min_samples_leaf,
			"n_features": self.n_features,
			"trees": [t.to_dict() for t in self.trees],
		}

	@classmethod
	def from_dict(cls, d: dict[str, Any]) -> "BoostedEnsemble":
		return cls(
			[RegressionTree.from_dict(t) for t in d["trees"]],
			d["base"], d["nu"], d["max_depth"], d["min_samples_leaf"], d["n_features"]
		)


def fit_gbrt(
	X: Any,
	y: Any,
	n_estimators: int = 100,
	nu: float = 0.1,
	max_depth: int = 3,
	min_samples_leaf: int = 1
) -> BoostedEnsemble:
	"""
	Stage m fits a tree to the residuals y - f_{m-1}(X) and adds it with shrinkage nu.
	No subsampling: the result is a deterministic function of the data and its order.

	:raises ValueError: no data, n_estimators < 1 or nu outside (0, 1]
	"""
	X = np.atleast_2d(np.asarray(X, dtype=np.float64))
	y = np.asarray(y, dtype=np.float64).ravel()
	if y.size < 1:
		raise ValueError("fit_gbrt needs at least one record")
	if X.shape[0] != y.size:
		raise DimensionError(f"{X.shape[0]} points but {y.size} targets")
	if n_estimators < 1:
		raise ValueError(f"n_estimators must be >= 1, got {n_estimators}")
	if not 0.0 < nu <= 1.0:
		raise ValueError(f"Shrinkage nu must lie in (0, 1], got {nu}")

	order = presort(X)
	base = float(np.mean(y))
	pred = np.full(y.size, base)
	trees: list[RegressionTree] = []
	for _ in range(n_estimators):
		tree = fit_tree(X, y - pred, max_depth, min_samples_leaf, order=order)
		pred = pred + nu * tree.predict(X)
		trees.append(tree)

	return BoostedEnsemble(trees, base, nu, max_depth, min_samples_leaf, X.shape[1])


def variance_floor_eta(y: Any, nu: float, m_max: int) -> float:
	""" eta = nu^2 / M_max * (1/t) * sum_i (y_i - mean(y))^2 """
	y = np.asarray(y, dtype=np.float64)
	if y.size < 1:
		raise ValueError("variance_floor_eta needs t >= 1")
	return nu * nu / m_max * float(np.mean((y - y.mean()) ** 2))
