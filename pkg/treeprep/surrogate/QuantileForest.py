#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/QuantileForest.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                12.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import numpy as np
from typing import Any
from sklearn.ensemble import RandomForestRegressor
from treeprep.errors import DimensionError


class QuantileForest:
	"""
	Quantile regression forest on a bagged scikit-learn forest.
	The training targets are routed through every fitted tree with ``apply``;
	a prediction at x pools, over all trees, the targets sharing x's leaf.
	Quantiles, mean and spread are computed on that pooled set.
	"""

	kind = "qrf"

	def __init__(self, forest: RandomForestRegressor, X: np.ndarray, y: np.ndarray) -> None:
		self.forest = forest
		self.X_train = X
		self.y_train = y
		#: leaf of every training point in every tree, shape (n_train, n_trees)
		self.train_leaves = forest.apply(X)

	@property
	def n_trees(self) -> int:
		return len(self.forest.estimators_)

	@property
	def n_features(self) -> int:
		return int(self.X_train.shape[1])

	def _check(self, X: Any) -> np.ndarray:
		X = np.atleast_2d(np.asarray(X, dtype=np.float64))
		if X.shape[1] != self.n_features:
			raise DimensionError(f"Forest was fit on {self.n_features} coordinates, got {X.shape[1]}")
		return X

	def pooled_samples(self, X: Any) -> list[np.ndarray]:
		""" Per row of X, the training targets sharing its leaf, concatenated in tree order """
		leaves = self.forest.apply(self._check(X))
		return [
			np.concatenate([self.y_train[self.train_leaves[:, t] == leaf] for t, leaf in enumerate(row)])
			for row in leaves
		]

	def quantile(self, q: float, X: Any) -> np.ndarray:
		if not 0.0 <= q <= 1.0:
			raise ValueError(f"Quantile level must lie in [0, 1], got {q}")
		return np.array([np.quantile(s, q) for s in self.pooled_samples(X)])

	def predict(self, X: Any) -> np.ndarray:
		return np.array([s.mean() for s in self.pooled_samples(X)])

	def predict_uncertain_batch(self, X: Any, *args: Any, **kwargs: Any) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
		""" (mean, std, floor_applied) of the pooled samples; forests carry no variance floor """
		pooled = self.pooled_samples(X)
		mean = np.array([s.mean() for s in pooled])
		std = np.array([s.std() for s in pooled])
		return mean, std, np.zeros(mean.size, dtype=bool)

	def to_dict(self) -> dict[str, Any]:
		"""
		Training data plus forest parameters. Loading refits with the same
		random_state, which reproduces the trees exactly.
		"""
		params = self.forest.get_params()
		return {
			"X": self.X_train.tolist(),
			"y": self.y_train.tolist(),
			"n_trees": params["n_estimators"],
			"seed": params["random_state"],
			"max_depth": params["max_depth"],
			"min_samples_leaf": params["min_samples_leaf"],
		}

	@classmethod
	def from_dict(cls, d: dict[str, Any]) -> "QuantileForest":
		return fit_qrf(d["X"], d["y"], d["n_trees"], d["seed"], d["max_depth"], d["min_samples_leaf"])


def fit_qrf(
	X: Any,
	y: Any,
	n_trees: int = 50,
	seed: int = 0,
	max_depth: None | int = 8,
	min_samples_leaf: int = 2
) -> QuantileForest:
	"""
	Every tree sees a bootstrap resample and all coordinates at each split;
	``random_state=seed`` makes the forest a deterministic function of (data, seed).

	:param max_depth: None grows until leaves hold min_samples_leaf points
	:raises ValueError: fewer than two records or n_trees < 1
	"""
	X = np.atleast_2d(np.asarray(X, dtype=np.float64))
	y = np.asarray(y, dtype=np.float64).ravel()
	if y.size < 2:
		raise ValueError(f"fit_qrf needs at least two records, got {y.size}")
	if X.shape[0] != y.size:
		raise DimensionError(f"{X.shape[0]} points but {y.size} targets")
	if n_trees < 1:
		raise ValueError(f"n_trees must be >= 1, got {n_trees}")

	forest = RandomForestRegressor(
		n_estimators=n_trees,
		max_depth=max_depth,
		min_samples_leaf=min_samples_leaf,
		max_features=1.0,
		bootstrap=True,
		random_state=seed,
	)
	forest.fit(X, y)
	return QuantileForest(forest, X, y)
