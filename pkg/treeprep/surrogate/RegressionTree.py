#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/RegressionTree.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                09.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Sequence
from typing import Any
from treeprep.errors import DimensionError

#: feature value of leaf nodes
LEAF = -1


class RegressionTree:
	"""
	Binary tree of axis-aligned splits stored as flat node arrays.
	Node i is a leaf if ``feature[i] == LEAF``; otherwise samples with
	``x[feature[i]] <= threshold[i]`` go to ``left[i]``, the others to ``right[i]``.

	Leaves hold the mean of the residuals routed to them and their sample count.
	A leaf with count 0 predicts 0.
	"""

	__slots__ = ("feature", "threshold", "left", "right", "value", "count", "n_features")

	def __init__(
		self,
		feature: Sequence[int],
		threshold: Sequence[float],
		left: Sequence[int],
		right: Sequence[int],
		value: Sequence[float],
		count: Sequence[int],
		n_features: int
	) -> None:
		self.feature = np.asarray(feature, dtype=np.int64)
		self.threshold = np.asarray(threshold, dtype=np.float64)
		self.left = np.asarray(left, dtype=np.int64)
		self.right = np.asarray(right, dtype=np.int64)
		self.count = np.asarray(count, dtype=np.int64)
		value = np.asarray(value, dtype=np.float64).copy()
		value[(self.feature == LEAF) & (self.count == 0)] = 0.0
		self.value = value
		self.n_features = n_features
		for arr in (self.feature, self.threshold, self.left, self.right, self.value, self.count):
			arr.setflags(write=False)

	@property
	def n_nodes(self) -> int:
		return self.feature.size

	@property
	def n_leaves(self) -> int:
		return int((self.feature == LEAF).sum())

	def depth(self) -> int:
		def _depth(i: int) -> int:
			if self.feature[i] == LEAF:
				return 0
			return 1 + max(_depth(int(self.left[i])), _depth(int(self.right[i])))
		return _depth(0)

	def apply(self, X: Any) -> np.ndarray:
		""" Leaf id reached by every row of X """
		X = np.atleast_2d(np.asarray(X, dtype=np.float64))
		if X.shape[1] != self.n_features:
			raise DimensionError(f"Tree was fit on {self.n_features} features, got {X.shape[1]}")
		node = np.zeros(X.shape[0], dtype=np.int64)
		active = self.feature[node] != LEAF
		while active.any():
			idx = np.flatnonzero(active)
			cur = node[idx]
			go_left = X[idx, self.feature[cur]] <= self.threshold[cur]
			node[idx] = np.where(go_left, self.left[cur], self.right[cur])
			active = self.feature[node] != LEAF
		return node

	def predict(self, X: Any) -> np.ndarray:
		return self.value[self.apply(X)]

	def to_dict(self) -> dict[str, Any]:
		return {
			"n_features": self.n_features,
			"feature": self.feature.tolist(),
			"threshold": self.threshold.tolist(),
			"left": self.left.tolist(),
			"right": self.right.tolist(),
			"value": self.value.tolist(),
			"count": self.count.tolist(),
		}

	@classmethod
	def from_dict(cls, d: dict[str, Any]) -> "RegressionTree":
		return cls(
			d["feature"], d["threshold"], d["left"], d["right"], d["value"], d["count"],
			n_features=d["n_features"]
		)


def presort(X: np.ndarray) -> np.ndarray:
	""" Stable per-feature argsort (d x t), shared by every tree fit on the same X """
	return np.argsort(X, axis=0, kind="stable").T.copy()


def _best_split(
	X: np.ndarray,
	r: np.ndarray,
	in_node: np.ndarray,
	order: np.ndarray,
	min_samples_leaf: int
) -> None | tuple[float, int, float]:
	"""
	Least-squares split of the samples flagged in ``in_node``.
	Returns (children SSE, feature, threshold) or None when no admissible split exists.
	Features are scanned in ascending order and only a strictly lower SSE replaces
	the incumbent, so ties resolve to the lowest feature, then the lowest threshold.
	"""
	best: None | tuple[float, int, float] = None
	for f in range(X.shape[1]):
		idx = order[f][in_node[order[f]]]
		n = idx.size
		xs = X[idx, f]
		rs = r[idx]
		csum = np.cumsum(rs)
		csum2 = np.cumsum(rs * rs)
		k = np.arange(1, n)
		valid = (xs[:-1] < xs[1:]) & (k >= min_samples_leaf) & (n - k >= min_samples_leaf)
		if not valid.any():
			continue
		sl, sl2 = csum[:-1], csum2[:-1]
		sr, sr2 = csum[-1] - sl, csum2[-1] - sl2
		sse = (sl2 - sl * sl / k) + (sr2 - sr * sr / (n - k))
		sse = np.where(valid, sse, np.inf)
		j = int(np.argmin(sse))
		if best is None or sse[j] < best[0]:
			best = (float(sse[j]), f, 0.5 * (xs[j] + xs[j + 1]))
	return best


def fit_tree(
	X: Any,
	residuals: Any,
	max_depth: int = 3,
	min_samples_leaf: int = 1,
	order: None | np.ndarray = None
) -> RegressionTree:
	"""
	Greedy least-squares regression tree. Each node takes the (feature, threshold)
	minimising the summed squared error of its two children, thresholds lying at
	midpoints between consecutive distinct feature values. Growth stops at
	``max_depth``, when a node cannot give both children ``min_samples_leaf``
	samples, or when its residuals are all equal.

	:param order: output of presort(X), computed here when omitted
	:raises ValueError: empty input or bad hyperparameters
	"""
	X = np.atleast_2d(np.asarray(X, dtype=np.float64))
	r = np.asarray(residuals, dtype=np.float64).ravel()
	if r.size == 0:
		raise ValueError("Cannot fit a tree on zero points")
	if X.shape[0] != r.size:
		raise DimensionError(f"{X.shape[0]} points but {r.size} residuals")
	if max_depth < 0 or min_samples_leaf < 1:
		raise ValueError(f"Invalid tree parameters max_depth={max_depth}, min_samples_leaf={min_samples_leaf}")
	if order is None:
		order = presort(X)

	feature: list[int] = []
	threshold: list[float] = []
	left: list[int] = []
	right: list[int] = []
	value: list[float] = []
	count: list[int] = []

	def new_node() -> int:
		feature.append(LEAF)
		threshold.append(0.0)
		left.append(LEAF)
		right.append(LEAF)
		value.append(0.0)
		count.append(0)
		return len(feature) - 1

	# depth-first, left child first: node ids are deterministic
	stack = [(new_node(), np.ones(r.size, dtype=bool), 0)]
	while stack:
		node, in_node, depth = stack.pop()
		rs = r[in_node]
		count[node] = rs.size
		value[node] = float(np.mean(rs))

		split = None
		if depth < max_depth and rs.size >= 2 * min_samples_leaf and np.ptp(rs) > 0:
			split = _best_split(X, r, in_node, order, min_samples_leaf)

		if split is None:
			continue

		_, f, thr = split
		goes_left = X[:, f] <= thr
		feature[node] = f
		threshold[node] = thr
		left[node] = new_node()
		right[node] = new_node()
		stack.append((right[node], in_node & ~goes_left, depth + 1))
		stack.append((left[node], in_node & goes_left, depth + 1))

	return RegressionTree(
		feature, threshold, left, right, value, count,
		n_features=X.shape[1]
	)
