#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/acquisition/scores.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                16.03.2026
# Last Modified Date:  22.07.2026
# Last Modified By:    treeprep contributors

import numpy as np
from typing import Any
from scipy.special import ndtr
from scipy.stats import norm
from treeprep.surrogate.BoostedEnsemble import UncertainPrediction


def expected_improvement_batch(mean: Any, std: Any, f_best: float) -> np.ndarray:
	"""
	E[max(f_best - Y, 0)] for Y ~ N(mean, std^2), elementwise.
	Zero spread reduces to max(f_best - mean, 0).
	"""
	mean = np.asarray(mean, dtype=np.float64)
	std = np.asarray(std, dtype=np.float64)
	gap = f_best - mean
	pos = std > 0
	safe = np.where(pos, std, 1.0)
	z = gap / safe
	ei = gap * ndtr(z) + safe * norm.pdf(z)
	return np.where(pos, np.maximum(ei, 0.0), np.maximum(gap, 0.0))


def expected_improvement(pred: UncertainPrediction, f_best: float) -> float:
	return float(expected_improvement_batch(pred.mean, pred.std, f_best))


def empirical_expected_improvement(samples: Any, f_best: float) -> float:
	""" Sample mean of max(f_best - s, 0) """
	s = np.asarray(samples, dtype=np.float64)
	return float(np.maximum(f_best - s, 0.0).mean())


def ucb_score(pred: UncertainPrediction, kappa: float) -> float:
	""" mean - kappa * std, lower is better """
	if kappa <= 0:
		raise ValueError(f"kappa must be > 0, got {kappa}")
	return pred.mean - kappa * pred.std


def kappa_schedule(t: int) -> float:
	""" sqrt(2 ln t), evaluated at t = 2 for t < 2 """
	return float(np.sqrt(2.0 * np.log(max(t, 2))))
