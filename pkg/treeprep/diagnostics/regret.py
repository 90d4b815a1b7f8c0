#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/diagnostics/regret.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                25.03.2026
# Last Modified Date:  07.09.2026
# Last Modified By:    treeprep contributors

import numpy as np
import pandas as pd
from collections.abc import Mapping, Sequence
from typing import Any, Literal, NamedTuple
from scipy.spatial.distance import pdist
from treeprep.diagnostics.covering import domain_diameter, unit_ball_volume
from treeprep.optimizer.RunState import RunResult
from treeprep.surrogate.EvaluationDataset import EvaluationDataset


class RegretCurve(NamedTuple):
	t: np.ndarray
	#: f(theta_t) - f*
	regret: np.ndarray
	#: min_{i <= t} f(theta_i) - f*
	best_regret: np.ndarray
	cumulative: np.ndarray
	#: slope of log(best_regret) against log(t) over the second half
	exponent: float
	#: L (C_d D^d)^(1/d) t^(-1/d) + sigma, when a Lipschitz constant was supplied
	bound: None | np.ndarray = None


def loss_values(source: RunResult | EvaluationDataset | Sequence[float] | np.ndarray) -> np.ndarray:
	"""
	Loss of the query sequence: exact losses when every record carries one,
	observed values otherwise.
	"""
	if isinstance(source, RunResult):
		source = source.dataset
	if isinstance(source, EvaluationDataset):
		exact = [r.f_exact for r in source]
		if all(f is not None for f in exact):
			return np.asarray(exact, dtype=np.float64)
		return np.asarray(source.y, dtype=np.float64)
	return np.asarray(source, dtype=np.float64).ravel()


def fit_rate_exponent(t: np.ndarray, r: np.ndarray) -> float:
	"""
	Least-squares slope of log r vs log t over the second half of the points.
	Non-positive regrets are left out; NaN if fewer than two values remain.
	"""
	half = t.size // 2
	tt, rr = t[half:], r[half:]
	keep = rr > 0
	if keep.sum() < 2:
		return float("nan")
	slope, _ = np.polyfit(np.log(tt[keep]), np.log(rr[keep]), 1)
	return float(slope)


def regret_curve(
	source: RunResult | EvaluationDataset | Sequence[float] | np.ndarray,
	f_star: float,
	lipschitz: None | float = None,
	d: None | int = None,
	sigma: float = 0.0
) -> RegretCurve:
	"""
	:param lipschitz: Lipschitz constant used for the geometric bound, which also needs ``d``
	:raises ValueError: fewer than four iterations
	"""
	f = loss_values(source)
	if f.size < 4:
		raise ValueError(f"regret_curve needs at least 4 iterations, got {f.size}")
	t = np.arange(1, f.size + 1, dtype=np.float64)
	regret = f - f_star
	best = np.minimum.accumulate(regret)
	bound = None
	if lipschitz is not None and d is not None:
		scale = (unit_ball_volume(d) * domain_diameter(d) ** d) ** (1.0 / d)
		bound = lipschitz * scale * t ** (-1.0 / d) + sigma
	return RegretCurve(t, regret, best, np.cumsum(regret), fit_rate_exponent(t, best), bound)


def lipschitz_lower_bound(X: Any, y: Any) -> float:
	""" max |y_i - y_j| / |theta_i - theta_j| over distinct pairs, 0 with fewer than two """
	X = np.atleast_2d(np.asarray(X, dtype=np.float64))
	y = np.asarray(y, dtype=np.float64).reshape(-1, 1)
	if y.shape[0] < 2:
		return 0.0
	dx = pdist(X)
	dy = pdist(y, metric="cityblock")
	ok = dx > 0
	return float((dy[ok] / dx[ok]).max()) if ok.any() else 0.0


def incumbent_values(source: RunResult | EvaluationDataset | Sequence[float] | np.ndarray) -> np.ndarray:
	"""
	Loss of the running incumbent, i.e. of the record with the lowest observed y
	so far (earliest on ties). Plain sequences are their own observations.
	"""
	f = loss_values(source)
	if isinstance(source, RunResult):
		source = source.dataset
	if not isinstance(source, EvaluationDataset):
		return np.minimum.accumulate(f)
	y = source.y
	idx = np.empty(y.size, dtype=np.int64)
	cur = 0
	for i in range(y.size):
		if y[i] < y[cur]:
			cur = i
		idx[i] = cur
	return f[idx]


def noise_estimate(y: Any, f_exact: Any) -> float:
	""" sigma_hat = max |y - f| """
	return float(np.max(np.abs(np.asarray(y, dtype=np.float64) - np.asarray(f_exact, dtype=np.float64))))


def tail_mean(values: Any, fraction: float = 0.25) -> float:
	v = np.asarray(values, dtype=np.float64)
	n = max(1, int(np.ceil(fraction * v.size)))
	return float(v[-n:].mean())


def noise_gap_check(
	runs: Mapping[float, Sequence[RunResult | EvaluationDataset | Sequence[float]]],
	f_star: float = 0.0,
	slack: float = 0.05,
	tail_fraction: float = 0.25,
	statistic: Literal["query", "incumbent"] = "query"
) -> pd.DataFrame:
	"""
	One row per noise level: tail mean of the exact loss of each run, and whether it
	stays within f* + sigma + slack.

	statistic: ``query`` averages f over the last queried points, ``incumbent`` over
	the exact loss of the running incumbent.
	"""
	rows = []
	for sigma in sorted(runs):
		for run_id, run in enumerate(runs[sigma]):
			f = incumbent_values(run) if statistic == "incumbent" else loss_values(run)
			tm = tail_mean(f, tail_fraction)
			rows.append({
				"sigma": sigma,
				"run": run_id,
				"tail_mean": tm,
				"limit": f_star + sigma + slack,
				"ok": tm <= f_star + sigma + slack,
			})
	return pd.DataFrame(rows, columns=["sigma", "run", "tail_mean", "limit", "ok"])


def summarize_noise_gap(df: pd.DataFrame) -> pd.DataFrame:
	""" Per-sigma aggregate of noise_gap_check output """
	return (
		df.groupby("sigma")
		.agg(runs=("run", "count"), tail_mean=("tail_mean", "mean"), limit=("limit", "first"), ok_fraction=("ok", "mean"))
		.reset_index()
	)
