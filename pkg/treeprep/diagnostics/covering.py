#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/diagnostics/covering.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                24.03.2026
# Last Modified Date:  10.08.2026
# Last Modified By:    treeprep contributors

import numpy as np
from typing import Any
from scipy.spatial import cKDTree
from scipy.special import gamma
from scipy.stats import qmc
from treeprep.circuit.ParameterVector import TWO_PI


def domain_diameter(d: int, side: float = TWO_PI) -> float:
	""" Diameter of the box [0, side)^d """
	return side * float(np.sqrt(d))


def unit_ball_volume(d: int) -> float:
	""" C_d = pi^(d/2) / Gamma(1 + d/2) """
	if d < 1:
		raise ValueError(f"Dimension must be >= 1, got {d}")
	return float(np.pi ** (d / 2) / gamma(1 + d / 2))


def packing_bound(t: int, d: int, D: float) -> float:
	""" (C_d D^d / t)^(1/d) """
	if t < 1 or d < 1 or D <= 0:
		raise ValueError(f"packing_bound needs t >= 1, d >= 1, D > 0 (got t={t}, d={d}, D={D})")
	return float((unit_ball_volume(d) * D ** d / t) ** (1.0 / d))


def probe_set(d: int, resolution: int, seed: int = 0, side: float = TWO_PI) -> np.ndarray:
	""" Scrambled Halton points scaled to [0, side)^d """
	if resolution < 1:
		raise ValueError(f"resolution must be >= 1, got {resolution}")
	return qmc.Halton(d=d, scramble=True, seed=seed).random(resolution) * side


def _as_points(points: Any) -> np.ndarray:
	X = np.asarray([np.asarray(p, dtype=np.float64) for p in points], dtype=np.float64)
	if X.size == 0:
		raise ValueError("covering_radius needs at least one point")
	return X.reshape(X.shape[0], -1)


def covering_radius(points: Any, resolution: int = 4096, seed: int = 0, side: float = TWO_PI) -> float:
	"""
	max over probes of the distance to the nearest point, probes being a fixed
	low-discrepancy set. The probe maximum never exceeds the true supremum, so
	this is a lower bound on the covering radius that tightens with ``resolution``.
	"""
	X = _as_points(points)
	probes = probe_set(X.shape[1], resolution, seed, side)
	dist, _ = cKDTree(X).query(probes, k=1)
	return float(dist.max())


def covering_radius_curve(points: Any, resolution: int = 4096, seed: int = 0, side: float = TWO_PI) -> np.ndarray:
	"""
	covering_radius of every prefix points[:t], t = 1..n, on one probe set.
	Running minima make the curve non-increasing.
	"""
	X = _as_points(points)
	probes = probe_set(X.shape[1], resolution, seed, side)
	nearest = np.full(probes.shape[0], np.inf)
	out = np.empty(X.shape[0])
	for i, x in enumerate(X):
		np.minimum(nearest, np.linalg.norm(probes - x, axis=1), out=nearest)
		out[i] = nearest.max()
	return out


def farthest_point_sequence(d: int, t: int, seed: int = 0, pool: int = 4096, side: float = TWO_PI) -> np.ndarray:
	"""
	Greedy dispersion-controlled sequence: starting from the first point of a
	Halton pool, repeatedly add the pool point farthest from those already chosen.
	"""
	if t < 1 or t > pool:
		raise ValueError(f"Need 1 <= t <= pool ({pool}), got {t}")
	cands = probe_set(d, pool, seed, side)
	chosen = [0]
	nearest = np.linalg.norm(cands - cands[0], axis=1)
	for _ in range(t - 1):
		j = int(np.argmax(nearest))
		chosen.append(j)
		np.minimum(nearest, np.linalg.norm(cands - cands[j], axis=1), out=nearest)
	return cands[chosen]
