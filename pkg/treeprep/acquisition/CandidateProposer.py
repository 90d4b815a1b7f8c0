#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/acquisition/CandidateProposer.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                17.03.2026
# Last Modified Date:  04.09.2026
# Last Modified By:    treeprep contributors

import numpy as np
from typing import Any, NamedTuple
from treeprep.acquisition.AcquisitionConfig import AcquisitionConfig
from treeprep.acquisition.scores import (
	empirical_expected_improvement, expected_improvement_batch, kappa_schedule
)
from treeprep.base.PrepUnit import PrepUnit
from treeprep.circuit.ParameterVector import TWO_PI, ParameterVector, wrap_angles
from treeprep.surrogate.SurrogateConfig import SurrogateModel
from treeprep.surrogate.QuantileForest import QuantileForest


class SubBox(NamedTuple):
	"""
	Search domain {theta : theta_j = anchor_j for j not in block}, the block
	coordinates ranging over [0, 2pi). A block holding every index is the full box.
	"""
	anchor: ParameterVector
	block: tuple[int, ...]

	@classmethod
	def full(cls, anchor: ParameterVector) -> "SubBox":
		return cls(anchor, tuple(range(len(anchor))))

	def project(self, X: Any) -> np.ndarray:
		return np.atleast_2d(np.asarray(X, dtype=np.float64))[:, list(self.block)]


class CandidateProposer(PrepUnit):
	"""
	Picks the next query by scoring a finite candidate set: uniform draws over the
	block coordinates plus gaussian perturbations (sigma_prop) of the anchor, wrapped
	mod 2pi. The first ceil(n_cand / 2) candidates are the uniform draws.
	"""

	config: AcquisitionConfig = AcquisitionConfig()

	def candidates(self, box: SubBox, rng: np.random.Generator) -> np.ndarray:
		""" Block coordinates of the candidate set, shape (n_cand, len(block)) """
		if not box.block:
			raise ValueError("Cannot propose inside an empty domain")
		k = len(box.block)
		n_pert = self.config.n_cand // 2
		n_unif = self.config.n_cand - n_pert
		uniform = rng.uniform(0.0, TWO_PI, (n_unif, k))
		center = box.anchor.values[list(box.block)]
		perturbed = wrap_angles(center + rng.normal(0.0, self.config.sigma_prop, (n_pert, k)))
		return np.vstack([uniform, perturbed])

	def scores(
		self,
		model: SurrogateModel,
		cands: np.ndarray,
		train_X: np.ndarray,
		train_y: np.ndarray,
		f_best: float,
		floor_fraction: None | float = None
	) -> np.ndarray:
		""" Acquisition values, oriented so that larger is better """
		cfg = self.config
		if cfg.kind == "ei" and isinstance(model, QuantileForest):
			return np.array([empirical_expected_improvement(s, f_best) for s in model.pooled_samples(cands)])

		kwargs = {} if floor_fraction is None else {"floor_fraction": floor_fraction}
		mean, std, _ = model.predict_uncertain_batch(cands, train_X, train_y, **kwargs)
		if cfg.kind == "ei":
			return expected_improvement_batch(mean, std, f_best)
		kappa = kappa_schedule(len(train_y)) if cfg.kappa == "schedule" else float(cfg.kappa)
		return -(mean - kappa * std)

	def propose_next(
		self,
		model: SurrogateModel,
		train_X: Any,
		train_y: Any,
		box: SubBox,
		f_best: float,
		seed: None | int | np.random.SeedSequence = None,
		floor_fraction: None | float = None
	) -> ParameterVector:
		"""
		:param train_X: training inputs of ``model``, i.e. projected onto ``box.block``
		:param seed: per-call stream, config seed when omitted
		:raises ValueError: empty block or empty training data
		"""
		train_y = np.asarray(train_y, dtype=np.float64)
		if train_y.size == 0:
			raise ValueError("propose_next needs a non-empty dataset")
		rng = np.random.default_rng(self.config.seed if seed is None else seed)
		cands = self.candidates(box, rng)
		s = self.scores(model, cands, np.atleast_2d(np.asarray(train_X, dtype=np.float64)), train_y, f_best, floor_fraction)
		# argmax keeps the lowest index among ties
		best = int(np.argmax(s))
		self.logger.debug("proposal", extra={"block": len(box.block), "score": float(s[best]), "index": best})
		return box.anchor.with_block(box.block, cands[best])


def propose_next(
	model: SurrogateModel,
	train_X: Any,
	train_y: Any,
	box: SubBox,
	cfg: AcquisitionConfig,
	f_best: float,
	seed: None | int | np.random.SeedSequence = None
) -> ParameterVector:
	""" Functional form of CandidateProposer.propose_next """
	return CandidateProposer(config=cfg).propose_next(model, train_X, train_y, box, f_best, seed)
