#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/optimizer/LossEvaluator.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                19.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import numpy as np
from collections.abc import Sequence
from typing import NamedTuple
from pydantic import Field
from treeprep.base.PrepUnit import PrepUnit
from treeprep.circuit.AnsatzSpec import AnsatzSpec
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.circuit.ProbabilityDistribution import ProbabilityDistribution, sample_shots, tvd
from treeprep.circuit.StatevectorSimulator import output_distribution, simulate
from treeprep.errors import DimensionError
from treeprep.target.TargetSpec import TargetSpec
from treeprep.target.generators import reference

#: SeedSequence tags separating the random streams of a run
WARMUP, BLOCK, SYNC, EVAL, REFERENCE, PARTITION, REMEASURE, CONFIRM = range(8)


class Evaluation(NamedTuple):
	y: float
	f_exact: float
	shots: int


class LossEvaluator(PrepUnit):
	"""
	TVD between the ansatz output at theta and the target reference.
	Evaluation ``index`` selects the shot and noise streams, so the value of a
	given evaluation does not depend on when or on which thread it is computed.
	"""

	target: TargetSpec
	spec: AnsatzSpec
	shots: None | int = Field(default=None, ge=1)
	reference_shots: None | int = Field(default=None, ge=1)
	noise_sigma: float = Field(default=0.0, ge=0.0)
	seed: int = 0

	_reference: None | ProbabilityDistribution = None

	def post_init(self) -> None:
		if self.spec.n_qubits != self.target.n_qubits:
			raise DimensionError(
				f"Ansatz acts on {self.spec.n_qubits} qubits, target on {self.target.n_qubits}"
			)
		self._reference = reference(
			self.target, self.reference_shots,
			np.random.SeedSequence([self.seed, REFERENCE])
		)

	@property
	def reference_distribution(self) -> ProbabilityDistribution:
		assert self._reference is not None
		return self._reference

	def evaluate(self, theta: ParameterVector | Sequence[float], index: int, stream: int = EVAL) -> Evaluation:
		"""
		:param stream: tag of the random stream; search evaluations use EVAL, repeated
		  measurements of an already evaluated point use REMEASURE or CONFIRM
		"""
		ss = np.random.SeedSequence([self.seed, stream, index])
		shot_seed, noise_seed = ss.spawn(2)
		p = output_distribution(simulate(self.spec, theta))
		f_exact = tvd(p, self.reference_distribution)
		if self.shots is None:
			y = f_exact
		else:
			y = tvd(sample_shots(p, self.shots, shot_seed), self.reference_distribution)
		if self.noise_sigma > 0:
			y += float(np.random.default_rng(noise_seed).uniform(-self.noise_sigma, self.noise_sigma))
		return Evaluation(y, f_exact, self.shots or 0)

	def confirm(self, theta: ParameterVector | Sequence[float], index: int = 0) -> Evaluation:
		""" Fresh measurement of a chosen point, independent of the draws that selected it """
		return self.evaluate(theta, index, CONFIRM)


def evaluate_loss(
	target: TargetSpec,
	spec: AnsatzSpec,
	theta: ParameterVector | Sequence[float],
	shots: None | int = None,
	seed: int = 0
) -> float:
	""" One-off loss evaluation against the exact target distribution """
	return LossEvaluator(target=target, spec=spec, shots=shots, seed=seed).evaluate(theta, 0).y
