#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/circuit/ProbabilityDistribution.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                03.03.2026
# Last Modified Date:  19.08.2026
# Last Modified By:    treeprep contributors

import numpy as np
from typing import Literal
from treeprep.errors import DimensionError

EXACT_SUM_TOL = 1e-12


class ProbabilityDistribution:
	"""
	Distribution over the 2^n computational basis outcomes.

	Exact distributions hold float probabilities summing to one within 1e-12.
	Empirical distributions additionally keep the integer ``counts`` they were
	built from, so that their probabilities are the exact fractions counts/shots.
	"""

	__slots__ = ("probs", "kind", "shots", "counts")

	def __init__(
		self,
		probs: np.ndarray,
		kind: Literal["exact", "empirical"] = "exact",
		shots: None | int = None,
		counts: None | np.ndarray = None
	) -> None:

		p = np.asarray(probs, dtype=np.float64)
		if p.ndim != 1 or p.size < 1:
			raise ValueError(f"Probability vector must be 1-d and non-empty, got shape {p.shape}")
		if np.any(p < 0) or not np.all(np.isfinite(p)):
			raise ValueError("Probabilities must be finite and non-negative")

		if kind == "empirical":
			if counts is None or shots is None:
				raise ValueError("Empirical distributions need counts and shots")
			counts = np.asarray(counts, dtype=np.int64)
			if counts.sum() != shots:
				raise ValueError(f"Counts sum to {counts.sum()}, expected {shots} shots")
		elif kind == "exact":
			if abs(p.sum() - 1.0) > EXACT_SUM_TOL:
				raise ValueError(f"Exact probabilities sum to {p.sum()!r}, not 1")
		else:
			raise ValueError(f"Unknown distribution kind '{kind}'")

		p.setflags(write=False)
		self.probs = p
		self.kind = kind
		self.shots = shots
		self.counts = counts

	@classmethod
	def from_counts(cls, counts: np.ndarray) -> "ProbabilityDistribution":
		counts = np.asarray(counts, dtype=np.int64)
		shots = int(counts.sum())
		if shots < 1:
			raise ValueError("Need at least one shot")
		return cls(counts / shots, kind="empirical", shots=shots, counts=counts)

	@property
	def n_outcomes(self) -> int:
		return self.probs.size

	@property
	def n_qubits(self) -> int:
		return int(self.probs.size).bit_length() - 1

	def __len__(self) -> int:
		return self.probs.size

	def __repr__(self) -> str:
		extra = f", shots={self.shots}" if self.kind == "empirical" else ""
		return f"ProbabilityDistribution(kind={self.kind}{extra}, n_outcomes={self.n_outcomes})"


def tvd(p: ProbabilityDistribution, q: ProbabilityDistribution) -> float:
	"""
	Total variation distance 1/2 * sum_x |p(x) - q(x)|.

	Two empirical distributions are compared on their integer counts,
	sum |c_p * s_q - c_q * s_p| / (2 s_p s_q), which leaves a single rounding step.
	"""
	if len(p) != len(q):
		raise DimensionError(f"Cannot compare distributions of length {len(p)} and {len(q)}")

	if p.counts is not None and q.counts is not None:
		assert p.shots and q.shots
		num = int(np.abs(p.counts * q.shots - q.counts * p.shots).sum())
		return num / (2 * p.shots * q.shots)

	return min(0.5 * float(np.abs(p.probs - q.probs).sum()), 1.0)


def sample_shots(p: ProbabilityDistribution, shots: int, seed: int | np.random.SeedSequence) -> ProbabilityDistribution:
	"""
	Empirical distribution of ``shots`` projective measurements drawn from ``p``
	(one multinomial draw). The same seed always yields the same counts.
	"""
	if shots < 1:
		raise ValueError(f"shots must be >= 1, got {shots}")
	if p.kind != "exact":
		raise ValueError("Shots can only be sampled from an exact distribution")
	rng = np.random.default_rng(seed)
	counts = rng.multinomial(shots, p.probs / p.probs.sum())
	return ProbabilityDistribution.from_counts(counts)
