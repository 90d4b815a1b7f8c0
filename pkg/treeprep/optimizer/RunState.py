#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/optimizer/RunState.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                19.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import time
from dataclasses import dataclass, field
from typing import Any, NamedTuple
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.surrogate.EvaluationDataset import EvaluationDataset, EvaluationRecord


class CurveRow(NamedTuple):
	iteration: int
	best_tvd: float
	evals: int
	shots_cum: int
	wall_ms: float


class Snapshot(NamedTuple):
	""" Read-only view handed to block workers at a barrier """
	dataset: EvaluationDataset
	theta_best: ParameterVector
	y_best: float
	cycle: int
	#: dataset length at the start of the previous cycle, for epoch-restricted training
	epoch_start: int


@dataclass
class RunState:
	"""
	Mutable run state, owned by the coordinating thread. Workers never touch it;
	they read Snapshots and return their records to ``synchronize``.
	"""
	dataset: EvaluationDataset = field(default_factory=EvaluationDataset)
	theta_best: None | ParameterVector = None
	y_best: float = float("inf")
	cycle: int = 0
	epoch_start: int = 0
	shots_cum: int = 0
	#: measurements averaged into y_best
	n_best: int = 0
	remeasures: int = 0
	events: list[dict[str, Any]] = field(default_factory=list)
	curve: list[CurveRow] = field(default_factory=list)
	phase_ms: dict[str, float] = field(default_factory=lambda: dict.fromkeys(("warmup", "fit", "propose", "evaluate", "sync"), 0.0))
	deterministic: bool = False
	t0: float = field(default_factory=time.perf_counter)

	def elapsed_ms(self) -> float:
		return 0.0 if self.deterministic else round((time.perf_counter() - self.t0) * 1e3, 3)

	def snapshot(self) -> Snapshot:
		assert self.theta_best is not None
		return Snapshot(self.dataset.copy(), self.theta_best, self.y_best, self.cycle, self.epoch_start)

	def record(self, rec: EvaluationRecord, cycle: int, block: None | int = None) -> int:
		""" Append an evaluation to the dataset and the event log """
		t = self.dataset.append(rec)
		self.shots_cum += rec.shots
		self.events.append({
			"event": "evaluation",
			"t": t,
			"cycle": cycle,
			"block": block,
			"tag": rec.tag,
			"y": rec.y,
			"f_exact": rec.f_exact,
			"shots": rec.shots,
			"theta": rec.theta.tolist(),
		})
		return t

	def offer(self, theta: ParameterVector, y: float) -> bool:
		""" Replace the incumbent when y is strictly lower """
		if y < self.y_best:
			self.theta_best, self.y_best, self.n_best = theta, y, 1
			return True
		return False

	def remeasured(self, y: float, shots: int) -> float:
		""" Fold another measurement of the incumbent into y_best, its running mean """
		self.n_best += 1
		self.y_best += (y - self.y_best) / self.n_best
		self.shots_cum += shots
		self.remeasures += 1
		return self.y_best

	def add_phase_time(self, phase: str, ms: float) -> None:
		if not self.deterministic:
			self.phase_ms[phase] += ms

	def close_iteration(self, iteration: int) -> CurveRow:
		row = CurveRow(iteration, self.y_best, len(self.dataset), self.shots_cum, self.elapsed_ms())
		self.curve.append(row)
		return row


@dataclass(frozen=True)
class RunResult:
	theta_best: ParameterVector
	y_best: float
	dataset: EvaluationDataset
	curve: list[CurveRow]
	events: list[dict[str, Any]]
	phase_ms: dict[str, float]
	evaluations: int
	shots_consumed: int
	wall_ms: float
	depth: int
	cx_count: int
	#: noiseless loss of theta_best
	f_best: None | float = None
	fidelity: None | float = None
	#: fresh measurement of theta_best taken after the search, not part of the budget
	final_tvd: None | float = None
	remeasures: int = 0
