#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/optimizer/SurrogatePrep.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                20.03.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import asyncio, time
import numpy as np
from collections.abc import Sequence
from typing import Any, NamedTuple
from treeprep.acquisition.CandidateProposer import CandidateProposer, SubBox
from treeprep.base.PrepUnit import PrepUnit
from treeprep.circuit.AnsatzSpec import AnsatzSpec, circuit_metrics
from treeprep.circuit.ParameterVector import TWO_PI, ParameterVector
from treeprep.circuit.StatevectorSimulator import fidelity, simulate
from treeprep.errors import ConfigError
from treeprep.optimizer.LayerPartition import LayerPartition, random_partition
from treeprep.optimizer.LossEvaluator import BLOCK, PARTITION, REMEASURE, WARMUP, LossEvaluator
from treeprep.optimizer.RunConfig import RunConfig
from treeprep.optimizer.RunState import RunResult, RunState, Snapshot
from treeprep.surrogate.EvaluationDataset import EvaluationRecord
from treeprep.target.TargetSpec import TargetSpec


class BlockResult(NamedTuple):
	position: int
	block: tuple[int, ...]
	records: list[EvaluationRecord]
	timings: dict[str, float]


def _ms(since: float) -> float:
	return (time.perf_counter() - since) * 1e3


class SurrogatePrep(PrepUnit):
	"""
	Surrogate-guided search for ansatz parameters reproducing a target distribution.

	After a uniform warm-up, every cycle splits the parameters into blocks, lets one
	worker per block run ``inner_iters`` rounds of fit / propose / evaluate against a
	snapshot taken at the barrier, then merges the workers' records in block order and
	updates the incumbent in ``synchronize``.

	Every random draw is keyed by (seed, phase, cycle, block, round) and every
	evaluation by its final dataset index, so concurrent and sequential execution
	produce identical datasets.
	"""

	target: TargetSpec
	spec: AnsatzSpec
	config: RunConfig = RunConfig()

	_evaluator: Any = None
	_proposer: Any = None

	def post_init(self) -> None:
		cfg = self.config
		d = self.spec.param_count
		if cfg.mode == "random_subspace" and cfg.block_size is not None and cfg.block_size > d:
			raise ConfigError(f"block_size {cfg.block_size} exceeds the {d} ansatz parameters")
		self._evaluator = LossEvaluator(
			target=self.target, spec=self.spec, shots=cfg.shots,
			reference_shots=cfg.reference_shots, noise_sigma=cfg.noise_sigma,
			seed=cfg.seed, logger=self.logger
		)
		self._proposer = CandidateProposer(config=cfg.acquisition, logger=self.logger)

	@property
	def evaluator(self) -> LossEvaluator:
		return self._evaluator

	@property
	def dim(self) -> int:
		return self.spec.param_count

	def partition(self, cycle: int) -> LayerPartition:
		cfg = self.config
		match cfg.mode:
			case "full":
				return LayerPartition.single(self.dim)
			case "layerwise":
				return LayerPartition.layerwise(self.spec)
		assert cfg.block_size is not None
		key = cycle if cfg.reshuffle else 0
		return random_partition(self.dim, cfg.block_size, np.random.SeedSequence([cfg.seed, PARTITION, key]))

	def _evaluate(self, theta: ParameterVector, index: int, tag: str) -> EvaluationRecord:
		ev = self._evaluator.evaluate(theta, index)
		return EvaluationRecord(theta, ev.y, tag, ev.f_exact, ev.shots)

	def warm_up(self, state: RunState, n_init: int) -> RunState:
		""" Evaluate n_init uniform draws over the full box """
		if n_init < 1:
			raise ValueError(f"n_init must be >= 1, got {n_init}")
		t0 = time.perf_counter()
		rng = np.random.default_rng(np.random.SeedSequence([self.config.seed, WARMUP]))
		for _ in range(n_init):
			theta = ParameterVector(rng.uniform(0.0, TWO_PI, self.dim))
			rec = self._evaluate(theta, len(state.dataset), "warmup")
			state.record(rec, cycle=0)
			state.offer(rec.theta, rec.y)
		state.add_phase_time("warmup", _ms(t0))
		state.events.append({"event": "phase", "phase": "warmup", "evals": n_init, "y_best": state.y_best, "wall_ms": state.elapsed_ms()})
		self.logger.info("Warm-up done", extra={"n_init": n_init, "y_best": round(state.y_best, 6)})
		return state

	def _training_set(self, snap: Snapshot, local: Sequence[EvaluationRecord]) -> tuple[np.ndarray, np.ndarray]:
		records = list(snap.dataset)
		if self.config.block_data == "epoch_records" and len(records) - snap.epoch_start + len(local) >= 2:
			records = records[snap.epoch_start:]
		records += local
		return (
			np.array([r.theta.values for r in records], dtype=np.float64),
			np.array([r.y for r in records], dtype=np.float64)
		)

	def optimize_block(
		self,
		snap: Snapshot,
		block: Sequence[int],
		position: int = 0,
		inner_iters: None | int = None
	) -> BlockResult:
		"""
		Worker body. Proposals move only the coordinates in ``block``; all others stay at
		the snapshot incumbent. Records are returned, not appended.

		:param position: index of the block within the cycle's partition
		"""
		block = tuple(block)
		if not block:
			raise ValueError("Cannot optimize an empty block")
		n_iter = inner_iters or self.config.inner_iters
		timings = dict.fromkeys(("fit", "propose", "evaluate"), 0.0)
		local: list[EvaluationRecord] = []
		anchor, f_best = snap.theta_best, snap.y_best
		first_index = len(snap.dataset) + position * n_iter

		for i in range(n_iter):
			key = np.random.SeedSequence([self.config.seed, BLOCK, snap.cycle, position, i])
			fit_key, prop_key = key.spawn(2)

			t0 = time.perf_counter()
			X, y = self._training_set(snap, local)
			Xb = X[:, list(block)]
			model = self.config.surrogate.fit(Xb, y, seed=int(fit_key.generate_state(1)[0]))
			timings["fit"] += _ms(t0)

			t0 = time.perf_counter()
			theta = self._proposer.propose_next(
				model, Xb, y, SubBox(anchor, block), f_best, seed=prop_key,
				floor_fraction=self.config.surrogate.floor_fraction
			)
			timings["propose"] += _ms(t0)

			t0 = time.perf_counter()
			rec = self._evaluate(theta, first_index + i, f"block:{position}")
			timings["evaluate"] += _ms(t0)

			local.append(rec)
			if rec.y < f_best:
				anchor, f_best = rec.theta, rec.y

		return BlockResult(position, block, local, timings)

	def synchronize(self, state: RunState, snap: Snapshot, results: Sequence[BlockResult]) -> RunState:
		"""
		Merge worker records in block order. The best single proposal is the default
		winner; when two or more blocks beat the snapshot incumbent, their block
		coordinates are composed into one more candidate, evaluated once, and kept if
		strictly better.
		In noisy runs the incumbent is then remeasured, see ``remeasure``.
		"""
		t0 = time.perf_counter()
		results = sorted(results, key=lambda r: r.position)
		for res in results:
			for rec in res.records:
				state.record(rec, snap.cycle, res.position)
			for phase, ms in res.timings.items():
				state.add_phase_time(phase, ms)

		winner: None | EvaluationRecord = None
		improved: list[tuple[tuple[int, ...], EvaluationRecord]] = []
		for res in results:
			if not res.records:
				continue
			block_best = min(res.records, key=lambda r: r.y)
			if winner is None or block_best.y < winner.y:
				winner = block_best
			if block_best.y < snap.y_best:
				improved.append((res.block, block_best))

		composed = None
		if len(improved) >= 2:
			theta = snap.theta_best
			for block, rec in improved:
				theta = theta.with_block(block, rec.theta.values[list(block)])
			composed = self._evaluate(theta, len(state.dataset), "sync")
			state.record(composed, snap.cycle)
			if winner is None or composed.y < winner.y:
				winner = composed

		changed = winner is not None and state.offer(winner.theta, winner.y)
		if self.config.remeasure_incumbent and self.config.noisy:
			self.remeasure(state)
		state.epoch_start = len(snap.dataset)
		state.add_phase_time("sync", _ms(t0))
		state.events.append({
			"event": "sync",
			"cycle": snap.cycle,
			"improved_blocks": [b for b, _ in improved],
			"composed_y": None if composed is None else composed.y,
			"changed": changed,
			"y_best": state.y_best,
			"wall_ms": state.elapsed_ms(),
		})
		self.logger.debug("sync", extra={"cycle": snap.cycle, "improved": len(improved), "y_best": round(state.y_best, 6)})
		return state

	def remeasure(self, state: RunState) -> float:
		"""
		Measure the incumbent once more on its own stream. y_best becomes the mean
		of every measurement taken at theta_best since it became the incumbent.
		"""
		assert state.theta_best is not None
		ev = self._evaluator.evaluate(state.theta_best, state.remeasures, REMEASURE)
		state.remeasured(ev.y, ev.shots)
		state.events.append({
			"event": "remeasure",
			"cycle": state.cycle,
			"y": ev.y,
			"shots": ev.shots,
			"measurements": state.n_best,
			"y_best": state.y_best,
		})
		return state.y_best

	async def _run_blocks(self, snap: Snapshot, partition: LayerPartition) -> list[BlockResult]:
		if self.config.sequential:
			return [self.optimize_block(snap, b, pos) for pos, b in enumerate(partition)]

		semaphore = asyncio.Semaphore(self.config.max_workers)

		async def worker(pos: int, block: tuple[int, ...]) -> BlockResult:
			async with semaphore:
				return await asyncio.to_thread(self.optimize_block, snap, block, pos)

		# gather preserves submission order
		return await asyncio.gather(*[worker(pos, b) for pos, b in enumerate(partition)])

	async def _run(self) -> RunState:
		cfg = self.config
		state = RunState(deterministic=cfg.deterministic)
		self.warm_up(state, cfg.init_count(self.dim))
		state.close_iteration(0)

		for cycle in range(1, cfg.budget + 1):
			if cfg.max_evals is not None and len(state.dataset) >= cfg.max_evals:
				break
			state.cycle = cycle
			partition = self.partition(cycle)
			snap = state.snapshot()
			results = await self._run_blocks(snap, partition)
			self.synchronize(state, snap, results)
			row = state.close_iteration(cycle)
			self.logger.info("Cycle done", extra={"cycle": cycle, "evals": row.evals, "y_best": round(row.best_tvd, 6)})

		return state

	def run(self) -> RunResult:
		t0 = time.perf_counter()
		state = asyncio.run(self._run())
		assert state.theta_best is not None
		final = self._evaluator.confirm(state.theta_best)
		depth, cx = circuit_metrics(self.spec)
		return RunResult(
			theta_best=state.theta_best,
			y_best=state.y_best,
			dataset=state.dataset,
			curve=state.curve,
			events=state.events,
			phase_ms=state.phase_ms,
			evaluations=len(state.dataset),
			shots_consumed=state.shots_cum,
			wall_ms=0.0 if self.config.deterministic else _ms(t0),
			depth=depth,
			cx_count=cx,
			f_best=final.f_exact,
			fidelity=fidelity(simulate(self.spec, state.theta_best), self.target.state),
			final_tvd=final.y,
			remeasures=state.remeasures,
		)


def run_surrogate_prep(target: TargetSpec, spec: AnsatzSpec, cfg: RunConfig, logger: Any = None) -> RunResult:
	return SurrogatePrep(target=target, spec=spec, config=cfg, logger=logger).run()
