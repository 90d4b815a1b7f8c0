#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/cli/synth.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                04.04.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

import os
from pathlib import Path
from typing import Any
from treeprep.cli.ExperimentConfig import ExperimentConfig
from treeprep.cli.writers import write_curve, write_events, write_summary, write_text
from treeprep.optimizer.RunState import RunResult
from treeprep.optimizer.SurrogatePrep import SurrogatePrep
from treeprep.protocol.LoggerProtocol import LoggerProtocol
from treeprep.qasm.emit import emit_qasm
from treeprep.surrogate import model_io
from treeprep.target.generators import make_target

OUT_ENV = "TREEPREP_OUT"
DEFAULT_OUT = "treeprep_out"

SUMMARY_FILE = "summary.yml"
CURVE_FILE = "curve.csv"
EVENTS_FILE = "events.jsonl"
QASM_FILE = "best.qasm"
SURROGATE_FILE = "surrogate.json"


def resolve_out(cli_out: None | str, cfg_out: None | str = None, sub: None | str = None) -> Path:
	"""
	Output directory: --out, then the config's ``out``, then $TREEPREP_OUT/<sub>,
	then ./treeprep_out/<sub>.
	"""
	if cli_out:
		return Path(cli_out)
	if cfg_out:
		return Path(cfg_out)
	root = Path(os.environ.get(OUT_ENV) or DEFAULT_OUT)
	return root / sub if sub else root


def apply_overrides(cfg: ExperimentConfig, seed: None | int = None, deterministic: bool = False) -> ExperimentConfig:
	update: dict[str, Any] = {}
	if seed is not None:
		update["seed"] = seed
	if deterministic:
		update["deterministic"] = True
	if not update:
		return cfg
	return cfg.model_copy(update={"run": cfg.run.model_copy(update=update)})


def summarize(cfg: ExperimentConfig, result: RunResult) -> dict[str, Any]:
	return {
		"target_family": cfg.target.family,
		"n_qubits": cfg.target.n_qubits,
		"n_layers": cfg.ansatz.n_layers,
		"mode": cfg.run.mode,
		"surrogate": cfg.run.surrogate.kind,
		"acquisition": cfg.run.acquisition.kind,
		"seed": cfg.run.seed,
		"best_tvd": result.y_best,
		"best_tvd_exact": result.f_best,
		"final_tvd": result.final_tvd,
		"fidelity": result.fidelity,
		"evaluations": result.evaluations,
		"shots": result.shots_consumed,
		"remeasures": result.remeasures,
		"wall_ms": result.wall_ms,
		"phase_ms": dict(result.phase_ms),
		"depth": result.depth,
		"cx_count": result.cx_count,
		"theta_best": result.theta_best.tolist(),
	}


def cmd_synth(
	config_path: str | Path,
	out: None | str = None,
	seed: None | int = None,
	deterministic: bool = False,
	logger: None | LoggerProtocol = None
) -> dict[str, Path]:
	"""
	Run one experiment and write summary, curve, event log and best circuit.
	When evaluations were made, the configured surrogate refit on the full dataset
	is checkpointed as well.
	Every configuration problem surfaces before the output directory is created.

	:returns: artifact name -> path
	"""
	cfg = apply_overrides(ExperimentConfig.load(config_path), seed, deterministic)
	target = make_target(cfg.target, cfg.ansatz.max_qubits)
	spec = cfg.ansatz.build(target)
	prep = SurrogatePrep(target=target, spec=spec, config=cfg.run, logger=logger)

	if target.family == "qsp" and "rz" in spec.rotation_set:
		prep.logger.warning(
			"Real-amplitude target searched with an rz ansatz",
			extra={"rotation_set": ",".join(spec.rotation_set)}
		)

	out_dir = resolve_out(out, cfg.out, "synth")
	result = prep.run()

	out_dir.mkdir(parents=True, exist_ok=True)
	paths = {
		"summary": out_dir / SUMMARY_FILE,
		"curve": out_dir / CURVE_FILE,
		"events": out_dir / EVENTS_FILE,
		"qasm": out_dir / QASM_FILE,
	}
	write_summary(paths["summary"], summarize(cfg, result))
	write_curve(paths["curve"], result.curve)
	write_events(paths["events"], result.events)
	write_text(paths["qasm"], emit_qasm(spec, result.theta_best))
	if len(result.dataset):
		paths["surrogate"] = out_dir / SURROGATE_FILE
		model = cfg.run.surrogate.fit(result.dataset.X, result.dataset.y, seed=cfg.run.seed)
		model_io.dump(model, paths["surrogate"])
	prep.logger.info("Synthesis done", extra={"out": str(out_dir), "best_tvd": round(result.y_best, 6)})
	return paths
