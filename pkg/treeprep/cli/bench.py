#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/cli/bench.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                06.04.2026
# Last Modified Date:  14.10.2026
# Last Modified By:    treeprep contributors

"""
Benchmark suites. A suite file names fixtures (target models), pinned seeds, a base
ansatz / run configuration, named variants (partial run/ansatz overrides) and an
optional grid of dotted keys whose cartesian product is swept. Every
(variant, grid point, fixture, seed) combination is one run and one table row.
"""

import itertools
import numpy as np
import pandas as pd
from pathlib import Path
from typing import Any
from pydantic import Field, ValidationError
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.cli.ExperimentConfig import AnsatzModel, load_yaml
from treeprep.cli.writers import write_summary
from treeprep.errors import ConfigError
from treeprep.optimizer.RunConfig import RunConfig
from treeprep.optimizer.SurrogatePrep import SurrogatePrep
from treeprep.protocol.LoggerProtocol import LoggerProtocol
from treeprep.target.TargetSpec import TargetModel
from treeprep.target.generators import make_target

SUITES = ("q1", "q2", "q3")
#: conf/ sits next to the treeprep package, in the source tree and once installed
SUITE_DIR = Path(__file__).resolve().parents[2] / "conf" / "treeprep" / "suite"
RUNS_FILE = "runs.csv"
TABLE_FILE = "summary.csv"


class SuiteConfig(PrepBaseModel):
	suite: str
	seeds: list[int] = Field(min_length=1)
	fixtures: list[TargetModel] = Field(min_length=1)
	ansatz: dict[str, Any] = {}
	run: dict[str, Any] = {}
	variants: dict[str, dict[str, Any]] = {"default": {}}
	#: dotted key ("ansatz.n_layers", "run.shots", ...) -> values
	grid: dict[str, list[Any]] = {}


def _deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
	out = dict(base)
	for k, v in update.items():
		out[k] = _deep_merge(out[k], v) if isinstance(v, dict) and isinstance(out.get(k), dict) else v
	return out


def _dotted(key: str, value: Any) -> dict[str, Any]:
	head, _, rest = key.partition(".")
	return {head: _dotted(rest, value) if rest else value}


def load_suite(suite: str | Path) -> SuiteConfig:
	"""
	A known suite id (q1, q2, q3) resolves to the file shipped in conf/treeprep/suite,
	anything else is read as a path.
	"""
	if str(suite) in SUITES:
		path = SUITE_DIR / f"{suite}.yml"
		if not path.exists():
			raise ConfigError(f"Suite file for '{suite}' not found at {path}")
	else:
		path = Path(suite)
		if not path.exists():
			raise ConfigError(f"Unknown suite '{suite}', expected one of {SUITES} or a suite file")
	try:
		return SuiteConfig.model_validate(load_yaml(path))
	except ValidationError as e:
		raise ConfigError(f"{path}: {e}") from e


def expand_cells(suite: SuiteConfig) -> list[dict[str, Any]]:
	"""
	One dict per run: labels plus validated target / ansatz / run configuration.
	Validation of every cell happens here, before any run starts.
	"""
	keys = list(suite.grid)
	cells = []
	for variant, override in suite.variants.items():
		for values in itertools.product(*(suite.grid[k] for k in keys)):
			doc = _deep_merge({"ansatz": suite.ansatz, "run": suite.run}, override)
			for k, v in zip(keys, values):
				doc = _deep_merge(doc, _dotted(k, v))
			for fx_id, fixture in enumerate(suite.fixtures):
				for seed in suite.seeds:
					try:
						ansatz = AnsatzModel.model_validate(doc.get("ansatz", {}))
						run = RunConfig.model_validate(_deep_merge(doc.get("run", {}), {"seed": seed}))
					except ValidationError as e:
						raise ConfigError(f"Suite {suite.suite}, variant {variant}: {e}") from e
					cells.append({
						"variant": variant,
						"grid": dict(zip(keys, values)),
						"fixture": fx_id,
						"seed": seed,
						"target": fixture,
						"ansatz": ansatz,
						"run": run,
					})
	return cells


def run_cell(cell: dict[str, Any], logger: None | LoggerProtocol = None) -> dict[str, Any]:
	"""
	One table row. ``final_tvd`` is a fresh measurement of the returned parameters at
	the run's shot count; ``best_observed`` the lowest loss seen during the search.
	"""
	target = make_target(cell["target"], cell["ansatz"].max_qubits)
	spec = cell["ansatz"].build(target)
	cfg: RunConfig = cell["run"]
	prep = SurrogatePrep(target=target, spec=spec, config=cfg, logger=logger)
	result = prep.run()

	# equal budgets: only the first max_evals evaluations count
	y = result.dataset.y[:cfg.max_evals] if cfg.max_evals else result.dataset.y
	if y.size < len(result.dataset):
		theta = result.dataset[int(np.argmin(y))].theta
		final = prep.evaluator.confirm(theta)
		final_tvd, final_exact = final.y, final.f_exact
	else:
		final_tvd, final_exact = result.final_tvd, result.f_best
	return {
		"variant": cell["variant"],
		**{k.rpartition(".")[2]: v for k, v in cell["grid"].items()},
		"fixture": cell["fixture"],
		"family": target.family,
		"n_qubits": target.n_qubits,
		"seed": cell["seed"],
		"final_tvd": final_tvd,
		"final_tvd_exact": final_exact,
		"best_observed": float(y.min()),
		"evals": int(y.size),
		"shots_consumed": result.shots_consumed,
		"wall_ms": result.wall_ms,
		"depth": result.depth,
		"cx_count": result.cx_count,
	}


def summary_table(runs: pd.DataFrame) -> pd.DataFrame:
	""" final_tvd mean / std / median per variant, grid point and fixture """
	by = [c for c in runs.columns if c not in (
		"seed", "final_tvd", "final_tvd_exact", "best_observed", "evals", "shots_consumed", "wall_ms", "depth", "cx_count", "family", "n_qubits"
	)]
	return (
		runs.groupby(by, sort=False)
		.agg(
			runs=("final_tvd", "count"),
			final_tvd_mean=("final_tvd", "mean"),
			final_tvd_std=("final_tvd", "std"),
			final_tvd_median=("final_tvd", "median"),
			wall_ms_mean=("wall_ms", "mean"),
		)
		.reset_index()
	)


def cmd_bench(
	suite: str | Path | SuiteConfig,
	out: Path,
	seed: None | int = None,
	deterministic: bool = False,
	logger: None | LoggerProtocol = None
) -> tuple[pd.DataFrame, pd.DataFrame]:
	"""
	:param seed: offset added to every pinned suite seed
	:returns: (per-run table, per-cell summary table), both also written as CSV to ``out``
	"""
	cfg = suite if isinstance(suite, SuiteConfig) else load_suite(suite)
	if seed is not None:
		cfg = cfg.model_copy(update={"seeds": [s + seed for s in cfg.seeds]})
	if deterministic:
		cfg = cfg.model_copy(update={"run": _deep_merge(cfg.run, {"deterministic": True})})
	cells = expand_cells(cfg)

	rows = []
	for i, cell in enumerate(cells):
		rows.append(run_cell(cell, logger))
		if logger:
			logger.info("Bench cell done", extra={"suite": cfg.suite, "cell": i + 1, "of": len(cells), "final_tvd": round(rows[-1]["final_tvd"], 6)})

	runs = pd.DataFrame.from_records(rows)
	table = summary_table(runs)
	out.mkdir(parents=True, exist_ok=True)
	runs.to_csv(out / RUNS_FILE, index=False)
	table.to_csv(out / TABLE_FILE, index=False)
	write_summary(out / "suite.yml", {"suite": cfg.suite, "cells": len(table), "runs": len(runs), "seeds": cfg.seeds})
	return runs, table
