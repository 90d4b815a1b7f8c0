#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/cli/main.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                07.04.2026
# Last Modified Date:  12.09.2026
# Last Modified By:    treeprep contributors

import logging, sys
from argparse import ArgumentParser, Namespace
from collections.abc import Sequence
from pathlib import Path
from typing import Any
from pydantic import ValidationError
from treeprep.cli.ExperimentConfig import ExperimentConfig, load_yaml
from treeprep.cli.bench import SUITES, cmd_bench
from treeprep.cli.synth import cmd_synth, resolve_out
from treeprep.cli.writers import dataset_from_events, distribution_frame, read_events, write_summary, write_text
from treeprep.diagnostics.DiagnosticsReport import DiagnosticsOptions, DiagnosticsReport
from treeprep.errors import CapacityError, ConfigError, DimensionError, QASMError
from treeprep.log.PrepLogger import PrepLogger
from treeprep.protocol.LoggerProtocol import LoggerProtocol
from treeprep.qasm.emit import emit_ops
from treeprep.target.TargetSpec import TargetModel
from treeprep.target.generators import make_target

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CAPACITY = 3
EXIT_RUNTIME = 4


def cmd_target_gen(
	model: TargetModel,
	out: Path,
	logger: LoggerProtocol
) -> dict[str, Path]:
	""" target.yml (replayable description), distribution.csv and, for circuit families, circuit.qasm """
	target = make_target(model)
	out.mkdir(parents=True, exist_ok=True)
	paths = {"target": out / "target.yml", "distribution": out / "distribution.csv"}
	write_summary(paths["target"], target.to_config())
	distribution_frame(target.exact_distribution).to_csv(paths["distribution"], index=False)
	if target.circuit is not None:
		paths["circuit"] = out / "circuit.qasm"
		write_text(paths["circuit"], emit_ops(target.n_qubits, target.circuit))
	logger.info("Target written", extra={"family": target.family, "n_qubits": target.n_qubits, "out": str(out)})
	return paths


def cmd_diag(
	events: Path,
	out: Path,
	options: DiagnosticsOptions,
	nu: float,
	m_max: int,
	logger: LoggerProtocol
) -> DiagnosticsReport:
	""" Recompute the diagnostics of a finished run from its event log """
	data = dataset_from_events(read_events(events))
	if len(data) == 0:
		raise ConfigError(f"{events} holds no evaluation events")
	report = DiagnosticsReport.from_dataset(data, options, nu, m_max)
	out.mkdir(parents=True, exist_ok=True)
	report.to_frame().to_csv(out / "diagnostics.csv", index=False)
	write_summary(out / "diagnostics.yml", report.summary())
	logger.info("Diagnostics written", extra={"evaluations": len(data), "out": str(out)})
	return report


def _synth(opts: Namespace, logger: LoggerProtocol) -> None:
	cmd_synth(opts.config, opts.out, opts.seed, opts.deterministic, logger)


def _bench(opts: Namespace, logger: LoggerProtocol) -> None:
	cmd_bench(opts.suite, resolve_out(opts.out, None, f"bench/{Path(opts.suite).stem}"), opts.seed, opts.deterministic, logger)


def _target_gen(opts: Namespace, logger: LoggerProtocol) -> None:
	if opts.config:
		doc: Any = load_yaml(opts.config)
		if isinstance(doc, dict) and "target" in doc:
			doc = doc["target"]
		model = TargetModel.model_validate(doc)
	else:
		if not opts.family or not opts.n_qubits:
			raise ConfigError("target gen needs --config or --family and --n-qubits")
		fields = {
			"family": opts.family, "n_qubits": opts.n_qubits, "seed": opts.seed or 0,
			"depth": opts.depth, "source": opts.source, "n_layers": opts.n_layers
		}
		model = TargetModel.model_validate({k: v for k, v in fields.items() if v is not None})
	if opts.seed is not None:
		model = model.model_copy(update={"seed": opts.seed})
	cmd_target_gen(model, resolve_out(opts.out, None, "target"), logger)


def _diag(opts: Namespace, logger: LoggerProtocol) -> None:
	options = DiagnosticsOptions()
	nu, m_max = 0.1, 100
	if opts.config:
		cfg = ExperimentConfig.load(opts.config)
		options = cfg.diagnostics
		nu, m_max = cfg.run.surrogate.learning_rate, cfg.run.surrogate.n_estimators
	update: dict[str, Any] = {}
	if opts.f_star is not None:
		update["f_star"] = opts.f_star
	if opts.resolution is not None:
		update["resolution"] = opts.resolution
	if opts.seed is not None:
		update["seed"] = opts.seed
	if update:
		options = DiagnosticsOptions.model_validate(options.model_dump() | update)
	cmd_diag(Path(opts.events), resolve_out(opts.out, None, "diag"), options, nu, m_max, logger)


def build_parser() -> ArgumentParser:
	parser = ArgumentParser(prog="treeprep", description="Tree-surrogate guided approximate state preparation")
	parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
	subparsers = parser.add_subparsers(dest="verb")
	subparsers.required = True

	p = subparsers.add_parser("synth", help="run one experiment")
	p.set_defaults(command=_synth)
	p.add_argument("--config", required=True, help="experiment YAML")
	p.add_argument("--out", help="output directory (default: $TREEPREP_OUT/synth)")
	p.add_argument("--seed", type=int, help="override the master seed")
	p.add_argument("--deterministic", action="store_true", help="zero wall-clock fields for byte-identical reruns")

	p = subparsers.add_parser("bench", help="run a benchmark suite")
	p.set_defaults(command=_bench)
	p.add_argument("--suite", required=True, help=f"one of {', '.join(SUITES)} or a suite YAML")
	p.add_argument("--out", help="output directory (default: $TREEPREP_OUT/bench/<suite>)")
	p.add_argument("--seed", type=int, help="offset added to the pinned suite seeds")
	p.add_argument("--deterministic", action="store_true")

	p = subparsers.add_parser("target", help="target utilities")
	target_sub = p.add_subparsers(dest="target_verb")
	target_sub.required = True
	p = target_sub.add_parser("gen", help="generate a target and write its description")
	p.set_defaults(command=_target_gen)
	p.add_argument("--config", help="YAML holding a target model (or an experiment file)")
	p.add_argument("--family", choices=("rqc", "qsp", "vqe"))
	p.add_argument("--n-qubits", type=int)
	p.add_argument("--depth", type=int)
	p.add_argument("--source", choices=("gaussian", "uniform"))
	p.add_argument("--n-layers", type=int)
	p.add_argument("--seed", type=int)
	p.add_argument("--out", help="output directory (default: $TREEPREP_OUT/target)")

	p = subparsers.add_parser("diag", help="diagnostics of a finished run")
	p.set_defaults(command=_diag)
	p.add_argument("--events", required=True, help="event log written by synth")
	p.add_argument("--config", help="experiment YAML for diagnostics and surrogate options")
	p.add_argument("--f-star", type=float, help="known optimum for regret curves")
	p.add_argument("--resolution", type=int, help="covering-radius probe count")
	p.add_argument("--seed", type=int)
	p.add_argument("--out", help="output directory (default: $TREEPREP_OUT/diag)")
	return parser


def main(argv: None | Sequence[str] = None) -> int:
	parser = build_parser()
	opts = parser.parse_args(argv)
	logger = PrepLogger.get_logger("treeprep", logging.DEBUG if opts.verbose else logging.INFO)

	try:
		opts.command(opts, logger)
	except (ConfigError, ValidationError, DimensionError, QASMError) as e:
		logger.error(f"Configuration error: {e}")
		return EXIT_CONFIG
	except CapacityError as e:
		logger.error(f"Capacity exceeded: {e}")
		return EXIT_CAPACITY
	except Exception as e:
		logger.exception(f"Run failed: {e}")
		return EXIT_RUNTIME
	return EXIT_OK


if __name__ == "__main__":
	sys.exit(main())
