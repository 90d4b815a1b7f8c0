#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/cli/writers.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                03.04.2026
# Last Modified Date:  08.09.2026
# Last Modified By:    treeprep contributors

import json, yaml
import pandas as pd
from collections.abc import Iterable, Mapping
from pathlib import Path
from typing import Any
from treeprep.circuit.ParameterVector import ParameterVector
from treeprep.circuit.ProbabilityDistribution import ProbabilityDistribution
from treeprep.errors import ConfigError
from treeprep.optimizer.RunState import CurveRow
from treeprep.surrogate.EvaluationDataset import EvaluationDataset, EvaluationRecord

CURVE_COLUMNS = list(CurveRow._fields)


def write_summary(path: Path, summary: Mapping[str, Any]) -> None:
	""" key: value lines, sorted """
	with open(path, "w") as f:
		yaml.safe_dump(dict(summary), f, sort_keys=True, default_flow_style=False)


def curve_frame(rows: Iterable[CurveRow]) -> pd.DataFrame:
	return pd.DataFrame.from_records([r._asdict() for r in rows], columns=CURVE_COLUMNS)


def write_curve(path: Path, rows: Iterable[CurveRow]) -> None:
	curve_frame(rows).to_csv(path, index=False)


def write_events(path: Path, events: Iterable[Mapping[str, Any]]) -> None:
	with open(path, "w") as f:
		for ev in events:
			f.write(json.dumps(ev, sort_keys=True) + "\n")


def read_events(path: str | Path) -> list[dict[str, Any]]:
	events = []
	try:
		with open(path) as f:
			for i, line in enumerate(f, 1):
				if line.strip():
					events.append(json.loads(line))
	except OSError as e:
		raise ConfigError(f"Cannot read event log {path}: {e}") from e
	except json.JSONDecodeError as e:
		raise ConfigError(f"{path}:{i}: not a JSON record ({e})") from e
	return events


def dataset_from_events(events: Iterable[Mapping[str, Any]]) -> EvaluationDataset:
	""" Rebuild the evaluation log from 'evaluation' events, ordered by t """
	evals = sorted((ev for ev in events if ev.get("event") == "evaluation"), key=lambda ev: ev["t"])
	return EvaluationDataset(
		EvaluationRecord(ParameterVector(ev["theta"]), ev["y"], ev.get("tag", ""), ev.get("f_exact"), ev.get("shots", 0))
		for ev in evals
	)


def distribution_frame(dist: ProbabilityDistribution) -> pd.DataFrame:
	n = dist.n_qubits
	return pd.DataFrame({
		"outcome": [format(i, f"0{n}b") for i in range(dist.n_outcomes)],
		"probability": dist.probs,
	})


def write_text(path: Path, text: str) -> None:
	path.write_text(text)
