#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/surrogate/model_io.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                14.03.2026
# Last Modified Date:  29.08.2026
# Last Modified By:    treeprep contributors

"""
Surrogate checkpoints as JSON documents::

	{"format": "treeprep-surrogate", "version": 1, "kind": "gbrt" | "qrf", "model": {...}}

Floats are written with repr precision, so a loaded model predicts bit-identically.
"""

import json
from pathlib import Path
from typing import Any
from treeprep.errors import ConfigError
from treeprep.surrogate.BoostedEnsemble import BoostedEnsemble
from treeprep.surrogate.QuantileForest import QuantileForest

FORMAT = "treeprep-surrogate"
VERSION = 1


def dumps(model: BoostedEnsemble | QuantileForest) -> str:
	return json.dumps(
		{"format": FORMAT, "version": VERSION, "kind": model.kind, "model": model.to_dict()},
		sort_keys=True
	)


def loads(text: str) -> BoostedEnsemble | QuantileForest:
	try:
		doc: dict[str, Any] = json.loads(text)
	except json.JSONDecodeError as e:
		raise ConfigError(f"Surrogate file is not valid JSON: {e}") from e
	if doc.get("format") != FORMAT:
		raise ConfigError(f"Not a surrogate document (format={doc.get('format')!r})")
	if doc.get("version") != VERSION:
		raise ConfigError(f"Unsupported surrogate format version {doc.get('version')!r}, expected {VERSION}")
	match doc.get("kind"):
		case "gbrt":
			return BoostedEnsemble.from_dict(doc["model"])
		case "qrf":
			return QuantileForest.from_dict(doc["model"])
	raise ConfigError(f"Unknown surrogate kind {doc.get('kind')!r}")


def dump(model: BoostedEnsemble | QuantileForest, path: str | Path) -> None:
	Path(path).write_text(dumps(model))


def load(path: str | Path) -> BoostedEnsemble | QuantileForest:
	return loads(Path(path).read_text())
