#!/usr/bin/env python
# -*- coding: utf-8 -*-
# File:                treeprep/cli/ExperimentConfig.py
# License:             BSD-3-Clause
# Author:              treeprep contributors
# Date:                02.04.2026
# Last Modified Date:  08.09.2026
# Last Modified By:    treeprep contributors

import yaml
from pathlib import Path
from typing import Any
from pydantic import Field, ValidationError, field_validator
from treeprep.base.PrepBaseModel import PrepBaseModel
from treeprep.circuit.AnsatzSpec import DEFAULT_MAX_QUBITS, AnsatzSpec, Rotation, build_ansatz
from treeprep.diagnostics.DiagnosticsReport import DiagnosticsOptions
from treeprep.errors import ConfigError
from treeprep.optimizer.RunConfig import RunConfig
from treeprep.target.TargetSpec import TargetModel, TargetSpec

SCHEMA_VERSION = 1


class AnsatzModel(PrepBaseModel):
	n_layers: int = Field(ge=1)
	#: rotations per qubit slot, taken from the target when unset
	rotation_set: None | tuple[Rotation, ...] = None
	max_qubits: int = Field(default=DEFAULT_MAX_QUBITS, ge=1)

	def build(self, target: TargetSpec) -> AnsatzSpec:
		return build_ansatz(
			target.n_qubits, self.n_layers,
			self.rotation_set or target.search_rotation_set,
			self.max_qubits
		)


class ExperimentConfig(PrepBaseModel):
	"""
	Content of an experiment YAML file. ``target`` and ``ansatz`` are required,
	everything else has a default.
	"""

	schema_version: int = SCHEMA_VERSION
	target: TargetModel
	ansatz: AnsatzModel
	run: RunConfig = RunConfig()
	diagnostics: DiagnosticsOptions = DiagnosticsOptions()
	out: None | str = None
	suite: None | str = None

	@field_validator("schema_version")
	@classmethod
	def _check_version(cls, v: int) -> int:
		if v != SCHEMA_VERSION:
			raise ValueError(f"Unsupported schema_version {v}, this release reads version {SCHEMA_VERSION}")
		return v

	@classmethod
	def from_dict(cls, doc: Any, source: str = "<dict>") -> "ExperimentConfig":
		if not isinstance(doc, dict):
			raise ConfigError(f"{source}: expected a mapping at top level")
		try:
			return cls.model_validate(doc)
		except ValidationError as e:
			raise ConfigError(f"{source}: {e}") from e

	@classmethod
	def load(cls, path: str | Path) -> "ExperimentConfig":
		""" :raises ConfigError: unreadable file, invalid YAML or schema violation """
		return cls.from_dict(load_yaml(path), str(path))


def load_yaml(path: str | Path) -> Any:
	try:
		with open(path) as f:
			return yaml.safe_load(f)
	except OSError as e:
		raise ConfigError(f"Cannot read {path}: {e}") from e
	except yaml.YAMLError as e:
		raise ConfigError(f"Invalid YAML in {path}: {e}") from e
